#include "manet/capacity.hpp"

#include <cmath>
#include <stdexcept>

namespace manet {

void validate(const TransmissionProbabilities& p) {
    auto in01 = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!in01(p.p_sd) || !in01(p.p_sr) || !in01(p.p_rd))
        throw std::domain_error("TransmissionProbabilities: entries must lie in [0, 1]");
    if (p.p_sd + p.p_sr + p.p_rd > 1.0 + 1e-12)
        throw std::domain_error("TransmissionProbabilities: p_sd + p_sr + p_rd must be <= 1");
}

double service_rate(const TransmissionProbabilities& probs, double p_b) {
    if (!(p_b >= 0.0 && p_b <= 1.0))
        throw std::domain_error("service_rate: p_b must lie in [0, 1]");
    return probs.p_sd + probs.p_sr * (1.0 - p_b);
}

double relay_arrival_rate(double lambda, const TransmissionProbabilities& probs,
                          double p_b) {
    double mu = service_rate(probs, p_b);
    if (lambda > mu)
        throw std::domain_error("relay_arrival_rate: lambda exceeds the service rate");
    if (lambda == 0.0) return 0.0;
    return lambda / mu * probs.p_sr * (1.0 - p_b);
}

BlockingSolution solve_blocking_probability(double lambda,
                                            const TransmissionProbabilities& probs,
                                            int n, int B) {
    validate(probs);
    if (lambda < 0.0) throw std::domain_error("solve_blocking_probability: lambda < 0");
    if (n < 4) throw std::domain_error("solve_blocking_probability: n must be >= 4");
    if (B < 1) throw std::domain_error("solve_blocking_probability: B must be >= 1");

    BlockingSolution sol;
    sol.lambda = lambda;

    if (lambda == 0.0) {
        sol.p_b = 0.0;
        sol.rho_s = 0.0;
        sol.mu_s = service_rate(probs, 0.0);
        sol.residual = 0.0;
        sol.saturated = false;
        return sol;
    }

    if (probs.p_rd == 0.0 && probs.p_sr > 0.0) {
        // alpha = 1: relay queues fill and are never drained, so every
        // relay is eventually full no matter how small lambda is.
        sol.p_b = 1.0;
        sol.mu_s = probs.p_sd;
        sol.rho_s = sol.mu_s > 0.0 ? std::min(lambda / sol.mu_s, 1.0) : 1.0;
        sol.residual = 0.0;
        sol.saturated = sol.mu_s == 0.0 || lambda >= sol.mu_s;
        return sol;
    }

    double beta = probs.p_rd > 0.0 ? probs.p_sr / probs.p_rd : 0.0;
    CapacityResult cap = throughput_capacity(probs, n, B, beta);

    if (lambda >= cap.lambda_tilde) {
        sol.p_b = cap.p_b_saturated;
        sol.rho_s = 1.0;
        sol.mu_s = service_rate(probs, sol.p_b);
        sol.residual = 0.0;
        sol.saturated = true;
        return sol;
    }

    auto fixed_point_map = [&](double p) {
        double mu = service_rate(probs, p);
        double rho = mu > 0.0 ? lambda / mu : 1.0;
        rho = std::min(rho, 1.0);
        return occupancy_tail_probability(n, B, beta, rho);
    };

    // F is continuous and increasing in p; G(p) = F(p) - p changes sign on
    // [0, 1) because G(0) >= 0 and G(1-) < 0, so bisection always lands.
    double lo = 0.0, hi = 1.0 - 1e-15;
    double glo = fixed_point_map(lo) - lo;
    if (glo <= 0.0) {
        sol.p_b = 0.0;
    } else {
        for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
            double mid = 0.5 * (lo + hi);
            double g = fixed_point_map(mid) - mid;
            if (g > 0.0)
                lo = mid;
            else
                hi = mid;
        }
        sol.p_b = 0.5 * (lo + hi);
    }

    sol.mu_s = service_rate(probs, sol.p_b);
    sol.rho_s = std::min(lambda / sol.mu_s, 1.0);
    sol.residual = std::abs(fixed_point_map(sol.p_b) - sol.p_b);
    sol.saturated = false;
    if (sol.residual >= 1e-10)
        throw std::runtime_error("solve_blocking_probability: residual " +
                                 std::to_string(sol.residual) + " above tolerance");
    return sol;
}

CapacityResult throughput_capacity(const TransmissionProbabilities& probs, int n,
                                   int B, double beta) {
    validate(probs);
    if (n < 3) throw std::domain_error("throughput_capacity: n must be >= 3");
    if (B < 1) throw std::domain_error("throughput_capacity: B must be >= 1");
    if (!(beta >= 0.0)) throw std::domain_error("throughput_capacity: beta must be >= 0");
    CapacityResult r;
    r.p_b_saturated = occupancy_tail_probability(n, B, beta, 1.0);
    r.t_c = probs.p_sd + probs.p_sr * (1.0 - r.p_b_saturated);
    r.lambda_tilde = r.t_c;
    return r;
}

double capacity_alpha_half(const TransmissionProbabilities& probs, int n, int B) {
    validate(probs);
    if (n < 3) throw std::domain_error("capacity_alpha_half: n must be >= 3");
    if (B < 1) throw std::domain_error("capacity_alpha_half: B must be >= 1");
    return probs.p_sd + probs.p_sr * static_cast<double>(B) / static_cast<double>(n - 2 + B);
}

double capacity_infinite_buffer(const TransmissionProbabilities& probs, double alpha) {
    validate(probs);
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::domain_error("capacity_infinite_buffer: alpha must lie in [0, 1]");
    return alpha <= 0.5 ? probs.p_sd + probs.p_sr : probs.p_sd + probs.p_rd;
}

double expected_local_queue_length(double lambda, double mu_s) {
    if (lambda >= mu_s)
        throw std::domain_error("expected_local_queue_length: queue unstable (lambda >= mu_s)");
    if (lambda == 0.0) return 0.0;
    return (lambda - lambda * lambda) / (mu_s - lambda);
}

}  // namespace manet
