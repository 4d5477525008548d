#include "manet/emc.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "manet/combinatorics.hpp"

namespace manet {

void validate(const EmcParams& p) {
    if (p.n < 4) throw std::domain_error("EmcParams: n must be >= 4");
    if (p.B < 1) throw std::domain_error("EmcParams: B must be >= 1");
    if (!(p.beta >= 0.0)) throw std::domain_error("EmcParams: beta must be >= 0");
    if (!(p.rho_s >= 0.0 && p.rho_s <= 1.0))
        throw std::domain_error("EmcParams: rho_s must lie in [0, 1]");
}

namespace {

// Weight of occupancy i relative to occupancy 0. An empty optional means
// beta*rho_s is infinite (all mass at B).
std::optional<std::vector<Scaled>> occupancy_weights(int n, int B, double beta,
                                                     double rho_s) {
    double x = rho_s == 0.0 ? 0.0 : beta * rho_s;
    if (!std::isfinite(x)) return std::nullopt;
    std::vector<Scaled> w(static_cast<size_t>(B) + 1);
    w[0] = Scaled::one();
    for (int i = 0; i < B; ++i) {
        double ratio = (static_cast<double>(n - 2 + i) / static_cast<double>(i + 1)) * x;
        w[static_cast<size_t>(i) + 1] = w[static_cast<size_t>(i)].times(ratio);
    }
    return w;
}

}  // namespace

namespace {

std::vector<double> normalized_weights(const std::vector<Scaled>& w) {
    long ref = w[0].exp2;
    for (const Scaled& s : w)
        if (!s.is_zero()) ref = std::max(ref, s.exp2);
    std::vector<double> flat(w.size());
    for (size_t i = 0; i < w.size(); ++i) flat[i] = w[i].to_double_shifted(ref);
    return flat;
}

}  // namespace

RelayOccupancyDistribution emc_limiting_distribution(const EmcParams& params) {
    validate(params);
    RelayOccupancyDistribution dist;
    auto w = occupancy_weights(params.n, params.B, params.beta, params.rho_s);
    if (!w) {
        dist.pi.assign(static_cast<size_t>(params.B) + 1, 0.0);
        dist.pi.back() = 1.0;
        return dist;
    }
    std::vector<double> flat = normalized_weights(*w);
    double total = kahan_sum(flat);
    dist.pi.resize(flat.size());
    for (size_t i = 0; i < flat.size(); ++i) dist.pi[i] = flat[i] / total;
    return dist;
}

double occupancy_tail_probability(int n, int B, double beta, double rho_s) {
    if (n < 3) throw std::domain_error("occupancy_tail_probability: n must be >= 3");
    if (B < 1) throw std::domain_error("occupancy_tail_probability: B must be >= 1");
    auto w = occupancy_weights(n, B, beta, rho_s);
    if (!w) return 1.0;
    std::vector<double> flat = normalized_weights(*w);
    return flat.back() / kahan_sum(flat);
}

}  // namespace manet
