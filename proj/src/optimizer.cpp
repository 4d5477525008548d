#include "manet/optimizer.hpp"

#include <cmath>
#include <stdexcept>

#include "manet/combinatorics.hpp"

namespace manet {

namespace {

// S = h/C_B = sum_{i=0}^{B-1} u_i and M = sum u_i*(B-i), via the downward
// recursion u_{i-1} = u_i * (i/(n-3+i)) * gamma from u_B = 1. Only ratios
// of consecutive C_i appear, so nothing overflows for any B of interest;
// if gamma is large enough to push u_0 past the double range the inf
// propagates into S and g degenerates to the increasing branch (1+gamma),
// which the bracketing logic handles.
struct HNormalized {
    double S = 0.0;
    double M = 0.0;
};

HNormalized h_normalized(int n, int B, double gamma) {
    HNormalized r;
    double u = 1.0;
    for (int i = B; i >= 1; --i) {
        u *= (static_cast<double>(i) / static_cast<double>(n - 3 + i)) * gamma;
        r.S += u;
        r.M += u * static_cast<double>(B - i + 1);
    }
    return r;
}

double g_of(int n, int B, double gamma) {
    HNormalized h = h_normalized(n, B, gamma);
    return (1.0 + gamma) * (1.0 + 1.0 / h.S);
}

// Stationarity defect of the gamma equation divided by C_B^2:
// S(S+1) - (1+gamma) M / gamma. Proportional to g'(gamma) h^2, so it is
// negative left of the optimum and positive right of it.
double residual_of(int n, int B, double gamma) {
    HNormalized h = h_normalized(n, B, gamma);
    return h.S * (h.S + 1.0) - (1.0 + gamma) * h.M / gamma;
}

void check_nb(int n, int B) {
    if (n < 4) throw std::domain_error("optimizer: n must be >= 4");
    if (B < 1) throw std::domain_error("optimizer: B must be >= 1");
}

}  // namespace

std::pair<double, double> h_poly(double gamma, int n, int B) {
    check_nb(n, B);
    if (!(gamma > 0.0)) throw std::domain_error("h_poly: gamma must be > 0");
    Scaled cb = Scaled::one();
    for (int i = 1; i <= B; ++i)
        cb = cb.times(static_cast<double>(n - 3 + i) / static_cast<double>(i));
    HNormalized h = h_normalized(n, B, gamma);
    double value = cb.times(h.S).to_double();
    double deriv = cb.times(h.M / gamma).to_double();
    return {value, deriv};
}

double solve_gamma_star(int n, int B) {
    check_nb(n, B);

    // Expand [1, hi] until g turns upward; g decreases through (0,1] and is
    // eventually increasing, so the doubling always terminates.
    double lo = 1.0, hi = 4.0;
    int guard = 0;
    while (g_of(n, B, 2.0 * hi) < g_of(n, B, hi)) {
        hi *= 2.0;
        if (++guard > 200)
            throw std::runtime_error("solve_gamma_star: bracket expansion failed");
    }
    hi *= 2.0;

    constexpr double phi = 0.6180339887498949;  // (sqrt(5)-1)/2
    double a = lo, b = hi;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = g_of(n, B, c), fd = g_of(n, B, d);
    while (b - a > 1e-10 * std::max(1.0, b)) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = g_of(n, B, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = g_of(n, B, d);
        }
    }

    // Golden section localizes a smooth minimum only to about sqrt(eps)
    // relative width (g is flat to machine precision below that), so finish
    // on the residual's sign change, which stays crisp arbitrarily close to
    // the optimum. Start from a bracket wide enough to cover the golden
    // noise floor and grow it until the signs straddle.
    const double mid = 0.5 * (a + b);
    double w = std::max(b - a, 1e-7 * mid);
    double ra = mid, rb = mid;
    bool straddled = false;
    for (int tries = 0; tries < 60; ++tries) {
        ra = std::max(mid - w, 1e-12);
        rb = mid + w;
        if (residual_of(n, B, ra) < 0.0 && residual_of(n, B, rb) > 0.0) {
            straddled = true;
            break;
        }
        w *= 4.0;
    }
    if (!straddled) return mid;
    for (int it = 0; it < 200 && rb - ra > 1e-15 * rb; ++it) {
        double c2 = 0.5 * (ra + rb);
        if (residual_of(n, B, c2) < 0.0)
            ra = c2;
        else
            rb = c2;
    }
    return 0.5 * (ra + rb);
}

namespace {

OptimizationResult assemble(int n, int B, double direct, double shared) {
    double gamma = solve_gamma_star(n, B);
    OptimizationResult r;
    r.gamma_star = gamma;
    r.alpha_star = 1.0 / (1.0 + gamma);
    // T_c(alpha) = direct + shared * alpha * (1 - s_B)
    //            = direct + shared / g(gamma), with gamma = (1-alpha)/alpha.
    r.t_c_star = direct + shared / g_of(n, B, gamma);
    HNormalized h = h_normalized(n, B, gamma);
    r.residual = std::abs(h.S * (h.S + 1.0) - (1.0 + gamma) * h.M / gamma) / (h.S * h.S);
    return r;
}

}  // namespace

OptimizationResult optimal_capacity_lts(const LtsGeometry& geom, int B) {
    if (geom.n < 4) throw std::domain_error("optimal_capacity_lts: n must be >= 4");
    auto [p0, p1] = lts_contact_probabilities(geom);
    double d = geom.density();
    return assemble(geom.n, B, p1 / d, (p0 - p1) / d);
}

OptimizationResult optimal_capacity_gts(const GtsGeometry& geom, int B) {
    if (geom.n < 4) throw std::domain_error("optimal_capacity_gts: n must be >= 4");
    auto [p3, p4] = gts_contact_probabilities(geom);
    double share = static_cast<double>(geom.cells_per_group()) / geom.n;
    return assemble(geom.n, B, share * p4, share * (p3 - p4));
}

double scaling_limit(long long n, double d, int B, double alpha) {
    if (n < 4) throw std::domain_error("scaling_limit: n must be >= 4");
    if (B < 1) throw std::domain_error("scaling_limit: B must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("scaling_limit: alpha must lie in (0, 1)");
    if (!(d > 0.0)) throw std::domain_error("scaling_limit: density must be > 0");
    double beta = alpha / (1.0 - alpha);
    double relayed = (alpha / (d * beta)) * (1.0 - std::exp(-d) - d * std::exp(-d)) *
                     (static_cast<double>(B) / (static_cast<double>(n) - 3.0 + B));
    return d / (2.0 * static_cast<double>(n)) + relayed;
}

}  // namespace manet
