#pragma once

#include <utility>

#include "manet/scheduling.hpp"

namespace manet {

struct OptimizationResult {
    double gamma_star = 0.0;  // (1-alpha*)/alpha*, always > 1
    double alpha_star = 0.0;  // 1/(1+gamma*)
    double t_c_star = 0.0;    // capacity at alpha*
    double residual = 0.0;    // stationarity defect of the gamma equation,
                              // normalized by h(gamma*)^2
};

/**
 * h(gamma) = sum_{i=0}^{B-1} C_i gamma^(B-i) and its derivative, with
 * C_i = binomial(n-3+i, i). Values can exceed the double range for large
 * B; the minimizer below never forms them un-normalized, this entry point
 * exists for direct evaluation and returns inf past the representable range.
 */
std::pair<double, double> h_poly(double gamma, int n, int B);

/**
 * Minimizer of g(gamma) = (1+gamma)(1 + C_B/h(gamma)) over gamma > 0.
 * Golden-section search on an expanding bracket locates the valley, then
 * bisection on the sign of the stationarity residual
 *   h(h + C_B) - (1+gamma) C_B h' = 0
 * sharpens it to the 1e-12 scale the residual bound requires. The
 * minimizer always lies right of 1 (g decreases on (0,1]).
 */
double solve_gamma_star(int n, int B);

// Capacity-maximizing transmission ratio and the capacity it achieves.
OptimizationResult optimal_capacity_lts(const LtsGeometry& geom, int B);
OptimizationResult optimal_capacity_gts(const GtsGeometry& geom, int B);

/**
 * Large-n capacity approximation at fixed density d and buffer B:
 *   d/(2n) + (alpha/(d*beta)) * (1 - e^-d - d e^-d) * B/(n-3+B).
 * The first term is the n->inf limit of the direct-delivery share; the
 * second covers the relayed share. lts_capacity / scaling_limit -> 1 as n
 * grows at fixed d, B, alpha.
 */
double scaling_limit(long long n, double d, int B, double alpha);

}  // namespace manet
