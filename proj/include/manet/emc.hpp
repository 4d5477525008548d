#pragma once

#include <vector>

namespace manet {

/**
 * Parameters of the collapsed relay-queue occupancy chain.
 *
 * beta is the ratio of the source-to-relay and relay-to-destination
 * opportunity probabilities (alpha/(1-alpha) for the 2HR-alpha router);
 * rho_s is the local-queue utilization lambda/mu_s.
 */
struct EmcParams {
    int n = 4;          // node count, >= 4
    int B = 1;          // relay buffer size in packets, >= 1
    double beta = 1.0;  // p_sr / p_rd, >= 0
    double rho_s = 1.0; // local-queue utilization in [0, 1]
};

// Limiting distribution over relay-queue occupancy 0..B. pi.back() is the
// blocking probability at the given operating point.
struct RelayOccupancyDistribution {
    std::vector<double> pi;

    double blocking() const { return pi.back(); }
};

void validate(const EmcParams& p);

/**
 * Limiting distribution of the occupancy chain, pi[i] proportional to
 * C_i * (beta*rho_s)^i with C_i = binomial(n-3+i, i).
 *
 * Built by the ratio recursion pi[i+1]/pi[i] = ((n-2+i)/(i+1))*beta*rho_s
 * on a scaled mantissa/exponent representation, so arbitrarily large B and
 * n neither overflow nor wash out the detailed-balance structure.
 */
RelayOccupancyDistribution emc_limiting_distribution(const EmcParams& params);

// pi[B] alone, same recursion without materializing the vector's tail sums.
// Accepts n >= 3: the closed-form capacity remains meaningful there even
// though the two-tuple chain behind the full distribution does not.
double occupancy_tail_probability(int n, int B, double beta, double rho_s);

}  // namespace manet
