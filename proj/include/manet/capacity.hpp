#pragma once

#include "manet/emc.hpp"

namespace manet {

// Per-slot scheduling opportunity probabilities seen by one node.
struct TransmissionProbabilities {
    double p_sd = 0.0;  // direct source-to-destination
    double p_sr = 0.0;  // source-to-relay
    double p_rd = 0.0;  // relay-to-destination
};

void validate(const TransmissionProbabilities& p);

struct BlockingSolution {
    double lambda = 0.0;    // exogenous arrival rate, packets/slot
    double p_b = 0.0;       // relay-buffer blocking probability
    double rho_s = 0.0;     // local-queue utilization at the solution
    double mu_s = 0.0;      // local-queue service rate, packets/slot
    double residual = 0.0;  // |p_b - pi_B(rho_s(p_b))|
    bool saturated = false; // true when lambda >= lambda_tilde
};

struct CapacityResult {
    double t_c = 0.0;           // throughput capacity, packets/slot
    double p_b_saturated = 0.0; // blocking probability at rho_s = 1
    double lambda_tilde = 0.0;  // saturation arrival rate (= t_c)
};

// mu_s = p_sd + p_sr * (1 - p_b): a relay-bound send only goes through when
// the chosen relay has space, so blocked attempts do not drain the queue.
double service_rate(const TransmissionProbabilities& probs, double p_b);

// Arrival rate at one relay queue, rho_s * p_sr * (1 - p_b).
double relay_arrival_rate(double lambda, const TransmissionProbabilities& probs,
                          double p_b);

/**
 * Solves the blocking fixed point p = pi_B(rho_s(p)) with
 * rho_s(p) = lambda/(p_sd + p_sr(1-p)) by bisection. Tolerance 1e-12 on p,
 * at most 200 iterations.
 *
 * The underlying model only defines p_b for a stable local queue; when
 * lambda >= lambda_tilde the solver clamps rho_s to 1, returns the
 * saturation blocking value and flags the result.
 */
BlockingSolution solve_blocking_probability(double lambda,
                                            const TransmissionProbabilities& probs,
                                            int n, int B);

// Closed-form capacity t_c = p_sd + p_sr * (1 - pi_B | rho_s = 1).
// n = 3 is accepted here (the closed form degenerates gracefully) even
// though the occupancy-distribution queries require n >= 4.
CapacityResult throughput_capacity(const TransmissionProbabilities& probs, int n,
                                   int B, double beta);

// alpha = 1/2 specialization: p_sd + p_sr * B/(n-2+B).
double capacity_alpha_half(const TransmissionProbabilities& probs, int n, int B);

// B -> infinity limit: p_sd + p_sr for alpha <= 1/2, p_sd + p_rd above.
double capacity_infinite_buffer(const TransmissionProbabilities& probs, double alpha);

// Mean length of the local Bernoulli/Bernoulli queue, (lambda - lambda^2)/(mu_s - lambda).
double expected_local_queue_length(double lambda, double mu_s);

}  // namespace manet
