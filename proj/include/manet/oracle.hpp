#pragma once

#include <vector>

namespace manet::oracle {

/**
 * Fine-grained relay-queue chain used as ground truth for the collapsed
 * occupancy analysis. A state records how many buffered packets are waiting
 * for each of the n-2 possible destinations; the total never exceeds B.
 *
 * Per slot exactly one of three things happens:
 *   - with probability `arrival` a packet for a uniformly chosen destination
 *     joins the queue (dropped when the queue already holds B packets),
 *   - with probability `delivery` a uniformly chosen destination gets a
 *     delivery opportunity (one of its packets leaves, if it has any),
 *   - otherwise nothing.
 *
 * Everything is solved by brute force, so instances are capped at a few
 * thousand states.
 */
struct QueueModel {
    int n = 4;
    int B = 1;
    double arrival = 0.0;   // rho_s * p_sr at the modeled operating point
    double delivery = 0.0;  // p_rd
};

struct StationaryDistribution {
    std::vector<std::vector<int>> states;  // per-destination counts, sum <= B
    std::vector<double> pi;                // same indexing as states
    double residual = 0.0;                 // max |pi P - pi| from the solve
};

void validate(const QueueModel& model);

// All count vectors over n-2 destinations with total at most B, ordered by
// total and then lexicographically. Throws when the state space would
// exceed the brute-force budget.
std::vector<std::vector<int>> enumerate_states(int n, int B);

// Row-stochastic one-step transition matrix, row-major, states indexed as
// in enumerate_states.
std::vector<double> transition_matrix(const QueueModel& model);

StationaryDistribution stationary_distribution(const QueueModel& model);

// Marginal law of the queue total, indices 0..B.
std::vector<double> occupancy_marginal(const StationaryDistribution& dist, int B);

// Conditional law of the number of distinct destinations present, given the
// queue total. Index k runs 0..total; for total >= 1 the mass sits on
// 1..min(total, n-2).
std::vector<double> occupied_destination_marginal(const StationaryDistribution& dist,
                                                  int total);

}  // namespace manet::oracle
