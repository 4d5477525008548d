#include "manet/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace manet::oracle {

namespace {

constexpr std::size_t kMaxStates = 5000;

void enumerate_rec(std::vector<int>& counts, int pos, int target,
                   std::vector<std::vector<int>>& out) {
    if (pos == static_cast<int>(counts.size())) {
        if (target == 0) out.push_back(counts);
        return;
    }
    for (int c = 0; c <= target; ++c) {
        counts[pos] = c;
        enumerate_rec(counts, pos + 1, target - c, out);
    }
    counts[pos] = 0;
}

std::size_t state_space_size(int n, int B) {
    // Totals 0..B over n-2 destinations; the hockey-stick identity gives
    // binomial(n-2+B, B) states in all.
    double v = 1.0;
    for (int j = 1; j <= B; ++j) v *= static_cast<double>(n - 2 + j) / j;
    return static_cast<std::size_t>(std::llround(v));
}

}  // namespace

void validate(const QueueModel& model) {
    if (model.n < 3) throw std::domain_error("oracle: n must be >= 3");
    if (model.B < 1) throw std::domain_error("oracle: B must be >= 1");
    if (model.arrival < 0.0 || model.delivery < 0.0 ||
        model.arrival + model.delivery > 1.0 + 1e-12)
        throw std::domain_error("oracle: arrival + delivery must lie in [0, 1]");
    if (state_space_size(model.n, model.B) > kMaxStates)
        throw std::length_error("oracle: instance too large for brute force");
}

std::vector<std::vector<int>> enumerate_states(int n, int B) {
    if (n < 3) throw std::domain_error("oracle: n must be >= 3");
    if (B < 1) throw std::domain_error("oracle: B must be >= 1");
    if (state_space_size(n, B) > kMaxStates)
        throw std::length_error("oracle: instance too large for brute force");
    std::vector<std::vector<int>> out;
    std::vector<int> counts(static_cast<std::size_t>(n - 2), 0);
    for (int total = 0; total <= B; ++total)
        enumerate_rec(counts, 0, total, out);
    return out;
}

std::vector<double> transition_matrix(const QueueModel& model) {
    validate(model);
    const auto states = enumerate_states(model.n, model.B);
    const std::size_t S = states.size();
    const int dests = model.n - 2;
    std::map<std::vector<int>, std::size_t> index;
    for (std::size_t s = 0; s < S; ++s) index[states[s]] = s;

    const double per_dest_arrival = model.arrival / dests;
    const double per_dest_delivery = model.delivery / dests;

    std::vector<double> P(S * S, 0.0);
    for (std::size_t s = 0; s < S; ++s) {
        const auto& st = states[s];
        int total = 0;
        for (int c : st) total += c;
        double stay = 1.0 - model.arrival - model.delivery;
        for (int j = 0; j < dests; ++j) {
            if (total < model.B) {
                auto next = st;
                next[j] += 1;
                P[s * S + index.at(next)] += per_dest_arrival;
            } else {
                stay += per_dest_arrival;  // full queue drops the packet
            }
            if (st[j] > 0) {
                auto next = st;
                next[j] -= 1;
                P[s * S + index.at(next)] += per_dest_delivery;
            } else {
                stay += per_dest_delivery;  // nothing to deliver for j
            }
        }
        P[s * S + s] += stay;
    }
    return P;
}

StationaryDistribution stationary_distribution(const QueueModel& model) {
    validate(model);
    if (model.arrival == 0.0 && model.delivery == 0.0)
        throw std::runtime_error("oracle: chain is frozen, no unique stationary law");

    StationaryDistribution out;
    out.states = enumerate_states(model.n, model.B);
    const std::size_t S = out.states.size();
    const std::vector<double> P = transition_matrix(model);

    // Solve pi (P - I) = 0 with the last equation replaced by normalization.
    Eigen::MatrixXd A(S, S);
    for (std::size_t i = 0; i < S; ++i)
        for (std::size_t j = 0; j < S; ++j)
            A(j, i) = P[i * S + j] - (i == j ? 1.0 : 0.0);
    for (std::size_t i = 0; i < S; ++i) A(S - 1, i) = 1.0;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(S);
    rhs(S - 1) = 1.0;

    Eigen::VectorXd pi = A.fullPivLu().solve(rhs);

    out.pi.resize(S);
    for (std::size_t i = 0; i < S; ++i) out.pi[i] = pi(i);

    double residual = 0.0;
    for (std::size_t j = 0; j < S; ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < S; ++i) col += out.pi[i] * P[i * S + j];
        residual = std::max(residual, std::abs(col - out.pi[j]));
    }
    out.residual = residual;
    if (!(residual < 1e-12))
        throw std::runtime_error("oracle: stationary solve residual too large");
    return out;
}

std::vector<double> occupancy_marginal(const StationaryDistribution& dist, int B) {
    std::vector<double> marg(static_cast<std::size_t>(B) + 1, 0.0);
    for (std::size_t s = 0; s < dist.states.size(); ++s) {
        int total = 0;
        for (int c : dist.states[s]) total += c;
        if (total > B) throw std::logic_error("oracle: state exceeds B");
        marg[static_cast<std::size_t>(total)] += dist.pi[s];
    }
    return marg;
}

std::vector<double> occupied_destination_marginal(const StationaryDistribution& dist,
                                                  int total) {
    std::vector<double> mass(static_cast<std::size_t>(total) + 1, 0.0);
    double norm = 0.0;
    for (std::size_t s = 0; s < dist.states.size(); ++s) {
        int t = 0, k = 0;
        for (int c : dist.states[s]) {
            t += c;
            if (c > 0) ++k;
        }
        if (t != total) continue;
        mass[static_cast<std::size_t>(k)] += dist.pi[s];
        norm += dist.pi[s];
    }
    if (norm <= 0.0)
        throw std::runtime_error("oracle: no stationary mass at requested total");
    for (double& v : mass) v /= norm;
    return mass;
}

}  // namespace manet::oracle
