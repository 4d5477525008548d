#pragma once

#include <cstdint>
#include <vector>

namespace manet::sim {

enum class Scheme { LTS, GTS };
enum class Mobility { IID, RANDOM_WALK };

struct SimConfig {
    int n = 4;            // node count, even; flows pair 0<->1, 2<->3, ...
    int m = 1;            // grid side, m*m cells
    int B = 1;            // relay buffer capacity per node
    double alpha = 0.5;   // source-to-relay share of non-direct transmissions
    double lambda = 0.0;  // per-node Bernoulli arrival rate, packets/slot
    Scheme scheme = Scheme::LTS;
    Mobility mobility = Mobility::IID;
    int nu = 1;           // GTS transmission range parameter, cells
    double delta = 0.0;   // GTS interference guard factor
    long long slots = 0;  // total simulated slots, including warmup
    long long warmup = 0; // leading slots excluded from every metric
    std::uint64_t seed = 1;
};

void validate(const SimConfig& config);

struct SimMetrics {
    long long measured_slots = 0;
    long long arrivals_total = 0;
    long long delivered_total = 0;
    std::vector<long long> delivered_per_node;  // indexed by destination
    double throughput_tagged = 0.0;    // flow 0 -> 1, packets/slot
    double throughput_all_flows = 0.0; // delivered_total / (n * slots)
    double empirical_rbp = 0.0;        // share of node-slots with a full relay
    double mean_local_queue = 0.0;     // time and node average, packets
    long long tx_sd = 0;               // executed transmissions by kind,
    long long tx_sr = 0;               // counting only slots that moved a
    long long tx_rd = 0;               // packet
    long long local_backlog = 0;       // packets still queued at the end
    long long relay_backlog = 0;
};

struct ReplicationStat {
    double mean = 0.0;
    double ci_half = 0.0;  // 95% normal-approximation half width
};

struct ReplicationSummary {
    std::vector<SimMetrics> runs;
    ReplicationStat throughput_tagged;
    ReplicationStat throughput_all_flows;
    ReplicationStat empirical_rbp;
    ReplicationStat mean_local_queue;
};

}  // namespace manet::sim
