#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "manet/sim/config.hpp"
#include "manet/sim/groups.hpp"
#include "manet/sim/rng.hpp"

namespace manet::sim {

// A packet parked in some relay's buffer. Source and destination never equal
// the buffer owner; birth is the creation slot, carried for test scripting
// and debugging rather than for any metric.
struct RelayPacket {
    std::uint32_t src = 0;
    std::uint32_t dst = 0;
    long long birth = 0;
};

enum class TxKind { SD, SR, RD };

struct Transmission {
    int cell = 0;
    std::uint32_t tx = 0;
    std::uint32_t rx = 0;
    TxKind kind = TxKind::SD;
};

/**
 * Complete mutable simulation state. The per-slot phases are exposed as free
 * functions so tests can drive single steps and scripted scenarios; normal
 * use goes through run_simulation.
 *
 * Flows pair node 2i with node 2i+1 in both directions, so a node's traffic
 * partner is node_id XOR 1. Local queues store packet creation slots (the
 * owner and its partner imply source and destination).
 */
struct World {
    SimConfig config;
    GroupSchedule group_schedule;  // built only for GTS

    std::vector<int> cell_of;                        // node -> cell id
    std::vector<std::deque<long long>> local;        // own packets, FIFO
    std::vector<std::deque<RelayPacket>> relay;      // foreign packets, <= B

    // Whole-run tallies; metric windows are taken as differences of
    // snapshots of these.
    long long arrivals = 0;
    long long delivered = 0;
    std::vector<long long> delivered_per_node;
    long long tx_sd = 0, tx_sr = 0, tx_rd = 0;
    long long local_total = 0;  // live packets across all local queues
    long long full_relays = 0;  // nodes whose relay buffer is at capacity

    // Scratch reused every slot by the schedulers.
    std::vector<std::vector<std::uint32_t>> cell_nodes;

    explicit World(const SimConfig& cfg);
};

void place_uniform(World& world, Rng& rng);
void step_mobility_iid(World& world, Rng& rng);
void step_mobility_random_walk(World& world, Rng& rng);
void generate_arrivals(World& world, double lambda, Rng& rng, long long slot);

// At most one transmission per (active) cell; see the scheduling rules in
// the implementation notes. Both schedulers refresh the per-cell node lists
// from cell_of, so they can be called back to back on the same state.
std::vector<Transmission> schedule_lts(World& world, Rng& rng);
std::vector<Transmission> schedule_gts(World& world, long long slot, Rng& rng);

void execute_transmission(World& world, const Transmission& t);

SimMetrics run_simulation(const SimConfig& config);
ReplicationSummary run_replications(const SimConfig& config, int replications);

}  // namespace manet::sim
