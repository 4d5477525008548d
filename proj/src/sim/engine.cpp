#include "manet/sim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "manet/scheduling.hpp"

namespace manet::sim {

void validate(const SimConfig& c) {
    if (c.n < 4 || c.n % 2 != 0)
        throw std::domain_error("sim: n must be even and >= 4");
    if (c.m < 1) throw std::domain_error("sim: m must be >= 1");
    if (c.B < 1) throw std::domain_error("sim: B must be >= 1");
    if (!(c.alpha >= 0.0 && c.alpha <= 1.0))
        throw std::domain_error("sim: alpha must lie in [0, 1]");
    if (!(c.lambda >= 0.0 && c.lambda <= 1.0))
        throw std::domain_error("sim: lambda must lie in [0, 1]");
    if (c.warmup < 0 || c.slots <= c.warmup)
        throw std::domain_error("sim: need slots > warmup >= 0");
    if (c.scheme == Scheme::GTS) {
        if (c.nu < 1 || c.delta < 0.0 || 2 * c.nu - 1 > c.m)
            throw std::domain_error("sim: invalid GTS range parameters");
    }
}

World::World(const SimConfig& cfg) : config(cfg) {
    validate(cfg);
    if (cfg.scheme == Scheme::GTS)
        group_schedule =
            build_group_schedule(cfg.m, gts_epsilon(cfg.nu, cfg.delta, cfg.m));
    cell_of.assign(static_cast<std::size_t>(cfg.n), 0);
    local.resize(static_cast<std::size_t>(cfg.n));
    relay.resize(static_cast<std::size_t>(cfg.n));
    delivered_per_node.assign(static_cast<std::size_t>(cfg.n), 0);
    cell_nodes.resize(static_cast<std::size_t>(cfg.m) * cfg.m);
}

void place_uniform(World& w, Rng& rng) {
    const std::uint32_t cells = static_cast<std::uint32_t>(w.config.m) * w.config.m;
    for (auto& c : w.cell_of) c = static_cast<int>(rng.below(cells));
}

void step_mobility_iid(World& w, Rng& rng) { place_uniform(w, rng); }

void step_mobility_random_walk(World& w, Rng& rng) {
    const int m = w.config.m;
    for (auto& c : w.cell_of) {
        const int move = static_cast<int>(rng.below(9));
        const int x = (c % m + move % 3 - 1 + m) % m;
        const int y = (c / m + move / 3 - 1 + m) % m;
        c = y * m + x;
    }
}

void generate_arrivals(World& w, double lambda, Rng& rng, long long slot) {
    for (std::uint32_t u = 0; u < static_cast<std::uint32_t>(w.config.n); ++u) {
        if (rng.bernoulli(lambda)) {
            w.local[u].push_back(slot);
            ++w.arrivals;
            ++w.local_total;
        }
    }
}

namespace {

void refresh_cell_nodes(World& w) {
    for (auto& cell : w.cell_nodes) cell.clear();
    for (std::uint32_t u = 0; u < static_cast<std::uint32_t>(w.config.n); ++u)
        w.cell_nodes[static_cast<std::size_t>(w.cell_of[u])].push_back(u);
}

// Uniform choice among `pool` minus one excluded member that occurs exactly
// once. Draws a single index.
std::uint32_t pick_excluding(const std::vector<std::uint32_t>& pool,
                             std::uint32_t excluded, Rng& rng) {
    std::uint32_t j = rng.below(static_cast<std::uint32_t>(pool.size() - 1));
    std::uint32_t seen = 0;
    for (std::uint32_t v : pool) {
        if (v == excluded) continue;
        if (seen == j) return v;
        ++seen;
    }
    throw std::logic_error("sim: receiver pool exhausted");
}

}  // namespace

// One transmission per cell holding two or more nodes. A colocated
// source-destination pair always takes the slot (every orientation equally
// likely); otherwise a uniform transmitter picks a uniform receiver among
// its cellmates and an alpha coin decides relay-bound versus relay-drain.
// In that branch the receiver is never the transmitter's partner, since a
// colocated partner would have produced a direct candidate.
std::vector<Transmission> schedule_lts(World& w, Rng& rng) {
    refresh_cell_nodes(w);
    std::vector<Transmission> out;
    std::vector<std::uint32_t> direct;
    const int cells = w.config.m * w.config.m;
    for (int c = 0; c < cells; ++c) {
        const auto& nodes = w.cell_nodes[static_cast<std::size_t>(c)];
        if (nodes.size() < 2) continue;
        direct.clear();
        for (std::uint32_t u : nodes)
            if (w.cell_of[u ^ 1u] == c) direct.push_back(u);
        Transmission t;
        t.cell = c;
        if (!direct.empty()) {
            t.tx = direct[rng.below(static_cast<std::uint32_t>(direct.size()))];
            t.rx = t.tx ^ 1u;
            t.kind = TxKind::SD;
        } else {
            t.tx = nodes[rng.below(static_cast<std::uint32_t>(nodes.size()))];
            t.rx = pick_excluding(nodes, t.tx, rng);
            t.kind = rng.bernoulli(w.config.alpha) ? TxKind::SR : TxKind::RD;
        }
        out.push_back(t);
    }
    return out;
}

namespace {

// Cells within nu-1 of `cell` in both axes, clipped at the grid edge (the
// transmission range does not wrap, unlike mobility). Interior cells see
// the full (2*nu-1)^2 window; edge cells see less, which is one source of
// the small gap between measured and closed-form contact rates at nu >= 2.
void coverage_cells(int cell, int m, int nu, std::vector<int>& out) {
    out.clear();
    const int cx = cell % m, cy = cell / m;
    const int x0 = std::max(0, cx - (nu - 1)), x1 = std::min(m - 1, cx + nu - 1);
    const int y0 = std::max(0, cy - (nu - 1)), y1 = std::min(m - 1, cy + nu - 1);
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x) out.push_back(y * m + x);
}

}  // namespace

// Same precedence rules as schedule_lts, restricted to the slot's active
// group: the transmitter must sit in the active cell, while receivers may
// be anywhere within the coverage window around it.
std::vector<Transmission> schedule_gts(World& w, long long slot, Rng& rng) {
    refresh_cell_nodes(w);
    std::vector<Transmission> out;
    std::vector<int> window;
    std::vector<std::uint32_t> reachable, direct;
    for (int c : w.group_schedule.active_cells(slot)) {
        const auto& senders = w.cell_nodes[static_cast<std::size_t>(c)];
        if (senders.empty()) continue;
        coverage_cells(c, w.config.m, w.config.nu, window);
        reachable.clear();
        for (int wc : window)
            for (std::uint32_t u : w.cell_nodes[static_cast<std::size_t>(wc)])
                reachable.push_back(u);
        direct.clear();
        for (std::uint32_t u : senders) {
            const int pc = w.cell_of[u ^ 1u];
            if (std::find(window.begin(), window.end(), pc) != window.end())
                direct.push_back(u);
        }
        Transmission t;
        t.cell = c;
        if (!direct.empty()) {
            t.tx = direct[rng.below(static_cast<std::uint32_t>(direct.size()))];
            t.rx = t.tx ^ 1u;
            t.kind = TxKind::SD;
        } else if (reachable.size() >= 2) {
            t.tx = senders[rng.below(static_cast<std::uint32_t>(senders.size()))];
            t.rx = pick_excluding(reachable, t.tx, rng);
            t.kind = rng.bernoulli(w.config.alpha) ? TxKind::SR : TxKind::RD;
        } else {
            continue;  // a lone node with an empty window wastes the slot
        }
        out.push_back(t);
    }
    return out;
}

void execute_transmission(World& w, const Transmission& t) {
    switch (t.kind) {
        case TxKind::SD: {
            auto& q = w.local[t.tx];
            if (q.empty()) return;
            q.pop_front();
            --w.local_total;
            ++w.delivered;
            ++w.delivered_per_node[t.rx];
            ++w.tx_sd;
            return;
        }
        case TxKind::SR: {
            auto& q = w.local[t.tx];
            auto& buf = w.relay[t.rx];
            if (q.empty() || static_cast<int>(buf.size()) >= w.config.B)
                return;  // handshake: a full buffer refuses the packet
            buf.push_back({t.tx, t.tx ^ 1u, q.front()});
            q.pop_front();
            --w.local_total;
            if (static_cast<int>(buf.size()) == w.config.B) ++w.full_relays;
            ++w.tx_sr;
            return;
        }
        case TxKind::RD: {
            auto& buf = w.relay[t.tx];
            for (auto it = buf.begin(); it != buf.end(); ++it) {
                if (it->dst == t.rx) {
                    if (static_cast<int>(buf.size()) == w.config.B) --w.full_relays;
                    buf.erase(it);  // oldest entry for rx: queue order is age order
                    ++w.delivered;
                    ++w.delivered_per_node[t.rx];
                    ++w.tx_rd;
                    return;
                }
            }
            return;
        }
    }
}

namespace {

struct CounterSnapshot {
    long long arrivals = 0, delivered = 0;
    long long tx_sd = 0, tx_sr = 0, tx_rd = 0;
    std::vector<long long> delivered_per_node;

    static CounterSnapshot take(const World& w) {
        return {w.arrivals, w.delivered, w.tx_sd, w.tx_sr, w.tx_rd,
                w.delivered_per_node};
    }
};

}  // namespace

SimMetrics run_simulation(const SimConfig& config) {
    World w(config);
    Rng rng(config.seed);
    place_uniform(w, rng);

    CounterSnapshot at_warmup;
    double rbp_accum = 0.0;
    double queue_accum = 0.0;

    for (long long slot = 0; slot < config.slots; ++slot) {
        if (slot == config.warmup) at_warmup = CounterSnapshot::take(w);

        if (config.mobility == Mobility::IID)
            step_mobility_iid(w, rng);
        else
            step_mobility_random_walk(w, rng);

        generate_arrivals(w, config.lambda, rng, slot);

        const auto txs = config.scheme == Scheme::LTS
                             ? schedule_lts(w, rng)
                             : schedule_gts(w, slot, rng);
        for (const auto& t : txs) execute_transmission(w, t);

        if (slot >= config.warmup) {
            rbp_accum += static_cast<double>(w.full_relays);
            queue_accum += static_cast<double>(w.local_total);
        }
    }

    SimMetrics m;
    m.measured_slots = config.slots - config.warmup;
    m.arrivals_total = w.arrivals;
    m.delivered_total = w.delivered;
    m.delivered_per_node.resize(w.delivered_per_node.size());
    for (std::size_t i = 0; i < w.delivered_per_node.size(); ++i)
        m.delivered_per_node[i] =
            w.delivered_per_node[i] - at_warmup.delivered_per_node[i];
    m.tx_sd = w.tx_sd - at_warmup.tx_sd;
    m.tx_sr = w.tx_sr - at_warmup.tx_sr;
    m.tx_rd = w.tx_rd - at_warmup.tx_rd;

    const double span = static_cast<double>(m.measured_slots);
    m.throughput_tagged = static_cast<double>(m.delivered_per_node[1]) / span;
    m.throughput_all_flows =
        static_cast<double>(w.delivered - at_warmup.delivered) / (span * config.n);
    m.empirical_rbp = rbp_accum / (span * config.n);
    m.mean_local_queue = queue_accum / (span * config.n);

    m.local_backlog = w.local_total;
    long long relay_backlog = 0;
    for (const auto& buf : w.relay) relay_backlog += static_cast<long long>(buf.size());
    m.relay_backlog = relay_backlog;
    return m;
}

namespace {

ReplicationStat stat_over(const std::vector<SimMetrics>& runs,
                          double SimMetrics::*field) {
    ReplicationStat s;
    const std::size_t k = runs.size();
    for (const auto& r : runs) s.mean += r.*field;
    s.mean /= static_cast<double>(k);
    if (k > 1) {
        double ss = 0.0;
        for (const auto& r : runs) {
            const double d = r.*field - s.mean;
            ss += d * d;
        }
        const double sd = std::sqrt(ss / static_cast<double>(k - 1));
        s.ci_half = 1.96 * sd / std::sqrt(static_cast<double>(k));
    }
    return s;
}

}  // namespace

ReplicationSummary run_replications(const SimConfig& config, int replications) {
    if (replications < 1)
        throw std::domain_error("sim: replications must be >= 1");
    ReplicationSummary summary;
    summary.runs.reserve(static_cast<std::size_t>(replications));
    for (int k = 0; k < replications; ++k) {
        SimConfig cfg = config;
        cfg.seed = replication_seed(config.seed, k);
        summary.runs.push_back(run_simulation(cfg));
    }
    summary.throughput_tagged = stat_over(summary.runs, &SimMetrics::throughput_tagged);
    summary.throughput_all_flows =
        stat_over(summary.runs, &SimMetrics::throughput_all_flows);
    summary.empirical_rbp = stat_over(summary.runs, &SimMetrics::empirical_rbp);
    summary.mean_local_queue = stat_over(summary.runs, &SimMetrics::mean_local_queue);
    return summary;
}

}  // namespace manet::sim
