// manetcap: throughput capacity, relay blocking, and simulation front end
// for buffer-limited two-hop-relay networks on a cell grid.
//
// Subcommands
//   capacity   closed-form per-flow capacity for one scenario
//   blocking   blocking-probability curve over an arrival-rate grid
//   optimize   best transmission ratio alpha and the capacity it achieves
//   simulate   discrete-time simulation with per-replication rows
//   sweep      capacity table over crossed parameter lists
//   validate   analytic formulas vs brute-force chain oracle vs simulation
//
// Output is CSV (default) or JSON lines with identical fields; rows carry
// no timestamps, so a fixed scenario and seed reproduce byte-identical output.
// Exit codes: 0 ok, 1 usage, 2 validation failure, 3 solver failure.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "manet/capacity.hpp"
#include "manet/cli_config.hpp"
#include "manet/combinatorics.hpp"
#include "manet/emc.hpp"
#include "manet/optimizer.hpp"
#include "manet/oracle.hpp"
#include "manet/scheduling.hpp"
#include "manet/sim/engine.hpp"

namespace {

using manet::cli::Format;
using manet::cli::Row;
using manet::cli::RowWriter;
using manet::cli::Value;

struct Scenario {
    int n = 72;
    int m = 6;
    int B = 5;
    double alpha = 0.5;
    double lambda = 0.0;
    double rho = -1.0;  // when >= 0, lambda = rho * t_c
    std::string scheme = "lts";
    std::string mobility = "iid";
    int nu = 1;
    double delta = 1.0;
    long long slots = 1000000;
    long long warmup = -1;  // -1: default to 10% of slots
    std::uint64_t seed = 1;
    int replications = 1;
    std::string out_path;
    std::string format = "csv";
    std::string config_path;
};

void add_scenario_flags(CLI::App* cmd, Scenario& s) {
    cmd->add_option("--n", s.n, "node count (even)");
    cmd->add_option("--m", s.m, "grid side in cells");
    cmd->add_option("--B", s.B, "relay buffer size in packets");
    cmd->add_option("--alpha", s.alpha, "source-to-relay share in [0,1]");
    cmd->add_option("--lambda", s.lambda, "arrival rate, packets/slot/node");
    cmd->add_option("--rho", s.rho,
                    "load factor; overrides --lambda with rho * capacity");
    cmd->add_option("--scheme", s.scheme, "lts or gts")
        ->check(CLI::IsMember({"lts", "gts"}));
    cmd->add_option("--mobility", s.mobility, "iid or rw")
        ->check(CLI::IsMember({"iid", "rw"}));
    cmd->add_option("--nu", s.nu, "GTS range parameter (cells)");
    cmd->add_option("--delta", s.delta, "GTS interference guard factor");
    cmd->add_option("--slots", s.slots, "slots per replication");
    cmd->add_option("--warmup", s.warmup, "slots dropped from metrics (-1: 10%)");
    cmd->add_option("--seed", s.seed, "master seed");
    cmd->add_option("--replications", s.replications, "independent replications");
    cmd->add_option("--out", s.out_path, "output file (default stdout)");
    cmd->add_option("--format", s.format, "csv or jsonl")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    cmd->add_option("--config", s.config_path,
                    "key=value file with defaults; explicit flags win");
}

// Feeds config-file pairs into the subcommand's own options so they share
// the flags' conversion and validation. Options already set on the command
// line keep their values, which is what makes flags win over the file.
void apply_config_file(CLI::App* cmd, const std::string& path) {
    for (const auto& [key, value] : manet::cli::read_key_value_file(path)) {
        CLI::Option* op = cmd->get_option_no_throw("--" + key);
        if (op == nullptr)
            throw std::invalid_argument("unknown config key: " + key);
        if (op->count() > 0) continue;
        try {
            op->add_result(value);
            op->run_callback();
        } catch (const CLI::Error& e) {
            throw std::invalid_argument("config key " + key + ": " + e.what());
        }
    }
}

struct Output {
    std::unique_ptr<std::ofstream> file;
    std::unique_ptr<RowWriter> writer;
};

Output open_output(const Scenario& s) {
    Output o;
    const Format fmt = s.format == "jsonl" ? Format::JSONL : Format::CSV;
    if (s.out_path.empty()) {
        o.writer = std::make_unique<RowWriter>(std::cout, fmt);
    } else {
        o.file = std::make_unique<std::ofstream>(s.out_path);
        if (!*o.file)
            throw std::runtime_error("cannot open output file " + s.out_path);
        o.writer = std::make_unique<RowWriter>(*o.file, fmt);
    }
    return o;
}

manet::CapacityResult scenario_capacity(const Scenario& s, int n, int m, int B,
                                        double alpha) {
    if (s.scheme == "gts") {
        manet::GtsGeometry g{n, m, s.nu, s.delta};
        return manet::gts_capacity(g, B, alpha);
    }
    manet::LtsGeometry g{n, m};
    return manet::lts_capacity(g, B, alpha);
}

manet::TransmissionProbabilities scenario_probabilities(const Scenario& s, int n,
                                                        int m, double alpha) {
    if (s.scheme == "gts") {
        manet::GtsGeometry g{n, m, s.nu, s.delta};
        return manet::gts_transmission_probabilities(g, alpha);
    }
    manet::LtsGeometry g{n, m};
    return manet::lts_transmission_probabilities(g, alpha);
}

Row capacity_row(const Scenario& s, int n, int m, int B, double alpha) {
    Row row{{"n", static_cast<long long>(n)},
            {"m", static_cast<long long>(m)},
            {"B", static_cast<long long>(B)},
            {"alpha", alpha},
            {"scheme", s.scheme},
            {"p_sd", std::nan("")},
            {"p_sr", std::nan("")},
            {"p_rd", std::nan("")},
            {"p_b_saturated", std::nan("")},
            {"t_c", std::nan("")},
            {"error", std::string{}}};
    try {
        const auto probs = scenario_probabilities(s, n, m, alpha);
        const auto cap = scenario_capacity(s, n, m, B, alpha);
        row[5].second = probs.p_sd;
        row[6].second = probs.p_sr;
        row[7].second = probs.p_rd;
        row[8].second = cap.p_b_saturated;
        row[9].second = cap.t_c;
    } catch (const std::exception& e) {
        row[10].second = std::string(e.what());
    }
    return row;
}

int cmd_capacity(const Scenario& s) {
    Output out = open_output(s);
    out.writer->write(capacity_row(s, s.n, s.m, s.B, s.alpha));
    return manet::cli::kExitOk;
}

int cmd_sweep(const Scenario& s, const std::string& n_list,
              const std::string& m_list, const std::string& b_list,
              const std::string& alpha_list) {
    auto ns = manet::cli::parse_int_list(n_list);
    auto ms = manet::cli::parse_int_list(m_list);
    auto bs = manet::cli::parse_int_list(b_list);
    auto alphas = manet::cli::parse_double_list(alpha_list);
    std::sort(ns.begin(), ns.end());
    std::sort(ms.begin(), ms.end());
    std::sort(bs.begin(), bs.end());
    std::sort(alphas.begin(), alphas.end());

    Output out = open_output(s);
    for (long long n : ns)
        for (long long m : ms)
            for (long long B : bs)
                for (double alpha : alphas)
                    out.writer->write(capacity_row(s, static_cast<int>(n),
                                                   static_cast<int>(m),
                                                   static_cast<int>(B), alpha));
    return manet::cli::kExitOk;
}

int cmd_blocking(const Scenario& s, const std::string& lambda_list) {
    if (lambda_list.empty())
        throw std::invalid_argument("blocking needs --lambdas, as a flag or a config key");
    const auto lambdas = manet::cli::parse_double_list(lambda_list);
    const auto probs = scenario_probabilities(s, s.n, s.m, s.alpha);
    const auto cap = scenario_capacity(s, s.n, s.m, s.B, s.alpha);

    Output out = open_output(s);
    for (double lambda : lambdas) {
        Row row{{"lambda", lambda},
                {"rho", cap.t_c > 0 ? lambda / cap.t_c : std::nan("")},
                {"p_b", std::nan("")},
                {"mu_s", std::nan("")},
                {"saturated", false},
                {"error", std::string{}}};
        try {
            const auto sol =
                manet::solve_blocking_probability(lambda, probs, s.n, s.B);
            row[2].second = sol.p_b;
            row[3].second = sol.mu_s;
            row[4].second = sol.saturated;
        } catch (const std::exception& e) {
            row[5].second = std::string(e.what());
        }
        out.writer->write(row);
    }
    return manet::cli::kExitOk;
}

int cmd_optimize(const Scenario& s) {
    manet::OptimizationResult res;
    if (s.scheme == "gts") {
        manet::GtsGeometry g{s.n, s.m, s.nu, s.delta};
        res = manet::optimal_capacity_gts(g, s.B);
    } else {
        manet::LtsGeometry g{s.n, s.m};
        res = manet::optimal_capacity_lts(g, s.B);
    }
    Output out = open_output(s);
    out.writer->write(Row{{"n", static_cast<long long>(s.n)},
                          {"m", static_cast<long long>(s.m)},
                          {"B", static_cast<long long>(s.B)},
                          {"scheme", s.scheme},
                          {"gamma_star", res.gamma_star},
                          {"alpha_star", res.alpha_star},
                          {"t_c_star", res.t_c_star},
                          {"residual", res.residual}});
    return manet::cli::kExitOk;
}

manet::sim::SimConfig sim_config_of(const Scenario& s, double lambda) {
    manet::sim::SimConfig cfg;
    cfg.n = s.n;
    cfg.m = s.m;
    cfg.B = s.B;
    cfg.alpha = s.alpha;
    cfg.lambda = lambda;
    cfg.scheme =
        s.scheme == "gts" ? manet::sim::Scheme::GTS : manet::sim::Scheme::LTS;
    cfg.mobility = s.mobility == "rw" ? manet::sim::Mobility::RANDOM_WALK
                                      : manet::sim::Mobility::IID;
    cfg.nu = s.nu;
    cfg.delta = s.delta;
    cfg.slots = s.slots;
    cfg.warmup = s.warmup >= 0 ? s.warmup : s.slots / 10;
    cfg.seed = s.seed;
    return cfg;
}

int cmd_simulate(const Scenario& s) {
    const auto cap = scenario_capacity(s, s.n, s.m, s.B, s.alpha);
    const double lambda = s.rho >= 0.0 ? s.rho * cap.t_c : s.lambda;
    const auto cfg = sim_config_of(s, lambda);
    const auto summary = manet::sim::run_replications(cfg, s.replications);

    // Throughput should track the offered load while stable and cap out at
    // the analytic capacity; the smaller of the two is the reference.
    const double reference = std::min(lambda, cap.t_c);

    Output out = open_output(s);
    for (std::size_t k = 0; k < summary.runs.size(); ++k) {
        const auto& r = summary.runs[k];
        const double rel_err =
            reference > 0
                ? std::abs(r.throughput_all_flows - reference) / reference
                : 0.0;
        out.writer->write(Row{
            {"replication", static_cast<long long>(k)},
            {"n", static_cast<long long>(s.n)},
            {"m", static_cast<long long>(s.m)},
            {"B", static_cast<long long>(s.B)},
            {"alpha", s.alpha},
            {"lambda", lambda},
            {"scheme", s.scheme},
            {"mobility", s.mobility},
            {"nu", static_cast<long long>(s.nu)},
            {"delta", s.delta},
            {"slots", cfg.slots},
            {"warmup", cfg.warmup},
            {"seed",
             std::to_string(manet::sim::replication_seed(cfg.seed, static_cast<int>(k)))},
            {"throughput_tagged", r.throughput_tagged},
            {"throughput_all_flows", r.throughput_all_flows},
            {"empirical_rbp", r.empirical_rbp},
            {"mean_local_queue", r.mean_local_queue},
            {"tx_sd", r.tx_sd},
            {"tx_sr", r.tx_sr},
            {"tx_rd", r.tx_rd},
            {"arrivals_total", r.arrivals_total},
            {"delivered_total", r.delivered_total},
            {"local_backlog", r.local_backlog},
            {"relay_backlog", r.relay_backlog},
            {"t_c_analytic", cap.t_c},
            {"p_b_saturated_analytic", cap.p_b_saturated},
            {"throughput_reference", reference},
            {"rel_err_all_flows", rel_err},
        });
    }

    std::cerr << "replications=" << summary.runs.size()
              << " throughput_all_flows=" << summary.throughput_all_flows.mean
              << " +-" << summary.throughput_all_flows.ci_half
              << " throughput_tagged=" << summary.throughput_tagged.mean << " +-"
              << summary.throughput_tagged.ci_half
              << " empirical_rbp=" << summary.empirical_rbp.mean << " +-"
              << summary.empirical_rbp.ci_half
              << " mean_local_queue=" << summary.mean_local_queue.mean << " +-"
              << summary.mean_local_queue.ci_half << "\n";
    return manet::cli::kExitOk;
}

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
    double tv = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) tv += std::abs(a[i] - b[i]);
    return 0.5 * tv;
}

int cmd_validate(const Scenario& s, bool skip_sim) {
    Output out = open_output(s);
    bool all_pass = true;
    auto emit = [&](const std::string& check, const std::string& params,
                    double measured, double bound) {
        const bool pass = measured <= bound;
        all_pass = all_pass && pass;
        out.writer->write(Row{{"check", check},
                              {"params", params},
                              {"measured", measured},
                              {"bound", bound},
                              {"pass", pass}});
    };

    // Collapsed occupancy chain vs the brute-force per-destination chain.
    const double p_rd = 0.3;
    for (int n : {4, 5, 6})
        for (int B : {1, 2, 3})
            for (double beta : {0.5, 1.0, 2.0})
                for (double rho_s : {0.5, 1.0}) {
                    manet::oracle::QueueModel model{n, B, rho_s * beta * p_rd, p_rd};
                    const auto st = manet::oracle::stationary_distribution(model);
                    const auto marginal = manet::oracle::occupancy_marginal(st, B);
                    const auto emc = manet::emc_limiting_distribution(
                        manet::EmcParams{n, B, beta, rho_s});
                    const std::string params =
                        "n=" + std::to_string(n) + " B=" + std::to_string(B) +
                        " beta=" + manet::cli::format_value(beta) +
                        " rho_s=" + manet::cli::format_value(rho_s);
                    emit("occupancy_tv", params, total_variation(emc.pi, marginal),
                         1e-9);
                    emit("blocking_match", params,
                         std::abs(emc.pi.back() - marginal.back()), 1e-9);
                }

    // Conditional law of distinct destinations, oracle vs closed form.
    for (int n : {4, 5, 6}) {
        manet::oracle::QueueModel model{n, 3, 0.3, 0.3};
        const auto st = manet::oracle::stationary_distribution(model);
        for (int total = 1; total <= 3; ++total) {
            const auto law = manet::oracle::occupied_destination_marginal(st, total);
            double worst = 0.0;
            for (int k = 1; k <= total && k <= n - 2; ++k)
                worst = std::max(worst, std::abs(law[static_cast<std::size_t>(k)] -
                                                 manet::conditional_occupancy(n, total, k)));
            emit("conditional_occupancy",
                 "n=" + std::to_string(n) + " i=" + std::to_string(total), worst,
                 1e-9);
        }
    }

    // Equal-split capacity must match the closed form it specializes.
    for (int n : {8, 72})
        for (int B : {1, 5, 12}) {
            manet::TransmissionProbabilities probs{0.02, 0.03, 0.03};
            const double direct =
                manet::throughput_capacity(probs, n, B, 1.0).t_c;
            const double closed = manet::capacity_alpha_half(probs, n, B);
            emit("alpha_half_identity",
                 "n=" + std::to_string(n) + " B=" + std::to_string(B),
                 std::abs(direct - closed), 1e-12);
        }

    if (!skip_sim) {
        // Saturated short run against the closed-form capacity.
        Scenario sim = s;
        sim.n = 32;
        sim.m = 4;
        sim.B = 3;
        sim.alpha = 0.5;
        sim.scheme = "lts";
        sim.slots = 400000;
        sim.warmup = 40000;
        sim.replications = 2;
        const auto cap = scenario_capacity(sim, sim.n, sim.m, sim.B, sim.alpha);
        const auto cfg = sim_config_of(sim, 1.5 * cap.t_c);
        const auto summary = manet::sim::run_replications(cfg, sim.replications);
        emit("simulated_capacity", "n=32 m=4 B=3 alpha=0.5 rho=1.5",
             std::abs(summary.throughput_all_flows.mean - cap.t_c) / cap.t_c,
             0.05);
        emit("simulated_rbp", "n=32 m=4 B=3 alpha=0.5 rho=1.5",
             std::abs(summary.empirical_rbp.mean - cap.p_b_saturated) /
                 cap.p_b_saturated,
             0.05);
    }

    return all_pass ? manet::cli::kExitOk : manet::cli::kExitValidationFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"capacity and blocking analysis for buffer-limited two-hop relay"};
    app.require_subcommand(1);

    Scenario s;
    std::string lambda_list;
    std::string n_list = "72", m_list = "6", b_list = "5", alpha_list = "0.5";
    bool skip_sim = false;

    auto* cap = app.add_subcommand("capacity", "closed-form capacity for one scenario");
    add_scenario_flags(cap, s);

    auto* blk = app.add_subcommand("blocking", "blocking curve over arrival rates");
    add_scenario_flags(blk, s);
    blk->add_option("--lambdas", lambda_list, "comma-separated arrival rates");

    auto* opt = app.add_subcommand("optimize", "optimal transmission ratio");
    add_scenario_flags(opt, s);

    auto* sim = app.add_subcommand("simulate", "discrete-time simulation");
    add_scenario_flags(sim, s);

    auto* swp = app.add_subcommand("sweep", "capacity over crossed parameter lists");
    add_scenario_flags(swp, s);
    swp->add_option("--n-list", n_list, "comma-separated node counts");
    swp->add_option("--m-list", m_list, "comma-separated grid sides");
    swp->add_option("--B-list", b_list, "comma-separated buffer sizes");
    swp->add_option("--alpha-list", alpha_list, "comma-separated ratios");

    auto* val = app.add_subcommand("validate", "oracle and simulation cross-checks");
    add_scenario_flags(val, s);
    val->add_flag("--skip-sim", skip_sim, "only run the analytic/oracle checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // --help lands here with exit code 0; anything else is a usage error.
        const int code = app.exit(e);
        return code == 0 ? manet::cli::kExitOk : manet::cli::kExitUsage;
    }

    try {
        if (!s.config_path.empty())
            for (CLI::App* sub : app.get_subcommands())
                apply_config_file(sub, s.config_path);
        if (cap->parsed()) return cmd_capacity(s);
        if (blk->parsed()) return cmd_blocking(s, lambda_list);
        if (opt->parsed()) return cmd_optimize(s);
        if (sim->parsed()) return cmd_simulate(s);
        if (swp->parsed()) return cmd_sweep(s, n_list, m_list, b_list, alpha_list);
        if (val->parsed()) return cmd_validate(s, skip_sim);
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return manet::cli::kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return manet::cli::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return manet::cli::kExitSolverFailed;
    }
    return manet::cli::kExitUsage;
}
