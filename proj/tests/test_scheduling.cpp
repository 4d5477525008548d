#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "manet/scheduling.hpp"
#include "manet/sim/rng.hpp"

using manet::GtsGeometry;
using manet::LtsGeometry;
using manet::TransmissionProbabilities;

namespace {

struct McEstimate {
    double p = 0.0;
    double sigma = 0.0;
};

McEstimate rate(long long hits, long long trials) {
    double p = static_cast<double>(hits) / static_cast<double>(trials);
    double sigma = std::sqrt(std::max(p * (1.0 - p), 1e-12) /
                             static_cast<double>(trials));
    return {p, sigma};
}

// Throws nodes uniformly into the grid and counts, for the fixed cell 0,
// how often it holds two nodes and how often it holds a both-ends
// source-destination pair. Pure sampling, shares nothing with the closed
// forms under test.
void sample_lts(int n, int m, long long trials, McEstimate& crowd,
                McEstimate& pair) {
    manet::sim::Rng rng(0x5eedf00dULL);
    const std::uint32_t cells = static_cast<std::uint32_t>(m) * m;
    std::vector<std::uint32_t> cell(static_cast<std::size_t>(n));
    long long crowd_hits = 0, pair_hits = 0;
    for (long long t = 0; t < trials; ++t) {
        int in_zero = 0;
        for (int u = 0; u < n; ++u) {
            cell[static_cast<std::size_t>(u)] = rng.below(cells);
            if (cell[static_cast<std::size_t>(u)] == 0) ++in_zero;
        }
        if (in_zero >= 2) ++crowd_hits;
        for (int j = 0; j < n / 2; ++j)
            if (cell[static_cast<std::size_t>(2 * j)] == 0 &&
                cell[static_cast<std::size_t>(2 * j + 1)] == 0) {
                ++pair_hits;
                break;
            }
    }
    crowd = rate(crowd_hits, trials);
    pair = rate(pair_hits, trials);
}

bool in_window(int cell, int cx, int cy, int m, int nu) {
    const int x = cell % m, y = cell / m;
    return std::abs(x - cx) <= nu - 1 && std::abs(y - cy) <= nu - 1;
}

// Same idea for the grouped scheme: for one fixed active cell, how often a
// transmission of any kind, or a direct delivery, can be scheduled there.
// Windows are clipped at the grid edge exactly like the simulator clips
// them, so estimates at interior cells probe the closed form and estimates
// at corner cells probe the clipping loss.
void sample_gts(int n, int m, int nu, int cx, int cy, long long trials,
                McEstimate& any_tx, McEstimate& direct) {
    manet::sim::Rng rng(0xfeedbeefULL);
    const std::uint32_t cells = static_cast<std::uint32_t>(m) * m;
    const int c0 = cy * m + cx;
    std::vector<std::uint32_t> cell(static_cast<std::size_t>(n));
    long long any_hits = 0, direct_hits = 0;
    for (long long t = 0; t < trials; ++t) {
        int in_cell = 0, in_win = 0;
        bool pair_hit = false;
        for (int u = 0; u < n; ++u)
            cell[static_cast<std::size_t>(u)] = rng.below(cells);
        for (int u = 0; u < n; ++u) {
            const int c = static_cast<int>(cell[static_cast<std::size_t>(u)]);
            if (c == c0) ++in_cell;
            if (in_window(c, cx, cy, m, nu)) ++in_win;
        }
        for (int j = 0; j < n / 2; ++j) {
            const int a = static_cast<int>(cell[static_cast<std::size_t>(2 * j)]);
            const int b = static_cast<int>(cell[static_cast<std::size_t>(2 * j + 1)]);
            if ((a == c0 && in_window(b, cx, cy, m, nu)) ||
                (b == c0 && in_window(a, cx, cy, m, nu))) {
                pair_hit = true;
                break;
            }
        }
        if (in_cell >= 1 && in_win >= 2) ++any_hits;
        if (pair_hit) ++direct_hits;
    }
    any_tx = rate(any_hits, trials);
    direct = rate(direct_hits, trials);
}

}  // namespace

TEST_CASE("interference spacing examples") {
    CHECK(manet::gts_epsilon(1, 1.0, 10) == 4);
    CHECK(manet::gts_epsilon(1, 1.0, 3) == 3);
    CHECK(manet::gts_epsilon(2, 0.0, 20) == 5);
    CHECK(manet::gts_epsilon(1, 0.0, 10) == 3);

    GtsGeometry g{200, 10, 1, 1.0};
    CHECK(g.epsilon() == 4);
    CHECK(g.cells_per_group() == 6);
    CHECK(g.coverage_cells() == 1);
}

TEST_CASE("single-cell degenerate grid") {
    auto [p0, p1] = lts_contact_probabilities(LtsGeometry{2, 1});
    CHECK(p0 == 1.0);
    CHECK(p1 == 1.0);
}

TEST_CASE("two nodes on a 2x2 grid are exact by hand") {
    auto [p0, p1] = lts_contact_probabilities(LtsGeometry{2, 2});
    CHECK(p0 == doctest::Approx(1.0 / 16.0).epsilon(1e-14));
    CHECK(p1 == doctest::Approx(1.0 / 16.0).epsilon(1e-14));
}

TEST_CASE("contact probability orderings") {
    for (int n : {8, 40, 100})
        for (int m : {2, 5, 9}) {
            auto [p0, p1] = lts_contact_probabilities(LtsGeometry{n, m});
            CHECK(p1 <= p0);
            CHECK(p0 > 0.0);
            CHECK(p0 < 1.0);
            GtsGeometry g{n, m, 1, 0.5};
            auto [p3, p4] = gts_contact_probabilities(g);
            CHECK(p4 <= p3);
            // Range one covers exactly the own cell, so the grouped contact
            // events coincide with the per-cell ones.
            CHECK(p3 == doctest::Approx(p0).epsilon(1e-13));
            CHECK(p4 == doctest::Approx(p1).epsilon(1e-13));
        }
}

TEST_CASE("cell contact probabilities match Monte Carlo placement") {
    const long long trials = 2000000;
    McEstimate crowd, pair;
    sample_lts(72, 6, trials, crowd, pair);
    auto [p0, p1] = lts_contact_probabilities(LtsGeometry{72, 6});
    CHECK(std::abs(crowd.p - p0) <= 4.0 * crowd.sigma);
    CHECK(std::abs(pair.p - p1) <= 4.0 * pair.sigma);

    sample_lts(10, 3, trials, crowd, pair);
    auto [q0, q1] = lts_contact_probabilities(LtsGeometry{10, 3});
    CHECK(std::abs(crowd.p - q0) <= 4.0 * crowd.sigma);
    CHECK(std::abs(pair.p - q1) <= 4.0 * pair.sigma);
}

TEST_CASE("grouped contact probabilities match Monte Carlo at range one") {
    const long long trials = 2000000;
    McEstimate any_tx, direct;
    // nu = 1: window is the cell itself, every cell is interior.
    sample_gts(20, 4, 1, 1, 2, trials, any_tx, direct);
    auto [p3, p4] = gts_contact_probabilities(GtsGeometry{20, 4, 1, 0.0});
    CHECK(std::abs(any_tx.p - p3) <= 4.0 * any_tx.sigma);
    CHECK(std::abs(direct.p - p4) <= 4.0 * direct.sigma);
}

TEST_CASE("grouped contact closed form is exact at interior cells") {
    const long long trials = 2000000;
    McEstimate any_tx, direct;
    // nu = 2 on a 6x6 grid: cell (2,2) has its full 3x3 window inside.
    sample_gts(16, 6, 2, 2, 2, trials, any_tx, direct);
    auto [p3, p4] = gts_contact_probabilities(GtsGeometry{16, 6, 2, 0.0});
    CHECK(std::abs(any_tx.p - p3) <= 4.0 * any_tx.sigma);
    CHECK(std::abs(direct.p - p4) <= 4.0 * direct.sigma);
}

TEST_CASE("edge clipping only ever reduces grouped contact") {
    // The closed form assumes the full coverage window. A corner cell loses
    // part of it to the grid edge, so its true contact probabilities must
    // come out below the formula; this quantifies the known bias for
    // range-two setups rather than hiding it.
    const long long trials = 1000000;
    McEstimate any_tx, direct;
    sample_gts(16, 6, 2, 0, 0, trials, any_tx, direct);
    auto [p3, p4] = gts_contact_probabilities(GtsGeometry{16, 6, 2, 0.0});
    CHECK(any_tx.p <= p3 + 4.0 * any_tx.sigma);
    CHECK(direct.p <= p4 + 4.0 * direct.sigma);
    // The corner loss is real: 5 of 9 window cells are gone, and the gap is
    // far larger than Monte Carlo noise.
    CHECK(direct.p < p4 - 10.0 * direct.sigma);
}

TEST_CASE("per-node opportunity split preserves the cell budget") {
    for (int n : {8, 72})
        for (int m : {3, 6})
            for (double alpha : {0.2, 0.5, 0.9}) {
                LtsGeometry geom{n, m};
                auto [p0, p1] = lts_contact_probabilities(geom);
                TransmissionProbabilities p =
                    lts_transmission_probabilities(geom, alpha);
                const double budget = n * (p.p_sd + p.p_sr + p.p_rd);
                CHECK(budget == doctest::Approx(m * m * p0).epsilon(1e-12));
                CHECK(n * p.p_sd == doctest::Approx(m * m * p1).epsilon(1e-12));
                CHECK(p.p_sr ==
                      doctest::Approx(alpha / (1 - alpha) * p.p_rd).epsilon(1e-12));
            }

    for (double alpha : {0.3, 0.5}) {
        GtsGeometry geom{200, 10, 1, 1.0};
        auto [p3, p4] = gts_contact_probabilities(geom);
        TransmissionProbabilities p = gts_transmission_probabilities(geom, alpha);
        const double J = geom.cells_per_group();
        CHECK(200 * (p.p_sd + p.p_sr + p.p_rd) ==
              doctest::Approx(J * p3).epsilon(1e-12));
        CHECK(200 * p.p_sd == doctest::Approx(J * p4).epsilon(1e-12));
    }
}

TEST_CASE("reference operating point, dense local scheme") {
    // 72 nodes on a 6x6 grid, balanced routing. These values are frozen
    // against an independent evaluation of the closed forms.
    TransmissionProbabilities p =
        lts_transmission_probabilities(LtsGeometry{72, 6}, 0.5);
    CHECK(p.p_sd == doctest::Approx(0.013702975668617945).epsilon(1e-14));
    CHECK(p.p_sr == doctest::Approx(0.14260017796234045).epsilon(1e-14));
    CHECK(p.p_rd == doctest::Approx(0.14260017796234045).epsilon(1e-14));
}

TEST_CASE("reference operating point, grouped scheme") {
    // 200 nodes, 10x10 grid, range one, guard one, alpha 0.3.
    TransmissionProbabilities p =
        gts_transmission_probabilities(GtsGeometry{200, 10, 1, 1.0}, 0.3);
    CHECK(p.p_sd == doctest::Approx(0.0002985198392588761).epsilon(1e-14));
    CHECK(p.p_sr == doctest::Approx(0.005268632886174099).epsilon(1e-14));
    CHECK(p.p_rd == doctest::Approx(0.01229347673440623).epsilon(1e-14));
}

TEST_CASE("geometry validation") {
    CHECK_THROWS_AS(lts_contact_probabilities(LtsGeometry{7, 3}),
                    std::domain_error);
    CHECK_THROWS_AS(lts_contact_probabilities(LtsGeometry{0, 3}),
                    std::domain_error);
    CHECK_THROWS_AS(lts_contact_probabilities(LtsGeometry{8, 0}),
                    std::domain_error);
    CHECK_THROWS_AS(gts_contact_probabilities(GtsGeometry{8, 3, 0, 0.0}),
                    std::domain_error);
    CHECK_THROWS_AS(gts_contact_probabilities(GtsGeometry{8, 3, 2, -0.5}),
                    std::domain_error);
    // Range must fit the grid: 2*nu-1 <= m.
    CHECK_THROWS_AS(gts_contact_probabilities(GtsGeometry{8, 3, 3, 0.0}),
                    std::domain_error);
    CHECK_THROWS_AS(lts_transmission_probabilities(LtsGeometry{8, 3}, 1.5),
                    std::domain_error);
}
