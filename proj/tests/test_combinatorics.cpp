#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "manet/combinatorics.hpp"

namespace {

// Brute-force enumeration of all ways to spread `total` packets over
// `slots` destinations. Returns one entry per arrangement, each entry the
// number of destinations actually holding packets. Independent of the
// closed forms under test: this is plain counting.
std::vector<int> enumerate_occupied_counts(int slots, int total) {
    std::vector<int> occupied;
    std::vector<int> counts(static_cast<std::size_t>(slots), 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == slots) {
            if (left == 0) {
                int k = 0;
                for (int c : counts)
                    if (c > 0) ++k;
                occupied.push_back(k);
            }
            return;
        }
        for (int c = 0; c <= left; ++c) {
            counts[static_cast<std::size_t>(pos)] = c;
            rec(pos + 1, left - c);
        }
        counts[static_cast<std::size_t>(pos)] = 0;
    };
    rec(0, total);
    return occupied;
}

std::uint64_t binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int j = 1; j <= k; ++j)
        r = r * static_cast<std::uint64_t>(n - k + j) / static_cast<std::uint64_t>(j);
    return r;
}

}  // namespace

TEST_CASE("composition counts match direct binomials and hand values") {
    CHECK(manet::composition_count(4, 0) == 1.0);
    CHECK(manet::composition_count(4, 2) == 3.0);
    CHECK(manet::composition_count(5, 3) == 10.0);
    for (int n = 4; n <= 9; ++n)
        for (long long i = 0; i <= 12; ++i)
            CHECK(manet::composition_count(n, i) ==
                  static_cast<double>(binom(n - 3 + static_cast<int>(i),
                                            static_cast<int>(i))));
}

TEST_CASE("composition counts agree with stars-and-bars enumeration") {
    for (int n = 4; n <= 7; ++n)
        for (int i = 0; i <= 6; ++i) {
            const auto arrangements = enumerate_occupied_counts(n - 2, i);
            CHECK(manet::composition_count(n, i) ==
                  static_cast<double>(arrangements.size()));
        }
}

TEST_CASE("composition count argument checks") {
    CHECK_THROWS_AS(manet::composition_count(3, 1), std::domain_error);
    CHECK_THROWS_AS(manet::composition_count(4, -1), std::domain_error);
    // n=1e6, i=1e4 is far beyond 2^53; the exact form must refuse rather
    // than silently round.
    CHECK_THROWS_AS(manet::composition_count(1000000, 10000), std::domain_error);
}

TEST_CASE("log form tracks the exact form and survives huge arguments") {
    for (int n : {4, 8, 40})
        for (long long i : {0LL, 1LL, 5LL, 20LL}) {
            double exact = manet::composition_count(n, i);
            CHECK(manet::log_composition_count(n, i) ==
                  doctest::Approx(std::log(exact)).epsilon(1e-12));
        }
    double big = manet::log_composition_count(1000000, 10000);
    CHECK(std::isfinite(big));
    CHECK(big > 0.0);
}

TEST_CASE("conditional occupancy reproduces enumeration frequencies") {
    for (int n = 4; n <= 7; ++n)
        for (int i = 1; i <= 6; ++i) {
            const auto arrangements = enumerate_occupied_counts(n - 2, i);
            const int kmax = std::min(i, n - 2);
            for (int k = 1; k <= kmax; ++k) {
                int hits = 0;
                for (int occ : arrangements)
                    if (occ == k) ++hits;
                const double expected =
                    static_cast<double>(hits) / static_cast<double>(arrangements.size());
                CHECK(manet::conditional_occupancy(n, i, k) ==
                      doctest::Approx(expected).epsilon(1e-12));
            }
        }
}

TEST_CASE("conditional occupancy hand values") {
    CHECK(manet::conditional_occupancy(4, 2, 1) == doctest::Approx(2.0 / 3.0));
    CHECK(manet::conditional_occupancy(4, 2, 2) == doctest::Approx(1.0 / 3.0));
    CHECK(manet::conditional_occupancy(5, 1, 1) == doctest::Approx(1.0));
}

TEST_CASE("conditional occupancy matches the binomial closed form") {
    for (int n : {4, 5, 6, 8})
        for (int i : {1, 2, 3, 5, 8}) {
            const int kmax = std::min(i, n - 2);
            for (int k = 1; k <= kmax; ++k) {
                const double closed =
                    static_cast<double>(binom(n - 2, k)) *
                    static_cast<double>(binom(i - 1, k - 1)) /
                    static_cast<double>(binom(n - 3 + i, i));
                CHECK(manet::conditional_occupancy(n, i, k) ==
                      doctest::Approx(closed).epsilon(1e-14));
            }
        }
}

TEST_CASE("conditional occupancy sums to one over admissible k") {
    for (int n : {4, 5, 6, 10, 30})
        for (long long i : {1LL, 2LL, 7LL, 25LL}) {
            const long long kmax = std::min<long long>(i, n - 2);
            double total = 0.0;
            for (long long k = 1; k <= kmax; ++k)
                total += manet::conditional_occupancy(n, i, k);
            CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        }
}

TEST_CASE("conditional occupancy rejects out-of-range k") {
    CHECK_THROWS_AS(manet::conditional_occupancy(4, 2, 0), std::domain_error);
    CHECK_THROWS_AS(manet::conditional_occupancy(4, 2, 3), std::domain_error);
    CHECK_THROWS_AS(manet::conditional_occupancy(5, 0, 1), std::domain_error);
}

TEST_CASE("compensated summation holds up against cancellation") {
    std::vector<double> xs{1e16, 1.0, -1e16};
    CHECK(manet::kahan_sum(xs) == 1.0);
    std::vector<double> many(100000, 0.1);
    CHECK(manet::kahan_sum(many) == doctest::Approx(10000.0).epsilon(1e-14));
}

TEST_CASE("scaled representation round-trips and scales exactly") {
    auto s = manet::Scaled::from(0.75);
    CHECK(s.to_double() == 0.75);
    CHECK(s.times(2.0).to_double() == 1.5);
    // A chain of doublings past the double range must still come back
    // correct relative to a shifted reference.
    auto big = manet::Scaled::one();
    for (int j = 0; j < 1200; ++j) big = big.times(2.0);
    CHECK(big.to_double() == std::numeric_limits<double>::infinity());
    CHECK(big.to_double_shifted(big.exp2) == 0.5);
}
