#include "manet/combinatorics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace manet {

Scaled Scaled::from(double v) {
    if (v == 0.0) return {};
    int e = 0;
    double m = std::frexp(v, &e);
    return {m, e};
}

Scaled Scaled::times(double factor) const {
    if (mant == 0.0 || factor == 0.0) return {};
    int e = 0;
    double m = std::frexp(mant * factor, &e);
    return {m, exp2 + e};
}

double Scaled::to_double() const {
    if (mant == 0.0) return 0.0;
    if (exp2 > 1100) return std::numeric_limits<double>::infinity();
    if (exp2 < -1100) return 0.0;
    return std::ldexp(mant, static_cast<int>(exp2));
}

double Scaled::to_double_shifted(long ref) const {
    if (mant == 0.0) return 0.0;
    long e = exp2 - ref;
    if (e < -1070) return 0.0;
    if (e > 1020) return std::numeric_limits<double>::infinity();
    return std::ldexp(mant, static_cast<int>(e));
}

double kahan_sum(const std::vector<double>& xs) {
    double s = 0.0, c = 0.0;
    for (double x : xs) {
        double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    return s + c;
}

namespace {

void check_composition_args(int n, long long i) {
    if (n < 4) throw std::domain_error("composition_count: n must be >= 4");
    if (i < 0) throw std::domain_error("composition_count: i must be >= 0");
}

}  // namespace

double composition_count(int n, long long i) {
    check_composition_args(n, i);
    // binomial(n-3+i, i) by the multiplicative formula; every intermediate
    // value is an exact integer, so the result is exact while it fits the
    // 2^53 integer range of a double.
    constexpr double kExactLimit = 9007199254740992.0;  // 2^53
    double acc = 1.0;
    for (long long j = 1; j <= i; ++j) {
        acc = acc * static_cast<double>(n - 3 + j) / static_cast<double>(j);
        if (acc >= kExactLimit)
            throw std::domain_error(
                "composition_count: value exceeds exact double range, "
                "use log_composition_count");
    }
    return std::round(acc);
}

double log_composition_count(int n, long long i) {
    check_composition_args(n, i);
    if (i == 0) return 0.0;
    double a = static_cast<double>(n - 3 + i);
    return std::lgamma(a + 1.0) - std::lgamma(static_cast<double>(i) + 1.0) -
           std::lgamma(a - static_cast<double>(i) + 1.0);
}

double conditional_occupancy(int n, long long i, long long k) {
    if (n < 4) throw std::domain_error("conditional_occupancy: n must be >= 4");
    if (i < 1) throw std::domain_error("conditional_occupancy: i must be >= 1");
    long long kmax = std::min<long long>(i, n - 2);
    if (k < 1 || k > kmax)
        throw std::domain_error("conditional_occupancy: k out of [1, min(i, n-2)]");

    // Unnormalized weights w(k) = C(n-2,k) * C(i-1,k-1), built from
    //   w(k+1)/w(k) = ((n-2-k)/(k+1)) * ((i-k)/k),  w(1) = n-2.
    // By Vandermonde the weights sum to C(n-3+i, i), so normalizing
    // reproduces the closed form without ever forming a large binomial.
    Scaled w = Scaled::from(static_cast<double>(n - 2));
    std::vector<Scaled> ws;
    ws.reserve(static_cast<size_t>(kmax));
    ws.push_back(w);
    for (long long j = 1; j < kmax; ++j) {
        double ratio = (static_cast<double>(n - 2 - j) / static_cast<double>(j + 1)) *
                       (static_cast<double>(i - j) / static_cast<double>(j));
        w = w.times(ratio);
        ws.push_back(w);
    }
    long ref = ws[0].exp2;
    for (const Scaled& s : ws) ref = std::max(ref, s.exp2);
    std::vector<double> flat(ws.size());
    for (size_t j = 0; j < ws.size(); ++j) flat[j] = ws[j].to_double_shifted(ref);
    double total = kahan_sum(flat);
    return flat[static_cast<size_t>(k - 1)] / total;
}

}  // namespace manet
