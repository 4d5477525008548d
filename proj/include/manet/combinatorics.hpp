#pragma once

#include <cstdint>
#include <vector>

namespace manet {

/**
 * Floating-point value kept as mantissa * 2^exp2 with the mantissa
 * normalized into [0.5, 1). Multiplying chains of ratios this way keeps
 * every step exact up to one rounding, with no overflow or underflow,
 * which is what the occupancy-weight recursions need when buffers or
 * node counts get large.
 */
struct Scaled {
    double mant = 0.0;
    long exp2 = 0;

    static Scaled one() { return {0.5, 1}; }
    static Scaled from(double v);
    Scaled times(double factor) const;
    double to_double() const;
    // value / 2^ref, used to bring a whole family onto a common scale
    double to_double_shifted(long ref) const;
    bool is_zero() const { return mant == 0.0; }
};

// Compensated (Neumaier) summation; keeps normalization errors near one ulp
// even for thousands of terms.
double kahan_sum(const std::vector<double>& xs);

// Number of ways i indistinct packets can be spread over the n-2 possible
// destinations of a relay queue: binomial(n-3+i, i). Exact integer value;
// arguments whose count exceeds 2^53 are rejected (use the log form there).
double composition_count(int n, long long i);

// log of composition_count, valid through n <= 1e6, i <= 1e4 and beyond.
double log_composition_count(int n, long long i);

// P(queue holds packets for exactly k distinct destinations | occupancy i)
// = C(n-2,k) * C(i-1,k-1) / C(n-3+i,i).
// Evaluated by a ratio recursion over k with explicit normalization, so the
// admissible-k family always sums to one and no binomial is materialized.
double conditional_occupancy(int n, long long i, long long k);

}  // namespace manet
