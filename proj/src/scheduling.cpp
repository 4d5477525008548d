#include "manet/scheduling.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace manet {

namespace {

void check_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::domain_error("alpha must lie in [0, 1]");
}

double beta_of(double alpha) {
    if (alpha >= 1.0) return std::numeric_limits<double>::infinity();
    return alpha / (1.0 - alpha);
}

}  // namespace

int GtsGeometry::epsilon() const { return gts_epsilon(nu, delta, m); }

int GtsGeometry::cells_per_group() const {
    int eps = epsilon();
    return (m * m) / (eps * eps);
}

void validate_contact(const LtsGeometry& g) {
    if (g.n < 2 || g.n % 2 != 0)
        throw std::domain_error("LtsGeometry: n must be even and >= 2");
    if (g.m < 1) throw std::domain_error("LtsGeometry: m must be >= 1");
}

void validate_contact(const GtsGeometry& g) {
    if (g.n < 2 || g.n % 2 != 0)
        throw std::domain_error("GtsGeometry: n must be even and >= 2");
    if (g.m < 1) throw std::domain_error("GtsGeometry: m must be >= 1");
    if (g.nu < 1) throw std::domain_error("GtsGeometry: nu must be >= 1");
    if (g.delta < 0.0) throw std::domain_error("GtsGeometry: delta must be >= 0");
    if (2 * g.nu - 1 > g.m)
        throw std::domain_error("GtsGeometry: coverage (2*nu-1) exceeds the grid side");
}

int gts_epsilon(int nu, double delta, int m) {
    if (nu < 1) throw std::domain_error("gts_epsilon: nu must be >= 1");
    if (delta < 0.0) throw std::domain_error("gts_epsilon: delta must be >= 0");
    if (m < 1) throw std::domain_error("gts_epsilon: m must be >= 1");
    double raw = (1.0 + delta) * std::sqrt(2.0) * nu + nu;
    return std::min(static_cast<int>(std::ceil(raw)), m);
}

std::pair<double, double> lts_contact_probabilities(const LtsGeometry& geom) {
    validate_contact(geom);
    double m2 = static_cast<double>(geom.m) * geom.m;
    double log_miss = std::log1p(-1.0 / m2);  // log P(one node avoids a fixed cell)
    double p0 = 1.0 - std::exp(geom.n * log_miss) -
                (geom.n / m2) * std::exp((geom.n - 1) * log_miss);
    double m4 = m2 * m2;
    double p1 = 1.0 - std::exp((geom.n / 2) * std::log1p(-1.0 / m4));
    return {p0, p1};
}

std::pair<double, double> gts_contact_probabilities(const GtsGeometry& geom) {
    validate_contact(geom);
    double m2 = static_cast<double>(geom.m) * geom.m;
    double l = static_cast<double>(geom.coverage_cells());
    // No transmission at an active cell only if the cell is empty, or its
    // sole occupant has nobody else within the l-cell coverage.
    double p3 = 1.0 - std::exp(geom.n * std::log1p(-1.0 / m2)) -
                (geom.n / m2) * std::exp((geom.n - 1) * std::log1p(-l / m2));
    // A source-destination pair misses the cell unless one member sits in it
    // with the partner in coverage: per pair that is (2l-1)/m^4.
    double m4 = m2 * m2;
    double p4 = 1.0 - std::exp((geom.n / 2) * std::log1p(-(2.0 * l - 1.0) / m4));
    return {p3, p4};
}

TransmissionProbabilities lts_transmission_probabilities(const LtsGeometry& geom,
                                                         double alpha) {
    check_alpha(alpha);
    auto [p0, p1] = lts_contact_probabilities(geom);
    double d = geom.density();
    TransmissionProbabilities t;
    t.p_sd = p1 / d;
    t.p_sr = alpha * (p0 - p1) / d;
    t.p_rd = (1.0 - alpha) * (p0 - p1) / d;
    return t;
}

TransmissionProbabilities gts_transmission_probabilities(const GtsGeometry& geom,
                                                         double alpha) {
    check_alpha(alpha);
    auto [p3, p4] = gts_contact_probabilities(geom);
    double share = static_cast<double>(geom.cells_per_group()) / geom.n;
    TransmissionProbabilities t;
    t.p_sd = share * p4;
    t.p_sr = alpha * share * (p3 - p4);
    t.p_rd = (1.0 - alpha) * share * (p3 - p4);
    return t;
}

CapacityResult lts_capacity(const LtsGeometry& geom, int B, double alpha) {
    if (geom.n < 4) throw std::domain_error("lts_capacity: n must be >= 4");
    return throughput_capacity(lts_transmission_probabilities(geom, alpha), geom.n, B,
                               beta_of(alpha));
}

CapacityResult gts_capacity(const GtsGeometry& geom, int B, double alpha) {
    if (geom.n < 4) throw std::domain_error("gts_capacity: n must be >= 4");
    return throughput_capacity(gts_transmission_probabilities(geom, alpha), geom.n, B,
                               beta_of(alpha));
}

}  // namespace manet
