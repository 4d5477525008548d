#pragma once

#include <utility>

#include "manet/capacity.hpp"

namespace manet {

/**
 * Cell-partitioned network under local transmission scheduling: one
 * transmission per cell per slot, transmitter and receiver in the same cell.
 */
struct LtsGeometry {
    int n = 4;  // node count, even
    int m = 1;  // grid side in cells

    double density() const { return static_cast<double>(n) / (static_cast<double>(m) * m); }
};

/**
 * Group-based transmission scheduling: the grid's cells are organized into
 * epsilon^2 groups of J = floor(m^2/eps^2) cells; one group is active per
 * slot and an active cell's transmitter reaches nodes up to nu-1 cells away
 * in each axis (l = (2*nu-1)^2 cells of coverage, grid-clipped).
 */
struct GtsGeometry {
    int n = 4;
    int m = 1;
    int nu = 1;         // transmission range parameter, cells
    double delta = 0.0; // interference guard factor

    int epsilon() const;
    int cells_per_group() const;  // J
    int coverage_cells() const { return (2 * nu - 1) * (2 * nu - 1); }  // l
};

// Contact-probability layer accepts any even n >= 2; the capacity layer
// below needs the chain's n >= 4.
void validate_contact(const LtsGeometry& g);
void validate_contact(const GtsGeometry& g);

// Spacing needed so concurrently active cells never interfere:
// min(ceil((1+delta)*sqrt(2)*nu + nu), m).
int gts_epsilon(int nu, double delta, int m);

// p0: P(a fixed cell holds >= 2 nodes); p1: P(it holds >= 1 full
// source-destination pair). Both evaluated in log space.
std::pair<double, double> lts_contact_probabilities(const LtsGeometry& geom);

// p3: P(an active cell can schedule any transmission: a node inside plus a
// distinct node within coverage); p4: P(it can schedule a direct
// source-destination delivery).
std::pair<double, double> gts_contact_probabilities(const GtsGeometry& geom);

// Per-node opportunity split: each cell's single opportunity is shared
// equally across the n nodes, the non-direct share split alpha:(1-alpha).
TransmissionProbabilities lts_transmission_probabilities(const LtsGeometry& geom,
                                                         double alpha);
TransmissionProbabilities gts_transmission_probabilities(const GtsGeometry& geom,
                                                         double alpha);

CapacityResult lts_capacity(const LtsGeometry& geom, int B, double alpha);
CapacityResult gts_capacity(const GtsGeometry& geom, int B, double alpha);

}  // namespace manet
