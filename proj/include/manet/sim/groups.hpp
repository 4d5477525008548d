#pragma once

#include <vector>

namespace manet::sim {

/**
 * Activation schedule for group-based scheduling: epsilon^2 groups of cells,
 * exactly one group active per slot, cycling with period epsilon^2. Every
 * group holds exactly J = floor(m^2/epsilon^2) cells whose coordinates agree
 * modulo epsilon in both axes, so simultaneously active cells never violate
 * the epsilon spacing that the interference guard requires.
 *
 * When epsilon divides m the groups are the classic congruence classes and
 * partition the grid. Otherwise a congruence class holds more or fewer than
 * J cells, and no partition into equal classes exists; each group is then a
 * J-cell slice of the lattice anchored at a low-residue corner, with the
 * anchor and the slice rotating across groups to spread activation. A few
 * high-residue cells are never activated in that case, which only thins the
 * schedule: per-slot statistics depend on the active set only through its
 * size and spacing.
 */
struct GroupSchedule {
    int m = 1;
    int epsilon = 1;
    int cells_per_group = 1;
    std::vector<std::vector<int>> groups;  // cell ids (y*m + x), sorted

    int group_count() const { return epsilon * epsilon; }
    const std::vector<int>& active_cells(long long slot) const {
        return groups[static_cast<std::size_t>(slot % group_count())];
    }
};

GroupSchedule build_group_schedule(int m, int epsilon);

}  // namespace manet::sim
