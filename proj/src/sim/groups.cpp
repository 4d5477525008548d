#include "manet/sim/groups.hpp"

#include <algorithm>
#include <stdexcept>

namespace manet::sim {

namespace {

void check_group_geometry(const GroupSchedule& sched) {
    const int m = sched.m, eps = sched.epsilon;
    for (const auto& group : sched.groups) {
        if (static_cast<int>(group.size()) != sched.cells_per_group)
            throw std::logic_error("group schedule: wrong group size");
        for (std::size_t a = 0; a < group.size(); ++a) {
            int xa = group[a] % m, ya = group[a] / m;
            if (xa < 0 || xa >= m || ya < 0 || ya >= m)
                throw std::logic_error("group schedule: cell out of range");
            for (std::size_t b = a + 1; b < group.size(); ++b) {
                int xb = group[b] % m, yb = group[b] / m;
                if ((xa - xb) % eps != 0 || (ya - yb) % eps != 0)
                    throw std::logic_error("group schedule: spacing violated");
            }
        }
    }
}

}  // namespace

GroupSchedule build_group_schedule(int m, int epsilon) {
    if (m < 1) throw std::domain_error("group schedule: m must be >= 1");
    if (epsilon < 1 || epsilon > m)
        throw std::domain_error("group schedule: epsilon must lie in [1, m]");

    GroupSchedule sched;
    sched.m = m;
    sched.epsilon = epsilon;
    sched.cells_per_group = (m * m) / (epsilon * epsilon);
    sched.groups.assign(static_cast<std::size_t>(epsilon) * epsilon, {});

    const int q = m / epsilon;
    const int r = m % epsilon;

    if (r == 0) {
        for (int gy = 0; gy < epsilon; ++gy)
            for (int gx = 0; gx < epsilon; ++gx) {
                auto& cells = sched.groups[static_cast<std::size_t>(gy) * epsilon + gx];
                for (int y = gy; y < m; y += epsilon)
                    for (int x = gx; x < m; x += epsilon)
                        cells.push_back(y * m + x);
            }
    } else {
        // The anchored lattice {a + i*eps} x {b + j*eps}, i,j in 0..q, fits
        // inside the grid exactly when a,b < r and holds (q+1)^2 >= J cells.
        // Take a cyclic J-cell slice of it, rotating both the anchor and the
        // slice offset with the group index.
        const int lattice = (q + 1) * (q + 1);
        const int J = sched.cells_per_group;
        for (int g = 0; g < epsilon * epsilon; ++g) {
            const int a = g % r;
            const int b = (g / r) % r;
            auto& cells = sched.groups[static_cast<std::size_t>(g)];
            const int start = (g * J) % lattice;
            for (int idx = 0; idx < J; ++idx) {
                const int p = (start + idx) % lattice;
                const int x = a + (p % (q + 1)) * epsilon;
                const int y = b + (p / (q + 1)) * epsilon;
                cells.push_back(y * m + x);
            }
        }
    }

    for (auto& cells : sched.groups) std::sort(cells.begin(), cells.end());
    check_group_geometry(sched);
    return sched;
}

}  // namespace manet::sim
