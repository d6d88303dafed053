#ifndef SAMRAD_GHOST_HPP
#define SAMRAD_GHOST_HPP

#include <functional>

#include "samrad/field.hpp"
#include "samrad/hierarchy.hpp"

namespace samrad {

// Fills the ghost cells of one patch that lie outside the physical domain.
// May read interior cells and ghost cells already filled by the same-level
// and coarse-fine passes.
using PhysicalFill =
    std::function<void(const Hierarchy&, int level, int patch, Array3&)>;

// Fills the full ghost frame of every patch on the given level: same-level
// copies, then two-stage coarse-fine interpolation (the coarser level must
// already be filled), then the physical-boundary callback. Every ghost cell
// is touched by exactly one of the three.
void fill_ghost(const Hierarchy& h, int level, CompositeScalar& f,
                const PhysicalFill& phys);

// Ready-made physical fills for transfer operators and tests. The residual
// path installs its own boundary-condition fill from the discretization.
PhysicalFill extrapolate_fill();           // linear extrapolation from inside
PhysicalFill extrapolate_fill_clamped();   // same, clamped at zero
PhysicalFill mirror_fill();                // copy of the reflected cell

// Visits the patch's out-of-domain ghost cells in plan order (cells outside
// in one axis first, then two, then three), so a visit may read any cell
// finalized by an earlier pass.
void for_each_physical_ghost(const Hierarchy& h, int level, int patch,
                             const std::function<void(const PhysGhost&)>& fn);

// Derives ghost plans for all levels; called by the hierarchy builders.
void build_ghost_plans(Hierarchy& h);

}  // namespace samrad

#endif
