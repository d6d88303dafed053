#ifndef SAMRAD_REGRID_HPP
#define SAMRAD_REGRID_HPP

#include <vector>

#include "samrad/field.hpp"
#include "samrad/hierarchy.hpp"

namespace samrad {

struct RegridPolicy {
  int interval = 10;        // steps between indicator evaluations
  double tau_c = 0.25;      // curvature threshold
  double tau_g = 0.25;      // gradient threshold
  int min_patch = 4;        // Berger-Rigoutsos minimum box extent
  double efficiency = 0.80;  // tagged/total stop ratio
  int buffer_cells = 1;
  int max_levels = 2;
};

// Tag mask over one level's full domain index range (valid cells only).
struct LevelTags {
  IndexBox domain;
  Mask3 m;
  std::int64_t count = 0;

  void define(const IndexBox& d) {
    domain = d;
    m.define(d, 0, 0);
    count = 0;
  }
};

// Centered-difference curvature and gradient indicators on one level,
//   tau_c = (hx^2|Exx| + hy^2|Eyy| + hz^2|Ezz|) / (0.1 max|E|)
//   tau_g = (hx|Ex| + hy|Ey| + hz|Ez|) / (0.1 max|E|)
// with the level max over valid cells. Ghosts of E must be filled.
void compute_indicators(const Hierarchy& h, int level,
                        const std::vector<Array3>& E,
                        std::vector<Array3>& tau_c,
                        std::vector<Array3>& tau_g);

// Tags valid cells where either indicator exceeds its threshold.
LevelTags tag_level(const Hierarchy& h, int level,
                    const std::vector<Array3>& tau_c,
                    const std::vector<Array3>& tau_g,
                    const RegridPolicy& pol);

// Berger-Rigoutsos clustering: recursive bisection on signature sums, cutting
// at zero-signature planes first, then at the largest Laplacian sign-change
// jump. Returns disjoint boxes covering every tagged cell.
std::vector<IndexBox> cluster_tags(const LevelTags& tags,
                                   const RegridPolicy& pol);

struct RegridPlan {
  bool changed = false;
  // per level >= 2, in the index space of the level below (builder convention)
  std::vector<std::vector<IndexBox>> refine_boxes;
  std::vector<std::int64_t> tag_counts;  // per tagged level
};

// Indicator tagging on every candidate level of the current hierarchy, tag
// propagation downward, buffer dilation, nesting-region clipping and
// clustering. E ghosts are filled internally (linear extrapolation at the
// physical boundary). changed=false when the clustered footprint matches the
// current hierarchy exactly.
RegridPlan plan_regrid(const Hierarchy& h, CompositeScalar& E,
                       const RegridPolicy& pol);

// Conservative transfer onto a freshly built hierarchy: copy where the old
// level overlaps at the same resolution, minmod-limited conservative
// refinement where cells are newly refined; coarsened regions inherit the old
// coarse values, which already hold the fine restriction. positive selects
// zero-clamped extrapolation ghosts for the donors.
void transfer_scalar(const Hierarchy& old_h, const CompositeScalar& old_f,
                     const Hierarchy& new_h, CompositeScalar& new_f,
                     bool positive);

}  // namespace samrad

#endif
