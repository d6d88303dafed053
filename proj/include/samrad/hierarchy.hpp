#ifndef SAMRAD_HIERARCHY_HPP
#define SAMRAD_HIERARCHY_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "samrad/array3.hpp"
#include "samrad/box.hpp"

namespace samrad {

struct RealBox {
  std::array<double, 3> lo{0.0, 0.0, 0.0};
  std::array<double, 3> hi{1.0, 1.0, 1.0};
  bool contains(double x, double y, double z) const {
    return x >= lo[0] && x <= hi[0] && y >= lo[1] && y <= hi[1] && z >= lo[2] &&
           z <= hi[2];
  }
};

struct DomainSpec {
  RealBox bounds;
  int base_resolution = 16;
};

struct Patch {
  IndexBox box;
};

struct Level {
  int index = 1;             // 1-based, 1 is the coarsest
  int ratio_to_coarser = 1;  // 1 on the base level
  std::array<double, 3> dx{0, 0, 0};
  IndexBox domain_box;  // full index range of the domain at this resolution
  std::vector<Patch> patches;

  double cell_center(int d, int idx_d, const RealBox& bounds) const {
    return bounds.lo[d] + (idx_d + 0.5) * dx[d];
  }
};

enum class CfKind { Face = 0, Edge = 1, Corner = 2 };

// One coarse-fine ghost cell of a fine patch: the two-stage interpolation
// reads n_donors coarse cells (transverse bilinear/linear/point, weights w)
// and blends the result with the diagonal interior neighbor fine_nbr.
struct CfGhost {
  Int3 cell{};
  Int3 fine_nbr{};
  CfKind kind = CfKind::Face;
  int n_donors = 0;
  std::array<int, 4> donor_patch{};  // patch on the coarser level
  std::array<Int3, 4> donor_cell{};
  std::array<double, 4> w{};
};

struct GhostCopy {
  Int3 cell{};
  int src_patch = 0;
};

struct PhysGhost {
  Int3 cell{};
  Int3 out{};  // per-axis domain-outside direction, in {-1,0,1}
};

// A coarse face under a coarse-fine boundary: the coarse area-integrated flux
// is replaced by the sum of the four overlapping fine-face fluxes.
struct CfFace {
  int d = 0;
  Int3 face{};  // face-array index on the coarse patch
  std::array<std::pair<int, Int3>, 4> fine;  // (fine patch, fine face index)
};

struct PatchGhostPlan {
  std::vector<GhostCopy> copies;
  std::vector<CfGhost> cf;
  std::vector<PhysGhost> phys;  // ordered by number of outside axes
  std::vector<CfFace> cf_faces;
};

// Union of nested levels. Covered masks (cells overlapped by the next finer
// level), valid-cell counts and ghost plans are derived at construction.
struct Hierarchy {
  DomainSpec domain;
  int ratio = 2;
  int ghost_width = 1;
  std::vector<Level> levels;
  // covered[l][p](i,j,k) = 1 where level l+1 patch p cell is under level l+2
  std::vector<std::vector<Mask3>> covered;
  std::vector<std::int64_t> valid_cells_per_level;
  std::vector<std::vector<PatchGhostPlan>> ghost_plan;

  int num_levels() const { return int(levels.size()); }
  const Level& level(int l) const { return levels[l - 1]; }
  Level& level(int l) { return levels[l - 1]; }
  const Mask3& covered_mask(int l, int p) const { return covered[l - 1][p]; }
  bool is_covered(int l, int p, int i, int j, int k) const {
    return covered[l - 1][p](i, j, k) != 0;
  }
  std::int64_t total_valid_cells() const;
  // cells of the uniform grid at the finest level's resolution
  std::int64_t finest_uniform_cells() const;

  // effective resolution: base * ratio^(levels-1), per axis (cubic domains)
  int effective_resolution(int num_levels_override = 0) const;

  // patch of level l whose interior contains (i,j,k); -1 if none
  int owner_patch(int l, int i, int j, int k) const;
};

// Looks up level data by cell index across patches: interiors first, then
// ghost frames (same-level ghost copies are consistent, so any hit works).
struct LevelAccessor {
  const Hierarchy* hier = nullptr;
  int level = 1;
  const std::vector<Array3>* patch_data = nullptr;

  LevelAccessor(const Hierarchy& h, int l, const std::vector<Array3>& d)
      : hier(&h), level(l), patch_data(&d) {}

  bool try_get(int i, int j, int k, double& out) const;
  double get(int i, int j, int k) const;  // throws if not found
};

// Builds a hierarchy from explicit refinement boxes, one list per level above
// the base; refine_boxes[0] holds index boxes for level 2 in level-1 index
// space (they are refined by the ratio internally). Throws on overlap or on a
// proper-nesting violation, naming the offending box.
Hierarchy build_hierarchy(const DomainSpec& domain,
                          const std::vector<std::vector<IndexBox>>& refine_boxes,
                          int ratio = 2);

// Same, with the level-(l+1) footprint given as physical boxes snapped
// outward to level-l cells.
Hierarchy build_hierarchy(const DomainSpec& domain,
                          const std::vector<std::vector<RealBox>>& refine_regions,
                          int ratio = 2);

// Validation shared with the regridder: checks alignment, overlap, domain
// containment and the one-coarse-cell nesting buffer (relaxed where the fine
// box touches the physical boundary). Box lists are per level >= 2, in the
// index space of their own level.
void validate_hierarchy(const Hierarchy& h);

[[noreturn]] void fail(const std::string& msg);

}  // namespace samrad

#endif
