#include "samrad/hierarchy.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "samrad/ghost.hpp"

namespace samrad {

void fail(const std::string& msg) { throw std::runtime_error("samrad: " + msg); }

std::int64_t Hierarchy::total_valid_cells() const {
  std::int64_t n = 0;
  for (auto v : valid_cells_per_level) n += v;
  return n;
}

std::int64_t Hierarchy::finest_uniform_cells() const {
  const IndexBox& b = levels.back().domain_box;
  return b.volume();
}

int Hierarchy::effective_resolution(int num_levels_override) const {
  int nl = num_levels_override > 0 ? num_levels_override : num_levels();
  int res = domain.base_resolution;
  for (int l = 1; l < nl; ++l) res *= ratio;
  return res;
}

int Hierarchy::owner_patch(int l, int i, int j, int k) const {
  const Level& lev = level(l);
  for (std::size_t p = 0; p < lev.patches.size(); ++p)
    if (lev.patches[p].box.contains(i, j, k)) return int(p);
  return -1;
}

bool LevelAccessor::try_get(int i, int j, int k, double& out) const {
  const Level& lev = hier->level(level);
  for (std::size_t p = 0; p < lev.patches.size(); ++p) {
    if (lev.patches[p].box.contains(i, j, k)) {
      out = (*patch_data)[p](i, j, k);
      return true;
    }
  }
  int ng = hier->ghost_width;
  for (std::size_t p = 0; p < lev.patches.size(); ++p) {
    if (lev.patches[p].box.grown(ng).contains(i, j, k)) {
      out = (*patch_data)[p](i, j, k);
      return true;
    }
  }
  return false;
}

double LevelAccessor::get(int i, int j, int k) const {
  double v;
  if (!try_get(i, j, k, v)) {
    std::ostringstream os;
    os << "level " << level << " has no datum at (" << i << "," << j << "," << k
       << "); hierarchy not properly nested?";
    fail(os.str());
  }
  return v;
}

namespace {

void derive_masks(Hierarchy& h) {
  h.covered.assign(h.levels.size(), {});
  h.valid_cells_per_level.assign(h.levels.size(), 0);
  for (int l = 1; l <= h.num_levels(); ++l) {
    Level& lev = h.level(l);
    auto& masks = h.covered[l - 1];
    masks.reserve(lev.patches.size());
    std::int64_t valid = 0;
    for (const Patch& p : lev.patches) {
      Mask3 m(p.box, 0, 0);
      if (l < h.num_levels()) {
        for (const Patch& fp : h.level(l + 1).patches) {
          IndexBox cov = IndexBox::intersect(fp.box.coarsened(h.ratio), p.box);
          for (int k = cov.lo[2]; k <= cov.hi[2]; ++k)
            for (int j = cov.lo[1]; j <= cov.hi[1]; ++j)
              for (int i = cov.lo[0]; i <= cov.hi[0]; ++i) m(i, j, k) = 1;
        }
      }
      for (std::uint8_t c : m.data) valid += (c == 0);
      masks.push_back(std::move(m));
    }
    h.valid_cells_per_level[l - 1] = valid;
  }
}

}  // namespace

void validate_hierarchy(const Hierarchy& h) {
  if (h.num_levels() < 1) fail("hierarchy has no levels");
  const Level& base = h.level(1);
  if (base.patches.size() != 1 || !(base.patches[0].box == base.domain_box))
    fail("level 1 must cover the domain with a single patch");

  for (int l = 2; l <= h.num_levels(); ++l) {
    const Level& lev = h.level(l);
    const Level& crse = h.level(l - 1);
    if (lev.patches.empty()) fail("empty level " + std::to_string(l));

    for (std::size_t p = 0; p < lev.patches.size(); ++p) {
      const IndexBox& b = lev.patches[p].box;
      std::ostringstream ident;
      ident << "level " << l << " box " << b;
      if (b.empty()) fail(ident.str() + " is empty");
      if (!lev.domain_box.contains(b)) fail(ident.str() + " leaves the domain");
      for (int d = 0; d < 3; ++d) {
        if (b.lo[d] % h.ratio != 0 || (b.hi[d] + 1) % h.ratio != 0)
          fail(ident.str() + " is not coarsenable by the refinement ratio");
      }
      for (std::size_t q = p + 1; q < lev.patches.size(); ++q) {
        if (b.intersects(lev.patches[q].box)) {
          std::ostringstream os;
          os << ident.str() << " overlaps " << lev.patches[q].box;
          fail(os.str());
        }
      }
    }

    // Nesting: the coarsened footprint plus a one-cell buffer (26-connected)
    // must lie inside the coarser level, except across the physical boundary.
    Mask3 footprint(crse.domain_box, 0, 0);
    for (const Patch& cp : crse.patches)
      for (int k = cp.box.lo[2]; k <= cp.box.hi[2]; ++k)
        for (int j = cp.box.lo[1]; j <= cp.box.hi[1]; ++j)
          for (int i = cp.box.lo[0]; i <= cp.box.hi[0]; ++i)
            footprint(i, j, k) = 1;

    for (const Patch& fp : lev.patches) {
      IndexBox cb = fp.box.coarsened(h.ratio);
      for (int k = cb.lo[2]; k <= cb.hi[2]; ++k)
        for (int j = cb.lo[1]; j <= cb.hi[1]; ++j)
          for (int i = cb.lo[0]; i <= cb.hi[0]; ++i) {
            for (int ok = -1; ok <= 1; ++ok)
              for (int oj = -1; oj <= 1; ++oj)
                for (int oi = -1; oi <= 1; ++oi) {
                  int ni = i + oi, nj = j + oj, nk = k + ok;
                  if (!crse.domain_box.contains(ni, nj, nk)) continue;
                  if (!footprint(ni, nj, nk)) {
                    std::ostringstream os;
                    os << "level " << l << " box " << fp.box
                       << " violates proper nesting near coarse cell (" << ni
                       << "," << nj << "," << nk << ")";
                    fail(os.str());
                  }
                }
          }
    }
  }
}

namespace {

Hierarchy assemble(const DomainSpec& domain,
                   const std::vector<std::vector<IndexBox>>& refine_boxes,
                   int ratio) {
  if (domain.base_resolution < 1) fail("base resolution must be positive");
  if (ratio != 2) fail("only refinement ratio 2 is supported");
  Hierarchy h;
  h.domain = domain;
  h.ratio = ratio;

  int nl = 1 + int(refine_boxes.size());
  int n = domain.base_resolution;
  for (int l = 1; l <= nl; ++l) {
    Level lev;
    lev.index = l;
    lev.ratio_to_coarser = (l == 1) ? 1 : ratio;
    lev.domain_box = IndexBox({0, 0, 0}, {n - 1, n - 1, n - 1});
    for (int d = 0; d < 3; ++d)
      lev.dx[d] = (domain.bounds.hi[d] - domain.bounds.lo[d]) / n;
    if (l == 1) {
      lev.patches.push_back({lev.domain_box});
    } else {
      for (const IndexBox& cb : refine_boxes[l - 2])
        lev.patches.push_back({cb.refined(ratio)});
    }
    h.levels.push_back(std::move(lev));
    n *= ratio;
  }
  validate_hierarchy(h);
  derive_masks(h);
  build_ghost_plans(h);
  return h;
}

}  // namespace

Hierarchy build_hierarchy(const DomainSpec& domain,
                          const std::vector<std::vector<IndexBox>>& refine_boxes,
                          int ratio) {
  return assemble(domain, refine_boxes, ratio);
}

Hierarchy build_hierarchy(const DomainSpec& domain,
                          const std::vector<std::vector<RealBox>>& refine_regions,
                          int ratio) {
  std::vector<std::vector<IndexBox>> boxes(refine_regions.size());
  int n = domain.base_resolution;
  for (std::size_t li = 0; li < refine_regions.size(); ++li) {
    std::array<double, 3> dx;
    for (int d = 0; d < 3; ++d)
      dx[d] = (domain.bounds.hi[d] - domain.bounds.lo[d]) / n;
    for (const RealBox& rb : refine_regions[li]) {
      IndexBox ib;
      bool empty = false;
      for (int d = 0; d < 3; ++d) {
        double rel_lo = (rb.lo[d] - domain.bounds.lo[d]) / dx[d];
        double rel_hi = (rb.hi[d] - domain.bounds.lo[d]) / dx[d];
        ib.lo[d] = std::max(0, int(std::floor(rel_lo + 1e-12)));
        ib.hi[d] = std::min(n - 1, int(std::ceil(rel_hi - 1e-12)) - 1);
        if (ib.hi[d] < ib.lo[d]) empty = true;
      }
      if (!empty) boxes[li].push_back(ib);
    }
    n *= ratio;
  }
  return assemble(domain, boxes, ratio);
}

}  // namespace samrad
