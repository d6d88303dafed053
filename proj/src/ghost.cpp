#include "samrad/ghost.hpp"

#include <algorithm>
#include <sstream>

namespace samrad {

namespace {

int find_owner(const Level& lev, int i, int j, int k, int skip = -1) {
  for (std::size_t p = 0; p < lev.patches.size(); ++p) {
    if (int(p) == skip) continue;
    if (lev.patches[p].box.contains(i, j, k)) return int(p);
  }
  return -1;
}

int find_owner_or_ghost(const Hierarchy& h, int l, int i, int j, int k) {
  const Level& lev = h.level(l);
  int p = find_owner(lev, i, j, k);
  if (p >= 0) return p;
  for (std::size_t q = 0; q < lev.patches.size(); ++q)
    if (lev.patches[q].box.grown(h.ghost_width).contains(i, j, k)) return int(q);
  std::ostringstream os;
  os << "no donor on level " << l << " for coarse cell (" << i << "," << j
     << "," << k << ")";
  fail(os.str());
}

bool covered_at(const Hierarchy& h, int l, int i, int j, int k, int hint,
                int* owner_out) {
  const Level& lev = h.level(l);
  int p = hint;
  if (p < 0 || !lev.patches[p].box.contains(i, j, k))
    p = find_owner(lev, i, j, k);
  if (owner_out) *owner_out = p;
  if (p < 0) return false;
  return h.is_covered(l, p, i, j, k);
}

void plan_patch_ghosts(Hierarchy& h, int l, int p) {
  const Level& lev = h.level(l);
  const IndexBox& b = lev.patches[p].box;
  const IndexBox gb = b.grown(h.ghost_width);
  PatchGhostPlan& plan = h.ghost_plan[l - 1][p];

  std::array<std::vector<PhysGhost>, 3> phys_by_rank;
  for (int k = gb.lo[2]; k <= gb.hi[2]; ++k)
    for (int j = gb.lo[1]; j <= gb.hi[1]; ++j)
      for (int i = gb.lo[0]; i <= gb.hi[0]; ++i) {
        if (b.contains(i, j, k)) continue;
        Int3 c{i, j, k};
        Int3 out{0, 0, 0};
        int n_out = 0;
        for (int d = 0; d < 3; ++d) {
          if (c[d] < lev.domain_box.lo[d]) out[d] = -1;
          if (c[d] > lev.domain_box.hi[d]) out[d] = 1;
          n_out += (out[d] != 0);
        }
        if (n_out > 0) {
          phys_by_rank[n_out - 1].push_back({c, out});
          continue;
        }
        int src = find_owner(lev, i, j, k, p);
        if (src >= 0) {
          plan.copies.push_back({c, src});
          continue;
        }
        if (l == 1) fail("level 1 ghost cell inside the domain has no owner");

        CfGhost cg;
        cg.cell = c;
        Int3 s{0, 0, 0};
        int rank = 0;
        for (int d = 0; d < 3; ++d) {
          if (c[d] < b.lo[d]) s[d] = -1;
          if (c[d] > b.hi[d]) s[d] = 1;
          rank += (s[d] != 0);
        }
        cg.fine_nbr = {c[0] - s[0], c[1] - s[1], c[2] - s[2]};
        cg.kind = rank == 1 ? CfKind::Face : (rank == 2 ? CfKind::Edge : CfKind::Corner);

        Int3 container{IndexBox::floor_div(c[0], h.ratio),
                       IndexBox::floor_div(c[1], h.ratio),
                       IndexBox::floor_div(c[2], h.ratio)};
        // transverse axes: 1D donor pairs (3/4 container, 1/4 toward the
        // fine cell's quarter-offset side); donor set is their product
        struct Axis {
          int off[2];
          double w[2];
          int n;
        };
        std::array<Axis, 3> ax;
        for (int d = 0; d < 3; ++d) {
          if (s[d] != 0) {
            ax[d] = {{0, 0}, {1.0, 0.0}, 1};
          } else {
            int side = (c[d] % 2 == 0) ? -1 : 1;
            ax[d] = {{0, side}, {0.75, 0.25}, 2};
          }
        }
        cg.n_donors = 0;
        for (int a2 = 0; a2 < ax[2].n; ++a2)
          for (int a1 = 0; a1 < ax[1].n; ++a1)
            for (int a0 = 0; a0 < ax[0].n; ++a0) {
              Int3 dc{container[0] + ax[0].off[a0], container[1] + ax[1].off[a1],
                      container[2] + ax[2].off[a2]};
              double w = ax[0].w[a0] * ax[1].w[a1] * ax[2].w[a2];
              int dp = find_owner_or_ghost(h, l - 1, dc[0], dc[1], dc[2]);
              cg.donor_patch[cg.n_donors] = dp;
              cg.donor_cell[cg.n_donors] = dc;
              cg.w[cg.n_donors] = w;
              ++cg.n_donors;
            }
        plan.cf.push_back(cg);
      }
  for (auto& lst : phys_by_rank)
    plan.phys.insert(plan.phys.end(), lst.begin(), lst.end());
}

void plan_cf_faces(Hierarchy& h, int l, int p) {
  // faces of valid cells whose neighbor is covered by the next finer level
  const Level& lev = h.level(l);
  const Level& fine = h.level(l + 1);
  const IndexBox& b = lev.patches[p].box;
  const Mask3& cov = h.covered_mask(l, p);
  PatchGhostPlan& plan = h.ghost_plan[l - 1][p];
  int hint = -1;

  for (int k = b.lo[2]; k <= b.hi[2]; ++k)
    for (int j = b.lo[1]; j <= b.hi[1]; ++j)
      for (int i = b.lo[0]; i <= b.hi[0]; ++i) {
        if (cov(i, j, k)) continue;
        Int3 c{i, j, k};
        for (int d = 0; d < 3; ++d)
          for (int side = -1; side <= 1; side += 2) {
            Int3 n = c;
            n[d] += side;
            if (!lev.domain_box.contains(n)) continue;
            bool ncov;
            if (b.contains(n)) {
              ncov = cov(n[0], n[1], n[2]) != 0;
            } else {
              int owner;
              ncov = covered_at(h, l, n[0], n[1], n[2], hint, &owner);
              if (owner >= 0) hint = owner;
            }
            if (!ncov) continue;

            CfFace cf;
            cf.d = d;
            cf.face = c;
            cf.face[d] = std::max(c[d], n[d]);
            int t1 = (d + 1) % 3, t2 = (d + 2) % 3;
            int fi = 0;
            for (int o2 = 0; o2 < 2; ++o2)
              for (int o1 = 0; o1 < 2; ++o1) {
                Int3 ff{};
                ff[d] = h.ratio * cf.face[d];
                ff[t1] = h.ratio * c[t1] + o1;
                ff[t2] = h.ratio * c[t2] + o2;
                // fine cell adjacent to the face on the refined side
                Int3 fc = ff;
                if (side < 0) fc[d] -= 1;
                int fp = find_owner(fine, fc[0], fc[1], fc[2]);
                if (fp < 0) fail("coarse-fine face without refined neighbor");
                cf.fine[fi++] = {fp, ff};
              }
            plan.cf_faces.push_back(cf);
          }
      }
}

}  // namespace

void build_ghost_plans(Hierarchy& h) {
  h.ghost_plan.assign(h.levels.size(), {});
  for (int l = 1; l <= h.num_levels(); ++l) {
    h.ghost_plan[l - 1].resize(h.level(l).patches.size());
    for (std::size_t p = 0; p < h.level(l).patches.size(); ++p)
      plan_patch_ghosts(h, l, int(p));
    if (l < h.num_levels())
      for (std::size_t p = 0; p < h.level(l).patches.size(); ++p)
        plan_cf_faces(h, l, int(p));
  }
}

void fill_ghost(const Hierarchy& h, int level, CompositeScalar& f,
                const PhysicalFill& phys) {
  auto& lev_data = f.level(level);
  const auto& plans = h.ghost_plan[level - 1];
  const std::vector<Array3>* crse =
      level > 1 ? &f.level(level - 1) : nullptr;

  parallel_for_items(std::int64_t(lev_data.size()), [&](std::int64_t p) {
    Array3& a = lev_data[std::size_t(p)];
    const PatchGhostPlan& plan = plans[std::size_t(p)];
    for (const GhostCopy& gc : plan.copies)
      a(gc.cell[0], gc.cell[1], gc.cell[2]) =
          lev_data[std::size_t(gc.src_patch)](gc.cell[0], gc.cell[1], gc.cell[2]);
    for (const CfGhost& cg : plan.cf) {
      double stage1 = 0.0;
      for (int d = 0; d < cg.n_donors; ++d) {
        const Array3& ca = (*crse)[std::size_t(cg.donor_patch[d])];
        stage1 += cg.w[d] * ca(cg.donor_cell[d][0], cg.donor_cell[d][1],
                               cg.donor_cell[d][2]);
      }
      double fv = a(cg.fine_nbr[0], cg.fine_nbr[1], cg.fine_nbr[2]);
      a(cg.cell[0], cg.cell[1], cg.cell[2]) = (fv + 2.0 * stage1) / 3.0;
    }
  });

  if (phys) {
    parallel_for_items(std::int64_t(lev_data.size()), [&](std::int64_t p) {
      phys(h, level, int(p), lev_data[std::size_t(p)]);
    });
  }
}

void for_each_physical_ghost(const Hierarchy& h, int level, int patch,
                             const std::function<void(const PhysGhost&)>& fn) {
  for (const PhysGhost& pg : h.ghost_plan[level - 1][patch].phys) fn(pg);
}

namespace {

int lowest_out_axis(const Int3& out) {
  for (int d = 0; d < 3; ++d)
    if (out[d] != 0) return d;
  return -1;
}

}  // namespace

PhysicalFill mirror_fill() {
  return [](const Hierarchy& h, int level, int patch, Array3& a) {
    const IndexBox& dom = h.level(level).domain_box;
    for_each_physical_ghost(h, level, patch, [&](const PhysGhost& pg) {
      int d = lowest_out_axis(pg.out);
      Int3 m = pg.cell;
      m[d] = pg.out[d] < 0 ? 2 * dom.lo[d] - 1 - m[d] : 2 * dom.hi[d] + 1 - m[d];
      a(pg.cell[0], pg.cell[1], pg.cell[2]) = a(m[0], m[1], m[2]);
    });
  };
}

PhysicalFill extrapolate_fill() {
  return [](const Hierarchy& h, int level, int patch, Array3& a) {
    for_each_physical_ghost(h, level, patch, [&](const PhysGhost& pg) {
      int d = lowest_out_axis(pg.out);
      Int3 n1 = pg.cell, n2 = pg.cell;
      n1[d] -= pg.out[d];
      n2[d] -= 2 * pg.out[d];
      a(pg.cell[0], pg.cell[1], pg.cell[2]) =
          2.0 * a(n1[0], n1[1], n1[2]) - a(n2[0], n2[1], n2[2]);
    });
  };
}

PhysicalFill extrapolate_fill_clamped() {
  return [](const Hierarchy& h, int level, int patch, Array3& a) {
    for_each_physical_ghost(h, level, patch, [&](const PhysGhost& pg) {
      int d = lowest_out_axis(pg.out);
      Int3 n1 = pg.cell, n2 = pg.cell;
      n1[d] -= pg.out[d];
      n2[d] -= 2 * pg.out[d];
      double v = 2.0 * a(n1[0], n1[1], n1[2]) - a(n2[0], n2[1], n2[2]);
      a(pg.cell[0], pg.cell[1], pg.cell[2]) = std::max(0.0, v);
    });
  };
}

}  // namespace samrad
