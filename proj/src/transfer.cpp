#include "samrad/transfer.hpp"

#include <cmath>

namespace samrad {

namespace {

// consistent reader over a level's patch arrays, interior or ghost; ghost
// copies agree with their source so any covering array works
struct LevelReader {
  const Hierarchy* h;
  int level;
  const std::vector<Array3>* data;
  mutable int hint = 0;

  double operator()(int i, int j, int k) const {
    const Level& lev = h->level(level);
    int np = int(lev.patches.size());
    if (lev.patches[hint].box.grown(h->ghost_width).contains(i, j, k))
      return (*data)[hint](i, j, k);
    for (int p = 0; p < np; ++p) {
      if (lev.patches[p].box.grown(h->ghost_width).contains(i, j, k)) {
        hint = p;
        return (*data)[p](i, j, k);
      }
    }
    fail("missing coarse donor in transfer operator");
  }
};

double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return a > 0.0 ? std::min(a, b) : std::max(a, b);
}

}  // namespace

void restrict_to_coarse(const Hierarchy& h, int fine_level, CompositeScalar& f) {
  const int r = h.ratio;
  const double inv = 1.0 / double(r * r * r);
  const Level& crse = h.level(fine_level - 1);
  const Level& fine = h.level(fine_level);
  auto& cdata = f.level(fine_level - 1);
  const auto& fdata = f.level(fine_level);

  parallel_for_items(std::int64_t(crse.patches.size()), [&](std::int64_t p) {
    const IndexBox& b = crse.patches[std::size_t(p)].box;
    const Mask3& cov = h.covered_mask(fine_level - 1, int(p));
    Array3& ca = cdata[std::size_t(p)];
    int hint = 0;
    for (int k = b.lo[2]; k <= b.hi[2]; ++k)
      for (int j = b.lo[1]; j <= b.hi[1]; ++j)
        for (int i = b.lo[0]; i <= b.hi[0]; ++i) {
          if (!cov(i, j, k)) continue;
          // the 2x2x2 child block lies in one fine patch (boxes coarsenable)
          int fi = r * i, fj = r * j, fk = r * k;
          if (!fine.patches[hint].box.contains(fi, fj, fk)) {
            hint = h.owner_patch(fine_level, fi, fj, fk);
            if (hint < 0) fail("covered cell without fine children");
          }
          const Array3& fa = fdata[std::size_t(hint)];
          double s = 0.0;
          for (int ok = 0; ok < r; ++ok)
            for (int oj = 0; oj < r; ++oj)
              for (int oi = 0; oi < r; ++oi)
                s += fa(fi + oi, fj + oj, fk + ok);
          ca(i, j, k) = s * inv;
        }
  });
}

void sync_covered(const Hierarchy& h, CompositeScalar& f) {
  for (int l = h.num_levels(); l >= 2; --l) restrict_to_coarse(h, l, f);
}

void sync_covered(const Hierarchy& h, CompositeState& s) {
  sync_covered(h, s.E);
  sync_covered(h, s.T);
}

void prolong_correction(const Hierarchy& h, int fine_level,
                        const std::vector<Array3>& coarse,
                        std::vector<Array3>& fine) {
  const Level& flev = h.level(fine_level);
  LevelReader rd{&h, fine_level - 1, &coarse};

  parallel_for_items(std::int64_t(flev.patches.size()), [&](std::int64_t p) {
    const IndexBox& b = flev.patches[std::size_t(p)].box;
    Array3& fa = fine[std::size_t(p)];
    LevelReader r = rd;
    for (int k = b.lo[2]; k <= b.hi[2]; ++k)
      for (int j = b.lo[1]; j <= b.hi[1]; ++j)
        for (int i = b.lo[0]; i <= b.hi[0]; ++i) {
          Int3 f{i, j, k};
          Int3 c{IndexBox::floor_div(i, h.ratio), IndexBox::floor_div(j, h.ratio),
                 IndexBox::floor_div(k, h.ratio)};
          Int3 side;
          for (int d = 0; d < 3; ++d) side[d] = (f[d] % 2 == 0) ? -1 : 1;
          double v = 0.0;
          for (int o2 = 0; o2 < 2; ++o2)
            for (int o1 = 0; o1 < 2; ++o1)
              for (int o0 = 0; o0 < 2; ++o0) {
                double w = (o0 ? 0.25 : 0.75) * (o1 ? 0.25 : 0.75) *
                           (o2 ? 0.25 : 0.75);
                v += w * r(c[0] + (o0 ? side[0] : 0), c[1] + (o1 ? side[1] : 0),
                           c[2] + (o2 ? side[2] : 0));
              }
          fa(i, j, k) = v;
        }
  });
}

void prolong_conservative(const Hierarchy& h, int fine_level,
                          const std::vector<Array3>& coarse,
                          std::vector<Array3>& fine) {
  const Level& flev = h.level(fine_level);
  LevelReader rd{&h, fine_level - 1, &coarse};

  parallel_for_items(std::int64_t(flev.patches.size()), [&](std::int64_t p) {
    const IndexBox& fb = flev.patches[std::size_t(p)].box;
    const IndexBox cb = fb.coarsened(h.ratio);
    Array3& fa = fine[std::size_t(p)];
    LevelReader r = rd;
    for (int k = cb.lo[2]; k <= cb.hi[2]; ++k)
      for (int j = cb.lo[1]; j <= cb.hi[1]; ++j)
        for (int i = cb.lo[0]; i <= cb.hi[0]; ++i) {
          double c = r(i, j, k);
          double sx = minmod(r(i + 1, j, k) - c, c - r(i - 1, j, k));
          double sy = minmod(r(i, j + 1, k) - c, c - r(i, j - 1, k));
          double sz = minmod(r(i, j, k + 1) - c, c - r(i, j, k - 1));
          for (int ok = 0; ok < 2; ++ok)
            for (int oj = 0; oj < 2; ++oj)
              for (int oi = 0; oi < 2; ++oi)
                fa(2 * i + oi, 2 * j + oj, 2 * k + ok) =
                    c + 0.25 * ((oi ? 1 : -1) * sx + (oj ? 1 : -1) * sy +
                                (ok ? 1 : -1) * sz);
        }
  });
}

void match_fluxes(const Hierarchy& h, int coarse_level, LevelFluxes& coarse,
                  const LevelFluxes& fine) {
  const auto& plans = h.ghost_plan[coarse_level - 1];
  parallel_for_items(std::int64_t(coarse.size()), [&](std::int64_t p) {
    for (const CfFace& cf : plans[std::size_t(p)].cf_faces) {
      double s = 0.0;
      for (const auto& [fp, ff] : cf.fine)
        s += fine[std::size_t(fp)].f[cf.d](ff[0], ff[1], ff[2]);
      coarse[std::size_t(p)].f[cf.d](cf.face[0], cf.face[1], cf.face[2]) = s;
    }
  });
}

}  // namespace samrad
