#include "samrad/regrid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "samrad/ghost.hpp"
#include "samrad/threading.hpp"
#include "samrad/transfer.hpp"

namespace samrad {

void compute_indicators(const Hierarchy& h, int level,
                        const std::vector<Array3>& E,
                        std::vector<Array3>& tau_c,
                        std::vector<Array3>& tau_g) {
  const Level& lev = h.level(level);
  const std::size_t np = lev.patches.size();
  tau_c.resize(np);
  tau_g.resize(np);

  std::vector<double> pmax(np, 0.0);
  parallel_for_items(std::int64_t(np), [&](std::int64_t p) {
    const IndexBox& b = lev.patches[std::size_t(p)].box;
    const Mask3& cov = h.covered_mask(level, int(p));
    const Array3& a = E[std::size_t(p)];
    double m = 0.0;
    for (int k = b.lo[2]; k <= b.hi[2]; ++k)
      for (int j = b.lo[1]; j <= b.hi[1]; ++j)
        for (int i = b.lo[0]; i <= b.hi[0]; ++i)
          if (!cov(i, j, k)) m = std::max(m, std::abs(a(i, j, k)));
    pmax[std::size_t(p)] = m;
  });
  double emax = 0.0;
  for (double m : pmax) emax = std::max(emax, m);
  const double denom = 0.1 * emax;

  parallel_for_items(std::int64_t(np), [&](std::int64_t p) {
    const IndexBox& b = lev.patches[std::size_t(p)].box;
    const Array3& a = E[std::size_t(p)];
    Array3& tc = tau_c[std::size_t(p)];
    Array3& tg = tau_g[std::size_t(p)];
    tc.define(b, 0, 0.0);
    tg.define(b, 0, 0.0);
    if (denom <= 0.0) return;
    for (int k = b.lo[2]; k <= b.hi[2]; ++k)
      for (int j = b.lo[1]; j <= b.hi[1]; ++j)
        for (int i = b.lo[0]; i <= b.hi[0]; ++i) {
          const double v = a(i, j, k);
          const double cxx = std::abs(a(i + 1, j, k) - 2.0 * v + a(i - 1, j, k));
          const double cyy = std::abs(a(i, j + 1, k) - 2.0 * v + a(i, j - 1, k));
          const double czz = std::abs(a(i, j, k + 1) - 2.0 * v + a(i, j, k - 1));
          const double gx = 0.5 * std::abs(a(i + 1, j, k) - a(i - 1, j, k));
          const double gy = 0.5 * std::abs(a(i, j + 1, k) - a(i, j - 1, k));
          const double gz = 0.5 * std::abs(a(i, j, k + 1) - a(i, j, k - 1));
          tc(i, j, k) = (cxx + cyy + czz) / denom;
          tg(i, j, k) = (gx + gy + gz) / denom;
        }
  });
}

LevelTags tag_level(const Hierarchy& h, int level,
                    const std::vector<Array3>& tau_c,
                    const std::vector<Array3>& tau_g,
                    const RegridPolicy& pol) {
  const Level& lev = h.level(level);
  LevelTags t;
  t.define(lev.domain_box);
  std::int64_t cnt = 0;
  for (std::size_t p = 0; p < lev.patches.size(); ++p) {
    const IndexBox& b = lev.patches[p].box;
    const Mask3& cov = h.covered_mask(level, int(p));
    const Array3& tc = tau_c[p];
    const Array3& tg = tau_g[p];
    for (int k = b.lo[2]; k <= b.hi[2]; ++k)
      for (int j = b.lo[1]; j <= b.hi[1]; ++j)
        for (int i = b.lo[0]; i <= b.hi[0]; ++i)
          if (!cov(i, j, k) &&
              (tc(i, j, k) > pol.tau_c || tg(i, j, k) > pol.tau_g)) {
            t.m(i, j, k) = 1;
            ++cnt;
          }
  }
  t.count = cnt;
  return t;
}

namespace {

IndexBox tag_bbox(const Mask3& m, const IndexBox& b, std::int64_t& count) {
  IndexBox r{{b.hi[0] + 1, b.hi[1] + 1, b.hi[2] + 1},
             {b.lo[0] - 1, b.lo[1] - 1, b.lo[2] - 1}};
  count = 0;
  for (int k = b.lo[2]; k <= b.hi[2]; ++k)
    for (int j = b.lo[1]; j <= b.hi[1]; ++j)
      for (int i = b.lo[0]; i <= b.hi[0]; ++i)
        if (m(i, j, k)) {
          ++count;
          r.lo = {std::min(r.lo[0], i), std::min(r.lo[1], j),
                  std::min(r.lo[2], k)};
          r.hi = {std::max(r.hi[0], i), std::max(r.hi[1], j),
                  std::max(r.hi[2], k)};
        }
  return r;
}

struct BrContext {
  const Mask3* m = nullptr;
  const RegridPolicy* pol = nullptr;
  std::vector<IndexBox>* out = nullptr;
};

void br_split(const BrContext& cx, const IndexBox& b, std::int64_t count) {
  const double eff = double(count) / double(b.volume());
  if (eff >= cx.pol->efficiency) {
    cx.out->push_back(b);
    return;
  }
  const int mp = cx.pol->min_patch;
  if (b.extent(0) <= mp && b.extent(1) <= mp && b.extent(2) <= mp) {
    cx.out->push_back(b);
    return;
  }

  std::array<std::vector<std::int64_t>, 3> sig;
  for (int d = 0; d < 3; ++d) sig[d].assign(std::size_t(b.extent(d)), 0);
  for (int k = b.lo[2]; k <= b.hi[2]; ++k)
    for (int j = b.lo[1]; j <= b.hi[1]; ++j)
      for (int i = b.lo[0]; i <= b.hi[0]; ++i)
        if ((*cx.m)(i, j, k)) {
          ++sig[0][std::size_t(i - b.lo[0])];
          ++sig[1][std::size_t(j - b.lo[1])];
          ++sig[2][std::size_t(k - b.lo[2])];
        }

  auto recurse_on = [&](IndexBox child) {
    std::int64_t cnt = 0;
    child = tag_bbox(*cx.m, child, cnt);
    if (cnt > 0) br_split(cx, child, cnt);
  };

  // zero-signature plane closest to the box center; the empty plane is dropped
  {
    int bd = -1, bi = 0, bdist = 0;
    for (int d = 0; d < 3; ++d)
      for (int i = b.lo[d] + 1; i <= b.hi[d] - 1; ++i)
        if (sig[d][std::size_t(i - b.lo[d])] == 0) {
          const int dist = std::abs(2 * i - (b.lo[d] + b.hi[d]));
          if (bd < 0 || dist < bdist) {
            bd = d;
            bi = i;
            bdist = dist;
          }
        }
    if (bd >= 0) {
      IndexBox a = b, c = b;
      a.hi[bd] = bi - 1;
      c.lo[bd] = bi + 1;
      recurse_on(a);
      recurse_on(c);
      return;
    }
  }

  // largest Laplacian sign-change jump, respecting the minimum extent
  {
    int bd = -1, bi = 0, bdist = 0;
    std::int64_t bjump = -1;
    for (int d = 0; d < 3; ++d) {
      const int n = b.extent(d);
      if (n < 2 * mp) continue;
      std::vector<std::int64_t> lap(std::size_t(n), 0);
      for (int t = 1; t < n - 1; ++t)
        lap[std::size_t(t)] = sig[d][std::size_t(t - 1)] -
                              2 * sig[d][std::size_t(t)] +
                              sig[d][std::size_t(t + 1)];
      for (int t = 1; t + 1 < n - 1; ++t) {
        if (lap[std::size_t(t)] * lap[std::size_t(t + 1)] >= 0) continue;
        const int i = b.lo[d] + t;  // cut between planes i and i+1
        if (i - b.lo[d] + 1 < mp || b.hi[d] - i < mp) continue;
        const std::int64_t jump =
            std::abs(lap[std::size_t(t + 1)] - lap[std::size_t(t)]);
        const int dist = std::abs(2 * i + 1 - (b.lo[d] + b.hi[d]));
        if (jump > bjump || (jump == bjump && dist < bdist)) {
          bd = d;
          bi = i;
          bjump = jump;
          bdist = dist;
        }
      }
    }
    if (bd >= 0) {
      IndexBox a = b, c = b;
      a.hi[bd] = bi;
      c.lo[bd] = bi + 1;
      recurse_on(a);
      recurse_on(c);
      return;
    }
  }

  // fallback: halve the longest axis that can hold two minimum-size pieces
  {
    int bd = -1;
    for (int d = 0; d < 3; ++d)
      if (b.extent(d) >= 2 * mp && (bd < 0 || b.extent(d) > b.extent(bd)))
        bd = d;
    if (bd >= 0) {
      const int mid = b.lo[bd] + b.extent(bd) / 2;
      IndexBox a = b, c = b;
      a.hi[bd] = mid - 1;
      c.lo[bd] = mid;
      recurse_on(a);
      recurse_on(c);
      return;
    }
  }
  cx.out->push_back(b);
}

bool box_less(const IndexBox& a, const IndexBox& b) {
  for (int d = 2; d >= 0; --d) {
    if (a.lo[d] != b.lo[d]) return a.lo[d] < b.lo[d];
    if (a.hi[d] != b.hi[d]) return a.hi[d] < b.hi[d];
  }
  return false;
}

}  // namespace

std::vector<IndexBox> cluster_tags(const LevelTags& tags,
                                   const RegridPolicy& pol) {
  std::vector<IndexBox> out;
  if (tags.count == 0) return out;
  std::int64_t cnt = 0;
  const IndexBox b = tag_bbox(tags.m, tags.domain, cnt);
  BrContext cx{&tags.m, &pol, &out};
  br_split(cx, b, cnt);
  std::sort(out.begin(), out.end(), box_less);
  return out;
}

namespace {

Mask3 dilate(const LevelTags& t, int r, std::int64_t& count) {
  Mask3 out(t.domain, 0, 0);
  const IndexBox& dom = t.domain;
  for (int k = dom.lo[2]; k <= dom.hi[2]; ++k)
    for (int j = dom.lo[1]; j <= dom.hi[1]; ++j)
      for (int i = dom.lo[0]; i <= dom.hi[0]; ++i)
        if (t.m(i, j, k)) {
          const IndexBox g =
              IndexBox::intersect(IndexBox{{i, j, k}, {i, j, k}}.grown(r), dom);
          for (int kk = g.lo[2]; kk <= g.hi[2]; ++kk)
            for (int jj = g.lo[1]; jj <= g.hi[1]; ++jj)
              for (int ii = g.lo[0]; ii <= g.hi[0]; ++ii) out(ii, jj, kk) = 1;
        }
  count = 0;
  for (std::uint8_t v : out.data) count += v;
  return out;
}

// boxes must stay inside the allowed mask; disallowed cells are never tagged,
// so bisecting until pieces are clean loses no tags
void legalize(const Mask3& allowed, const Mask3& tags, const IndexBox& b,
              std::vector<IndexBox>& out) {
  bool all_ok = true, any_tag = false;
  for (int k = b.lo[2]; k <= b.hi[2] && (all_ok || !any_tag); ++k)
    for (int j = b.lo[1]; j <= b.hi[1]; ++j)
      for (int i = b.lo[0]; i <= b.hi[0]; ++i) {
        if (!allowed(i, j, k)) all_ok = false;
        if (tags(i, j, k)) any_tag = true;
      }
  if (all_ok) {
    out.push_back(b);
    return;
  }
  if (!any_tag) return;
  int bd = 0;
  for (int d = 1; d < 3; ++d)
    if (b.extent(d) > b.extent(bd)) bd = d;
  const int mid = b.lo[bd] + b.extent(bd) / 2;
  IndexBox a = b, c = b;
  a.hi[bd] = mid - 1;
  c.lo[bd] = mid;
  legalize(allowed, tags, a, out);
  legalize(allowed, tags, c, out);
}

}  // namespace

RegridPlan plan_regrid(const Hierarchy& h, CompositeScalar& E,
                       const RegridPolicy& pol) {
  RegridPlan plan;
  const int L = h.num_levels();
  const int ltag = std::min(L, pol.max_levels - 1);

  for (int l = 1; l <= L; ++l) fill_ghost(h, l, E, extrapolate_fill());

  std::vector<LevelTags> tags(std::size_t(std::max(ltag, 0)));
  for (int l = 1; l <= ltag; ++l) {
    std::vector<Array3> tc, tg;
    compute_indicators(h, l, E.level(l), tc, tg);
    tags[std::size_t(l - 1)] = tag_level(h, l, tc, tg, pol);
    plan.tag_counts.push_back(tags[std::size_t(l - 1)].count);
  }

  // a finer level's tags demand refinement below them: tag the parents,
  // grown by the buffer plus the nesting gap
  for (int l = ltag - 1; l >= 1; --l) {
    const LevelTags& tf = tags[std::size_t(l)];
    LevelTags& tc = tags[std::size_t(l - 1)];
    if (tf.count == 0) continue;
    const int g = pol.buffer_cells + 1;
    const IndexBox& fdom = tf.domain;
    for (int k = fdom.lo[2]; k <= fdom.hi[2]; ++k)
      for (int j = fdom.lo[1]; j <= fdom.hi[1]; ++j)
        for (int i = fdom.lo[0]; i <= fdom.hi[0]; ++i) {
          if (!tf.m(i, j, k)) continue;
          const Int3 p{IndexBox::floor_div(i, h.ratio),
                       IndexBox::floor_div(j, h.ratio),
                       IndexBox::floor_div(k, h.ratio)};
          const IndexBox gb = IndexBox::intersect(
              IndexBox{p, p}.grown(g), tc.domain);
          for (int kk = gb.lo[2]; kk <= gb.hi[2]; ++kk)
            for (int jj = gb.lo[1]; jj <= gb.hi[1]; ++jj)
              for (int ii = gb.lo[0]; ii <= gb.hi[0]; ++ii)
                if (!tc.m(ii, jj, kk)) {
                  tc.m(ii, jj, kk) = 1;
                  ++tc.count;
                }
        }
  }

  std::vector<std::vector<IndexBox>> boxes;
  for (int l = 1; l <= ltag; ++l) {
    if (tags[std::size_t(l - 1)].count == 0) break;
    const IndexBox& dom = h.level(l).domain_box;

    Mask3 allowed(dom, 0, 1);
    if (l >= 2) {
      Mask3 fp(dom, 0, 0);
      for (const IndexBox& cb : boxes[std::size_t(l - 2)]) {
        const IndexBox rb = cb.refined(h.ratio);
        for (int k = rb.lo[2]; k <= rb.hi[2]; ++k)
          for (int j = rb.lo[1]; j <= rb.hi[1]; ++j)
            for (int i = rb.lo[0]; i <= rb.hi[0]; ++i) fp(i, j, k) = 1;
      }
      for (int k = dom.lo[2]; k <= dom.hi[2]; ++k)
        for (int j = dom.lo[1]; j <= dom.hi[1]; ++j)
          for (int i = dom.lo[0]; i <= dom.hi[0]; ++i) {
            bool ok = fp(i, j, k) != 0;
            if (ok) {
              const IndexBox g = IndexBox::intersect(
                  IndexBox{{i, j, k}, {i, j, k}}.grown(1), dom);
              for (int kk = g.lo[2]; kk <= g.hi[2] && ok; ++kk)
                for (int jj = g.lo[1]; jj <= g.hi[1] && ok; ++jj)
                  for (int ii = g.lo[0]; ii <= g.hi[0]; ++ii)
                    if (!fp(ii, jj, kk)) {
                      ok = false;
                      break;
                    }
            }
            allowed(i, j, k) = ok ? 1 : 0;
          }
    }

    LevelTags buffered;
    buffered.define(dom);
    buffered.m = dilate(tags[std::size_t(l - 1)], pol.buffer_cells,
                        buffered.count);
    std::int64_t kept = 0;
    for (std::size_t c = 0; c < buffered.m.data.size(); ++c) {
      buffered.m.data[c] = buffered.m.data[c] && allowed.data[c];
      kept += buffered.m.data[c];
    }
    buffered.count = kept;
    if (buffered.count == 0) break;

    std::vector<IndexBox> raw = cluster_tags(buffered, pol);
    std::vector<IndexBox> legal;
    for (const IndexBox& rb : raw) legalize(allowed, buffered.m, rb, legal);
    if (legal.empty()) break;
    std::sort(legal.begin(), legal.end(), box_less);
    boxes.push_back(std::move(legal));
  }

  plan.changed = (int(boxes.size()) + 1 != L);
  if (!plan.changed) {
    for (int l = 2; l <= L && !plan.changed; ++l) {
      const Level& lev = h.level(l);
      Mask3 cur(lev.domain_box, 0, 0);
      std::int64_t ncur = 0;
      for (const Patch& p : lev.patches) {
        ncur += p.box.volume();
        for (int k = p.box.lo[2]; k <= p.box.hi[2]; ++k)
          for (int j = p.box.lo[1]; j <= p.box.hi[1]; ++j)
            for (int i = p.box.lo[0]; i <= p.box.hi[0]; ++i) cur(i, j, k) = 1;
      }
      std::int64_t nnew = 0;
      for (const IndexBox& cb : boxes[std::size_t(l - 2)]) {
        const IndexBox rb = cb.refined(h.ratio);
        nnew += rb.volume();
        for (int k = rb.lo[2]; k <= rb.hi[2] && !plan.changed; ++k)
          for (int j = rb.lo[1]; j <= rb.hi[1] && !plan.changed; ++j)
            for (int i = rb.lo[0]; i <= rb.hi[0]; ++i)
              if (!cur(i, j, k)) {
                plan.changed = true;
                break;
              }
      }
      if (nnew != ncur) plan.changed = true;
    }
  }
  plan.refine_boxes = std::move(boxes);
  return plan;
}

void transfer_scalar(const Hierarchy& old_h, const CompositeScalar& old_f,
                     const Hierarchy& new_h, CompositeScalar& new_f,
                     bool positive) {
  new_f.level(1)[0].data = old_f.level(1)[0].data;
  for (int l = 2; l <= new_h.num_levels(); ++l) {
    fill_ghost(new_h, l - 1, new_f,
               positive ? extrapolate_fill_clamped() : extrapolate_fill());
    prolong_conservative(new_h, l, new_f.level(l - 1), new_f.level(l));
    if (l <= old_h.num_levels()) {
      const Level& nlev = new_h.level(l);
      const Level& olev = old_h.level(l);
      auto& nl = new_f.level(l);
      const auto& ol = old_f.level(l);
      parallel_for_items(std::int64_t(nlev.patches.size()),
                         [&](std::int64_t p) {
        Array3& na = nl[std::size_t(p)];
        const IndexBox& nb = nlev.patches[std::size_t(p)].box;
        for (std::size_t q = 0; q < olev.patches.size(); ++q) {
          const IndexBox ov = IndexBox::intersect(nb, olev.patches[q].box);
          if (ov.empty()) continue;
          const Array3& oa = ol[q];
          for (int k = ov.lo[2]; k <= ov.hi[2]; ++k)
            for (int j = ov.lo[1]; j <= ov.hi[1]; ++j)
              for (int i = ov.lo[0]; i <= ov.hi[0]; ++i)
                na(i, j, k) = oa(i, j, k);
        }
      });
    }
  }
  sync_covered(new_h, new_f);
}

}  // namespace samrad
