#include <random>

#include "doctest.h"
#include "samrad/residual.hpp"
#include "samrad/transfer.hpp"

using namespace samrad;

namespace {

Hierarchy two_level(int base, const IndexBox& refine) {
  DomainSpec dom;
  dom.base_resolution = base;
  return build_hierarchy(dom, {{refine}});
}

double linear3(double x, double y, double z) {
  return 3.0 + 0.4 * x - 0.25 * y + 0.6 * z;
}

void fill_level_linear(const Hierarchy& h, int l, std::vector<Array3>& data) {
  const Level& lev = h.level(l);
  for (std::size_t p = 0; p < data.size(); ++p) {
    const IndexBox& b = lev.patches[p].box;
    for (int k = b.lo[2]; k <= b.hi[2]; ++k)
      for (int j = b.lo[1]; j <= b.hi[1]; ++j)
        for (int i = b.lo[0]; i <= b.hi[0]; ++i)
          data[p](i, j, k) = linear3(lev.cell_center(0, i, h.domain.bounds),
                                     lev.cell_center(1, j, h.domain.bounds),
                                     lev.cell_center(2, k, h.domain.bounds));
  }
}

void fill_random(std::vector<Array3>& data, unsigned seed, double lo = 0.2,
                 double hi = 2.0) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  for (auto& a : data)
    for (double& v : a.data) v = dist(rng);
}

}  // namespace

TEST_CASE("restriction is the exact mean of the eight children") {
  Hierarchy h = two_level(8, IndexBox({2, 2, 2}, {5, 5, 5}));
  CompositeScalar f(h);
  fill_random(f.level(2), 11);
  const Array3 fine = f.patch(2, 0);
  restrict_to_coarse(h, 2, f);
  const Array3& crse = f.patch(1, 0);

  double s = 0.0;
  for (int ok = 0; ok < 2; ++ok)
    for (int oj = 0; oj < 2; ++oj)
      for (int oi = 0; oi < 2; ++oi) s += fine(6 + oi, 8 + oj, 10 + ok);
  CHECK(crse(3, 4, 5) == doctest::Approx(s / 8.0).epsilon(1e-15));

  // uncovered coarse cells untouched
  CHECK(crse(0, 0, 0) == 0.0);
}

TEST_CASE("restrict then prolong is identity on constants") {
  Hierarchy h = two_level(8, IndexBox({2, 2, 2}, {5, 5, 5}));
  CompositeScalar f(h);
  f.fill(1.7);
  restrict_to_coarse(h, 2, f);
  fill_ghost(h, 1, f, extrapolate_fill());
  std::vector<Array3> fine = f.level(2);
  prolong_correction(h, 2, f.level(1), fine);
  for (const double v : fine[0].data)
    if (v != 0.0) CHECK(v == doctest::Approx(1.7).epsilon(1e-15));
}

TEST_CASE("trilinear prolongation reproduces linear fields") {
  for (IndexBox rb :
       {IndexBox({2, 2, 2}, {5, 5, 5}), IndexBox({0, 0, 0}, {3, 5, 5})}) {
    Hierarchy h = two_level(8, rb);
    CompositeScalar f(h);
    fill_level_linear(h, 1, f.level(1));
    fill_ghost(h, 1, f, extrapolate_fill());
    std::vector<Array3> fine = f.level(2);
    prolong_correction(h, 2, f.level(1), fine);

    const Level& lev = h.level(2);
    const IndexBox& b = lev.patches[0].box;
    for (int k = b.lo[2]; k <= b.hi[2]; ++k)
      for (int j = b.lo[1]; j <= b.hi[1]; ++j)
        for (int i = b.lo[0]; i <= b.hi[0]; ++i) {
          double expect = linear3(lev.cell_center(0, i, h.domain.bounds),
                                  lev.cell_center(1, j, h.domain.bounds),
                                  lev.cell_center(2, k, h.domain.bounds));
          CHECK(fine[0](i, j, k) == doctest::Approx(expect).epsilon(1e-13));
        }
  }
}

TEST_CASE("conservative prolongation preserves coarse means exactly") {
  Hierarchy h = two_level(8, IndexBox({2, 2, 2}, {5, 5, 5}));
  CompositeScalar f(h);
  fill_random(f.level(1), 23);
  fill_ghost(h, 1, f, extrapolate_fill_clamped());
  const Array3 crse = f.patch(1, 0);
  std::vector<Array3> fine = f.level(2);
  prolong_conservative(h, 2, f.level(1), fine);

  const IndexBox cb = h.level(2).patches[0].box.coarsened(2);
  for (int k = cb.lo[2]; k <= cb.hi[2]; ++k)
    for (int j = cb.lo[1]; j <= cb.hi[1]; ++j)
      for (int i = cb.lo[0]; i <= cb.hi[0]; ++i) {
        double s = 0.0;
        for (int ok = 0; ok < 2; ++ok)
          for (int oj = 0; oj < 2; ++oj)
            for (int oi = 0; oi < 2; ++oi)
              s += fine[0](2 * i + oi, 2 * j + oj, 2 * k + ok);
        CHECK(s / 8.0 == doctest::Approx(crse(i, j, k)).epsilon(1e-14));
      }
}

TEST_CASE("conservative prolongation adds no new extrema near a spike") {
  Hierarchy h = two_level(8, IndexBox({2, 2, 2}, {5, 5, 5}));
  CompositeScalar f(h);
  for (auto& a : f.level(1))
    for (double& v : a.data) v = 1e-8;
  f.patch(1, 0)(3, 3, 3) = 1e3;  // sharp positive spike next to near-zero
  fill_ghost(h, 1, f, extrapolate_fill_clamped());
  std::vector<Array3> fine = f.level(2);
  prolong_conservative(h, 2, f.level(1), fine);
  for (double v : fine[0].data) {
    CHECK(v >= 0.0);
    CHECK(v <= 1e3);
  }
}

TEST_CASE("conservative prolongation is exact on positive linear fields") {
  for (IndexBox rb :
       {IndexBox({2, 2, 2}, {5, 5, 5}), IndexBox({4, 2, 0}, {7, 5, 3})}) {
    Hierarchy h = two_level(8, rb);
    CompositeScalar f(h);
    fill_level_linear(h, 1, f.level(1));
    fill_ghost(h, 1, f, extrapolate_fill_clamped());
    std::vector<Array3> fine = f.level(2);
    prolong_conservative(h, 2, f.level(1), fine);

    const Level& lev = h.level(2);
    const IndexBox& b = lev.patches[0].box;
    for (int k = b.lo[2]; k <= b.hi[2]; ++k)
      for (int j = b.lo[1]; j <= b.hi[1]; ++j)
        for (int i = b.lo[0]; i <= b.hi[0]; ++i) {
          double expect = linear3(lev.cell_center(0, i, h.domain.bounds),
                                  lev.cell_center(1, j, h.domain.bounds),
                                  lev.cell_center(2, k, h.domain.bounds));
          CHECK(fine[0](i, j, k) == doctest::Approx(expect).epsilon(1e-13));
        }
  }
}

TEST_CASE("flux matching replaces the coarse flux by the fine-face sum") {
  Hierarchy h = two_level(8, IndexBox({2, 2, 2}, {5, 5, 5}));
  LevelFluxes crse(1), fine(1);
  crse[0].define(h.level(1).patches[0].box);
  fine[0].define(h.level(2).patches[0].box);

  // coarse face between valid cell (1,2,2) and covered cell (2,2,2): the
  // x-face array index is (2,2,2); overlapped fine faces are (4, 4..5, 4..5)
  const double fine_area = (1.0 / 16) * (1.0 / 16);
  double unit[4] = {1.0, 2.0, 3.0, 4.0};
  int n = 0;
  for (int ok = 0; ok < 2; ++ok)
    for (int oj = 0; oj < 2; ++oj) fine[0].f[0](4, 4 + oj, 4 + ok) = unit[n++] * fine_area;
  crse[0].f[0](2, 2, 2) = 99.0;

  match_fluxes(h, 1, crse, fine);

  // per unit coarse-face area the matched flux is the average 2.5
  const double coarse_area = (1.0 / 8) * (1.0 / 8);
  CHECK(crse[0].f[0](2, 2, 2) ==
        doctest::Approx(2.5 * coarse_area).epsilon(1e-14));
  CHECK(crse[0].f[0](2, 2, 2) ==
        doctest::Approx(10.0 * fine_area).epsilon(1e-14));
}

TEST_CASE("composite integral sums valid cells only") {
  Hierarchy h = two_level(8, IndexBox({2, 2, 2}, {5, 5, 5}));
  CompositeScalar f(h);
  f.fill(1.0);
  // domain volume 1: 8^3-4^3 coarse cells at (1/8)^3 plus 8^3 fine at (1/16)^3
  CHECK(composite_integral(h, f) == doctest::Approx(1.0).epsilon(1e-14));
}
