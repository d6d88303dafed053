#ifndef SAMRAD_FIELD_HPP
#define SAMRAD_FIELD_HPP

#include <cstdint>
#include <vector>

#include "samrad/array3.hpp"
#include "samrad/hierarchy.hpp"
#include "samrad/threading.hpp"

namespace samrad {

// One cell-centered scalar over the whole hierarchy, ghost frame included.
struct CompositeScalar {
  std::vector<std::vector<Array3>> data;  // [level-1][patch]

  CompositeScalar() = default;
  explicit CompositeScalar(const Hierarchy& h) { define(h); }

  void define(const Hierarchy& h) {
    data.clear();
    data.resize(h.num_levels());
    for (int l = 1; l <= h.num_levels(); ++l) {
      const Level& lev = h.level(l);
      data[l - 1].reserve(lev.patches.size());
      for (const Patch& p : lev.patches)
        data[l - 1].emplace_back(p.box, h.ghost_width, 0.0);
    }
  }
  std::vector<Array3>& level(int l) { return data[l - 1]; }
  const std::vector<Array3>& level(int l) const { return data[l - 1]; }
  Array3& patch(int l, int p) { return data[l - 1][p]; }
  const Array3& patch(int l, int p) const { return data[l - 1][p]; }
  void fill(double v) {
    for (auto& lev : data)
      for (auto& a : lev) a.fill(v);
  }
};

// The coupled state: radiation energy density and material temperature.
struct CompositeState {
  CompositeScalar E, T;

  CompositeState() = default;
  explicit CompositeState(const Hierarchy& h) { define(h); }
  void define(const Hierarchy& h) {
    E.define(h);
    T.define(h);
  }
};

// Deterministic enumeration of valid cells: level ascending, patch ascending,
// then k-j-i with x fastest. Flat vectors hold the E block then the T block.
struct DofMap {
  const Hierarchy* hier = nullptr;
  std::int64_t n_cells = 0;

  DofMap() = default;
  explicit DofMap(const Hierarchy& h) : hier(&h), n_cells(h.total_valid_cells()) {}

  std::int64_t size() const { return 2 * n_cells; }

  template <class Fn>  // fn(level, patch, i, j, k, cell_index)
  void for_each_valid(Fn&& fn) const {
    std::int64_t c = 0;
    for (int l = 1; l <= hier->num_levels(); ++l) {
      const Level& lev = hier->level(l);
      for (std::size_t p = 0; p < lev.patches.size(); ++p) {
        const IndexBox& b = lev.patches[p].box;
        const Mask3& cov = hier->covered_mask(l, int(p));
        for (int k = b.lo[2]; k <= b.hi[2]; ++k)
          for (int j = b.lo[1]; j <= b.hi[1]; ++j)
            for (int i = b.lo[0]; i <= b.hi[0]; ++i)
              if (!cov(i, j, k)) fn(l, int(p), i, j, k, c++);
      }
    }
  }

  void gather(const CompositeState& s, std::vector<double>& v) const;
  // writes valid cells only; covered cells must be re-synced by restriction
  void scatter(const std::vector<double>& v, CompositeState& s) const;
};

// Deterministic flat-vector kernels (block-partial reductions, fixed order).
double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm2(const std::vector<double>& a);
double norm1(const std::vector<double>& a);
double norm_inf(const std::vector<double>& a);
void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y);
void scale(std::vector<double>& x, double alpha);

}  // namespace samrad

#endif
