#ifndef SAMRAD_BOX_HPP
#define SAMRAD_BOX_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <ostream>

namespace samrad {

using Int3 = std::array<int, 3>;

// Axis-aligned cell-index box, inclusive bounds. An empty box has
// upper[d] < lower[d] in at least one direction.
struct IndexBox {
  Int3 lo{0, 0, 0};
  Int3 hi{-1, -1, -1};

  IndexBox() = default;
  IndexBox(Int3 l, Int3 h) : lo(l), hi(h) {}

  bool empty() const {
    return hi[0] < lo[0] || hi[1] < lo[1] || hi[2] < lo[2];
  }
  int extent(int d) const { return hi[d] - lo[d] + 1; }
  std::int64_t volume() const {
    if (empty()) return 0;
    return std::int64_t(extent(0)) * extent(1) * extent(2);
  }
  bool contains(int i, int j, int k) const {
    return i >= lo[0] && i <= hi[0] && j >= lo[1] && j <= hi[1] &&
           k >= lo[2] && k <= hi[2];
  }
  bool contains(const Int3& p) const { return contains(p[0], p[1], p[2]); }
  bool contains(const IndexBox& b) const {
    return b.empty() || (contains(b.lo) && contains(b.hi));
  }
  bool intersects(const IndexBox& b) const {
    return !intersect(*this, b).empty();
  }
  bool operator==(const IndexBox& b) const { return lo == b.lo && hi == b.hi; }

  static IndexBox intersect(const IndexBox& a, const IndexBox& b) {
    IndexBox r;
    for (int d = 0; d < 3; ++d) {
      r.lo[d] = std::max(a.lo[d], b.lo[d]);
      r.hi[d] = std::min(a.hi[d], b.hi[d]);
    }
    return r;
  }

  IndexBox grown(int g) const {
    IndexBox r = *this;
    for (int d = 0; d < 3; ++d) {
      r.lo[d] -= g;
      r.hi[d] += g;
    }
    return r;
  }

  // Index-space refinement by an integer ratio: cell (i,j,k) maps to the
  // block [r*i, r*i+r-1] x ... of finer cells.
  IndexBox refined(int r) const {
    IndexBox b = *this;
    for (int d = 0; d < 3; ++d) {
      b.lo[d] = lo[d] * r;
      b.hi[d] = hi[d] * r + r - 1;
    }
    return b;
  }
  IndexBox coarsened(int r) const {
    IndexBox b = *this;
    for (int d = 0; d < 3; ++d) {
      b.lo[d] = floor_div(lo[d], r);
      b.hi[d] = floor_div(hi[d], r);
    }
    return b;
  }

  static int floor_div(int a, int r) {
    return a >= 0 ? a / r : -((-a + r - 1) / r);
  }
};

inline std::ostream& operator<<(std::ostream& os, const IndexBox& b) {
  os << "[(" << b.lo[0] << "," << b.lo[1] << "," << b.lo[2] << ")-("
     << b.hi[0] << "," << b.hi[1] << "," << b.hi[2] << ")]";
  return os;
}

}  // namespace samrad

#endif
