#ifndef SAMRAD_ARRAY3_HPP
#define SAMRAD_ARRAY3_HPP

#include <cstdint>
#include <vector>

#include "samrad/box.hpp"

namespace samrad {

// Cell-centered patch data: interior box plus a ghost frame of width ng,
// indexed in global level coordinates, x fastest in memory.
template <class T>
struct Array3T {
  IndexBox box;
  int ng = 0;
  int sx = 0, sy = 0, sz = 0;
  Int3 origin{0, 0, 0};
  std::vector<T> data;

  Array3T() = default;
  Array3T(const IndexBox& b, int nghost, T init = T{}) { define(b, nghost, init); }

  void define(const IndexBox& b, int nghost, T init = T{}) {
    box = b;
    ng = nghost;
    sx = b.extent(0) + 2 * ng;
    sy = b.extent(1) + 2 * ng;
    sz = b.extent(2) + 2 * ng;
    origin = {b.lo[0] - ng, b.lo[1] - ng, b.lo[2] - ng};
    data.assign(std::size_t(sx) * sy * sz, init);
  }

  std::size_t index(int i, int j, int k) const {
    return std::size_t(i - origin[0]) +
           std::size_t(sx) * (std::size_t(j - origin[1]) +
                              std::size_t(sy) * std::size_t(k - origin[2]));
  }
  T& operator()(int i, int j, int k) { return data[index(i, j, k)]; }
  const T& operator()(int i, int j, int k) const { return data[index(i, j, k)]; }

  IndexBox ghost_box() const { return box.grown(ng); }
  void fill(T v) { data.assign(data.size(), v); }
};

using Array3 = Array3T<double>;
using Mask3 = Array3T<std::uint8_t>;

}  // namespace samrad

#endif
