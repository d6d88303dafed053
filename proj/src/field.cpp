#include "samrad/field.hpp"

#include <cmath>

namespace samrad {

void DofMap::gather(const CompositeState& s, std::vector<double>& v) const {
  v.resize(std::size_t(size()));
  const std::int64_t n = n_cells;
  for_each_valid([&](int l, int p, int i, int j, int k, std::int64_t c) {
    v[std::size_t(c)] = s.E.patch(l, p)(i, j, k);
    v[std::size_t(c + n)] = s.T.patch(l, p)(i, j, k);
  });
}

void DofMap::scatter(const std::vector<double>& v, CompositeState& s) const {
  const std::int64_t n = n_cells;
  for_each_valid([&](int l, int p, int i, int j, int k, std::int64_t c) {
    s.E.patch(l, p)(i, j, k) = v[std::size_t(c)];
    s.T.patch(l, p)(i, j, k) = v[std::size_t(c + n)];
  });
}

namespace {
constexpr std::size_t kBlock = 8192;

template <class Fn>
double blocked_reduce(std::size_t n, double init, Fn&& block_fn, bool maximum) {
  if (n == 0) return init;
  std::size_t nblocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(nblocks);
  parallel_for_items(std::int64_t(nblocks), [&](std::int64_t b) {
    std::size_t lo = std::size_t(b) * kBlock;
    std::size_t hi = std::min(n, lo + kBlock);
    partial[std::size_t(b)] = block_fn(lo, hi);
  });
  double acc = init;
  for (double p : partial) acc = maximum ? std::max(acc, p) : acc + p;
  return acc;
}
}  // namespace

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return blocked_reduce(
      a.size(), 0.0,
      [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += a[i] * b[i];
        return s;
      },
      false);
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

double norm1(const std::vector<double>& a) {
  return blocked_reduce(
      a.size(), 0.0,
      [&](std::size_t lo, std::size_t hi) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += std::abs(a[i]);
        return s;
      },
      false);
}

double norm_inf(const std::vector<double>& a) {
  return blocked_reduce(
      a.size(), 0.0,
      [&](std::size_t lo, std::size_t hi) {
        double m = 0.0;
        for (std::size_t i = lo; i < hi; ++i) m = std::max(m, std::abs(a[i]));
        return m;
      },
      true);
}

void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
  std::size_t n = x.size();
  std::size_t nblocks = (n + kBlock - 1) / kBlock;
  parallel_for_items(std::int64_t(nblocks), [&](std::int64_t b) {
    std::size_t lo = std::size_t(b) * kBlock;
    std::size_t hi = std::min(n, lo + kBlock);
    for (std::size_t i = lo; i < hi; ++i) y[i] += alpha * x[i];
  });
}

void scale(std::vector<double>& x, double alpha) {
  for (double& v : x) v *= alpha;
}

}  // namespace samrad
