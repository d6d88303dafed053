#include "samrad/gmres.hpp"

#include <cmath>

#include "samrad/field.hpp"

namespace samrad {

GmresResult gmres_solve(const VecOp& op, const VecOp& pc,
                        const std::vector<double>& rhs, std::vector<double>& x,
                        double tol, int max_dim) {
  GmresResult res;
  const std::size_t n = rhs.size();
  x.assign(n, 0.0);

  const double beta = norm2(rhs);
  if (beta == 0.0) {
    res.converged = true;
    return res;
  }

  std::vector<std::vector<double>> V;
  V.push_back(rhs);
  scale(V[0], 1.0 / beta);

  std::vector<std::vector<double>> H;  // H[j] holds column j, length j+2
  std::vector<double> cs, sn;
  std::vector<double> g{beta};

  std::vector<double> z(n), w(n);
  int j = 0;
  bool breakdown = false;
  for (; j < max_dim; ++j) {
    if (pc) {
      pc(V[j], z);
    } else {
      z = V[j];
    }
    op(z, w);

    H.emplace_back(j + 2, 0.0);
    for (int i = 0; i <= j; ++i) {
      H[j][i] = dot(w, V[i]);
      axpy(-H[j][i], V[i], w);
    }
    H[j][j + 1] = norm2(w);

    for (int i = 0; i < j; ++i) {
      const double t = cs[i] * H[j][i] + sn[i] * H[j][i + 1];
      H[j][i + 1] = -sn[i] * H[j][i] + cs[i] * H[j][i + 1];
      H[j][i] = t;
    }
    const double a = H[j][j], b = H[j][j + 1];
    const double r = std::hypot(a, b);
    double c = 1.0, s = 0.0;
    if (r > 0.0) {
      c = a / r;
      s = b / r;
    }
    cs.push_back(c);
    sn.push_back(s);
    H[j][j] = r;
    H[j][j + 1] = 0.0;
    g.push_back(-s * g[j]);
    g[j] = c * g[j];

    res.residual_history.push_back(std::abs(g[j + 1]) / beta);

    if (r == 0.0) breakdown = true;
    const bool happy = (b <= 1e-300);
    if (res.residual_history.back() <= tol || happy || breakdown) {
      ++j;
      break;
    }
    V.push_back(w);
    scale(V.back(), 1.0 / b);
  }

  res.iters = j;
  if (j == 0) return res;

  // back substitution on the j x j triangular system
  std::vector<double> y(j, 0.0);
  for (int i = j - 1; i >= 0; --i) {
    double s = g[i];
    for (int k = i + 1; k < j; ++k) s -= H[k][i] * y[k];
    y[i] = s / H[i][i];
  }
  for (int i = 0; i < j; ++i) axpy(y[i], V[i], x);
  if (pc) {
    z = x;
    pc(z, x);
  }
  res.rel_residual = std::abs(g[j]) / beta;
  res.converged = res.rel_residual <= tol || breakdown;
  return res;
}

}  // namespace samrad
