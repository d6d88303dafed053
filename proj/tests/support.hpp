#ifndef SAMRAD_TESTS_SUPPORT_HPP
#define SAMRAD_TESTS_SUPPORT_HPP

// Helpers shared between the unit tests and the acceptance harness: a dense
// finite-difference Newton oracle, a scalar ODE loop for controller checks,
// and random nested-hierarchy generators.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "samrad/controller.hpp"
#include "samrad/gmres.hpp"
#include "samrad/hierarchy.hpp"
#include "samrad/time_integrator.hpp"

namespace ts {

// Gaussian elimination with partial pivoting; A is n x n row-major, b is
// overwritten by the solution.
inline void lu_solve(std::vector<double>& A, std::vector<double>& b, int n) {
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(A[std::size_t(r) * n + c]) >
          std::abs(A[std::size_t(piv) * n + c]))
        piv = r;
    if (piv != c) {
      for (int k = 0; k < n; ++k)
        std::swap(A[std::size_t(c) * n + k], A[std::size_t(piv) * n + k]);
      std::swap(b[c], b[piv]);
    }
    const double d = A[std::size_t(c) * n + c];
    if (d == 0.0) samrad::fail("singular matrix in lu_solve");
    for (int r = c + 1; r < n; ++r) {
      const double m = A[std::size_t(r) * n + c] / d;
      if (m == 0.0) continue;
      for (int k = c; k < n; ++k)
        A[std::size_t(r) * n + k] -= m * A[std::size_t(c) * n + k];
      b[r] -= m * b[c];
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int k = r + 1; k < n; ++k) s -= A[std::size_t(r) * n + k] * b[k];
    b[r] = s / A[std::size_t(r) * n + r];
  }
}

// Newton iteration with a centrally differenced dense Jacobian and a direct
// solve, the oracle the JFNK path is measured against. Updates are scaled by
// the same positivity rule as the production solver.
inline std::vector<double> dense_newton_oracle(
    const samrad::VecOp& F, std::vector<double> u, double rel_tol,
    double abs_tol, int max_iters = 50) {
  const int n = int(u.size());
  std::vector<double> Fu(n), Fp(n), Fm(n), up(n), J(std::size_t(n) * n),
      step(n);
  F(u, Fu);
  double norm0 = 0.0;
  for (double v : Fu) norm0 += v * v;
  norm0 = std::sqrt(norm0);
  const double tol = std::max(rel_tol * norm0, abs_tol);

  for (int it = 0; it < max_iters; ++it) {
    double norm = 0.0;
    for (double v : Fu) norm += v * v;
    norm = std::sqrt(norm);
    if (norm <= tol) return u;

    for (int j = 0; j < n; ++j) {
      const double d = 1e-7 * std::max(std::abs(u[j]), 1e-6);
      up = u;
      up[j] += d;
      F(up, Fp);
      up[j] = u[j] - d;
      F(up, Fm);
      const double inv = 1.0 / (2.0 * d);
      for (int i = 0; i < n; ++i)
        J[std::size_t(i) * n + j] = (Fp[i] - Fm[i]) * inv;
    }
    std::vector<double> A = J;
    for (int i = 0; i < n; ++i) step[i] = -Fu[i];
    lu_solve(A, step, n);
    double lam = 1.0;
    for (int i = 0; i < n; ++i)
      if (step[i] < 0.0) lam = std::min(lam, 0.99 * u[i] / (-step[i]));
    for (int i = 0; i < n; ++i) u[i] += lam * step[i];
    F(u, Fu);
  }
  samrad::fail("dense Newton oracle did not converge");
}

struct ScalarStepStat {
  double dt = 0.0;
  double err = -1.0;
  bool accepted = false;
};

// Closed-loop BDF2 run on u' = lam (cos(3t) - u): the scalar solve is exact,
// so the trace isolates predictor, estimator and controller behavior.  The
// forcing frequency keeps the in-band step size well under dt_max.
inline std::vector<ScalarStepStat> scalar_controller_run(
    samrad::StepController& ctrl, double lam, double t_final) {
  samrad::BdfStepper st;
  std::vector<double> u{1.0, 1.0};  // duplicated so both norm halves see it
  auto f = [&](double t, double v) { return lam * (std::cos(3.0 * t) - v); };
  st.initialize(u, {f(0.0, u[0]), f(0.0, u[1])});

  std::vector<ScalarStepStat> out;
  double t = 0.0;
  double dt = ctrl.initial_dt();
  while (t < t_final) {
    dt = std::min(dt, t_final - t);
    const samrad::BdfWeights w = st.weights(dt);
    // c0 u - c1 u_n + c2 u_nm1 = dt lam (cos(t+dt) - u)
    const double histE =
        w.c1 * st.u_n()[0] -
        (st.can_predict() ? w.c2 * st.u_nm1()[0] : 0.0);
    const double unew =
        (histE + dt * lam * std::cos(3.0 * (t + dt))) / (w.c0 + dt * lam);
    std::vector<double> un{unew, unew};

    ScalarStepStat s;
    s.dt = dt;
    if (st.can_predict()) {
      std::vector<double> up;
      st.predict(dt, up);
      s.err = st.error_norm(dt, un, up, ctrl.config().scaling);
      const samrad::StepController::Decision dec = ctrl.update(s.err, dt);
      s.accepted = dec.accepted;
      dt = dec.dt_next;
    } else {
      s.accepted = true;
      dt = ctrl.hold(dt);
    }
    if (s.accepted) {
      st.accept(s.dt, un);
      t += s.dt;
    }
    out.push_back(s);
    if (out.size() > 100000) samrad::fail("scalar controller run stuck");
  }
  return out;
}

// Random legally nested refinement boxes for a two-level hierarchy.
inline samrad::Hierarchy random_two_level(std::mt19937& rng, int base) {
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  samrad::DomainSpec dom;
  dom.base_resolution = base;
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<samrad::IndexBox> boxes;
    const int nb = pick(1, 2);
    for (int b = 0; b < nb; ++b) {
      samrad::IndexBox bx;
      for (int d = 0; d < 3; ++d) {
        bx.lo[d] = pick(0, base - 2);
        bx.hi[d] = pick(bx.lo[d] + 1, std::min(base - 1, bx.lo[d] + base / 2));
      }
      boxes.push_back(bx);
    }
    bool overlap = false;
    for (std::size_t a = 0; a < boxes.size(); ++a)
      for (std::size_t b = a + 1; b < boxes.size(); ++b)
        if (boxes[a].intersects(boxes[b])) overlap = true;
    if (overlap) continue;
    return samrad::build_hierarchy(dom, {boxes});
  }
  samrad::fail("random_two_level: no legal configuration found");
}

// Three levels: one random level-2 box plus a level-3 box nested one coarse
// cell inside it (or touching the domain boundary where level 2 does).
inline samrad::Hierarchy random_three_level(std::mt19937& rng, int base) {
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  samrad::DomainSpec dom;
  dom.base_resolution = base;
  for (int attempt = 0; attempt < 100; ++attempt) {
    samrad::IndexBox b2;
    for (int d = 0; d < 3; ++d) {
      b2.lo[d] = pick(0, base - 4);
      b2.hi[d] = pick(b2.lo[d] + 3, base - 1);
    }
    samrad::IndexBox inner = b2;  // level-2 index space, interior margin 1
    for (int d = 0; d < 3; ++d) {
      inner.lo[d] = b2.lo[d] * 2 + (b2.lo[d] == 0 ? 0 : 2);
      inner.hi[d] = b2.hi[d] * 2 + 1 - (b2.hi[d] == base - 1 ? 0 : 2);
    }
    if (inner.empty() || inner.extent(0) < 2 || inner.extent(1) < 2 ||
        inner.extent(2) < 2)
      continue;
    samrad::IndexBox b3;
    bool ok = true;
    for (int d = 0; d < 3; ++d) {
      if (inner.extent(d) < 2) ok = false;
    }
    if (!ok) continue;
    for (int d = 0; d < 3; ++d) {
      b3.lo[d] = pick(inner.lo[d], inner.hi[d] - 1);
      b3.hi[d] = pick(b3.lo[d] + 1, inner.hi[d]);
    }
    return samrad::build_hierarchy(dom, {{b2}, {b3}});
  }
  samrad::fail("random_three_level: no legal configuration found");
}

}  // namespace ts

#endif
