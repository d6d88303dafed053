#include "samrad/newton.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "samrad/field.hpp"

namespace samrad {

double choose_epsilon(const std::vector<double>& u,
                      const std::vector<double>& v, double u_min) {
  const double uv = dot(u, v);
  const double n1 = norm1(v);
  const double n2sq = dot(v, v);
  const double sq = std::sqrt(std::numeric_limits<double>::epsilon());
  if (uv > u_min * n1) return sq * uv / n2sq;
  const double sign = (uv < 0.0) ? -1.0 : 1.0;
  return sq * u_min * sign * n1 / n2sq;
}

double positivity_lambda(const std::vector<double>& u,
                         const std::vector<double>& v, double theta) {
  double lam = 1.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (v[i] < 0.0) lam = std::min(lam, (1.0 - theta) * u[i] / (-v[i]));
  return lam;
}

SolverReport newton_solve(const VecOp& F, const VecOp& pc,
                          const std::function<void()>& freeze_pc,
                          std::vector<double>& u, const NewtonConfig& cfg) {
  SolverReport rep;
  const std::size_t n = u.size();
  std::vector<double> Fu(n), rhs(n), s(n), up(n), Fp(n);

  try {
    F(u, Fu);
    double norm = norm2(Fu);
    rep.residual_norms.push_back(norm);
    const double tol = std::max(cfg.rel_tol * norm, cfg.abs_tol);
    double eta_prev = -1.0;

    while (norm > tol) {
      if (rep.newton_iters >= cfg.max_newton_iters) {
        rep.failure = "max Newton iterations reached";
        return rep;
      }
      if (freeze_pc) freeze_pc();

      double eta;
      if (!cfg.eisenstat_walker) {
        eta = cfg.fixed_eta;
      } else if (eta_prev < 0.0) {
        eta = cfg.eta_max;
      } else {
        const std::size_t m = rep.residual_norms.size();
        const double ratio =
            rep.residual_norms[m - 1] / rep.residual_norms[m - 2];
        eta = cfg.ew_gamma * ratio * ratio;
        const double guard = cfg.ew_gamma * eta_prev * eta_prev;
        if (guard > 0.1) eta = std::max(eta, guard);
      }
      eta = std::min(eta, cfg.eta_max);
      eta = std::max(eta, 0.5 * tol / norm);  // avoid oversolving
      rep.forcing_terms.push_back(eta);
      eta_prev = eta;

      VecOp jv = [&](const std::vector<double>& z, std::vector<double>& w) {
        const double zz = norm2(z);
        w.resize(n);
        if (zz == 0.0) {
          std::fill(w.begin(), w.end(), 0.0);
          return;
        }
        const double eps = choose_epsilon(u, z, cfg.u_min);
        for (std::size_t i = 0; i < n; ++i) up[i] = u[i] + eps * z[i];
        try {
          F(up, Fp);
        } catch (const std::exception& ex) {
          throw std::runtime_error(std::string(ex.what()) +
                                   " (in matvec, eps=" + std::to_string(eps) +
                                   ")");
        }
        const double inv = 1.0 / eps;
        for (std::size_t i = 0; i < n; ++i) w[i] = (Fp[i] - Fu[i]) * inv;
      };

      for (std::size_t i = 0; i < n; ++i) rhs[i] = -Fu[i];
      GmresResult lin = gmres_solve(jv, pc, rhs, s, eta, cfg.max_krylov_dim);
      rep.total_gmres_iters += lin.iters;

      const double lam = positivity_lambda(u, s, cfg.theta);
      if (lam < cfg.lambda_min) {
        rep.failure = "positivity scaling collapsed (lambda=" +
                      std::to_string(lam) + ")";
        return rep;
      }
      if (lam < 1.0) ++rep.positivity_events;
      axpy(lam, s, u);

      F(u, Fu);
      norm = norm2(Fu);
      rep.residual_norms.push_back(norm);
      ++rep.newton_iters;
    }
    rep.converged = true;
  } catch (const std::exception& ex) {
    rep.failure = ex.what();
    rep.converged = false;
  }
  return rep;
}

}  // namespace samrad
