#include "samrad/time_integrator.hpp"

#include <cmath>
#include <cstddef>

#include "samrad/hierarchy.hpp"

namespace samrad {

double scaled_max_norm(const std::vector<double>& e,
                       const std::vector<double>& u, const NormScaling& s) {
  const std::size_t n = e.size() / 2;
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    m = std::max(m, std::abs(e[i]) / (std::abs(u[i]) + s.eta_E));
  for (std::size_t i = n; i < e.size(); ++i)
    m = std::max(m, std::abs(e[i]) / (std::abs(u[i]) + s.eta_T));
  return m;
}

void BdfStepper::initialize(std::vector<double> u0,
                            const std::vector<double>& f0) {
  u_n_ = std::move(u0);
  udot_ = f0;
  u_nm1_.clear();
  dt_prev_ = 0.0;
  c0_last_ = 1.0;
  have_prev_ = false;
  completed_ = 0;
}

double BdfStepper::alpha(double dt) const {
  return have_prev_ ? dt / dt_prev_ : 1.0;
}

BdfWeights BdfStepper::weights(double dt) const {
  if (!have_prev_) return {1.0, 1.0, 0.0};
  return bdf2_weights(alpha(dt));
}

void BdfStepper::compose_residual(double dt, const std::vector<double>& u,
                                  const std::vector<double>& fu,
                                  std::vector<double>& F) const {
  const BdfWeights w = weights(dt);
  F.resize(u.size());
  if (!have_prev_) {
    for (std::size_t i = 0; i < u.size(); ++i)
      F[i] = u[i] - u_n_[i] - dt * fu[i];
    return;
  }
  for (std::size_t i = 0; i < u.size(); ++i)
    F[i] = w.c0 * u[i] - w.c1 * u_n_[i] + w.c2 * u_nm1_[i] - dt * fu[i];
}

void BdfStepper::predict(double dt, std::vector<double>& u_pred) const {
  if (!have_prev_) fail("predictor requested without history");
  const double a = alpha(dt);
  u_pred.resize(u_n_.size());
  for (std::size_t i = 0; i < u_n_.size(); ++i)
    u_pred[i] =
        u_n_[i] + (1.0 + a) * dt * udot_[i] - a * a * (u_n_[i] - u_nm1_[i]);
}

double BdfStepper::error_norm(double dt, const std::vector<double>& u,
                              const std::vector<double>& u_pred,
                              const NormScaling& s) const {
  const double c = error_coefficient(alpha(dt));
  const std::size_t n = u.size() / 2;
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    m = std::max(m, c * std::abs(u[i] - u_pred[i]) / (std::abs(u[i]) + s.eta_E));
  for (std::size_t i = n; i < u.size(); ++i)
    m = std::max(m, c * std::abs(u[i] - u_pred[i]) / (std::abs(u[i]) + s.eta_T));
  return m;
}

void BdfStepper::accept(double dt, const std::vector<double>& u) {
  const BdfWeights w = weights(dt);
  std::vector<double> ud(u.size());
  if (!have_prev_) {
    for (std::size_t i = 0; i < u.size(); ++i) ud[i] = (u[i] - u_n_[i]) / dt;
  } else {
    for (std::size_t i = 0; i < u.size(); ++i)
      ud[i] = (w.c0 * u[i] - w.c1 * u_n_[i] + w.c2 * u_nm1_[i]) / dt;
  }
  udot_ = std::move(ud);
  u_nm1_ = u_n_;
  u_n_ = u;
  dt_prev_ = dt;
  c0_last_ = w.c0;
  have_prev_ = true;
  ++completed_;
}

void BdfStepper::replace_history(std::vector<double> u_n,
                                 std::vector<double> u_nm1,
                                 std::vector<double> udot_n) {
  u_n_ = std::move(u_n);
  u_nm1_ = std::move(u_nm1);
  udot_ = std::move(udot_n);
}

void BdfStepper::compose_resolve_residual(const std::vector<double>& u,
                                          const std::vector<double>& fu,
                                          std::vector<double>& F) const {
  if (completed_ == 0) fail("re-solve requested before any completed step");
  F.resize(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    F[i] = c0_last_ * (u[i] - u_n_[i]) - dt_prev_ * (fu[i] - udot_[i]);
}

void BdfStepper::apply_resolved(const std::vector<double>& u_star) {
  const double r = c0_last_ / dt_prev_;
  for (std::size_t i = 0; i < u_star.size(); ++i)
    udot_[i] += r * (u_star[i] - u_n_[i]);
  u_n_ = u_star;
}

void BdfStepper::cold_restart() {
  u_nm1_.clear();
  udot_.assign(u_n_.size(), 0.0);
  have_prev_ = false;
}

}  // namespace samrad
