#include "samrad/controller.hpp"

#include <algorithm>
#include <cmath>

#include "samrad/hierarchy.hpp"

namespace samrad {

double StepController::clamp_abs(double dt) const {
  return std::clamp(dt, cfg_.dt_min, cfg_.dt_max);
}

double StepController::clamp(double dt_next, double dt) const {
  dt_next = std::clamp(dt_next, cfg_.ratio_min * dt, cfg_.ratio_max * dt);
  return clamp_abs(dt_next);
}

StepController::Decision StepController::update(double err_norm, double dt) {
  if (suppress_next_) {
    suppress_next_ = false;
    ++discarded_;
    err_prev_ = -1.0;
    return {true, clamp_abs(dt), false};
  }

  const double e = std::max(err_norm, 1e-14);
  ++fed_;
  const double inv_k = 1.0 / double(cfg_.k_order);

  if (e > cfg_.reject_factor * cfg_.eps_t) {
    ++rejections_;
    if (dt <= cfg_.dt_min) fail("step-size collapse: rejection at dt_min");
    double dt_next = clamp(dt * std::pow(cfg_.eps_t / e, inv_k), dt);
    return {false, dt_next, true};
  }

  double dt_next;
  if (cfg_.kind == ControllerConfig::Kind::EPS || err_prev_ < 0.0) {
    dt_next = dt * std::pow(cfg_.eps_t / e, inv_k);
  } else {
    const double a = std::pow(cfg_.eps_t / e, cfg_.kI) *
                     std::pow(err_prev_ / e, cfg_.kP) * alpha_curr_;
    dt_next = a * dt;
  }
  dt_next = clamp(dt_next, dt);
  alpha_curr_ = dt_next / dt;
  err_prev_ = e;
  return {true, dt_next, true};
}

}  // namespace samrad
