#ifndef SAMRAD_CONTROLLER_HPP
#define SAMRAD_CONTROLLER_HPP

#include "samrad/time_integrator.hpp"

namespace samrad {

struct ControllerConfig {
  enum class Kind { EPS, PI47 };
  Kind kind = Kind::PI47;
  double eps_t = 5e-4;     // target local error (driver scales by resolution)
  int k_order = 3;         // 1/k exponent of the EPS rule, 3 for BDF2
  double kI = 0.4 / 3.0;   // PI gains stored as kk_I / k, kk_P / k
  double kP = 0.7 / 3.0;
  double ratio_min = 0.2;
  double ratio_max = 2.5;
  double dt_min = 1e-12;
  double dt_max = 0.1;
  double dt_initial = 1e-6;
  double reject_factor = 2.0;  // accept iff err <= reject_factor * eps_t
  NormScaling scaling;
};

// Accept/reject and next-step-size selection. The PI controller updates the
// step RATIO as written; on rejection and while unprimed it collapses to the
// EPS form. After notify_regrid() the next estimate is discarded: the step is
// accepted with dt held and the PI memory is re-primed by the following norm.
class StepController {
 public:
  struct Decision {
    bool accepted;
    double dt_next;
    bool estimate_used;  // false when the estimate was discarded
  };

  explicit StepController(const ControllerConfig& cfg) : cfg_(cfg) {}

  const ControllerConfig& config() const { return cfg_; }
  double initial_dt() const { return cfg_.dt_initial; }

  Decision update(double err_norm, double dt);
  // completed step with no estimate available (BDF1 startup): dt held
  double hold(double dt) const { return clamp_abs(dt); }
  void notify_regrid() { suppress_next_ = true; }

  bool suppressed() const { return suppress_next_; }
  long long estimates_fed() const { return fed_; }
  long long estimates_discarded() const { return discarded_; }
  long long rejections() const { return rejections_; }

 private:
  double clamp_abs(double dt) const;
  double clamp(double dt_next, double dt) const;

  ControllerConfig cfg_;
  double err_prev_ = -1.0;  // negative while unprimed
  double alpha_curr_ = 1.0;
  bool suppress_next_ = false;
  long long fed_ = 0, discarded_ = 0, rejections_ = 0;
};

}  // namespace samrad

#endif
