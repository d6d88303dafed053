#ifndef SAMRAD_TIME_INTEGRATOR_HPP
#define SAMRAD_TIME_INTEGRATOR_HPP

#include <vector>

namespace samrad {

// weights of the variable-step BDF2 left side  c0 u - c1 u_n + c2 u_{n-1},
// alpha = dt_n / dt_{n-1}
struct BdfWeights {
  double c0, c1, c2;
};

inline BdfWeights bdf2_weights(double alpha) {
  return {(1.0 + 2.0 * alpha) / (1.0 + alpha), 1.0 + alpha,
          alpha * alpha / (1.0 + alpha)};
}

// local error estimate coefficient, e = coeff * (u - u_pred)
inline double error_coefficient(double alpha) {
  return (alpha + 1.0) / (3.0 * alpha + 2.0);
}

struct NormScaling {
  double eta_E = 1e-2;
  double eta_T = 1e-2;
};

// max over both halves of |e_i| / (|u_i| + eta); first half scaled by eta_E,
// second by eta_T
double scaled_max_norm(const std::vector<double>& e,
                       const std::vector<double>& u, const NormScaling& s);

// Variable-step BDF2 state machine over flat solution vectors. Holds the two
// most recent accepted states and the time derivative; the first step after
// initialize() or cold_restart() is BDF1 with the predictor disabled.
class BdfStepper {
 public:
  enum class Mode { Bdf1, Bdf2 };

  void initialize(std::vector<double> u0, const std::vector<double>& f0);

  Mode mode() const { return have_prev_ ? Mode::Bdf2 : Mode::Bdf1; }
  double alpha(double dt) const;
  BdfWeights weights(double dt) const;
  // beta = dt / c0; the preconditioner's diffusion scaling
  double beta(double dt) const { return dt / weights(dt).c0; }

  // F = c0 u - c1 u_n + c2 u_{n-1} - dt fu,  fu = f(u) precomputed
  void compose_residual(double dt, const std::vector<double>& u,
                        const std::vector<double>& fu,
                        std::vector<double>& F) const;

  bool can_predict() const { return have_prev_; }
  void predict(double dt, std::vector<double>& u_pred) const;

  // scaled max norm of coeff(alpha) * (u - u_pred) against u
  double error_norm(double dt, const std::vector<double>& u,
                    const std::vector<double>& u_pred,
                    const NormScaling& s) const;

  // push the accepted state; udot from the BDF left side divided by dt
  void accept(double dt, const std::vector<double>& u);

  const std::vector<double>& u_n() const { return u_n_; }
  const std::vector<double>& u_nm1() const { return u_nm1_; }
  const std::vector<double>& udot_n() const { return udot_; }
  double dt_n() const { return dt_prev_; }
  int steps_completed() const { return completed_; }

  // regrid support: swap in transferred history (new sizes allowed)
  void replace_history(std::vector<double> u_n, std::vector<double> u_nm1,
                       std::vector<double> udot_n);

  // re-solve system for the already completed step at t_n:
  //   F = c0 (u - u_n) - dt_n (fu - udot_n)
  // with c0 and dt_n of that step; algebraically the original BDF system
  // rewritten through udot_n, so it needs no u_{n-2}
  void compose_resolve_residual(const std::vector<double>& u,
                                const std::vector<double>& fu,
                                std::vector<double>& F) const;
  double resolve_beta() const { return dt_prev_ / c0_last_; }
  // u_n <- u_star, udot adjusted so the BDF identity still holds
  void apply_resolved(const std::vector<double>& u_star);

  // drop history; next step is BDF1 from the current u_n
  void cold_restart();

 private:
  std::vector<double> u_n_, u_nm1_, udot_;
  double dt_prev_ = 0.0;   // size of the last completed step
  double c0_last_ = 1.0;   // its BDF weight
  bool have_prev_ = false; // u_{n-1} and udot valid
  int completed_ = 0;
};

}  // namespace samrad

#endif
