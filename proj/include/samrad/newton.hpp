#ifndef SAMRAD_NEWTON_HPP
#define SAMRAD_NEWTON_HPP

#include <string>

#include "samrad/gmres.hpp"

namespace samrad {

struct NewtonConfig {
  double rel_tol = 1e-12;
  double abs_tol = 1e-10;
  int max_newton_iters = 25;
  int max_krylov_dim = 50;
  bool eisenstat_walker = true;  // choice 2; otherwise fixed_eta
  double fixed_eta = 1e-4;
  double ew_gamma = 0.9;
  double eta_max = 0.9;
  double u_min = 1e-6;           // scale floor in the difference step
  double theta = 0.01;           // positivity floor fraction, u + lam v >= theta u
  double lambda_min = 1e-4;      // smaller scaling is treated as failure
};

struct SolverReport {
  bool converged = false;
  int newton_iters = 0;
  int total_gmres_iters = 0;
  int positivity_events = 0;
  std::vector<double> residual_norms;  // ||F|| per iterate, initial included
  std::vector<double> forcing_terms;
  std::string failure;                 // empty when converged
};

// finite-difference step for the directional derivative; b = 1 in the branch
// condition <u,v> > b u_min ||v||_1, sign(0) = +1
double choose_epsilon(const std::vector<double>& u,
                      const std::vector<double>& v, double u_min);

// largest lambda in (0,1] with u + lambda v >= theta u componentwise
double positivity_lambda(const std::vector<double>& u,
                         const std::vector<double>& v, double theta);

// Inexact Newton on F(u) = 0 from the initial guess in u. Each step solves
// J s = -F to the Eisenstat-Walker forcing tolerance with right-preconditioned
// GMRES and Jacobian-free matvecs; updates are scaled to keep u positive.
// freeze_pc is invoked before each linear solve, after F was evaluated at the
// current iterate, so the preconditioner can copy frozen coefficients; either
// hook may be empty. Evaluation failures are returned as nonconvergence.
SolverReport newton_solve(const VecOp& F, const VecOp& pc,
                          const std::function<void()>& freeze_pc,
                          std::vector<double>& u, const NewtonConfig& cfg);

}  // namespace samrad

#endif
