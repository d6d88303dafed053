#ifndef SAMRAD_GMRES_HPP
#define SAMRAD_GMRES_HPP

#include <functional>
#include <vector>

namespace samrad {

using VecOp = std::function<void(const std::vector<double>&, std::vector<double>&)>;

struct GmresResult {
  int iters = 0;
  bool converged = false;
  double rel_residual = 0.0;            // estimated, from the Givens recurrence
  std::vector<double> residual_history; // |g_{j+1}| / ||rhs|| per iteration
};

// Right-preconditioned GMRES without restarts: builds a Krylov space for
// A P^{-1}, then returns x = P^{-1} V y so that ||rhs - A x|| <= tol ||rhs||.
// Modified Gram-Schmidt with Givens rotations; basis grown one vector per
// iteration. pc may be empty for an unpreconditioned solve.
GmresResult gmres_solve(const VecOp& op, const VecOp& pc,
                        const std::vector<double>& rhs, std::vector<double>& x,
                        double tol, int max_dim);

}  // namespace samrad

#endif
