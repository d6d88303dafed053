#ifndef SAMRAD_RESIDUAL_HPP
#define SAMRAD_RESIDUAL_HPP

#include "samrad/discretization.hpp"

namespace samrad {

// Composite-grid evaluation of the method-of-lines right side
//   f_E = div(D_E grad E)/V + sigma_a (T^4 - E)
//   f_T = div(D_T grad T)/V - sigma_a (T^4 - E)
// on valid cells, with two-stage coarse-fine ghost interpolation and fine
// fluxes replacing coarse ones on coarse-fine boundary faces.
class ResidualEvaluator {
 public:
  void define(const Hierarchy& h, const MaterialField& mat,
              const PhysicsParams& par);

  // u and f are flat valid-cell vectors (E block then T block). Throws if
  // any valid E or T entry is not strictly positive.
  void eval_f(const std::vector<double>& u, std::vector<double>& f);

  // same evaluation, composite in and out (valid cells of rhs meaningful)
  void eval_f_state(CompositeState& u, CompositeState& rhs);

  const DofMap& dofs() const { return dofs_; }
  const Hierarchy& hierarchy() const { return *hier_; }
  const MaterialField& material() const { return *mat_; }
  const PhysicsParams& params() const { return par_; }
  long long eval_count() const { return n_evals_; }

  // state and face coefficients left by the most recent evaluation; the
  // preconditioner freezes its operator from these
  const CompositeState& last_state() const { return u_; }
  const std::array<Array3, 3>& face_coef_E(int l, int p) const {
    return cE_[l - 1][p];
  }
  const std::array<Array3, 3>& face_coef_T(int l, int p) const {
    return cT_[l - 1][p];
  }

 private:
  const Hierarchy* hier_ = nullptr;
  const MaterialField* mat_ = nullptr;
  PhysicsParams par_;
  DofMap dofs_;
  CompositeState u_, rhs_;
  std::vector<LevelFluxes> fluxE_, fluxT_;
  std::vector<std::vector<std::array<Array3, 3>>> cE_, cT_;
  long long n_evals_ = 0;
};

// volume-weighted integral over valid cells
double composite_integral(const Hierarchy& h, const CompositeScalar& f);

}  // namespace samrad

#endif
