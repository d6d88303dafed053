#ifndef SAMRAD_FAC_HPP
#define SAMRAD_FAC_HPP

#include "samrad/residual.hpp"

namespace samrad {

// Coefficients of the operator-split preconditioner P = P1 P2, frozen from the
// residual evaluator's cache after the latest Newton-iterate evaluation.
// P1 = diag(I - beta div D_E grad, I - beta div D_T grad);
// P2 couples the cellwise source terms through [[1+sb, -sb T^3],[-sb, 1+sb T^3]],
// sb = sigma_a beta.
struct FrozenCoefficients {
  const Hierarchy* hier = nullptr;
  const MaterialField* mat = nullptr;
  double beta = 0.0;
  std::vector<std::vector<std::array<Array3, 3>>> cE, cT;  // face D area / h
  CompositeScalar T3;  // frozen T^3, ghost frame included

  void build(const ResidualEvaluator& re, double beta_n);
};

struct FacOptions {
  int pre_sweeps = 1;     // m of the V(m,n) cycle
  int post_sweeps = 0;    // n
  int coarse_sweeps = 4;  // red-black sweeps standing in for the coarse solve
};

enum class PcBlock { E, T };  // E carries the Robin x faces, T is all-Neumann

// One scalar block of P1: composite operator application and FAC V-cycles
// with red-black Gauss-Seidel smoothing per level. Physical boundaries use
// the homogeneous forms of the run's conditions.
class FacSolver {
 public:
  void define(const Hierarchy& h);

  // one V(m,n) cycle improving z toward (I - beta div D grad) z = f;
  // z_is_zero skips the initial residual evaluation
  void vcycle(const FrozenCoefficients& fz, PcBlock block,
              const CompositeScalar& f, CompositeScalar& z,
              const FacOptions& opt, bool z_is_zero = false);

  // out = (I - beta div D grad) z over patch cells, coarse-fine faces flux
  // matched; syncs covered cells of z and refills its ghosts
  void apply_composite(const FrozenCoefficients& fz, PcBlock block,
                       CompositeScalar& z, CompositeScalar& out);

  // residual left by the last vcycle/compute pass (valid cells meaningful)
  const CompositeScalar& residual() const { return r_; }
  void compute_residual(const FrozenCoefficients& fz, PcBlock block,
                        const CompositeScalar& f, CompositeScalar& z);

 private:
  void fill_level(const FrozenCoefficients& fz, PcBlock block, int l,
                  std::vector<Array3>& data, const std::vector<Array3>* coarse);
  void smooth_level(const FrozenCoefficients& fz, PcBlock block, int l,
                    int sweeps);
  void add_correction(int l, CompositeScalar& z);

  const Hierarchy* hier_ = nullptr;
  CompositeScalar r_, ec_;
  std::vector<LevelFluxes> flux_;
};

// exact cellwise P2 solve; errors out on a numerically singular block
void invert_p2_cell(double sigma_beta, double t_cubed, double rE, double rT,
                    double& yE, double& yT);

// y = P^-1 w on flat vectors: one FAC V-cycle per P1 block, then exact P2.
class Preconditioner {
 public:
  FacOptions options;

  void define(const Hierarchy& h, const DofMap& dofs);
  void freeze(const ResidualEvaluator& re, double beta_n);
  void apply(const std::vector<double>& w, std::vector<double>& y);

  const FrozenCoefficients& frozen() const { return fz_; }
  long long applications() const { return count_; }

 private:
  const Hierarchy* hier_ = nullptr;
  const DofMap* dofs_ = nullptr;
  FrozenCoefficients fz_;
  FacSolver fac_;
  CompositeState w_, z_;
  long long count_ = 0;
};

}  // namespace samrad

#endif
