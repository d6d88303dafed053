#include "samrad/residual.hpp"

#include <sstream>

namespace samrad {

void ResidualEvaluator::define(const Hierarchy& h, const MaterialField& mat,
                               const PhysicsParams& par) {
  hier_ = &h;
  mat_ = &mat;
  par_ = par;
  dofs_ = DofMap(h);
  u_.define(h);
  rhs_.define(h);
  fluxE_.assign(h.num_levels(), {});
  fluxT_.assign(h.num_levels(), {});
  cE_.assign(h.num_levels(), {});
  cT_.assign(h.num_levels(), {});
  for (int l = 1; l <= h.num_levels(); ++l) {
    const Level& lev = h.level(l);
    fluxE_[l - 1].resize(lev.patches.size());
    fluxT_[l - 1].resize(lev.patches.size());
    cE_[l - 1].resize(lev.patches.size());
    cT_[l - 1].resize(lev.patches.size());
    for (std::size_t p = 0; p < lev.patches.size(); ++p) {
      fluxE_[l - 1][p].define(lev.patches[p].box);
      fluxT_[l - 1][p].define(lev.patches[p].box);
    }
  }
  n_evals_ = 0;
}

void ResidualEvaluator::eval_f(const std::vector<double>& u,
                               std::vector<double>& f) {
  const std::size_t n = std::size_t(dofs_.n_cells);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!(u[i] > 0.0)) {
      std::ostringstream os;
      os << "non-positive " << (i < n ? "E" : "T") << " entry "
         << (i < n ? i : i - n) << " = " << u[i] << " passed to f";
      fail(os.str());
    }
  }
  dofs_.scatter(u, u_);
  eval_f_state(u_, rhs_);
  dofs_.gather(rhs_, f);
}

void ResidualEvaluator::eval_f_state(CompositeState& u, CompositeState& rhs) {
  const Hierarchy& h = *hier_;
  ++n_evals_;

  sync_covered(h, u);
  fill_all_ghosts(h, u, *mat_, par_);

  for (int l = 1; l <= h.num_levels(); ++l) {
    const Level& lev = h.level(l);
    parallel_for_items(std::int64_t(lev.patches.size()), [&](std::int64_t p) {
      const Array3& E = u.E.patch(l, int(p));
      const Array3& T = u.T.patch(l, int(p));
      const Array3& z = mat_->patch(l, int(p));
      auto& cE = cE_[l - 1][std::size_t(p)];
      auto& cT = cT_[l - 1][std::size_t(p)];
      compute_face_coefficients(h, l, int(p), E, T, z, par_, cE, cT);
      for (int d = 0; d < 3; ++d) {
        Array3& fE = fluxE_[l - 1][std::size_t(p)].f[d];
        Array3& fT = fluxT_[l - 1][std::size_t(p)].f[d];
        const IndexBox& fb = fE.box;
        for (int k = fb.lo[2]; k <= fb.hi[2]; ++k)
          for (int j = fb.lo[1]; j <= fb.hi[1]; ++j)
            for (int i = fb.lo[0]; i <= fb.hi[0]; ++i) {
              Int3 hi{i, j, k};
              Int3 lo{i, j, k};
              lo[d] -= 1;
              fE(i, j, k) = cE[d](i, j, k) * (E(hi[0], hi[1], hi[2]) -
                                              E(lo[0], lo[1], lo[2]));
              fT(i, j, k) = cT[d](i, j, k) * (T(hi[0], hi[1], hi[2]) -
                                              T(lo[0], lo[1], lo[2]));
            }
      }
    });
  }

  for (int l = h.num_levels(); l >= 2; --l) {
    match_fluxes(h, l - 1, fluxE_[l - 2], fluxE_[l - 1]);
    match_fluxes(h, l - 1, fluxT_[l - 2], fluxT_[l - 1]);
  }

  for (int l = 1; l <= h.num_levels(); ++l) {
    const Level& lev = h.level(l);
    const double vol = lev.dx[0] * lev.dx[1] * lev.dx[2];
    const double inv_vol = 1.0 / vol;
    parallel_for_items(std::int64_t(lev.patches.size()), [&](std::int64_t p) {
      const IndexBox& b = lev.patches[std::size_t(p)].box;
      const Array3& E = u.E.patch(l, int(p));
      const Array3& T = u.T.patch(l, int(p));
      const Array3& z = mat_->patch(l, int(p));
      const PatchFluxes& fE = fluxE_[l - 1][std::size_t(p)];
      const PatchFluxes& fT = fluxT_[l - 1][std::size_t(p)];
      Array3& rE = rhs.E.patch(l, int(p));
      Array3& rT = rhs.T.patch(l, int(p));
      for (int k = b.lo[2]; k <= b.hi[2]; ++k)
        for (int j = b.lo[1]; j <= b.hi[1]; ++j)
          for (int i = b.lo[0]; i <= b.hi[0]; ++i) {
            double divE = fE.f[0](i + 1, j, k) - fE.f[0](i, j, k) +
                          fE.f[1](i, j + 1, k) - fE.f[1](i, j, k) +
                          fE.f[2](i, j, k + 1) - fE.f[2](i, j, k);
            double divT = fT.f[0](i + 1, j, k) - fT.f[0](i, j, k) +
                          fT.f[1](i, j + 1, k) - fT.f[1](i, j, k) +
                          fT.f[2](i, j, k + 1) - fT.f[2](i, j, k);
            double t = T(i, j, k);
            double src = sigma_a(z(i, j, k), t) * (t * t * t * t - E(i, j, k));
            rE(i, j, k) = divE * inv_vol + src;
            rT(i, j, k) = divT * inv_vol - src;
          }
    });
  }
}

double composite_integral(const Hierarchy& h, const CompositeScalar& f) {
  long double total = 0.0L;
  for (int l = 1; l <= h.num_levels(); ++l) {
    const Level& lev = h.level(l);
    const long double vol =
        (long double)(lev.dx[0]) * lev.dx[1] * lev.dx[2];
    for (std::size_t p = 0; p < lev.patches.size(); ++p) {
      const IndexBox& b = lev.patches[p].box;
      const Mask3& cov = h.covered_mask(l, int(p));
      const Array3& a = f.patch(l, int(p));
      long double s = 0.0L;
      for (int k = b.lo[2]; k <= b.hi[2]; ++k)
        for (int j = b.lo[1]; j <= b.hi[1]; ++j)
          for (int i = b.lo[0]; i <= b.hi[0]; ++i)
            if (!cov(i, j, k)) s += a(i, j, k);
      total += s * vol;
    }
  }
  return double(total);
}

}  // namespace samrad
