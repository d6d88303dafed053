#include "samrad/fac.hpp"

#include <algorithm>
#include <cmath>

#include "samrad/threading.hpp"
#include "samrad/transfer.hpp"

namespace samrad {

void FrozenCoefficients::build(const ResidualEvaluator& re, double beta_n) {
  if (re.eval_count() == 0) fail("preconditioner frozen before any residual evaluation");
  hier = &re.hierarchy();
  mat = &re.material();
  beta = beta_n;
  const int L = hier->num_levels();
  cE.resize(L);
  cT.resize(L);
  for (int l = 1; l <= L; ++l) {
    const std::size_t np = hier->level(l).patches.size();
    cE[l - 1].resize(np);
    cT[l - 1].resize(np);
    for (std::size_t p = 0; p < np; ++p) {
      cE[l - 1][p] = re.face_coef_E(l, int(p));
      cT[l - 1][p] = re.face_coef_T(l, int(p));
    }
  }
  if (T3.data.empty()) T3.define(*hier);
  for (int l = 1; l <= L; ++l)
    for (std::size_t p = 0; p < hier->level(l).patches.size(); ++p) {
      const Array3& t = re.last_state().T.patch(l, int(p));
      Array3& o = T3.patch(l, int(p));
      for (std::size_t i = 0; i < t.data.size(); ++i)
        o.data[i] = t.data[i] * t.data[i] * t.data[i];
    }
}

void FacSolver::define(const Hierarchy& h) {
  hier_ = &h;
  r_.define(h);
  ec_.define(h);
  flux_.clear();
  flux_.resize(h.num_levels());
  for (int l = 1; l <= h.num_levels(); ++l) {
    flux_[l - 1].resize(h.level(l).patches.size());
    for (std::size_t p = 0; p < h.level(l).patches.size(); ++p)
      flux_[l - 1][p].define(h.level(l).patches[p].box);
  }
}

// same-level copies, coarse-fine interpolation (zero coarse data when coarse
// is null, as for level scratch corrections) and homogeneous physical fills
void FacSolver::fill_level(const FrozenCoefficients& fz, PcBlock block, int l,
                           std::vector<Array3>& data,
                           const std::vector<Array3>* coarse) {
  const auto& plans = hier_->ghost_plan[l - 1];
  const Level& lev = hier_->level(l);
  const IndexBox& dom = lev.domain_box;
  const bool robin = (block == PcBlock::E);

  parallel_for_items(std::int64_t(plans.size()), [&](std::int64_t p) {
    const PatchGhostPlan& plan = plans[std::size_t(p)];
    Array3& a = data[std::size_t(p)];
    for (const GhostCopy& gc : plan.copies)
      a(gc.cell[0], gc.cell[1], gc.cell[2]) =
          data[std::size_t(gc.src_patch)](gc.cell[0], gc.cell[1], gc.cell[2]);
    for (const CfGhost& g : plan.cf) {
      const double fv = a(g.fine_nbr[0], g.fine_nbr[1], g.fine_nbr[2]);
      double s1 = 0.0;
      if (coarse)
        for (int d = 0; d < g.n_donors; ++d)
          s1 += g.w[d] * (*coarse)[std::size_t(g.donor_patch[d])](
                             g.donor_cell[d][0], g.donor_cell[d][1],
                             g.donor_cell[d][2]);
      a(g.cell[0], g.cell[1], g.cell[2]) = (fv + 2.0 * s1) / 3.0;
    }
    for (const PhysGhost& pg : plan.phys) {
      int d = 0;
      while (pg.out[d] == 0) ++d;
      Int3 m = pg.cell;
      m[d] = pg.out[d] < 0 ? 2 * dom.lo[d] - 1 - pg.cell[d]
                           : 2 * dom.hi[d] + 1 - pg.cell[d];
      const double mv = a(m[0], m[1], m[2]);
      if (robin && d == 0) {
        const double t3 = fz.T3.patch(l, int(p))(m[0], m[1], m[2]);
        const double zv = fz.mat->patch(l, int(p))(m[0], m[1], m[2]);
        const double Dr = t3 / (3.0 * zv * zv * zv);
        const double q = Dr / (2.0 * lev.dx[0]);
        a(pg.cell[0], pg.cell[1], pg.cell[2]) =
            (q - 0.125) / (q + 0.125) * mv;
      } else {
        a(pg.cell[0], pg.cell[1], pg.cell[2]) = mv;
      }
    }
  });
}

void FacSolver::apply_composite(const FrozenCoefficients& fz, PcBlock block,
                                CompositeScalar& z, CompositeScalar& out) {
  const Hierarchy& h = *hier_;
  const int L = h.num_levels();
  sync_covered(h, z);
  for (int l = 1; l <= L; ++l)
    fill_level(fz, block, l, z.level(l), l >= 2 ? &z.level(l - 1) : nullptr);

  for (int l = 1; l <= L; ++l) {
    const Level& lev = h.level(l);
    const auto& coefs = (block == PcBlock::E ? fz.cE : fz.cT)[l - 1];
    auto& zl = z.level(l);
    parallel_for_items(std::int64_t(lev.patches.size()), [&](std::int64_t p) {
      PatchFluxes& fl = flux_[l - 1][std::size_t(p)];
      const Array3& a = zl[std::size_t(p)];
      const auto& cf = coefs[std::size_t(p)];
      for (int d = 0; d < 3; ++d) {
        const IndexBox& fb = fl.f[d].box;
        Int3 off{d == 0 ? 1 : 0, d == 1 ? 1 : 0, d == 2 ? 1 : 0};
        for (int k = fb.lo[2]; k <= fb.hi[2]; ++k)
          for (int j = fb.lo[1]; j <= fb.hi[1]; ++j)
            for (int i = fb.lo[0]; i <= fb.hi[0]; ++i)
              fl.f[d](i, j, k) =
                  cf[d](i, j, k) *
                  (a(i, j, k) - a(i - off[0], j - off[1], k - off[2]));
      }
    });
  }
  for (int l = L; l >= 2; --l) match_fluxes(h, l - 1, flux_[l - 2], flux_[l - 1]);

  for (int l = 1; l <= L; ++l) {
    const Level& lev = h.level(l);
    const double s = fz.beta / (lev.dx[0] * lev.dx[1] * lev.dx[2]);
    auto& zl = z.level(l);
    auto& ol = out.level(l);
    parallel_for_items(std::int64_t(lev.patches.size()), [&](std::int64_t p) {
      const IndexBox& b = lev.patches[std::size_t(p)].box;
      const PatchFluxes& fl = flux_[l - 1][std::size_t(p)];
      const Array3& a = zl[std::size_t(p)];
      Array3& o = ol[std::size_t(p)];
      for (int k = b.lo[2]; k <= b.hi[2]; ++k)
        for (int j = b.lo[1]; j <= b.hi[1]; ++j)
          for (int i = b.lo[0]; i <= b.hi[0]; ++i) {
            const double div = fl.f[0](i + 1, j, k) - fl.f[0](i, j, k) +
                               fl.f[1](i, j + 1, k) - fl.f[1](i, j, k) +
                               fl.f[2](i, j, k + 1) - fl.f[2](i, j, k);
            o(i, j, k) = a(i, j, k) - s * div;
          }
    });
  }
}

void FacSolver::compute_residual(const FrozenCoefficients& fz, PcBlock block,
                                 const CompositeScalar& f, CompositeScalar& z) {
  apply_composite(fz, block, z, r_);
  const Hierarchy& h = *hier_;
  for (int l = 1; l <= h.num_levels(); ++l) {
    const Level& lev = h.level(l);
    auto& rl = r_.level(l);
    const auto& fl = f.level(l);
    parallel_for_items(std::int64_t(lev.patches.size()), [&](std::int64_t p) {
      const IndexBox& b = lev.patches[std::size_t(p)].box;
      Array3& r = rl[std::size_t(p)];
      const Array3& fp = fl[std::size_t(p)];
      for (int k = b.lo[2]; k <= b.hi[2]; ++k)
        for (int j = b.lo[1]; j <= b.hi[1]; ++j)
          for (int i = b.lo[0]; i <= b.hi[0]; ++i)
            r(i, j, k) = fp(i, j, k) - r(i, j, k);
    });
  }
  sync_covered(h, r_);
}

void FacSolver::smooth_level(const FrozenCoefficients& fz, PcBlock block,
                             int l, int sweeps) {
  const Level& lev = hier_->level(l);
  auto& e = ec_.level(l);
  const auto& r = r_.level(l);
  const auto& coefs = (block == PcBlock::E ? fz.cE : fz.cT)[l - 1];
  const double vol = lev.dx[0] * lev.dx[1] * lev.dx[2];
  const double s = fz.beta / vol;
  const IndexBox& dom = lev.domain_box;
  const bool robin = (block == PcBlock::E);
  const double inv2area_x = lev.dx[0] / (2.0 * vol);  // 1 / (2 A_x)

  for (Array3& a : e) a.fill(0.0);

  for (int sweep = 0; sweep < sweeps; ++sweep) {
    for (int color = 0; color < 2; ++color) {
      fill_level(fz, block, l, e, nullptr);
      parallel_for_items(std::int64_t(lev.patches.size()), [&](std::int64_t p) {
        const IndexBox& b = lev.patches[std::size_t(p)].box;
        Array3& ea = e[std::size_t(p)];
        const Array3& ra = r[std::size_t(p)];
        const auto& cf = coefs[std::size_t(p)];
        for (int k = b.lo[2]; k <= b.hi[2]; ++k)
          for (int j = b.lo[1]; j <= b.hi[1]; ++j)
            for (int i = b.lo[0]; i <= b.hi[0]; ++i) {
              if (((i + j + k) & 1) != color) continue;
              double num = ra(i, j, k), den = 1.0;
              const Int3 c{i, j, k};
              for (int d = 0; d < 3; ++d) {
                Int3 off{d == 0 ? 1 : 0, d == 1 ? 1 : 0, d == 2 ? 1 : 0};
                // low side
                double cv = cf[d](i, j, k);
                if (c[d] - 1 < dom.lo[d]) {
                  if (robin && d == 0) {
                    const double q = cv * inv2area_x;
                    den += s * cv * (1.0 - (q - 0.125) / (q + 0.125));
                  }
                } else {
                  num += s * cv * ea(i - off[0], j - off[1], k - off[2]);
                  den += s * cv;
                }
                // high side
                cv = cf[d](i + off[0], j + off[1], k + off[2]);
                if (c[d] + 1 > dom.hi[d]) {
                  if (robin && d == 0) {
                    const double q = cv * inv2area_x;
                    den += s * cv * (1.0 - (q - 0.125) / (q + 0.125));
                  }
                } else {
                  num += s * cv * ea(i + off[0], j + off[1], k + off[2]);
                  den += s * cv;
                }
              }
              ea(i, j, k) = num / den;
            }
      });
    }
  }
}

namespace {

// trilinear interpolation of a level correction onto the next finer level,
// donors restricted to the covered region: the correction is discontinuous
// across the valid/covered interface, so out-of-region donors fall back to
// the parent value
void prolong_covered(const Hierarchy& h, int fine_level,
                     const std::vector<Array3>& coarse,
                     std::vector<Array3>& fine) {
  const Level& flev = h.level(fine_level);
  const int lc = fine_level - 1;

  parallel_for_items(std::int64_t(flev.patches.size()), [&](std::int64_t p) {
    const IndexBox& b = flev.patches[std::size_t(p)].box;
    Array3& fa = fine[std::size_t(p)];
    int hint = 0;
    auto read = [&](int i, int j, int k, bool& cov) -> double {
      const Level& clev = h.level(lc);
      if (!clev.patches[std::size_t(hint)].box.contains(i, j, k)) {
        int o = h.owner_patch(lc, i, j, k);
        if (o < 0) {
          cov = false;  // outside the coarse level entirely
          return 0.0;
        }
        hint = o;
      }
      cov = h.is_covered(lc, hint, i, j, k);
      return coarse[std::size_t(hint)](i, j, k);
    };
    for (int k = b.lo[2]; k <= b.hi[2]; ++k)
      for (int j = b.lo[1]; j <= b.hi[1]; ++j)
        for (int i = b.lo[0]; i <= b.hi[0]; ++i) {
          const Int3 c{IndexBox::floor_div(i, h.ratio),
                       IndexBox::floor_div(j, h.ratio),
                       IndexBox::floor_div(k, h.ratio)};
          Int3 side{(i % 2 == 0) ? -1 : 1, (j % 2 == 0) ? -1 : 1,
                    (k % 2 == 0) ? -1 : 1};
          bool cov = false;
          const double parent = read(c[0], c[1], c[2], cov);
          double v = 0.0;
          for (int o2 = 0; o2 < 2; ++o2)
            for (int o1 = 0; o1 < 2; ++o1)
              for (int o0 = 0; o0 < 2; ++o0) {
                const double w = (o0 ? 0.25 : 0.75) * (o1 ? 0.25 : 0.75) *
                                 (o2 ? 0.25 : 0.75);
                double dv = parent;
                if (o0 || o1 || o2) {
                  dv = read(c[0] + (o0 ? side[0] : 0), c[1] + (o1 ? side[1] : 0),
                            c[2] + (o2 ? side[2] : 0), cov);
                  if (!cov) dv = parent;
                }
                v += w * dv;
              }
          fa(i, j, k) = v;
        }
  });
}

}  // namespace

void FacSolver::add_correction(int l, CompositeScalar& z) {
  const Hierarchy& h = *hier_;
  auto add_level = [&](int lv) {
    const Level& lev = h.level(lv);
    auto& zl = z.level(lv);
    auto& el = ec_.level(lv);
    parallel_for_items(std::int64_t(lev.patches.size()), [&](std::int64_t p) {
      const IndexBox& b = lev.patches[std::size_t(p)].box;
      Array3& za = zl[std::size_t(p)];
      const Array3& ea = el[std::size_t(p)];
      for (int k = b.lo[2]; k <= b.hi[2]; ++k)
        for (int j = b.lo[1]; j <= b.hi[1]; ++j)
          for (int i = b.lo[0]; i <= b.hi[0]; ++i) za(i, j, k) += ea(i, j, k);
    });
  };
  add_level(l);
  for (int lf = l + 1; lf <= h.num_levels(); ++lf) {
    prolong_covered(h, lf, ec_.level(lf - 1), ec_.level(lf));
    add_level(lf);
  }
}

void FacSolver::vcycle(const FrozenCoefficients& fz, PcBlock block,
                       const CompositeScalar& f, CompositeScalar& z,
                       const FacOptions& opt, bool z_is_zero) {
  const Hierarchy& h = *hier_;
  const int L = h.num_levels();

  auto residual_from_scratch = [&]() {
    if (z_is_zero) {
      for (int l = 1; l <= L; ++l)
        for (std::size_t p = 0; p < f.level(l).size(); ++p)
          r_.level(l)[p].data = f.level(l)[p].data;
      sync_covered(h, r_);
      z_is_zero = false;
    } else {
      compute_residual(fz, block, f, z);
    }
  };

  if (L == 1) {
    residual_from_scratch();
    smooth_level(fz, block, 1,
                 opt.pre_sweeps + opt.coarse_sweeps + opt.post_sweeps);
    add_correction(1, z);
    return;
  }

  residual_from_scratch();
  for (int l = L; l >= 2; --l) {
    smooth_level(fz, block, l, opt.pre_sweeps);
    add_correction(l, z);
    compute_residual(fz, block, f, z);
  }
  smooth_level(fz, block, 1, opt.coarse_sweeps);
  add_correction(1, z);
  if (opt.post_sweeps > 0) {
    for (int l = 2; l <= L; ++l) {
      compute_residual(fz, block, f, z);
      smooth_level(fz, block, l, opt.post_sweeps);
      add_correction(l, z);
    }
  }
}

void invert_p2_cell(double sigma_beta, double t_cubed, double rE, double rT,
                    double& yE, double& yT) {
  const double a = 1.0 + sigma_beta;
  const double b = -sigma_beta * t_cubed;
  const double c = -sigma_beta;
  const double d = 1.0 + sigma_beta * t_cubed;
  const double det = 1.0 + sigma_beta * (1.0 + t_cubed);
  const double scale = std::max({1.0, std::abs(a * d), std::abs(b * c)});
  if (std::abs(det) < 1e-14 * scale) fail("singular source block in P2");
  yE = (d * rE - b * rT) / det;
  yT = (a * rT - c * rE) / det;
}

void Preconditioner::define(const Hierarchy& h, const DofMap& dofs) {
  hier_ = &h;
  dofs_ = &dofs;
  fz_ = FrozenCoefficients{};  // shapes belong to the previous hierarchy
  fac_.define(h);
  w_.define(h);
  z_.define(h);
}

void Preconditioner::freeze(const ResidualEvaluator& re, double beta_n) {
  fz_.build(re, beta_n);
}

void Preconditioner::apply(const std::vector<double>& w,
                           std::vector<double>& y) {
  if (fz_.hier != hier_) fail("preconditioner applied before freeze");
  dofs_->scatter(w, w_);
  z_.E.fill(0.0);
  z_.T.fill(0.0);
  fac_.vcycle(fz_, PcBlock::E, w_.E, z_.E, options, true);
  fac_.vcycle(fz_, PcBlock::T, w_.T, z_.T, options, true);

  const std::int64_t n = dofs_->n_cells;
  y.resize(std::size_t(2 * n));
  dofs_->for_each_valid([&](int l, int p, int i, int j, int k,
                            std::int64_t cidx) {
    const double t3 = fz_.T3.patch(l, p)(i, j, k);
    const double zv = fz_.mat->patch(l, p)(i, j, k);
    const double sb = fz_.beta * zv * zv * zv / t3;
    double yE, yT;
    invert_p2_cell(sb, t3, z_.E.patch(l, p)(i, j, k),
                   z_.T.patch(l, p)(i, j, k), yE, yT);
    y[std::size_t(cidx)] = yE;
    y[std::size_t(cidx + n)] = yT;
  });
  ++count_;
}

}  // namespace samrad
