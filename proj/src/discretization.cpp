#include "samrad/discretization.hpp"

namespace samrad {

void MaterialField::build(const Hierarchy& h, const MaterialMap& map) {
  z.assign(h.num_levels(), {});
  for (int l = 1; l <= h.num_levels(); ++l) {
    const Level& lev = h.level(l);
    z[l - 1].reserve(lev.patches.size());
    for (const Patch& p : lev.patches) {
      Array3 a(p.box, h.ghost_width, 0.0);
      const IndexBox gb = a.ghost_box();
      for (int k = gb.lo[2]; k <= gb.hi[2]; ++k)
        for (int j = gb.lo[1]; j <= gb.hi[1]; ++j)
          for (int i = gb.lo[0]; i <= gb.hi[0]; ++i) {
            double x = lev.cell_center(0, i, h.domain.bounds);
            double y = lev.cell_center(1, j, h.domain.bounds);
            double zz = lev.cell_center(2, k, h.domain.bounds);
            a(i, j, k) = map.z_at(x, y, zz);
          }
      z[l - 1].push_back(std::move(a));
    }
  }
}

PhysicalFill physical_fill_T() { return mirror_fill(); }

namespace {

int lowest_out_axis(const Int3& out) {
  for (int d = 0; d < 3; ++d)
    if (out[d] != 0) return d;
  return -1;
}

}  // namespace

PhysicalFill physical_fill_E(const CompositeScalar& T, const MaterialField& mat,
                             const PhysicsParams& par) {
  const CompositeScalar* Tp = &T;
  const MaterialField* mp = &mat;
  PhysicsParams pp = par;
  return [Tp, mp, pp](const Hierarchy& h, int level, int patch, Array3& a) {
    const Level& lev = h.level(level);
    const IndexBox& dom = lev.domain_box;
    const Array3& Ta = Tp->data[level - 1][patch];
    const Array3& za = mp->patch(level, patch);
    const double hx = lev.dx[0];
    for_each_physical_ghost(h, level, patch, [&](const PhysGhost& pg) {
      int d = lowest_out_axis(pg.out);
      Int3 m = pg.cell;
      m[d] = pg.out[d] < 0 ? 2 * dom.lo[d] - 1 - m[d] : 2 * dom.hi[d] + 1 - m[d];
      double Ein = a(m[0], m[1], m[2]);
      if (d != 0) {
        a(pg.cell[0], pg.cell[1], pg.cell[2]) = Ein;
        return;
      }
      // ghost value solving (1/2) D (E_g - E_in)/h + (E_g + E_in)/8 = R
      double R = pg.out[0] < 0 ? pp.robin_R_xlo : pp.robin_R_xhi;
      double Dr = boundary_diffusion_E(Ta(m[0], m[1], m[2]), za(m[0], m[1], m[2]));
      double c = Dr / (2.0 * hx);
      a(pg.cell[0], pg.cell[1], pg.cell[2]) =
          (R + Ein * (c - 0.125)) / (c + 0.125);
    });
  };
}

void fill_physical_boundary(const Hierarchy& h, int level, CompositeState& s,
                            const MaterialField& mat, const PhysicsParams& par) {
  auto tfill = physical_fill_T();
  auto efill = physical_fill_E(s.T, mat, par);
  for (std::size_t p = 0; p < h.level(level).patches.size(); ++p) {
    tfill(h, level, int(p), s.T.data[level - 1][p]);
    efill(h, level, int(p), s.E.data[level - 1][p]);
  }
}

void fill_all_ghosts(const Hierarchy& h, CompositeState& s,
                     const MaterialField& mat, const PhysicsParams& par) {
  for (int l = 1; l <= h.num_levels(); ++l) {
    fill_ghost(h, l, s.T, physical_fill_T());
    fill_ghost(h, l, s.E, physical_fill_E(s.T, mat, par));
  }
}

void compute_face_coefficients(const Hierarchy& h, int level, int patch,
                               const Array3& E, const Array3& T,
                               const Array3& z, const PhysicsParams& par,
                               std::array<Array3, 3>& cE,
                               std::array<Array3, 3>& cT) {
  const Level& lev = h.level(level);
  const IndexBox& b = lev.patches[patch].box;
  const IndexBox& dom = lev.domain_box;
  for (int d = 0; d < 3; ++d) {
    IndexBox fb = b;
    fb.hi[d] += 1;
    if (!(cE[d].box == fb)) cE[d].define(fb, 0, 0.0);
    if (!(cT[d].box == fb)) cT[d].define(fb, 0, 0.0);
    const double hd = lev.dx[d];
    const double area = lev.dx[(d + 1) % 3] * lev.dx[(d + 2) % 3];
    const double ah = area / hd;
    for (int k = fb.lo[2]; k <= fb.hi[2]; ++k)
      for (int j = fb.lo[1]; j <= fb.hi[1]; ++j)
        for (int i = fb.lo[0]; i <= fb.hi[0]; ++i) {
          Int3 hi_c{i, j, k};
          Int3 lo_c{i, j, k};
          lo_c[d] -= 1;
          double Tl = T(lo_c[0], lo_c[1], lo_c[2]);
          double Tr = T(hi_c[0], hi_c[1], hi_c[2]);
          double de, dt_;
          bool xlo_face = (d == 0 && i == dom.lo[0]);
          bool xhi_face = (d == 0 && i == dom.hi[0] + 1);
          if (xlo_face || xhi_face) {
            Int3 in = xlo_face ? hi_c : lo_c;
            de = boundary_diffusion_E(T(in[0], in[1], in[2]),
                                      z(in[0], in[1], in[2]));
          } else {
            de = face_diffusion_E(E(lo_c[0], lo_c[1], lo_c[2]),
                                  E(hi_c[0], hi_c[1], hi_c[2]), Tl, Tr,
                                  z(lo_c[0], lo_c[1], lo_c[2]),
                                  z(hi_c[0], hi_c[1], hi_c[2]), hd);
          }
          dt_ = face_diffusion_T(Tl, Tr, par.conduction_k);
          cE[d](i, j, k) = de * ah;
          cT[d](i, j, k) = dt_ * ah;
        }
  }
}

}  // namespace samrad
