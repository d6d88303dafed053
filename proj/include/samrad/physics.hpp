#ifndef SAMRAD_PHYSICS_HPP
#define SAMRAD_PHYSICS_HPP

#include <cmath>
#include <vector>

#include "samrad/field.hpp"
#include "samrad/hierarchy.hpp"

namespace samrad {

struct PhysicsParams {
  double conduction_k = 0.01;  // D_T = k T^(5/2)
  double E0 = 1e-5;            // initial energy density; T0 = E0^(1/4)
  double robin_R_xlo = 1.0;    // incident flux at x = 0
  double robin_R_xhi = 0.0;    // vacuum at x = 1
};

struct MaterialRegion {
  RealBox box;
  double z = 1.0;
};

// Piecewise-constant atomic number: first matching region wins, else
// background. Evaluated at cell centers (ghost centers included).
struct MaterialMap {
  double background_z = 1.0;
  std::vector<MaterialRegion> regions;

  double z_at(double x, double y, double z) const {
    for (const MaterialRegion& r : regions)
      if (r.box.contains(x, y, z)) return r.z;
    return background_z;
  }
};

// z sampled onto every patch including the ghost frame.
struct MaterialField {
  std::vector<std::vector<Array3>> z;

  void build(const Hierarchy& h, const MaterialMap& map);
  const Array3& patch(int l, int p) const { return z[l - 1][p]; }
};

inline double sigma_a(double z, double T) {
  double r = z / T;
  return r * r * r;
}

// opacity-weighted face coefficient with the flux limiter, as printed:
// D_r = T_face^3 / (3 (z_l^3 + z_r^3)),  D_E = 2 D_r / (1 + D_r |dE|/(h Ebar))
inline double face_diffusion_E(double E_left, double E_right, double T_left,
                               double T_right, double z_left, double z_right,
                               double h) {
  double Tf = 0.5 * (T_left + T_right);
  double Dr = Tf * Tf * Tf /
              (3.0 * (z_left * z_left * z_left + z_right * z_right * z_right));
  double q = std::abs(E_right - E_left) / (0.5 * h * (E_left + E_right));
  return 2.0 * Dr / (1.0 + Dr * q);
}

inline double face_diffusion_T(double T_left, double T_right, double k) {
  double Tf = 0.5 * (T_left + T_right);
  return k * Tf * Tf * std::sqrt(Tf);
}

// unlimited one-sided coefficient used by the Robin boundary (boundaries are
// not flux limited): the physical 1/(3 sigma_a)
inline double boundary_diffusion_E(double T_in, double z_in) {
  double t3 = T_in * T_in * T_in;
  return t3 / (3.0 * z_in * z_in * z_in);
}

}  // namespace samrad

#endif
