#ifndef SAMRAD_TRANSFER_HPP
#define SAMRAD_TRANSFER_HPP

#include "samrad/field.hpp"
#include "samrad/ghost.hpp"
#include "samrad/hierarchy.hpp"

namespace samrad {

// Averages the ratio^3 fine children onto every coarse cell covered by
// fine_level. Uncovered coarse cells are untouched.
void restrict_to_coarse(const Hierarchy& h, int fine_level, CompositeScalar& f);

// Composite-state convention: covered coarse cells always hold the
// restriction of the next finer level. Re-establishes it top down.
void sync_covered(const Hierarchy& h, CompositeScalar& f);
void sync_covered(const Hierarchy& h, CompositeState& s);

// Trilinear interpolation of the coarser level onto every cell of
// fine_level (correction transfer; exact on linear fields). Coarse ghost
// values must be available at patch borders.
void prolong_correction(const Hierarchy& h, int fine_level,
                        const std::vector<Array3>& coarse,
                        std::vector<Array3>& fine);

// Conservative refinement: piecewise-linear with per-axis minmod-limited
// slopes. Children of each coarse cell average back to it exactly, and fine
// values stay within the local donor min/max.
void prolong_conservative(const Hierarchy& h, int fine_level,
                          const std::vector<Array3>& coarse,
                          std::vector<Array3>& fine);

// Area-integrated face fluxes for one patch; f[d](i,j,k) is the flux through
// the face between cells i-1 and i along axis d (analogous in y, z).
struct PatchFluxes {
  std::array<Array3, 3> f;
  void define(const IndexBox& b) {
    for (int d = 0; d < 3; ++d) {
      IndexBox fb = b;
      fb.hi[d] += 1;
      f[d].define(fb, 0, 0.0);
    }
  }
};
using LevelFluxes = std::vector<PatchFluxes>;

// Replaces each coarse flux on a coarse-fine boundary face by the sum of the
// four overlapping fine-face fluxes (fluxes are area-integrated, so the sum
// is the area-weighted average times the coarse face area).
void match_fluxes(const Hierarchy& h, int coarse_level, LevelFluxes& coarse,
                  const LevelFluxes& fine);

}  // namespace samrad

#endif
