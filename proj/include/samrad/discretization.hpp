#ifndef SAMRAD_DISCRETIZATION_HPP
#define SAMRAD_DISCRETIZATION_HPP

#include "samrad/ghost.hpp"
#include "samrad/physics.hpp"
#include "samrad/transfer.hpp"

namespace samrad {

// Ghost relations at the physical boundary, first order: E satisfies the
// Robin condition (1/2) n.D grad E + E/4 = R on the x faces and zero Neumann
// elsewhere; T is zero Neumann everywhere.
PhysicalFill physical_fill_T();
PhysicalFill physical_fill_E(const CompositeScalar& T, const MaterialField& mat,
                             const PhysicsParams& par);

void fill_physical_boundary(const Hierarchy& h, int level, CompositeState& s,
                            const MaterialField& mat, const PhysicsParams& par);

// Complete ghost fill for a synced composite state, coarsest level first:
// same-level copies, two-stage coarse-fine interpolation, then the physical
// relations above.
void fill_all_ghosts(const Hierarchy& h, CompositeState& s,
                     const MaterialField& mat, const PhysicsParams& par);

// D * A / h per face for one ghost-filled patch, the building block for both
// the flux assembly and the frozen preconditioner operator. Boundary x faces
// of E use the unlimited one-sided coefficient to stay consistent with the
// Robin ghost formula.
void compute_face_coefficients(const Hierarchy& h, int level, int patch,
                               const Array3& E, const Array3& T,
                               const Array3& z, const PhysicsParams& par,
                               std::array<Array3, 3>& cE,
                               std::array<Array3, 3>& cT);

}  // namespace samrad

#endif
