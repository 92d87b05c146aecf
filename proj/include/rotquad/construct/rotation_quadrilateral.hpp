#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rotquad/kinematics/displacement.hpp"
#include "rotquad/kinematics/dual_quaternion.hpp"
#include "rotquad/kinematics/rigid_actions.hpp"
#include "rotquad/linegeom/pluecker_line.hpp"
#include "rotquad/linegeom/transversals.hpp"

namespace rotquad::construct {

using kinematics::Displacement;
using kinematics::DualQuaternion;
using linegeom::PlueckerLine;

/// Four positions alpha_0..alpha_3 whose consecutive relative displacements
/// tau_{i,i+1} = alpha_{i+1} o alpha_i^-1 are pure rotations (indices mod 4).
///
/// rel_axes_moving[i] is r_{i,i+1} in the moving frame, so
/// alpha_{i+1} = alpha_i o rot(r_{i,i+1}, rel_angles[i]).
struct RotationQuadrilateral {
  std::array<Displacement, 4> displacements;
  std::array<DualQuaternion, 4> study_points;
  std::array<PlueckerLine, 4> rel_axes_moving;
  std::array<double, 4> rel_angles{};  // radians in (-pi, pi]
  // Transversals of the four moving-frame axes; empty when those axes are in
  // a special position (regulus, common point, ...).
  std::optional<linegeom::Transversals> transversals;

  /// alpha_i(r_{i,i+1}), the fixed axis of tau_{i,i+1}.
  PlueckerLine fixed_axis(int i) const;
  /// tau_{i,i+1} as a dual quaternion.
  DualQuaternion relative(int i) const;
  /// Real transversals, possibly none.
  std::vector<PlueckerLine> real_transversals() const;
};

struct InvariantReport {
  std::array<double, 4> dual_scalar{};  // |q0| of each normalized tau_{i,i+1}
  std::array<double, 4> study_form{};   // |study_form(A_i, A_{i+1})|
  std::array<bool, 4> pure_rotation{};
  double axis_mismatch = 0;  // stored axes vs. recomputed fixed axes
  int study_rank = 0;        // rank of the 4x8 coordinate matrix
  double study_gram = 0;     // max(|B02|, |B13|), B the restricted Study form
  bool generic = false;
  bool ok = false;
  std::string first_failure;  // empty when ok
};

/// Checks the defining properties of q at tolerance tol.
InvariantReport check_invariants(const RotationQuadrilateral& q, double tol = 1e-9);

/// Builds a quadrilateral from four positions. Throws InvalidInput when some
/// tau_{i,i+1} is not a pure rotation and Degenerate when one is the identity.
RotationQuadrilateral from_positions(const std::array<Displacement, 4>& positions,
                                     double tol = 1e-9);

/// From alpha_i, the axes r_{i,i+1}, r_{i+1,i+2}, r_{i+2,i+3} and the angles of
/// the first two. The last position is the point of the Study line
/// alpha_{i+2} o rot(r_{i+2,i+3}, .) conjugate to alpha_i, which is linear in
/// the half-angle parameters.
RotationQuadrilateral construct_v1(const Displacement& alpha_i, int i,
                                   const std::array<PlueckerLine, 3>& axes,
                                   const std::array<double, 2>& angles,
                                   double tol = 1e-9);

/// From alpha_i, alpha_{i+2} and the axes r_{i,i+1}, r_{i+2,i+3}. Each missing
/// position solves one homogeneous linear equation in the half-angle
/// parameters, which always has a real projective solution: a completion is
/// never complex, only non-unique when both coefficients vanish.
RotationQuadrilateral construct_v2(const Displacement& alpha_i,
                                   const Displacement& alpha_i2, int i,
                                   const PlueckerLine& r_i, const PlueckerLine& r_i2,
                                   double tol = 1e-9);

/// Axis (moving frame) and angle of each alpha_i^-1 o alpha_{i+1}, recomputed
/// from the positions and oriented like q.rel_axes_moving.
std::array<std::pair<PlueckerLine, double>, 4> extract_axes_and_angles(
    const RotationQuadrilateral& q, double tol = 1e-9);

/// Angle reduced to (-pi, pi].
double normalize_angle(double a);

}  // namespace rotquad::construct
