#pragma once

#include "rotquad/kinematics/dual_quaternion.hpp"
#include "rotquad/types.hpp"

namespace rotquad::kinematics {

/// Rigid displacement x -> R x + t.
struct Displacement {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  static Displacement identity() { return {}; }
  static Displacement from_matrix(const Mat4& h);

  Vec3 apply(const Vec3& x) const { return rotation * x + translation; }
  Displacement inverse() const;
  /// Homogeneous 4x4 matrix [R t; 0 1].
  Mat4 matrix() const;

  /// Throws unless R is orthogonal with determinant +1 within tol.
  void validate(double tol = 1e-9) const;
};

/// outer o inner: inner acts first.
Displacement compose(const Displacement& outer, const Displacement& inner);

/// Study image of d with the canonical sign. Throws for invalid rotations.
DualQuaternion dq_from_displacement(const Displacement& d);

/// Inverse of dq_from_displacement. The primal part is normalized first;
/// a Study residual above tol relative to |p||q| is an error.
Displacement displacement_from_dq(const DualQuaternion& a, double tol = 1e-9);

}  // namespace rotquad::kinematics
