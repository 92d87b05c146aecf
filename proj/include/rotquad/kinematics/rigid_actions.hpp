#pragma once

#include <optional>

#include "rotquad/kinematics/displacement.hpp"
#include "rotquad/kinematics/dual_quaternion.hpp"
#include "rotquad/linegeom/pluecker_line.hpp"
#include "rotquad/types.hpp"

namespace rotquad::kinematics {

using linegeom::PlueckerLine;

/// Oriented plane e0 + n.x = 0. (e0, n) and (-e0, -n) are distinct.
struct HomPlane {
  double e0 = 0;
  Vec3 n = Vec3::UnitZ();

  static HomPlane through(const Vec3& point, const Vec3& normal);
  /// Same oriented plane with |n| = 1. Throws for a zero normal.
  HomPlane normalized() const;
  Vec4 coords() const { return Vec4(e0, n(0), n(1), n(2)); }
  double eval(const Vec3& x) const { return e0 + n.dot(x); }
};

Vec3 act_on_point(const DualQuaternion& a, const Vec3& x);
HomPlane act_on_plane(const DualQuaternion& a, const HomPlane& e);
PlueckerLine act_on_line(const DualQuaternion& a, const PlueckerLine& l);

Vec3 act_on_point(const Displacement& a, const Vec3& x);
HomPlane act_on_plane(const Displacement& a, const HomPlane& e);
PlueckerLine act_on_line(const Displacement& a, const PlueckerLine& l);

/// The line as a dual quaternion with zero scalar parts: (0, d) + eps (0, m).
DualQuaternion line_dq(const PlueckerLine& l);

/// cos(angle/2) + sin(angle/2) (d + eps m).
DualQuaternion rotation_dq(const PlueckerLine& axis, double angle);

struct PureRotation {
  bool is_rotation = false;
  std::optional<PlueckerLine> axis;  // set iff is_rotation
  double angle = 0;                  // in [0, pi] for canonical input
};

/// True iff the dual scalar part vanishes (relative to the dual norm) and the
/// primal vector part does not. Throws for the identity.
PureRotation is_pure_rotation(const DualQuaternion& a, double tol = 1e-9);

/// Screw decomposition: rotation by angle about axis, then translation by
/// `slide` along it. Throws for pure translations and the identity.
struct Screw {
  PlueckerLine axis;
  double angle = 0;
  double slide = 0;
};
Screw screw_axis(const DualQuaternion& a);

/// Line on the Study quadric through base in direction base * L for a moving
/// frame axis L: all compositions base o rot(L, .).
struct StudyLine {
  DualQuaternion base;
  DualQuaternion direction;

  StudyLine(const DualQuaternion& base, const PlueckerLine& moving_axis);

  /// cos(s) base + sin(s) direction, the displacement base o rot(L, 2s).
  DualQuaternion point(double s) const;
};

}  // namespace rotquad::kinematics
