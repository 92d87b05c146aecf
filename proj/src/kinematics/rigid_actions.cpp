#include "rotquad/kinematics/rigid_actions.hpp"

#include <algorithm>
#include <cmath>

#include "rotquad/error.hpp"

namespace rotquad::kinematics {

HomPlane HomPlane::through(const Vec3& point, const Vec3& normal) {
  return HomPlane{-normal.dot(point), normal}.normalized();
}

HomPlane HomPlane::normalized() const {
  const double l = n.norm();
  if (!(l > 1e-14)) fail(ErrorKind::InvalidInput, "plane has zero normal");
  return {e0 / l, n / l};
}

Vec3 act_on_point(const Displacement& a, const Vec3& x) { return a.apply(x); }

HomPlane act_on_plane(const Displacement& a, const HomPlane& e) {
  const Vec3 n = a.rotation * e.n;
  return {e.e0 - n.dot(a.translation), n};
}

PlueckerLine act_on_line(const Displacement& a, const PlueckerLine& l) {
  const Vec3 d = a.rotation * l.d();
  return PlueckerLine(d, a.rotation * l.m() + a.translation.cross(d));
}

Vec3 act_on_point(const DualQuaternion& a, const Vec3& x) {
  return act_on_point(displacement_from_dq(a), x);
}
HomPlane act_on_plane(const DualQuaternion& a, const HomPlane& e) {
  return act_on_plane(displacement_from_dq(a), e);
}
PlueckerLine act_on_line(const DualQuaternion& a, const PlueckerLine& l) {
  return act_on_line(displacement_from_dq(a), l);
}

DualQuaternion line_dq(const PlueckerLine& l) {
  return {Quat::pure(l.d()), Quat::pure(l.m())};
}

DualQuaternion rotation_dq(const PlueckerLine& axis, double angle) {
  if (!std::isfinite(angle)) fail(ErrorKind::InvalidInput, "rotation angle is not finite");
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  return {Quat{c, s * axis.d()}, Quat::pure(s * axis.m())};
}

PureRotation is_pure_rotation(const DualQuaternion& a, double tol) {
  const DualQuaternion u = a.normalized();
  const double sv = u.primal().v.norm();
  const double dual_norm = std::sqrt(u.dual().squared_norm());
  if (sv <= tol && dual_norm <= tol)
    fail(ErrorKind::Degenerate, "angle zero, axis undefined");
  PureRotation out;
  if (sv <= tol) return out;  // translation
  if (std::abs(u.dual().w) > tol * std::max(1.0, dual_norm)) return out;
  out.is_rotation = true;
  out.angle = 2 * std::atan2(sv, u.primal().w);
  out.axis = PlueckerLine(u.primal().v / sv, u.dual().v / sv, 1e-6);
  return out;
}

Screw screw_axis(const DualQuaternion& a) {
  const DualQuaternion u = a.normalized();
  const double sv = u.primal().v.norm();
  if (sv <= 1e-12) fail(ErrorKind::Degenerate, "no rotation: screw axis undefined");
  const double angle = 2 * std::atan2(sv, u.primal().w);
  const Vec3 d = u.primal().v / sv;
  // Dual angle: q0 = -(slide/2) sin(angle/2).
  const double half_slide = -u.dual().w / sv;
  const Vec3 m = (u.dual().v - half_slide * std::cos(angle / 2) * d) / sv;
  return {PlueckerLine(d, m, 1e-6), angle, 2 * half_slide};
}

StudyLine::StudyLine(const DualQuaternion& b, const PlueckerLine& moving_axis)
    : base(b), direction(b * line_dq(moving_axis)) {}

DualQuaternion StudyLine::point(double s) const {
  return std::cos(s) * base + std::sin(s) * direction;
}

}  // namespace rotquad::kinematics
