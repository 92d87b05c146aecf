#pragma once

#include <array>

#include <Eigen/Dense>

#include "rotquad/types.hpp"

namespace rotquad::kinematics {

/// Quaternion w + v, with v the vector part.
struct Quat {
  double w = 0;
  Vec3 v = Vec3::Zero();

  static Quat identity() { return {1, Vec3::Zero()}; }
  static Quat pure(const Vec3& v) { return {0, v}; }
  static Quat from_coeffs(const Vec4& c) { return {c(0), c.tail<3>()}; }

  Vec4 coeffs() const { return Vec4(w, v(0), v(1), v(2)); }
  Quat conj() const { return {w, -v}; }
  double dot(const Quat& o) const { return w * o.w + v.dot(o.v); }
  double squared_norm() const { return dot(*this); }

  /// Rotation matrix of a unit quaternion.
  Mat3 rotation() const;
};

Quat operator*(const Quat& a, const Quat& b);
Quat operator+(const Quat& a, const Quat& b);
Quat operator-(const Quat& a, const Quat& b);
Quat operator*(double s, const Quat& a);

using Vec8 = Eigen::Matrix<double, 8, 1>;

/// Dual quaternion p + eps q, i.e. a point of projective 7-space with
/// coordinates (p0, p1, p2, p3, q0, q1, q2, q3).
///
/// As a displacement, a unit dual quaternion maps x to R x + t with R the
/// rotation of p and t = 2 q p*. The product a * b represents the composition
/// a o b: b acts first.
class DualQuaternion {
 public:
  DualQuaternion() : p_(Quat::identity()) {}
  DualQuaternion(const Quat& p, const Quat& q) : p_(p), q_(q) {}

  static DualQuaternion identity() { return {}; }
  static DualQuaternion from_coeffs(const Vec8& c);

  const Quat& primal() const { return p_; }
  const Quat& dual() const { return q_; }
  Vec8 coeffs() const;

  /// p . q, zero exactly on the Study quadric.
  double study_residual() const { return p_.dot(q_); }

  /// Quaternion conjugate of both parts; the inverse of a unit displacement.
  DualQuaternion conj() const { return {p_.conj(), q_.conj()}; }

  /// Representative with p0 > 0, or, when p0 vanishes, with the first
  /// nonzero primal coordinate positive.
  DualQuaternion canonical() const;

  /// Divides by |p| so the primal part has unit norm.
  DualQuaternion normalized() const;

 private:
  Quat p_;
  Quat q_;
};

DualQuaternion operator*(const DualQuaternion& a, const DualQuaternion& b);
DualQuaternion operator+(const DualQuaternion& a, const DualQuaternion& b);
DualQuaternion operator-(const DualQuaternion& a, const DualQuaternion& b);
DualQuaternion operator*(double s, const DualQuaternion& a);

/// Polar form of the Study quadric: pA.qB + pB.qA.
double study_form(const DualQuaternion& a, const DualQuaternion& b);

/// Equality of the represented projective points up to the sign ambiguity.
bool same_up_to_sign(const DualQuaternion& a, const DualQuaternion& b,
                     double tol = 1e-9);

/// Apply a first, then b (the product b * a).
inline DualQuaternion dq_multiply(const DualQuaternion& a, const DualQuaternion& b) {
  return b * a;
}

}  // namespace rotquad::kinematics
