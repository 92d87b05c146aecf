#include "rotquad/kinematics/dual_quaternion.hpp"

#include <algorithm>
#include <cmath>

#include "rotquad/error.hpp"

namespace rotquad::kinematics {

Mat3 Quat::rotation() const {
  const double a = w, b = v(0), c = v(1), d = v(2);
  Mat3 r;
  r << a * a + b * b - c * c - d * d, 2 * (b * c - a * d), 2 * (b * d + a * c),
      2 * (b * c + a * d), a * a - b * b + c * c - d * d, 2 * (c * d - a * b),
      2 * (b * d - a * c), 2 * (c * d + a * b), a * a - b * b - c * c + d * d;
  return r;
}

Quat operator*(const Quat& a, const Quat& b) {
  return {a.w * b.w - a.v.dot(b.v), a.w * b.v + b.w * a.v + a.v.cross(b.v)};
}
Quat operator+(const Quat& a, const Quat& b) { return {a.w + b.w, a.v + b.v}; }
Quat operator-(const Quat& a, const Quat& b) { return {a.w - b.w, a.v - b.v}; }
Quat operator*(double s, const Quat& a) { return {s * a.w, s * a.v}; }

DualQuaternion DualQuaternion::from_coeffs(const Vec8& c) {
  return {Quat::from_coeffs(c.head<4>()), Quat::from_coeffs(c.tail<4>())};
}

Vec8 DualQuaternion::coeffs() const {
  Vec8 c;
  c << p_.coeffs(), q_.coeffs();
  return c;
}

DualQuaternion DualQuaternion::canonical() const {
  const Vec4 p = p_.coeffs();
  if (p(0) > 1e-12) return *this;
  if (p(0) < -1e-12) return -1.0 * *this;
  const double scale = std::max(p.norm(), 1e-300);
  for (int i = 1; i < 4; ++i) {
    if (std::abs(p(i)) <= 1e-12 * scale) continue;
    return p(i) > 0 ? *this : -1.0 * *this;
  }
  return *this;
}

DualQuaternion DualQuaternion::normalized() const {
  const double n = std::sqrt(p_.squared_norm());
  if (!(n > 0)) fail(ErrorKind::InvalidInput, "dual quaternion has zero primal part");
  return (1.0 / n) * *this;
}

DualQuaternion operator*(const DualQuaternion& a, const DualQuaternion& b) {
  return {a.primal() * b.primal(), a.primal() * b.dual() + a.dual() * b.primal()};
}
DualQuaternion operator+(const DualQuaternion& a, const DualQuaternion& b) {
  return {a.primal() + b.primal(), a.dual() + b.dual()};
}
DualQuaternion operator-(const DualQuaternion& a, const DualQuaternion& b) {
  return {a.primal() - b.primal(), a.dual() - b.dual()};
}
DualQuaternion operator*(double s, const DualQuaternion& a) {
  return {s * a.primal(), s * a.dual()};
}

double study_form(const DualQuaternion& a, const DualQuaternion& b) {
  return a.primal().dot(b.dual()) + b.primal().dot(a.dual());
}

bool same_up_to_sign(const DualQuaternion& a, const DualQuaternion& b, double tol) {
  const Vec8 x = a.coeffs(), y = b.coeffs();
  const double scale = std::max({1.0, x.norm(), y.norm()});
  return std::min((x - y).norm(), (x + y).norm()) <= tol * scale;
}

}  // namespace rotquad::kinematics
