#include "rotquad/kinematics/displacement.hpp"

#include <algorithm>
#include <cmath>

#include "rotquad/error.hpp"

namespace rotquad::kinematics {

Displacement Displacement::from_matrix(const Mat4& h) {
  Displacement d{h.topLeftCorner<3, 3>(), h.topRightCorner<3, 1>()};
  return d;
}

Displacement Displacement::inverse() const {
  const Mat3 rt = rotation.transpose();
  return {rt, -(rt * translation)};
}

Mat4 Displacement::matrix() const {
  Mat4 h = Mat4::Identity();
  h.topLeftCorner<3, 3>() = rotation;
  h.topRightCorner<3, 1>() = translation;
  return h;
}

void Displacement::validate(double tol) const {
  if (!rotation.allFinite() || !translation.allFinite())
    fail(ErrorKind::InvalidInput, "displacement has non-finite entries");
  if ((rotation.transpose() * rotation - Mat3::Identity()).norm() > tol)
    fail(ErrorKind::InvalidInput, "rotation matrix is not orthogonal");
  if (rotation.determinant() < 0)
    fail(ErrorKind::InvalidInput, "rotation matrix has determinant -1");
}

Displacement compose(const Displacement& outer, const Displacement& inner) {
  return {outer.rotation * inner.rotation,
          outer.rotation * inner.translation + outer.translation};
}

DualQuaternion dq_from_displacement(const Displacement& d) {
  d.validate(1e-8);
  // Project to the nearest rotation so the quaternion is exactly unit.
  Eigen::JacobiSVD<Mat3> svd(d.rotation, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Mat3 r = svd.matrixU() * svd.matrixV().transpose();
  Eigen::Quaterniond e(r);
  e.normalize();
  const Quat p{e.w(), Vec3(e.x(), e.y(), e.z())};
  const Quat q = 0.5 * (Quat::pure(d.translation) * p);
  return DualQuaternion(p, q).canonical();
}

Displacement displacement_from_dq(const DualQuaternion& a, double tol) {
  const double np = std::sqrt(a.primal().squared_norm());
  if (!(np > 1e-14)) fail(ErrorKind::InvalidInput, "dual quaternion has zero primal part");
  const DualQuaternion u = a.normalized();
  const double nq = std::sqrt(u.dual().squared_norm());
  if (std::abs(u.study_residual()) > tol * std::max(1.0, nq))
    fail(ErrorKind::InvalidInput, "dual quaternion violates the Study condition");
  const Quat t = 2.0 * (u.dual() * u.primal().conj());
  return {u.primal().rotation(), t.v};
}

}  // namespace rotquad::kinematics
