#include "rotquad/construct/rotation_quadrilateral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rotquad/algebra/matrix.hpp"
#include "rotquad/error.hpp"

namespace rotquad::construct {

using kinematics::act_on_line;
using kinematics::dq_from_displacement;
using kinematics::is_pure_rotation;
using kinematics::line_dq;
using kinematics::rotation_dq;
using kinematics::study_form;

namespace {

int mod4(int i) { return ((i % 4) + 4) % 4; }

double line_mismatch(const PlueckerLine& a, PlueckerLine b) {
  if (a.d().dot(b.d()) < 0) b = b.reversed();
  const double scale = std::max({1.0, a.m().norm(), b.m().norm()});
  return std::max((a.d() - b.d()).norm(), (a.m() - b.m()).norm() / scale);
}

void check_index(int i) {
  if (i < 0 || i > 3) fail(ErrorKind::InvalidInput, "position index must be 0..3");
}

double nonzero_angle(double a, double tol) {
  const double n = normalize_angle(a);
  if (std::abs(n) <= tol) fail(ErrorKind::Degenerate, "degenerate: zero angle");
  return n;
}

// (c, s) with c sf(B, C) + s sf(B L, C) = 0 and c^2 + s^2 = 1, as an angle.
double conjugate_angle(const DualQuaternion& base, const PlueckerLine& axis,
                       const DualQuaternion& target, const char* what, double tol) {
  const double a = study_form(base, target);
  const double b = study_form(base * line_dq(axis), target);
  const double scale = std::max(1.0, base.coeffs().norm() * target.coeffs().norm());
  if (std::hypot(a, b) <= tol * scale) fail(ErrorKind::Degenerate, what);
  return normalize_angle(2 * std::atan2(-a, b));
}

using Hints = std::array<std::optional<PlueckerLine>, 4>;

RotationQuadrilateral assemble(const std::array<DualQuaternion, 4>& a, const Hints& hints,
                               double tol) {
  std::array<Displacement, 4> pos;
  for (int k = 0; k < 4; ++k) pos[k] = kinematics::displacement_from_dq(a[k], 1e-6);
  RotationQuadrilateral q = from_positions(pos, tol);
  for (int k = 0; k < 4; ++k) {
    if (!hints[k] || q.rel_axes_moving[k].d().dot(hints[k]->d()) >= 0) continue;
    q.rel_axes_moving[k] = q.rel_axes_moving[k].reversed();
    q.rel_angles[k] = normalize_angle(-q.rel_angles[k]);
  }
  const InvariantReport rep = check_invariants(q, std::max(tol, 1e-9));
  if (!rep.generic) fail(ErrorKind::Degenerate, "non-generic: three-space on Study quadric");
  return q;
}

}  // namespace

double normalize_angle(double a) {
  constexpr double pi = std::numbers::pi;
  double r = std::remainder(a, 2 * pi);
  if (r <= -pi) r += 2 * pi;
  return r;
}

PlueckerLine RotationQuadrilateral::fixed_axis(int i) const {
  return act_on_line(displacements[mod4(i)], rel_axes_moving[mod4(i)]);
}

DualQuaternion RotationQuadrilateral::relative(int i) const {
  return study_points[mod4(i + 1)] * study_points[mod4(i)].conj();
}

std::vector<PlueckerLine> RotationQuadrilateral::real_transversals() const {
  return transversals ? transversals->lines : std::vector<PlueckerLine>{};
}

InvariantReport check_invariants(const RotationQuadrilateral& q, double tol) {
  InvariantReport r;
  auto note = [&r](const std::string& what) {
    if (r.first_failure.empty()) r.first_failure = what;
  };
  double axis = 0;
  for (int i = 0; i < 4; ++i) {
    const std::string tag = std::to_string(i) + "," + std::to_string((i + 1) % 4);
    const DualQuaternion tau = q.relative(i).normalized();
    const double dn = std::sqrt(tau.dual().squared_norm());
    r.dual_scalar[i] = std::abs(tau.dual().w) / std::max(1.0, dn);
    const auto& ai = q.study_points[i];
    const auto& aj = q.study_points[(i + 1) % 4];
    r.study_form[i] = std::abs(study_form(ai, aj)) /
                      std::max(1.0, ai.coeffs().norm() * aj.coeffs().norm());
    r.pure_rotation[i] = r.dual_scalar[i] <= tol && tau.primal().v.norm() > tol;
    if (!r.pure_rotation[i]) note("pure_rotation[" + tag + "]");
    if (r.study_form[i] > tol) note("study_conjugacy[" + tag + "]");
    if (r.pure_rotation[i]) {
      const auto pr = is_pure_rotation(tau, tol);
      if (pr.is_rotation) axis = std::max(axis, line_mismatch(*pr.axis, q.fixed_axis(i)));
    }
  }
  r.axis_mismatch = axis;
  if (axis > 1e3 * tol) note("fixed_axis_consistency");

  Eigen::Matrix<double, 4, 8> m;
  for (int i = 0; i < 4; ++i) m.row(i) = q.study_points[i].coeffs().transpose();
  r.study_rank = algebra::rank_with_tol(m, tol);
  Eigen::Matrix<double, 8, 8> s = Eigen::Matrix<double, 8, 8>::Zero();
  s.topRightCorner<4, 4>().setIdentity();
  s.bottomLeftCorner<4, 4>().setIdentity();
  const Eigen::Matrix4d b = m * s * m.transpose();
  r.study_gram = std::max(std::abs(b(0, 2)), std::abs(b(1, 3))) /
                 std::max(1.0, m.rowwise().norm().maxCoeff() * m.rowwise().norm().maxCoeff());
  r.generic = r.study_rank == 4 && r.study_gram > 1e3 * tol;
  if (!r.generic) note("genericity");
  for (int i = 0; i < 4; ++i) {
    Displacement d = q.displacements[i];
    if ((d.rotation.transpose() * d.rotation - Mat3::Identity()).norm() > 1e3 * tol) {
      note("orthogonal_rotation[" + std::to_string(i) + "]");
    }
  }
  r.ok = r.first_failure.empty();
  return r;
}

RotationQuadrilateral from_positions(const std::array<Displacement, 4>& positions,
                                     double tol) {
  RotationQuadrilateral q;
  q.displacements = positions;
  for (int k = 0; k < 4; ++k) q.study_points[k] = dq_from_displacement(positions[k]);
  for (int k = 0; k < 4; ++k) {
    const std::string tag = std::to_string(k) + "," + std::to_string((k + 1) % 4);
    const DualQuaternion rho =
        (q.study_points[k].conj() * q.study_points[(k + 1) % 4]).normalized().canonical();
    kinematics::PureRotation pr;
    try {
      pr = is_pure_rotation(rho, tol);
    } catch (const Error&) {
      fail(ErrorKind::Degenerate, "degenerate: zero angle between positions " + tag);
    }
    if (!pr.is_rotation)
      fail(ErrorKind::InvalidInput, "relative displacement " + tag + " is not a pure rotation");
    q.rel_axes_moving[k] = *pr.axis;
    q.rel_angles[k] = normalize_angle(pr.angle);
  }
  try {
    q.transversals = linegeom::transversals_of_four(q.rel_axes_moving, tol);
  } catch (const Error&) {
    q.transversals.reset();
  }
  return q;
}

RotationQuadrilateral construct_v1(const Displacement& alpha_i, int i,
                                   const std::array<PlueckerLine, 3>& axes,
                                   const std::array<double, 2>& angles, double tol) {
  check_index(i);
  const double w0 = nonzero_angle(angles[0], tol), w1 = nonzero_angle(angles[1], tol);
  std::array<DualQuaternion, 4> a;
  a[i] = dq_from_displacement(alpha_i);
  a[mod4(i + 1)] = a[i] * rotation_dq(axes[0], w0);
  a[mod4(i + 2)] = a[mod4(i + 1)] * rotation_dq(axes[1], w1);
  const double w2 = nonzero_angle(
      conjugate_angle(a[mod4(i + 2)], axes[2], a[i],
                      "non-generic: three-space on Study quadric", tol),
      tol);
  a[mod4(i + 3)] = a[mod4(i + 2)] * rotation_dq(axes[2], w2);
  Hints hints;
  for (int k = 0; k < 3; ++k) hints[mod4(i + k)] = axes[k];
  return assemble(a, hints, tol);
}

RotationQuadrilateral construct_v2(const Displacement& alpha_i,
                                   const Displacement& alpha_i2, int i,
                                   const PlueckerLine& r_i, const PlueckerLine& r_i2,
                                   double tol) {
  check_index(i);
  std::array<DualQuaternion, 4> a;
  a[i] = dq_from_displacement(alpha_i);
  a[mod4(i + 2)] = dq_from_displacement(alpha_i2);
  const char* msg = "non-unique completion (degenerate)";
  const double w0 = nonzero_angle(conjugate_angle(a[i], r_i, a[mod4(i + 2)], msg, tol), tol);
  const double w2 =
      nonzero_angle(conjugate_angle(a[mod4(i + 2)], r_i2, a[i], msg, tol), tol);
  a[mod4(i + 1)] = a[i] * rotation_dq(r_i, w0);
  a[mod4(i + 3)] = a[mod4(i + 2)] * rotation_dq(r_i2, w2);
  Hints hints;
  hints[i] = r_i;
  hints[mod4(i + 2)] = r_i2;
  return assemble(a, hints, tol);
}

std::array<std::pair<PlueckerLine, double>, 4> extract_axes_and_angles(
    const RotationQuadrilateral& q, double tol) {
  std::array<std::pair<PlueckerLine, double>, 4> out;
  for (int k = 0; k < 4; ++k) {
    const auto pr = is_pure_rotation(q.relative(k).canonical(), tol);
    if (!pr.is_rotation)
      fail(ErrorKind::InvalidInput,
           "relative displacement " + std::to_string(k) + " is not a pure rotation");
    PlueckerLine axis = act_on_line(q.displacements[k].inverse(), *pr.axis);
    double angle = normalize_angle(pr.angle);
    if (axis.d().dot(q.rel_axes_moving[k].d()) < 0) {
      axis = axis.reversed();
      angle = normalize_angle(-angle);
    }
    out[k] = {axis, angle};
  }
  return out;
}

}  // namespace rotquad::construct
