#include "rotquad/linegeom/pluecker_line.hpp"

#include <algorithm>
#include <cmath>

#include "rotquad/error.hpp"

namespace rotquad::linegeom {

PlueckerLine::PlueckerLine(const Vec3& d, const Vec3& m, double tol) {
  const double n = d.norm();
  if (!(n > 1e-14) || !std::isfinite(n))
    fail(ErrorKind::InvalidInput, "degenerate line: zero direction");
  if (!m.allFinite()) fail(ErrorKind::InvalidInput, "line moment is not finite");
  if (std::abs(d.dot(m)) > tol * n * std::max(1.0, m.norm()))
    fail(ErrorKind::InvalidInput, "Pluecker condition violated: d.m != 0");
  d_ = d / n;
  m_ = m / n;
  m_ -= m_.dot(d_) * d_;
}

PlueckerLine PlueckerLine::from_point_direction(const Vec3& point, const Vec3& dir) {
  const double n = dir.norm();
  if (!(n > 1e-14)) fail(ErrorKind::InvalidInput, "degenerate line: zero direction");
  return PlueckerLine(dir / n, point.cross(dir / n));
}

PlueckerLine PlueckerLine::from_coords(const Vec6& dm, double tol) {
  return PlueckerLine(dm.head<3>(), dm.tail<3>(), tol);
}

Vec6 PlueckerLine::coords() const {
  Vec6 v;
  v << d_, m_;
  return v;
}

double PlueckerLine::distance_to(const Vec3& x) const {
  return (x.cross(d_) - m_).norm();
}

PlueckerLine PlueckerLine::canonical() const {
  for (int i = 0; i < 3; ++i) {
    if (std::abs(d_(i)) <= 1e-12) continue;
    return d_(i) > 0 ? *this : reversed();
  }
  return *this;
}

bool PlueckerLine::same_oriented(const PlueckerLine& o, double tol) const {
  const double scale = std::max({1.0, m_.norm(), o.m_.norm()});
  return (d_ - o.d_).norm() <= tol && (m_ - o.m_).norm() <= tol * scale;
}

bool PlueckerLine::same_carrier(const PlueckerLine& o, double tol) const {
  return same_oriented(o, tol) || same_oriented(o.reversed(), tol);
}

double reciprocal_product(const PlueckerLine& a, const PlueckerLine& b) {
  return a.d().dot(b.m()) + b.d().dot(a.m());
}

PlueckerLine line_through(const Vec3& p, const Vec3& q) {
  const Vec3 d = q - p;
  const double n = d.norm();
  if (!(n > 1e-14 * std::max({1.0, p.norm(), q.norm()})))
    fail(ErrorKind::InvalidInput, "line_through: points coincide");
  return PlueckerLine(d / n, p.cross(d / n));
}

Vec4 Meet::homogeneous() const {
  if (kind == Kind::AtInfinity) return Vec4(direction(0), direction(1), direction(2), 0);
  return Vec4(point(0), point(1), point(2), 1);
}

Meet meet(const PlueckerLine& a, const PlueckerLine& b, double tol) {
  const Vec3 pa = a.foot(), pb = b.foot();
  const double scale = std::max({1.0, pa.norm(), pb.norm()});
  const Vec3 c = a.d().cross(b.d());
  const double sin_angle = c.norm();
  Meet out;
  if (sin_angle <= tol) {
    out.distance = b.distance_to(pa);
    if (out.distance <= tol * scale) fail(ErrorKind::Degenerate, "coincident lines");
    out.kind = Meet::Kind::AtInfinity;
    out.direction = a.d();
    return out;
  }
  out.distance = std::abs(reciprocal_product(a, b)) / sin_angle;
  if (out.distance > tol * scale) {
    out.kind = Meet::Kind::Skew;
    return out;
  }
  // Closest points pa + s da and pb + t db.
  const Vec3 w = pa - pb;
  const double ab = a.d().dot(b.d()), den = 1 - ab * ab;
  const double s = (ab * b.d().dot(w) - a.d().dot(w)) / den;
  const double t = (b.d().dot(w) - ab * a.d().dot(w)) / den;
  out.kind = Meet::Kind::Point;
  out.point = 0.5 * ((pa + s * a.d()) + (pb + t * b.d()));
  return out;
}

}  // namespace rotquad::linegeom
