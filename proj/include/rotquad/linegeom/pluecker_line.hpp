#pragma once

#include <Eigen/Dense>

#include "rotquad/types.hpp"

namespace rotquad::linegeom {

using Vec6 = Eigen::Matrix<double, 6, 1>;

/// Oriented line in Pluecker coordinates: unit direction d, moment m = P x d.
class PlueckerLine {
 public:
  PlueckerLine() = default;
  /// Normalizes d and removes the component of m along d. Throws for a zero
  /// direction or a Pluecker residual d.m above tol relative to |d||m|.
  PlueckerLine(const Vec3& d, const Vec3& m, double tol = 1e-6);

  static PlueckerLine from_point_direction(const Vec3& point, const Vec3& dir);
  static PlueckerLine from_coords(const Vec6& dm, double tol = 1e-6);

  const Vec3& d() const { return d_; }
  const Vec3& m() const { return m_; }
  Vec6 coords() const;

  /// Point of the line closest to the origin.
  Vec3 foot() const { return d_.cross(m_); }
  Vec3 point_at(double s) const { return foot() + s * d_; }
  double distance_to(const Vec3& x) const;

  PlueckerLine reversed() const { return PlueckerLine(-d_, -m_); }
  /// Same carrier with the first nonzero direction coordinate positive.
  PlueckerLine canonical() const;

  /// Same carrier (orientation ignored), within tol relative to scale.
  bool same_carrier(const PlueckerLine& o, double tol = 1e-9) const;
  /// Same oriented line.
  bool same_oriented(const PlueckerLine& o, double tol = 1e-9) const;

 private:
  Vec3 d_ = Vec3::UnitX();
  Vec3 m_ = Vec3::Zero();
};

/// Reciprocal product d1.m2 + d2.m1; zero iff the lines are coplanar.
double reciprocal_product(const PlueckerLine& a, const PlueckerLine& b);

/// Oriented line from P towards Q. Throws when P == Q.
PlueckerLine line_through(const Vec3& p, const Vec3& q);

struct Meet {
  enum class Kind { Point, AtInfinity, Skew };
  Kind kind = Kind::Skew;
  Vec3 point = Vec3::Zero();      // Kind::Point
  Vec3 direction = Vec3::Zero();  // Kind::AtInfinity
  double distance = 0;            // common-perpendicular length
  /// Homogeneous (x, y, z, w); w = 0 at infinity.
  Vec4 homogeneous() const;
};

/// Common point of two lines, a point at infinity for parallel lines, or
/// Skew. Throws "coincident" for identical carriers.
Meet meet(const PlueckerLine& a, const PlueckerLine& b, double tol = 1e-9);

}  // namespace rotquad::linegeom
