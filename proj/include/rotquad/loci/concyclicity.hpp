#pragma once

#include <array>
#include <optional>

#include "rotquad/algebra/poly1.hpp"
#include "rotquad/construct/rotation_quadrilateral.hpp"
#include "rotquad/kinematics/rigid_actions.hpp"
#include "rotquad/linegeom/pluecker_line.hpp"

namespace rotquad::loci {

using construct::RotationQuadrilateral;
using kinematics::Displacement;
using kinematics::HomPlane;
using linegeom::PlueckerLine;

/// A circle, or a straight line as a circle of infinite radius.
struct Circle3D {
  enum class Kind { Circle, Line };
  Kind kind = Kind::Circle;
  Vec3 center = Vec3::Zero();
  double radius = 0;
  HomPlane plane;
  PlueckerLine carrier;  // Kind::Line

  /// Point at angle s on the circle (arc-length-like parameter on a line).
  Vec3 point(double s) const;
  /// Distance from x to the circle or line.
  double distance_to(const Vec3& x) const;
};

/// X_i = alpha_i(X).
std::array<Vec3, 4> homologous_points(const RotationQuadrilateral& q, const Vec3& x);

/// det [1 1 1 1; x0 x1 x2 x3] divided by the cube of the point spread.
double coplanarity_residual(const std::array<Vec3, 4>& pts);

struct Concyclicity {
  bool concyclic = false;
  // Some pair of points coincides; the test then holds trivially.
  bool degenerate = false;
  // Relative defect: max of the smallest-to-largest singular value ratio of
  // the normalized bisector matrix and the coplanarity residual.
  double relative = 0;
  // relative times the spread, a length.
  double residual = 0;
  double spread = 0;  // largest distance of a point from the centroid
  std::optional<Circle3D> circle;
};

/// Rank test on the bisector planes of the consecutive pairs (01), (12), (23)
/// together with coplanarity.
Concyclicity concyclicity_check(const std::array<Vec3, 4>& pts, double tol = 1e-9);

/// Circumcircle of three points; a line when they are collinear.
Circle3D circle_through(const Vec3& a, const Vec3& b, const Vec3& c, double tol = 1e-9);

/// Polynomial structure along a line l = { p + t d } under four affine
/// displacements: the coplanarity determinant (cubic in t) and the
/// circularity combination of squared norms weighted by the dependency
/// coefficients of the difference vectors.
struct LinePolynomialReport {
  algebra::Poly1 coplanarity;
  algebra::Poly1 circularity;
  // Largest coefficient (in the unit parameter t / tscale) relative to the
  // largest sampled magnitude bound.
  double coplanarity_relative = 0;
  double circularity_relative = 0;
  bool coplanar_everywhere = false;
  bool concyclic_everywhere = false;
  // Numeric degree of the circularity polynomial, -1 when it vanishes.
  int circularity_degree = -1;
  double tscale = 1;
};

LinePolynomialReport line_polynomials(const std::array<Displacement, 4>& positions,
                           const PlueckerLine& line, double tscale = 1.0,
                           double tol = 1e-9);

}  // namespace rotquad::loci
