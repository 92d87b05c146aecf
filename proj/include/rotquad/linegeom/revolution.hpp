#pragma once

#include <optional>
#include <utility>

#include "rotquad/linegeom/pluecker_line.hpp"
#include "rotquad/linegeom/quadric.hpp"
#include "rotquad/linegeom/skew_quad.hpp"

namespace rotquad::linegeom {

/// The plane-pair quadrics D1 = (plane(l0,l1) . plane(l2,l3)) and
/// D2 = (plane(l1,l2) . plane(l3,l0)), spanning the pencil through the
/// quad. Throws "pencil degenerate" for planar quads.
std::pair<Quadric, Quadric> quadric_pencil_through(const SkewQuad& sq);

struct RevolutionQuadric {
  Quadric quadric;
  PlueckerLine axis;
  double lambda = 0;  // member D2 + lambda D1
  // Eigengap of the repeated eigenvalue of the quadratic part, relative to it.
  double eigengap = 0;
  // Edge-length bookkeeping of the quad, divided by its scale.
  double equal_sum_gap = 0;     // |(a+c) - (b+d)|
  double signed_sum_gap = 0;    // min |a +- b +- c +- d|
  double oriented_sum_gap = 0;  // oriented lengths
};

/// The ruled quadric of revolution containing the quad, if the pencil has
/// one: a member whose quadratic part has a double eigenvalue, nondegenerate
/// with signature (2, 2). The axis passes through the center along the simple
/// eigenvector.
std::optional<RevolutionQuadric> revolution_member(const SkewQuad& sq,
                                                   double tol = 1e-9);

}  // namespace rotquad::linegeom
