#pragma once

#include <array>

#include "rotquad/linegeom/pluecker_line.hpp"

namespace rotquad::linegeom {

/// Four lines in cyclic order with vertices[i] = lines[i] meet lines[i+1].
struct SkewQuad {
  std::array<PlueckerLine, 4> lines;
  std::array<Vec3, 4> vertices;
  bool planar = false;
  // Largest vertex distance from the vertex centroid; the length unit of
  // every relative tolerance on this quad.
  double scale = 1;
};

/// Throws when a consecutive pair is skew or parallel, naming the pair.
SkewQuad skew_quad_from_lines(const std::array<PlueckerLine, 4>& lines,
                              double tol = 1e-9);

/// Edge lengths a..d of the edges on lines 0..3, their opposite sums, and the
/// same lengths signed by each line's orientation.
struct EdgeSums {
  std::array<double, 4> lengths{};  // a, b, c, d
  double sum_ac = 0;
  double sum_bd = 0;
  // a = d0.(U01 - U30), b = d1.(U01 - U12), c = d2.(U23 - U12), d = d3.(U23 - U30)
  std::array<double, 4> oriented{};
  double oriented_ac = 0;
  double oriented_bd = 0;

  double gap() const { return std::abs(sum_ac - sum_bd); }
  double oriented_gap() const { return std::abs(oriented_ac - oriented_bd); }
  /// min over sign patterns of |a +- b +- c +- d|.
  double best_signed_gap() const;
};

/// Throws for a planar quad with a vertex at infinity (not representable).
EdgeSums opposite_edge_sums(const SkewQuad& sq);

}  // namespace rotquad::linegeom
