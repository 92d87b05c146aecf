#pragma once

#include <array>
#include <optional>
#include <vector>

#include "rotquad/linegeom/quadric.hpp"
#include "rotquad/linegeom/revolution.hpp"
#include "rotquad/loci/concyclicity.hpp"

namespace rotquad::loci {

struct LocusLine {
  enum class Kind { Axis, Transversal };
  Kind kind = Kind::Axis;
  int index = 0;  // axis r_{i,i+1}, or transversal 0 (u) / 1 (v)
  PlueckerLine line;
  double max_residual = 0;  // worst concyclicity residual over the samples
  bool verified = false;
};

/// Moving-frame points whose four homologous images are concyclic.
struct PointLocus {
  std::array<PlueckerLine, 4> axis_lines;
  std::vector<PlueckerLine> transversal_lines;
  bool reality = false;  // both transversals real
  std::vector<LocusLine> lines;
  bool verified = false;
};

/// Concyclicity of the homologous images of x.
Concyclicity point_concyclicity(const RotationQuadrilateral& q, const Vec3& x,
                                double tol = 1e-9);

/// The relative axes and their real transversals, each checked at `samples`
/// points spread over `extent` around its foot.
PointLocus point_locus(const RotationQuadrilateral& q, double tol = 1e-9,
                       int samples = 20, double extent = 1.0);

struct TrajectoryCircle {
  Vec3 moving_point = Vec3::Zero();
  std::array<Vec3, 4> images;
  Concyclicity check;
  double center_axis_distance = 0;
  double max_quadric_residual = 0;  // over the images and the circle samples
};

/// Ruled quadric of revolution through the images of a real transversal and
/// the trajectory circles of its points.
struct TrajectoryHyperboloid {
  linegeom::SkewQuad quad;
  linegeom::RevolutionQuadric revolution;
  // Edge bookkeeping of the image quad, divided by its scale.
  double equal_sum_gap = 0;
  double oriented_sum_gap = 0;
  bool equal_sums = false;  // unsigned opposite sums agree within tol
  double max_line_residual = 0;
  double max_circle_residual = 0;
  double max_center_distance = 0;  // divided by the quad scale
  std::vector<TrajectoryCircle> circles;
};

/// `which` selects transversal 0 (u) or 1 (v). Throws InvalidInput when that
/// transversal is not real and Degenerate when the image quad is.
TrajectoryHyperboloid trajectory_hyperboloid(const RotationQuadrilateral& q, int which,
                                             double tol = 1e-9, int points = 10,
                                             int circle_samples = 20);

}  // namespace rotquad::loci
