#include "rotquad/loci/point_locus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rotquad/error.hpp"

namespace rotquad::loci {

namespace {

LocusLine verify_line(const RotationQuadrilateral& q, const PlueckerLine& line,
                      LocusLine::Kind kind, int index, double tol, int samples,
                      double extent) {
  LocusLine out{kind, index, line, 0, true};
  for (int s = 0; s < samples; ++s) {
    const double t = samples > 1 ? extent * (-1.0 + 2.0 * s / (samples - 1)) : 0.0;
    const Concyclicity c = point_concyclicity(q, line.point_at(t), tol);
    out.max_residual = std::max(out.max_residual, c.residual);
    out.verified = out.verified && c.concyclic;
  }
  return out;
}

}  // namespace

Concyclicity point_concyclicity(const RotationQuadrilateral& q, const Vec3& x,
                                double tol) {
  return concyclicity_check(homologous_points(q, x), tol);
}

PointLocus point_locus(const RotationQuadrilateral& q, double tol, int samples,
                       double extent) {
  PointLocus loc;
  loc.axis_lines = q.rel_axes_moving;
  loc.transversal_lines = q.real_transversals();
  loc.reality = loc.transversal_lines.size() == 2;
  loc.verified = true;
  for (int i = 0; i < 4; ++i) {
    loc.lines.push_back(verify_line(q, loc.axis_lines[i], LocusLine::Kind::Axis, i, tol,
                                    samples, extent));
  }
  for (std::size_t j = 0; j < loc.transversal_lines.size(); ++j) {
    loc.lines.push_back(verify_line(q, loc.transversal_lines[j],
                                    LocusLine::Kind::Transversal, static_cast<int>(j), tol,
                                    samples, extent));
  }
  for (const auto& l : loc.lines) loc.verified = loc.verified && l.verified;
  return loc;
}

TrajectoryHyperboloid trajectory_hyperboloid(const RotationQuadrilateral& q, int which,
                                             double tol, int points, int circle_samples) {
  const auto lines = q.real_transversals();
  if (which < 0 || which >= static_cast<int>(lines.size()))
    fail(ErrorKind::InvalidInput, "requested transversal is not real");
  const PlueckerLine& u = lines[which];
  std::array<PlueckerLine, 4> images;
  for (int k = 0; k < 4; ++k) images[k] = kinematics::act_on_line(q.displacements[k], u);

  TrajectoryHyperboloid out;
  out.quad = linegeom::skew_quad_from_lines(images, tol);
  if (out.quad.planar) fail(ErrorKind::Degenerate, "image quadrilateral is planar");
  const auto sums = linegeom::opposite_edge_sums(out.quad);
  out.equal_sum_gap = sums.gap() / out.quad.scale;
  out.oriented_sum_gap = sums.oriented_gap() / out.quad.scale;
  out.equal_sums = out.equal_sum_gap <= tol;
  const auto rev = linegeom::revolution_member(out.quad, tol);
  if (!rev) fail(ErrorKind::Degenerate, "no quadric of revolution through the image quadrilateral");
  out.revolution = *rev;
  const linegeom::Quadric& Q = rev->quadric;
  const double scale = out.quad.scale;

  Vec3 centroid = Vec3::Zero();
  for (const auto& v : out.quad.vertices) centroid += v / 4;
  for (const auto& l : images) {
    for (int s = 0; s < 5; ++s) {
      const Vec3 x = l.point_at(l.d().dot(centroid) + scale * (-1.0 + 0.5 * s));
      out.max_line_residual = std::max(out.max_line_residual, std::abs(Q.eval(x)));
    }
  }

  // Points of u are spread over the span of its feet on the four axes.
  std::vector<double> params;
  for (const auto& a : q.rel_axes_moving) {
    const auto m = linegeom::meet(u, a, 1e-6);
    if (m.kind == linegeom::Meet::Kind::Point) params.push_back(u.d().dot(m.point));
  }
  double lo = -scale, hi = scale;
  if (params.size() >= 2) {
    lo = *std::min_element(params.begin(), params.end());
    hi = *std::max_element(params.begin(), params.end());
    const double pad = 0.25 * std::max(hi - lo, 1e-3);
    lo -= pad;
    hi += pad;
  }
  for (int p = 0; p < points; ++p) {
    // Irregular offsets keep samples away from the feet on the axes, where the
    // images coincide pairwise.
    const double f = (p + 0.37) / points;
    TrajectoryCircle tc;
    tc.moving_point = u.point_at(lo + (hi - lo) * f);
    tc.images = homologous_points(q, tc.moving_point);
    tc.check = concyclicity_check(tc.images, tol);
    for (const auto& x : tc.images)
      tc.max_quadric_residual = std::max(tc.max_quadric_residual, std::abs(Q.eval(x)));
    if (tc.check.circle && tc.check.circle->kind == Circle3D::Kind::Circle) {
      const Circle3D& c = *tc.check.circle;
      tc.center_axis_distance = rev->axis.distance_to(c.center) / scale;
      for (int s = 0; s < circle_samples; ++s) {
        const Vec3 x = c.point(2 * std::numbers::pi * s / circle_samples);
        tc.max_quadric_residual = std::max(tc.max_quadric_residual, std::abs(Q.eval(x)));
      }
    }
    out.max_circle_residual = std::max(out.max_circle_residual, tc.max_quadric_residual);
    out.max_center_distance = std::max(out.max_center_distance, tc.center_axis_distance);
    out.circles.push_back(tc);
  }
  return out;
}

}  // namespace rotquad::loci
