#include "rotquad/linegeom/skew_quad.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rotquad/error.hpp"

namespace rotquad::linegeom {

SkewQuad skew_quad_from_lines(const std::array<PlueckerLine, 4>& lines, double tol) {
  SkewQuad sq;
  sq.lines = lines;
  for (int i = 0; i < 4; ++i) {
    const int j = (i + 1) % 4;
    const std::string pair = std::to_string(i) + " and " + std::to_string(j);
    Meet mt;
    try {
      mt = meet(lines[i], lines[j], tol);
    } catch (const Error&) {
      fail(ErrorKind::Degenerate, "consecutive lines " + pair + " coincide");
    }
    if (mt.kind == Meet::Kind::Skew)
      fail(ErrorKind::InvalidInput, "consecutive lines " + pair + " are skew");
    if (mt.kind == Meet::Kind::AtInfinity)
      fail(ErrorKind::Degenerate, "consecutive lines " + pair + " are parallel");
    sq.vertices[i] = mt.point;
  }
  Vec3 c = Vec3::Zero();
  for (const auto& v : sq.vertices) c += v / 4;
  sq.scale = 0;
  for (const auto& v : sq.vertices) sq.scale = std::max(sq.scale, (v - c).norm());
  if (sq.scale <= 0) sq.scale = 1;
  const double vol = (sq.vertices[1] - sq.vertices[0])
                         .cross(sq.vertices[2] - sq.vertices[0])
                         .dot(sq.vertices[3] - sq.vertices[0]);
  sq.planar = std::abs(vol) <= tol * std::pow(sq.scale, 3);
  return sq;
}

double EdgeSums::best_signed_gap() const {
  const auto& l = lengths;
  double best = std::abs(l[0] + l[1] + l[2] + l[3]);
  for (int mask = 1; mask < 8; ++mask) {
    const double s = l[0] + (mask & 1 ? -l[1] : l[1]) + (mask & 2 ? -l[2] : l[2]) +
                     (mask & 4 ? -l[3] : l[3]);
    best = std::min(best, std::abs(s));
  }
  return best;
}

EdgeSums opposite_edge_sums(const SkewQuad& sq) {
  for (const auto& v : sq.vertices)
    if (!v.allFinite()) fail(ErrorKind::Degenerate, "quadrilateral has a vertex at infinity");
  const Vec3 &u01 = sq.vertices[0], &u12 = sq.vertices[1], &u23 = sq.vertices[2],
             &u30 = sq.vertices[3];
  EdgeSums e;
  e.lengths = {(u01 - u30).norm(), (u01 - u12).norm(), (u23 - u12).norm(),
               (u23 - u30).norm()};
  e.sum_ac = e.lengths[0] + e.lengths[2];
  e.sum_bd = e.lengths[1] + e.lengths[3];
  e.oriented = {sq.lines[0].d().dot(u01 - u30), sq.lines[1].d().dot(u01 - u12),
                sq.lines[2].d().dot(u23 - u12), sq.lines[3].d().dot(u23 - u30)};
  e.oriented_ac = e.oriented[0] + e.oriented[2];
  e.oriented_bd = e.oriented[1] + e.oriented[3];
  return e;
}

}  // namespace rotquad::linegeom
