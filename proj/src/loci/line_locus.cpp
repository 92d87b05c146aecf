#include "rotquad/loci/line_locus.hpp"

#include "rotquad/error.hpp"
#include "rotquad/kinematics/rigid_actions.hpp"
#include "rotquad/linegeom/skew_quad.hpp"

namespace rotquad::loci {

LineQuadReport line_quadrilateral_check(const RotationQuadrilateral& q,
                                        const PlueckerLine& line, double tol) {
  LineQuadReport r;
  r.line = line;
  for (int k = 0; k < 4; ++k) r.images[k] = kinematics::act_on_line(q.displacements[k], line);
  for (int k = 0; k < 4; ++k) {
    const auto& a = r.images[k];
    const auto& b = r.images[(k + 1) % 4];
    if (a.same_carrier(b, 1e3 * tol)) {
      r.reason = "coincident images";
      return r;
    }
  }
  linegeom::SkewQuad sq;
  try {
    sq = linegeom::skew_quad_from_lines(r.images, tol);
  } catch (const Error& e) {
    r.reason = e.kind() == ErrorKind::InvalidInput ? "consecutive images skew"
                                                   : std::string(e.what());
    return r;
  }
  r.vertices = sq.vertices;
  if (sq.planar) {
    r.reason = "planar image quadrilateral";
    return r;
  }
  r.skew_ok = true;
  for (int i = 0; i < 4; ++i) {
    const Vec3 walk = sq.vertices[i] - sq.vertices[(i + 3) % 4];
    r.agreement[i] = walk.dot(r.images[i].d()) >= 0 ? 1 : -1;
  }
  r.orientation_ok = true;
  for (int i = 0; i < 4; ++i)
    r.orientation_ok = r.orientation_ok && r.agreement[i] == -r.agreement[(i + 1) % 4];
  r.revolution = linegeom::revolution_member(sq, tol);
  if (!r.orientation_ok) {
    r.reason = "orientation not alternating";
  } else if (!r.revolution) {
    r.reason = "no quadric of revolution";
  } else {
    r.verdict = true;
  }
  return r;
}

std::vector<PlueckerLine> line_locus(const RotationQuadrilateral& q, double tol) {
  std::vector<PlueckerLine> out;
  for (const auto& t : q.real_transversals())
    if (line_quadrilateral_check(q, t, tol).verdict) out.push_back(t);
  return out;
}

}  // namespace rotquad::loci
