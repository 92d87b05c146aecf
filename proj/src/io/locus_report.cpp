#include "rotquad/io/locus_report.hpp"

#include "json_util.hpp"

namespace rotquad::io {

using namespace detail;
using ojson = nlohmann::ordered_json;
using linegeom::PlueckerLine;

namespace {

ojson vec(const Vec3& v) { return ojson::array({v(0), v(1), v(2)}); }

ojson line(const PlueckerLine& l) {
  ojson a = ojson::array();
  for (int i = 0; i < 6; ++i) a.push_back(l.coords()(i));
  return a;
}

const char* kind_name(loci::LocusLine::Kind k) {
  return k == loci::LocusLine::Kind::Axis ? "axis" : "transversal";
}

ojson point_json(const loci::PointLocus& p, int samples) {
  ojson lines = ojson::array();
  for (const auto& l : p.lines)
    lines.push_back({{"kind", kind_name(l.kind)},
                     {"index", l.index},
                     {"pluecker", line(l.line)},
                     {"samples", samples},
                     {"max_residual", l.max_residual},
                     {"verified", l.verified}});
  return {{"reality", p.reality}, {"verified", p.verified}, {"lines", lines}};
}

ojson class_json(const loci::PlaneLocusClass& c) {
  ojson re = ojson::array(), im = ojson::array();
  for (const auto& z : c.coords) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return {{"direction", vec(c.normal_direction)},
          {"coords_real", re},
          {"coords_imag", im},
          {"reality", loci::to_string(c.reality)},
          {"classification", loci::to_string(c.kind)},
          {"index", c.index},
          {"match_angle", c.match_angle},
          {"multiplicity", c.multiplicity},
          {"image_rank", c.image_rank},
          {"residual_f", c.residual_f},
          {"residual_g", c.residual_g},
          {"valid", c.valid()}};
}

ojson plane_json(const LocusReport& r) {
  const auto& p = *r.plane;
  ojson valid = ojson::array(), spurious = ojson::array(), other = ojson::array();
  for (const auto& c : p.classes) {
    if (c.valid()) valid.push_back(class_json(c));
    else if (c.kind == loci::PlaneClassKind::Spurious) spurious.push_back(class_json(c));
    else other.push_back(class_json(c));
  }
  return {{"degree_f", r.plane_degree_f},
          {"degree_g", r.plane_degree_g},
          {"e0_nonlinearity", r.plane_e0_nonlinearity},
          {"total_multiplicity", p.total_multiplicity},
          {"valid_count", p.valid_count},
          {"valid", valid},
          {"spurious", spurious},
          {"other", other}};
}

ojson line_report_json(const loci::LineQuadReport& l) {
  ojson verts = ojson::array();
  for (const auto& v : l.vertices) verts.push_back(vec(v));
  ojson out{{"pluecker", line(l.line)},
            {"skew_ok", l.skew_ok},
            {"vertices", verts},
            {"agreement", ojson::array({l.agreement[0], l.agreement[1], l.agreement[2],
                                        l.agreement[3]})},
            {"orientation_ok", l.orientation_ok},
            {"revolution_found", l.revolution.has_value()},
            {"verdict", l.verdict},
            {"reason", l.reason}};
  if (l.revolution) {
    out["equal_sum_gap"] = l.revolution->equal_sum_gap;
    out["oriented_sum_gap"] = l.revolution->oriented_sum_gap;
  }
  return out;
}

ojson hyperboloid_json(const HyperboloidRecord& h) {
  ojson out{{"transversal", h.transversal}};
  if (!h.result) {
    out["error"] = h.error;
    return out;
  }
  const auto& t = *h.result;
  ojson coeffs = ojson::array();
  for (double c : t.revolution.quadric.coefficients()) coeffs.push_back(c);
  out["coefficients"] = coeffs;
  out["axis"] = line(t.revolution.axis);
  out["eigengap"] = t.revolution.eigengap;
  out["equal_sum_gap"] = t.equal_sum_gap;
  out["oriented_sum_gap"] = t.oriented_sum_gap;
  out["equal_sums"] = t.equal_sums;
  out["max_line_residual"] = t.max_line_residual;
  out["max_circle_residual"] = t.max_circle_residual;
  out["max_center_distance"] = t.max_center_distance;
  out["circles"] = static_cast<int>(t.circles.size());
  return out;
}

}  // namespace

LocusKind parse_locus_kind(const std::string& s) {
  if (s == "point") return LocusKind::Point;
  if (s == "plane") return LocusKind::Plane;
  if (s == "line") return LocusKind::Line;
  if (s == "all") return LocusKind::All;
  bad("unknown locus kind '" + s + "' (expected point, plane, line or all)");
}

const char* to_string(LocusKind k) noexcept {
  switch (k) {
    case LocusKind::Point: return "point";
    case LocusKind::Plane: return "plane";
    case LocusKind::Line: return "line";
    case LocusKind::All: return "all";
  }
  return "unknown";
}

LocusReport compute_locus_report(const construct::RotationQuadrilateral& q, LocusKind kind,
                                 const Tolerances& tol, int samples) {
  if (samples < 4) bad("at least 4 samples per locus line are needed");
  LocusReport r;
  r.kind = kind;
  r.tol = tol;
  r.samples = samples;
  if (q.transversals) {
    r.reality = q.transversals->reality;
    r.transversal_residual = q.transversals->residual;
  }
  r.transversals = q.real_transversals();
  const bool all = kind == LocusKind::All;

  if (all || kind == LocusKind::Point) r.point = loci::point_locus(q, tol.base, samples);
  if (all || kind == LocusKind::Plane) {
    const auto polys = loci::plane_locus_polynomials(q);
    r.plane_e0_nonlinearity = polys.e0_nonlinearity;
    r.plane_degree_f = polys.F.is_zero() ? -1 : polys.F.degree();
    r.plane_degree_g = polys.G.is_zero() ? -1 : polys.G.degree();
    r.plane = loci::plane_locus(q, tol.base, tol.angle, tol.imag, tol.indeterminate);
  }
  if (all || kind == LocusKind::Line) {
    r.line_computed = true;
    for (const auto& l : r.transversals)
      r.line_reports.push_back(loci::line_quadrilateral_check(q, l, tol.base));
    r.line_locus = loci::line_locus(q, tol.base);
  }
  if (all || kind == LocusKind::Point || kind == LocusKind::Line) {
    for (int k = 0; k < static_cast<int>(r.transversals.size()); ++k) {
      HyperboloidRecord h{k, std::nullopt, {}};
      try {
        h.result = loci::trajectory_hyperboloid(q, k, tol.base, 10, samples);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Degenerate) throw;
        h.error = e.what();
      }
      r.hyperboloids.push_back(std::move(h));
    }
  }
  return r;
}

std::string emit_locus_report(const LocusReport& r) {
  ojson j;
  j["schema_version"] = kLocusSchemaVersion;
  j["kind"] = to_string(r.kind);
  j["tolerances"] = {{"base", r.tol.base},         {"imag", r.tol.imag},
                     {"indeterminate", r.tol.indeterminate}, {"angle", r.tol.angle},
                     {"concyclic", r.tol.concyclic}, {"quadric", r.tol.quadric},
                     {"center", r.tol.center}};
  ojson tl = ojson::array();
  for (const auto& l : r.transversals) tl.push_back(line(l));
  j["transversals"] = {{"reality", linegeom::to_string(r.reality)},
                       {"real", r.reality != linegeom::Reality::ComplexPair},
                       {"residual", r.transversal_residual},
                       {"lines", tl}};
  if (r.point) j["point_locus"] = point_json(*r.point, r.samples);
  if (r.plane) j["plane_locus"] = plane_json(r);
  if (r.line_computed) {
    ojson reports = ojson::array(), accepted = ojson::array();
    for (const auto& l : r.line_reports) reports.push_back(line_report_json(l));
    for (const auto& l : r.line_locus) accepted.push_back(line(l));
    j["line_locus"] = {{"reality", r.reality != linegeom::Reality::ComplexPair},
                       {"lines", accepted},
                       {"reports", reports}};
  }
  if (r.point || r.line_computed) {
    ojson hs = ojson::array();
    for (const auto& h : r.hyperboloids) hs.push_back(hyperboloid_json(h));
    j["hyperboloids"] = hs;
  }
  return j.dump(2) + "\n";
}

}  // namespace rotquad::io
