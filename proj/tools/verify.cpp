#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>

#include <json.hpp>

#include "rotquad/construct/random_quadrilateral.hpp"
#include "rotquad/error.hpp"
#include "rotquad/io/locus_report.hpp"
#include "rotquad/loci/concyclicity.hpp"
#include "rotquad/loci/line_locus.hpp"
#include "rotquad/loci/plane_locus.hpp"
#include "rotquad/loci/point_locus.hpp"

namespace rotquad::tools {

using construct::RotationQuadrilateral;
using kinematics::DualQuaternion;
using linegeom::PlueckerLine;

namespace {

constexpr std::size_t kMaxFailures = 20;
constexpr int kOffLocusPoints = 100;
constexpr int kGenericLines = 200;

struct InvariantInfo {
  const char* name;
  bool informational;
};

// Report order.
constexpr InvariantInfo kInvariants[] = {
    {"pure_rotation", false},
    {"study_form", false},
    {"generic", false},
    {"v2_roundtrip", false},
    {"json_round_trip", false},
    {"determinism", false},
    {"point_locus", false},
    {"off_locus_points", false},
    {"line_polynomial_coplanarity", false},
    {"line_polynomial_concyclicity", false},
    {"hyperboloid_oriented_sums", false},
    {"hyperboloid_lines", false},
    {"hyperboloid_circles", false},
    {"hyperboloid_centers", false},
    {"plane_polynomials", false},
    {"plane_multiplicity", false},
    {"plane_valid_classes", false},
    {"plane_spurious_rank", false},
    {"spherical_directions", false},
    {"line_transversal_quads", false},
    {"line_locus_candidates", false},
    {"line_generic_rejected", false},
    {"unsigned_edge_sums", true},
    {"alternating_orientation", true},
};

class Recorder {
 public:
  Recorder(VerifySummary& s, std::string label) : s_(s), label_(std::move(label)) {
    if (s_.invariants.empty())
      for (const auto& sp : kInvariants) s_.invariants.push_back({sp.name, sp.informational, 0, 0, {}});
  }

  void operator()(const std::string& name, bool ok, const std::string& detail = {}) {
    auto it = std::find_if(s_.invariants.begin(), s_.invariants.end(),
                           [&](const InvariantTally& t) { return t.name == name; });
    if (it == s_.invariants.end()) fail(ErrorKind::Internal, "unknown invariant " + name);
    if (ok) {
      ++it->passed;
      return;
    }
    ++it->failed;
    if (it->failures.size() < kMaxFailures)
      it->failures.push_back(label_ + (detail.empty() ? "" : ": " + detail));
  }

  // Runs a check; an exception counts as a failure of `name`.
  void guarded(const std::string& name, const std::function<void()>& check) {
    try {
      check();
    } catch (const std::exception& e) {
      (*this)(name, false, e.what());
    }
  }

 private:
  VerifySummary& s_;
  std::string label_;
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : g_(seed) {}
  double sym() { return static_cast<double>(g_() >> 11) * 0x1.0p-53 * 2 - 1; }
  Vec3 vec(double s) {
    const double a = sym(), b = sym(), c = sym();
    return s * Vec3(a, b, c);
  }
  Vec3 dir() {
    for (;;) {
      const Vec3 v = vec(1);
      if (v.norm() > 0.1 && v.norm() <= 1) return v.normalized();
    }
  }

 private:
  std::mt19937_64 g_;
};

double displacement_gap(const kinematics::Displacement& a, const kinematics::Displacement& b,
                        double scale) {
  return std::max((a.rotation - b.rotation).cwiseAbs().maxCoeff(),
                  (a.translation - b.translation).cwiseAbs().maxCoeff() / scale);
}

// Pure-rotation test of tau_{k,k+1} straight from the positions, so that a
// corrupted document is reported by invariant rather than as a parse error.
bool check_relative_rotations(const std::array<kinematics::Displacement, 4>& pos,
                              double tol, Recorder& rec) {
  bool ok = true;
  for (int k = 0; k < 4; ++k) {
    const DualQuaternion a = kinematics::dq_from_displacement(pos[k]);
    const DualQuaternion b = kinematics::dq_from_displacement(pos[(k + 1) % 4]);
    const DualQuaternion tau = (b * a.conj()).normalized();
    const std::string pair = std::to_string(k) + "," + std::to_string((k + 1) % 4);
    if (tau.primal().v.norm() <= tol) {
      rec("pure_rotation", false, "pure_rotation[" + pair + "]: relative displacement is a translation or the identity");
      ok = false;
      continue;
    }
    const double ds = std::abs(tau.dual().w) / std::max(1.0, std::sqrt(tau.dual().squared_norm()));
    if (ds > tol) {
      rec("pure_rotation", false, "pure_rotation[" + pair + "]: dual scalar " + num(ds));
      ok = false;
    }
  }
  return ok;
}

void check_construction(const RotationQuadrilateral& q, const Tolerances& tol, double scale,
                        Recorder& rec) {
  const auto rep = construct::check_invariants(q, tol.base);
  const bool rot = std::all_of(rep.pure_rotation.begin(), rep.pure_rotation.end(),
                               [](bool b) { return b; });
  rec("pure_rotation", rot, rep.first_failure);
  const double sf = *std::max_element(rep.study_form.begin(), rep.study_form.end());
  rec("study_form", sf <= tol.base, "study form " + num(sf));
  rec("generic", rep.generic, rep.first_failure);

  rec.guarded("v2_roundtrip", [&] {
    double worst = 0;
    for (int i = 0; i < 4; ++i) {
      const auto v2 = construct::construct_v2(q.displacements[i], q.displacements[(i + 2) % 4], i,
                                              q.rel_axes_moving[i], q.rel_axes_moving[(i + 2) % 4],
                                              tol.base);
      for (int k = 0; k < 4; ++k)
        worst = std::max(worst, displacement_gap(v2.displacements[k], q.displacements[k], scale));
    }
    rec("v2_roundtrip", worst <= tol.base, "max deviation " + num(worst));
  });
}

double distance_to_locus(const loci::PointLocus& pl, const Vec3& x) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& l : pl.lines) d = std::min(d, l.line.distance_to(x));
  return d;
}

void check_point_locus(const RotationQuadrilateral& q, const Tolerances& tol, double scale,
                       const std::string& label, Recorder& rec) {
  rec.guarded("point_locus", [&] {
    const auto pl = loci::point_locus(q, tol.base, 20, scale);
    double worst = 0;
    for (const auto& l : pl.lines) worst = std::max(worst, l.max_residual);
    rec("point_locus", pl.verified && worst <= tol.concyclic * scale,
        "worst residual " + num(worst / scale) + " x scale");

    rec.guarded("off_locus_points", [&] {
      Sampler s(fnv1a(label) ^ 0x0ff10c05ULL);
      int bad = 0, tried = 0;
      double lowest = std::numeric_limits<double>::infinity();
      while (tried < kOffLocusPoints) {
        const Vec3 x = s.vec(1.5 * scale);
        if (distance_to_locus(pl, x) < 1e-3 * scale) continue;
        ++tried;
        const auto c = loci::point_concyclicity(q, x, tol.base);
        lowest = std::min(lowest, c.residual);
        if (c.concyclic || c.residual < 1e-4 * scale) ++bad;
      }
      rec("off_locus_points", bad == 0,
          std::to_string(bad) + " points pass, lowest residual " + num(lowest / scale) + " x scale");
    });
  });

  const auto pos = q.displacements;
  const auto lines = q.real_transversals();
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const std::string which = "transversal " + std::to_string(k);
    rec.guarded("line_polynomial_coplanarity", [&] {
      const auto r = loci::line_polynomials(pos, lines[k], scale, tol.base);
      rec("line_polynomial_coplanarity", r.coplanar_everywhere,
          which + ": relative " + num(r.coplanarity_relative));
      rec("line_polynomial_concyclicity", r.concyclic_everywhere,
          which + ": relative " + num(r.circularity_relative));
    });
    rec.guarded("hyperboloid_lines", [&] {
      const auto h = loci::trajectory_hyperboloid(q, static_cast<int>(k), tol.base, 10, 20);
      rec("hyperboloid_oriented_sums", h.oriented_sum_gap <= tol.base,
          which + ": gap " + num(h.oriented_sum_gap) + " x scale");
      rec("hyperboloid_lines", h.max_line_residual <= tol.quadric,
          which + ": residual " + num(h.max_line_residual));
      rec("hyperboloid_circles", h.max_circle_residual <= tol.quadric,
          which + ": residual " + num(h.max_circle_residual));
      rec("hyperboloid_centers", h.max_center_distance <= tol.center,
          which + ": distance " + num(h.max_center_distance) + " x scale");
      rec("unsigned_edge_sums", h.equal_sums, which + ": gap " + num(h.equal_sum_gap) + " x scale");
    });
  }
}

void check_plane_locus(const RotationQuadrilateral& q, const Tolerances& tol, Recorder& rec) {
  rec.guarded("plane_polynomials", [&] {
    const auto p = loci::plane_locus_polynomials(q);
    const bool ok = !p.degenerate && p.e0_nonlinearity <= 1e-3 * tol.base &&
                    p.F.degree() == 4 && p.G.degree() == 3;
    rec("plane_polynomials", ok, "e0 nonlinearity " + num(p.e0_nonlinearity));
  });
  rec.guarded("plane_multiplicity", [&] {
    const auto pl = loci::plane_locus(q, tol.base, tol.angle, tol.imag, tol.indeterminate);
    rec("plane_multiplicity", pl.total_multiplicity == 12,
        "total multiplicity " + std::to_string(pl.total_multiplicity));
    if (q.transversals && q.transversals->reality == linegeom::Reality::RealDistinct)
      rec("plane_valid_classes", pl.valid_count == 6,
          std::to_string(pl.valid_count) + " valid classes");
    int worst = 0;
    for (const auto& c : pl.classes)
      if (c.kind == loci::PlaneClassKind::Spurious) worst = std::max(worst, c.image_rank);
    rec("plane_spurious_rank", worst <= 2, "spurious image rank " + std::to_string(worst));
  });
  rec.guarded("spherical_directions", [&] {
    std::array<Mat3, 4> rot;
    for (int k = 0; k < 4; ++k) rot[k] = q.displacements[k].rotation;
    const auto s = loci::spherical_coplanar_directions(rot, tol.base);
    double worst = 0;
    for (const auto& r : s.spurious) worst = std::max(worst, r.pair_residual);
    const bool ok = s.total_multiplicity == 9 && s.valid.size() <= 6 && worst <= tol.angle;
    rec("spherical_directions", ok,
        "multiplicity " + std::to_string(s.total_multiplicity) + ", " +
            std::to_string(s.valid.size()) + " valid, pair residual " + num(worst));
  });
}

void check_line_locus(const RotationQuadrilateral& q, const Tolerances& tol, double scale,
                      const std::string& label, Recorder& rec) {
  const auto lines = q.real_transversals();
  for (std::size_t k = 0; k < lines.size(); ++k) {
    rec.guarded("line_transversal_quads", [&] {
      const auto r = loci::line_quadrilateral_check(q, lines[k], tol.base);
      const std::string which = "transversal " + std::to_string(k);
      rec("line_transversal_quads", r.skew_ok && r.revolution.has_value(),
          which + ": " + r.reason);
      rec("alternating_orientation", r.orientation_ok, which + ": " + r.reason);
    });
  }
  rec.guarded("line_locus_candidates", [&] {
    bool ok = true;
    for (const auto& l : loci::line_locus(q, tol.base))
      ok = ok && std::any_of(lines.begin(), lines.end(), [&](const PlueckerLine& t) {
             return t.same_carrier(l, 1e3 * tol.base);
           });
    rec("line_locus_candidates", ok, "a returned line is not a transversal");
  });
  rec.guarded("line_generic_rejected", [&] {
    Sampler s(fnv1a(label) ^ 0x11e5ULL);
    int accepted = 0;
    for (int k = 0; k < kGenericLines; ++k) {
      const auto l = PlueckerLine::from_point_direction(s.vec(scale), s.dir());
      if (loci::line_quadrilateral_check(q, l, tol.base).verdict) ++accepted;
    }
    rec("line_generic_rejected", accepted == 0, std::to_string(accepted) + " generic lines accepted");
  });
}

}  // namespace

bool VerifySummary::ok() const {
  return std::all_of(invariants.begin(), invariants.end(), [](const InvariantTally& t) {
    return t.informational || t.failed == 0;
  });
}

void verify_doc(const io::QuadrilateralDoc& doc, const std::string& label,
                const Tolerances& tol, VerifySummary& out) {
  Recorder rec(out, label);
  ++out.cases;
  const double scale = doc.scale.value_or(1.0);

  rec.guarded("json_round_trip", [&] {
    rec("json_round_trip", io::parse_quadrilateral_doc(io::emit_quadrilateral_doc(doc)) == doc,
        "document changed on a write/read cycle");
  });

  const auto pos = io::positions_of(doc);
  bool rotations_ok = false;
  rec.guarded("pure_rotation", [&] { rotations_ok = check_relative_rotations(pos, tol.base, rec); });
  if (!rotations_ok) return;

  std::optional<RotationQuadrilateral> q;
  rec.guarded("generic", [&] { q = construct::from_positions(pos, tol.base); });
  if (!q) return;

  check_construction(*q, tol, scale, rec);
  check_point_locus(*q, tol, scale, label, rec);
  check_plane_locus(*q, tol, rec);
  check_line_locus(*q, tol, scale, label, rec);
}

VerifySummary verify_random(std::uint64_t first, int count, double scale,
                            const Tolerances& tol) {
  if (count < 1) fail(ErrorKind::InvalidInput, "--random-count must be positive");
  if (!(scale > 0)) fail(ErrorKind::InvalidInput, "--scale must be positive");
  VerifySummary s;
  for (int k = 0; k < count; ++k) {
    const std::uint64_t seed = first + static_cast<std::uint64_t>(k);
    const std::string label = "seed " + std::to_string(seed);
    const auto q = construct::random_rotation_quadrilateral(seed, scale);
    const auto doc = io::doc_from_quadrilateral(q, seed, scale);
    {
      Recorder rec(s, label);
      rec.guarded("determinism", [&] {
        const auto again = construct::random_rotation_quadrilateral(seed, scale);
        const bool same_doc = io::emit_quadrilateral_doc(io::doc_from_quadrilateral(again, seed, scale)) ==
                              io::emit_quadrilateral_doc(doc);
        const auto r1 = io::emit_locus_report(io::compute_locus_report(q, io::LocusKind::Plane, tol));
        const auto r2 = io::emit_locus_report(io::compute_locus_report(again, io::LocusKind::Plane, tol));
        rec("determinism", same_doc && r1 == r2, "repeated run differs");
      });
    }
    verify_doc(doc, label, tol, s);
  }
  return s;
}

std::string emit_summary(const VerifySummary& s, const Tolerances& tol,
                         const std::string& mode) {
  using ojson = nlohmann::ordered_json;
  ojson j;
  j["mode"] = mode;
  j["cases"] = s.cases;
  j["ok"] = s.ok();
  j["tolerances"] = {{"base", tol.base},   {"imag", tol.imag},
                     {"indeterminate", tol.indeterminate},
                     {"angle", tol.angle}, {"concyclic", tol.concyclic},
                     {"quadric", tol.quadric}, {"center", tol.center}};
  ojson inv = ojson::array();
  for (const auto& t : s.invariants) {
    if (t.passed + t.failed == 0) continue;
    inv.push_back({{"name", t.name},
                   {"informational", t.informational},
                   {"passed", t.passed},
                   {"failed", t.failed},
                   {"failures", t.failures}});
  }
  j["invariants"] = inv;
  return j.dump(2) + "\n";
}

}  // namespace rotquad::tools
