#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rotquad/construct/rotation_quadrilateral.hpp"
#include "rotquad/linegeom/transversals.hpp"
#include "rotquad/loci/line_locus.hpp"
#include "rotquad/loci/plane_locus.hpp"
#include "rotquad/loci/point_locus.hpp"
#include "rotquad/tolerance.hpp"

namespace rotquad::io {

inline constexpr const char* kLocusSchemaVersion = "1.0";

enum class LocusKind { Point, Plane, Line, All };

/// "point", "plane", "line" or "all"; anything else is InvalidInput.
LocusKind parse_locus_kind(const std::string& s);
const char* to_string(LocusKind k) noexcept;

struct HyperboloidRecord {
  int transversal = 0;
  std::optional<loci::TrajectoryHyperboloid> result;
  std::string error;  // why there is no result
};

struct LocusReport {
  LocusKind kind = LocusKind::All;
  Tolerances tol;
  int samples = 20;
  linegeom::Reality reality = linegeom::Reality::ComplexPair;
  std::vector<linegeom::PlueckerLine> transversals;  // real ones
  double transversal_residual = 0;

  std::optional<loci::PointLocus> point;
  std::optional<loci::PlaneLocus> plane;
  double plane_e0_nonlinearity = 0;
  int plane_degree_f = -1, plane_degree_g = -1;
  // Line locus: the check for every real transversal, and the accepted ones.
  std::vector<loci::LineQuadReport> line_reports;
  std::vector<linegeom::PlueckerLine> line_locus;
  bool line_computed = false;
  std::vector<HyperboloidRecord> hyperboloids;
};

/// Runs the requested loci. Trajectory hyperboloids are part of the point and
/// line kinds.
LocusReport compute_locus_report(const construct::RotationQuadrilateral& q, LocusKind kind,
                                 const Tolerances& tol = {}, int samples = 20);

std::string emit_locus_report(const LocusReport& r);

}  // namespace rotquad::io
