#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "rotquad/construct/rotation_quadrilateral.hpp"
#include "rotquad/tolerance.hpp"

namespace rotquad::io {

using construct::RotationQuadrilateral;
using kinematics::Displacement;
using kinematics::Vec8;
using linegeom::PlueckerLine;

/// One position, stored either as rotation matrix and translation or as the
/// eight dual quaternion coordinates.
struct DisplacementEntry {
  enum class Form { Matrix, DualQuat };
  Form form = Form::Matrix;
  Displacement matrix;  // Form::Matrix
  Vec8 dq = Vec8::Zero();  // Form::DualQuat

  Displacement to_displacement() const;
  bool operator==(const DisplacementEntry& o) const;
};

struct QuadrilateralDoc {
  std::string version = "1.0";
  std::array<DisplacementEntry, 4> displacements;
  std::optional<std::uint64_t> seed;
  std::optional<double> scale;

  bool operator==(const QuadrilateralDoc& o) const;
};

/// Throws InvalidInput for malformed JSON, wrong shapes, non-finite numbers,
/// or an entry giving both or neither representation.
QuadrilateralDoc parse_quadrilateral_doc(const std::string& text);
std::string emit_quadrilateral_doc(const QuadrilateralDoc& doc);

QuadrilateralDoc doc_from_quadrilateral(const RotationQuadrilateral& q,
                                        std::optional<std::uint64_t> seed = {},
                                        std::optional<double> scale = {});
std::array<Displacement, 4> positions_of(const QuadrilateralDoc& doc);
RotationQuadrilateral quadrilateral_from_doc(const QuadrilateralDoc& doc, double tol = 1e-9);

/// Input of construct_v1.
struct V1Input {
  Displacement alpha;
  int index = 0;
  std::array<PlueckerLine, 3> axes;
  std::array<double, 2> angles{};
};

/// Input of construct_v2.
struct V2Input {
  Displacement alpha_i, alpha_i2;
  int index = 0;
  PlueckerLine r_i, r_i2;
};

V1Input parse_v1_input(const std::string& text);
V2Input parse_v2_input(const std::string& text);
std::string emit_v1_input(const V1Input& in);
std::string emit_v2_input(const V2Input& in);

/// The data determining q through positions i and i+2.
V2Input v2_input_from_quadrilateral(const RotationQuadrilateral& q, int i);

/// Tolerances from a config object: Tolerances::with_base of `base_override`
/// or else of its "tol" field, then any per-check fields present.
Tolerances parse_tolerances(const std::string& text,
                            std::optional<double> base_override = {});

}  // namespace rotquad::io
