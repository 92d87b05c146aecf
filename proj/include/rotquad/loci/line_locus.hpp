#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "rotquad/construct/rotation_quadrilateral.hpp"
#include "rotquad/linegeom/revolution.hpp"

namespace rotquad::loci {

using construct::RotationQuadrilateral;
using linegeom::PlueckerLine;

struct LineQuadReport {
  PlueckerLine line;
  std::array<PlueckerLine, 4> images;
  std::array<Vec3, 4> vertices{};  // L_{i,i+1} = l_i meet l_{i+1}
  bool skew_ok = false;
  // agreement[i]: +1 when walking edge l_i from L_{i-1,i} to L_{i,i+1}
  // follows the orientation of l_i, -1 otherwise.
  std::array<int, 4> agreement{};
  bool orientation_ok = false;  // agreement alternates around the cycle
  std::optional<linegeom::RevolutionQuadric> revolution;
  bool verdict = false;
  std::string reason;  // first failed condition; empty when verdict holds
};

/// Do the homologous images of an oriented moving-frame line form a skew
/// quadrilateral on a hyperboloid of revolution, followed in the line's
/// orientation on every second edge only?
LineQuadReport line_quadrilateral_check(const RotationQuadrilateral& q,
                                        const PlueckerLine& line, double tol = 1e-9);

/// The real transversals of the relative axes that pass the check above.
std::vector<PlueckerLine> line_locus(const RotationQuadrilateral& q, double tol = 1e-9);

}  // namespace rotquad::loci
