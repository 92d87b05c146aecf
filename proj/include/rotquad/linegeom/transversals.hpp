#pragma once

#include <array>
#include <complex>
#include <vector>

#include "rotquad/linegeom/pluecker_line.hpp"

namespace rotquad::linegeom {

enum class Reality { RealDistinct, RealDouble, ComplexPair };

const char* to_string(Reality r) noexcept;

using CVec6 = Eigen::Matrix<std::complex<double>, 6, 1>;

struct Transversals {
  Reality reality = Reality::ComplexPair;
  // Real lines, canonically oriented: two, one (double), or none.
  std::vector<PlueckerLine> lines;
  // Both solutions as homogeneous (d, m) vectors, complex in general.
  std::array<CVec6, 2> coords{};
  // Largest |reciprocal product| of a real transversal with an input line.
  double residual = 0;
};

/// The common transversals of four lines. The four incidence conditions cut a
/// pencil out of line space, whose intersection with the Pluecker quadric is
/// a quadratic. Throws "degenerate line configuration" when the pencil is not
/// two-dimensional (lines of a regulus, concurrent lines, ...).
Transversals transversals_of_four(const std::array<PlueckerLine, 4>& lines,
                                  double tol = 1e-9);

}  // namespace rotquad::linegeom
