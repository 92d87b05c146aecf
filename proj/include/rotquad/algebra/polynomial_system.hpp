#pragma once

#include <array>
#include <complex>
#include <vector>

#include "rotquad/algebra/homo_poly.hpp"

namespace rotquad::algebra {

/// A point of the complex projective plane with its intersection multiplicity.
struct ProjRoot2 {
  // Scaled so the largest entry is real positive, then to unit norm.
  std::array<std::complex<double>, 3> coords{};
  int multiplicity = 1;
  bool is_real = false;

  /// Real parts of coords; meaningful when is_real.
  std::array<double, 3> real_coords() const {
    return {coords[0].real(), coords[1].real(), coords[2].real()};
  }
};

/// Normalizes a nonzero homogeneous triple the way ProjRoot2 stores it.
std::array<std::complex<double>, 3> normalize_projective(
    std::array<std::complex<double>, 3> x);

/// True when the two triples are complex-proportional: the 2x2 minors of the
/// normalized pair are all at most tol.
bool projectively_equal(const std::array<std::complex<double>, 3>& a,
                        const std::array<std::complex<double>, 3>& b,
                        double tol = 1e-7);

/// Sylvester resultant of p and q with respect to variable `var`, as a binary
/// form in the two remaining variables (in their original order).
///
/// The eliminated variable is treated with its actual degree in each input,
/// so the result has degree m*deg(q) + n*deg(p) - m*n, where m and n are the
/// degrees of p and q in `var`. Throws when `var` occurs in neither input and
/// when the resultant vanishes identically (shared factor).
BinaryForm resultant_elim(const HomoPoly3& p, const HomoPoly3& q, int var);

/// All common projective zeros of p and q, with multiplicities summing to
/// deg(p) * deg(q). Throws ErrorKind::Degenerate when the system has a
/// common component.
std::vector<ProjRoot2> solve_homo_system(const HomoPoly3& p, const HomoPoly3& q,
                                         double tol = 1e-9);

/// |f(x)| / max|coeff| at the unit-normalized point x.
double normalized_residual(const HomoPoly3& f,
                           const std::array<std::complex<double>, 3>& x);

}  // namespace rotquad::algebra
