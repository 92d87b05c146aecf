#pragma once

#include <array>

#include "rotquad/types.hpp"

namespace rotquad::linegeom {

/// Quadric x^T Q x = 0 in homogeneous (x, y, z, w), scaled to unit Frobenius
/// norm with the largest-magnitude upper-triangle entry positive.
class Quadric {
 public:
  Quadric() = default;
  /// Symmetrizes and normalizes. Throws for the zero matrix.
  explicit Quadric(const Mat4& q);

  const Mat4& matrix() const { return q_; }

  /// x^T Q x at the homogeneous point (x, 1) scaled to unit length.
  double eval(const Vec3& x) const;
  double eval_homogeneous(const Vec4& x) const;

  /// [Q00, Q11, Q22, Q01, Q02, Q12, Q03, Q13, Q23, Q33].
  std::array<double, 10> coefficients() const;

  /// Counts of positive and negative eigenvalues at relative tolerance tol.
  std::array<int, 2> signature(double tol = 1e-9) const;

 private:
  Mat4 q_ = Mat4::Zero();
};

}  // namespace rotquad::linegeom
