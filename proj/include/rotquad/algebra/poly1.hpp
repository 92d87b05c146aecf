#pragma once

#include <complex>
#include <span>
#include <vector>

namespace rotquad::algebra {

/// Univariate real polynomial, coefficients in ascending degree.
///
/// Exact trailing zeros are dropped on construction, so the stored leading
/// coefficient is nonzero and degree() is exact. The zero polynomial has
/// degree -1.
class Poly1 {
 public:
  Poly1() = default;
  explicit Poly1(std::vector<double> ascending);

  static Poly1 constant(double c) { return Poly1({c}); }
  static Poly1 linear(double c0, double c1) { return Poly1({c0, c1}); }
  static Poly1 from_roots(std::span<const double> roots);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  std::span<const double> coeffs() const { return coeffs_; }
  double operator[](int k) const {
    return k >= 0 && k <= degree() ? coeffs_[k] : 0.0;
  }
  double max_abs_coeff() const;

  double operator()(double t) const;
  std::complex<double> operator()(std::complex<double> z) const;

  Poly1 derivative() const;
  /// Drops leading coefficients below rel_tol * max_abs_coeff().
  Poly1 trimmed(double rel_tol) const;

  friend Poly1 operator+(const Poly1& a, const Poly1& b);
  friend Poly1 operator-(const Poly1& a, const Poly1& b);
  friend Poly1 operator*(const Poly1& a, const Poly1& b);
  friend Poly1 operator*(double s, const Poly1& p);

 private:
  std::vector<double> coeffs_;
};

struct RealRoot {
  double value = 0;
  int multiplicity = 1;
};

struct ComplexRoot {
  std::complex<double> value;
  int multiplicity = 1;
};

/// All complex roots of a nonzero polynomial, clustered into multiple roots.
/// Companion-matrix eigenvalues, Newton-polished, then merged when a group is
/// numerically a single multiple root. Throws on the zero polynomial.
std::vector<ComplexRoot> roots_complex(const Poly1& p);

/// Same for complex coefficients (ascending).
std::vector<ComplexRoot> roots_complex(
    std::span<const std::complex<double>> ascending);

/// Real roots in ascending order. A cluster counts as real when its imaginary
/// part is at most imag_tol * max(1, |root|).
std::vector<RealRoot> roots_real(const Poly1& p, double imag_tol = 1e-7);

/// Least-squares fit of a polynomial of at most `degree` through samples.
Poly1 fit_poly1(std::span<const double> t, std::span<const double> values,
                int degree);

}  // namespace rotquad::algebra
