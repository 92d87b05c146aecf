#include "rotquad/algebra/poly1.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "rotquad/error.hpp"

namespace rotquad::algebra {

namespace {

using cd = std::complex<double>;

// Clusters tighter than this (relative) are merged unconditionally.
constexpr double kClusterRel = 1e-6;
// Taylor coefficients below this fraction of the evaluation bound count as
// zero when testing whether a group of roots is one multiple root.
constexpr double kMultipleRootNoise = 1e-11;

cd horner(std::span<const cd> a, cd z) {
  cd acc = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * z + *it;
  return acc;
}

cd horner_derivative(std::span<const cd> a, cd z) {
  cd acc = 0;
  for (std::size_t k = a.size() - 1; k >= 1; --k)
    acc = acc * z + static_cast<double>(k) * a[k];
  return acc;
}

double eval_bound(std::span<const cd> a, double r) {
  double acc = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

// b[k] is the coefficient of (z - c)^k.
std::vector<cd> taylor_shift(std::span<const cd> a, cd c) {
  std::vector<cd> b(a.begin(), a.end());
  const int n = static_cast<int>(b.size()) - 1;
  for (int k = 0; k < n; ++k)
    for (int j = n - 1; j >= k; --j) b[j] += c * b[j + 1];
  return b;
}

std::vector<cd> companion_roots(std::span<const cd> a) {
  const int n = static_cast<int>(a.size()) - 1;
  if (n == 1) return {-a[0] / a[1]};
  // Substitute z = sigma * w so that |b_0| = |b_n|.
  const double sigma =
      std::pow(std::abs(a[0]) / std::abs(a[n]), 1.0 / static_cast<double>(n));
  std::vector<cd> b(a.begin(), a.end());
  double pw = 1;
  for (int k = 0; k <= n; ++k) {
    b[k] *= pw;
    pw *= sigma;
  }
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -b[i] / b[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
  if (solver.info() != Eigen::Success)
    fail(ErrorKind::Internal, "companion eigenvalue iteration did not converge");
  std::vector<cd> roots(n);
  for (int i = 0; i < n; ++i) roots[i] = sigma * solver.eigenvalues()[i];
  return roots;
}

void newton_polish(std::span<const cd> a, std::vector<cd>& roots) {
  for (cd& z : roots) {
    double best = std::abs(horner(a, z));
    for (int it = 0; it < 4 && best > 0; ++it) {
      const cd d = horner_derivative(a, z);
      if (std::abs(d) == 0) break;
      const cd cand = z - horner(a, z) / d;
      const double r = std::abs(horner(a, cand));
      if (!(r < best)) break;
      best = r;
      z = cand;
    }
  }
}

bool is_single_multiple_root(std::span<const cd> a, const std::vector<cd>& pts) {
  cd c = 0;
  for (cd m : pts) c += m;
  c /= static_cast<double>(pts.size());
  double radius = 0;
  for (cd m : pts) radius = std::max(radius, std::abs(m - c));
  const double mag = std::max(1.0, std::abs(c));
  if (radius <= kClusterRel * mag) return true;
  const auto b = taylor_shift(a, c);
  const double bound = eval_bound(a, mag);
  for (std::size_t j = 0; j < pts.size(); ++j)
    if (std::abs(b[j]) > kMultipleRootNoise * bound) return false;
  return true;
}

// Greedy, largest group first: a perturbed k-fold root splits into a ring
// whose sub-groups need not test as multiple roots on their own.
std::vector<ComplexRoot> cluster_roots(std::span<const cd> a, std::vector<cd> rest) {
  std::vector<ComplexRoot> out;
  while (!rest.empty()) {
    const cd seed = rest.front();
    std::stable_sort(rest.begin(), rest.end(), [seed](cd u, cd v) {
      return std::abs(u - seed) < std::abs(v - seed);
    });
    std::size_t take = 1;
    for (std::size_t k = rest.size(); k >= 2; --k) {
      std::vector<cd> group(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(k));
      if (is_single_multiple_root(a, group)) {
        take = k;
        break;
      }
    }
    cd c = 0;
    for (std::size_t k = 0; k < take; ++k) c += rest[k];
    out.push_back({c / static_cast<double>(take), static_cast<int>(take)});
    rest.erase(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(take));
  }
  return out;
}

}  // namespace

Poly1::Poly1(std::vector<double> ascending) : coeffs_(std::move(ascending)) {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

Poly1 Poly1::from_roots(std::span<const double> roots) {
  Poly1 p = constant(1);
  for (double r : roots) p = p * linear(-r, 1);
  return p;
}

double Poly1::max_abs_coeff() const {
  double m = 0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double Poly1::operator()(double t) const {
  double acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

std::complex<double> Poly1::operator()(std::complex<double> z) const {
  std::complex<double> acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Poly1 Poly1::derivative() const {
  if (degree() < 1) return {};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k)
    d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Poly1(std::move(d));
}

Poly1 Poly1::trimmed(double rel_tol) const {
  const double cut = rel_tol * max_abs_coeff();
  std::vector<double> c = coeffs_;
  while (!c.empty() && std::abs(c.back()) <= cut) c.pop_back();
  return Poly1(std::move(c));
}

Poly1 operator+(const Poly1& a, const Poly1& b) {
  std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) c[k] += b.coeffs_[k];
  return Poly1(std::move(c));
}

Poly1 operator-(const Poly1& a, const Poly1& b) { return a + (-1.0) * b; }

Poly1 operator*(const Poly1& a, const Poly1& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Poly1(std::move(c));
}

Poly1 operator*(double s, const Poly1& p) {
  std::vector<double> c = p.coeffs_;
  for (double& x : c) x *= s;
  return Poly1(std::move(c));
}

std::vector<ComplexRoot> roots_complex(std::span<const std::complex<double>> ascending) {
  std::vector<cd> a(ascending.begin(), ascending.end());
  double amax = 0;
  for (cd c : a) amax = std::max(amax, std::abs(c));
  if (amax == 0) fail(ErrorKind::InvalidInput, "polynomial is identically zero");
  // Leading coefficients at rounding level belong to roots at infinity.
  const double cut = 64 * std::numeric_limits<double>::epsilon() * amax;
  while (std::abs(a.back()) <= cut) a.pop_back();

  int zero_mult = 0;
  while (a.front() == cd(0)) {
    a.erase(a.begin());
    ++zero_mult;
  }
  std::vector<ComplexRoot> out;
  if (a.size() > 1) {
    // Cluster before polishing: Newton moves the members of a split multiple
    // root independently and would spoil the centroid.
    out = cluster_roots(a, companion_roots(a));
    for (auto& r : out) {
      if (r.multiplicity != 1) continue;
      std::vector<cd> z{r.value};
      newton_polish(a, z);
      r.value = z[0];
    }
  }
  if (zero_mult > 0) out.push_back({cd(0), zero_mult});
  return out;
}

std::vector<ComplexRoot> roots_complex(const Poly1& p) {
  if (p.is_zero()) fail(ErrorKind::InvalidInput, "polynomial is identically zero");
  std::vector<cd> a(p.coeffs().begin(), p.coeffs().end());
  return roots_complex(std::span<const cd>(a));
}

std::vector<RealRoot> roots_real(const Poly1& p, double imag_tol) {
  std::vector<RealRoot> out;
  for (const auto& r : roots_complex(p)) {
    if (std::abs(r.value.imag()) <= imag_tol * std::max(1.0, std::abs(r.value)))
      out.push_back({r.value.real(), r.multiplicity});
  }
  std::sort(out.begin(), out.end(),
            [](const RealRoot& a, const RealRoot& b) { return a.value < b.value; });
  return out;
}

Poly1 fit_poly1(std::span<const double> t, std::span<const double> values,
                int degree) {
  if (t.size() != values.size() || t.empty() || degree < 0)
    fail(ErrorKind::InvalidInput, "fit_poly1: inconsistent sample arrays");
  double tscale = 0;
  for (double x : t) tscale = std::max(tscale, std::abs(x));
  if (tscale == 0) tscale = 1;
  const int n = static_cast<int>(t.size());
  Eigen::MatrixXd V(n, degree + 1);
  Eigen::VectorXd rhs(n);
  for (int i = 0; i < n; ++i) {
    double pw = 1;
    for (int k = 0; k <= degree; ++k) {
      V(i, k) = pw;
      pw *= t[i] / tscale;
    }
    rhs(i) = values[i];
  }
  const Eigen::VectorXd c = V.colPivHouseholderQr().solve(rhs);
  std::vector<double> coeffs(degree + 1);
  double pw = 1;
  for (int k = 0; k <= degree; ++k) {
    coeffs[k] = c(k) / pw;
    pw *= tscale;
  }
  return Poly1(std::move(coeffs));
}

}  // namespace rotquad::algebra
