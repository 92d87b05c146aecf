#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "rotquad/error.hpp"

namespace rotquad::algebra {

/// Homogeneous polynomial in N variables with real coefficients.
///
/// Terms are kept in a map keyed by exponent tuples; every stored tuple sums
/// to degree(). Zero coefficients are never stored.
template <int N>
class HomoPoly {
 public:
  using Exponent = std::array<int, N>;

  HomoPoly() = default;
  explicit HomoPoly(int degree) : degree_(degree) {
    if (degree < 0) fail(ErrorKind::InvalidInput, "negative degree");
  }

  static HomoPoly constant(double c) {
    HomoPoly p(0);
    p.add_term(Exponent{}, c);
    return p;
  }

  static HomoPoly variable(int i) {
    HomoPoly p(1);
    Exponent e{};
    e.at(i) = 1;
    p.add_term(e, 1.0);
    return p;
  }

  static HomoPoly linear(const std::array<double, N>& c) {
    HomoPoly p(1);
    for (int i = 0; i < N; ++i) {
      Exponent e{};
      e[i] = 1;
      p.add_term(e, c[i]);
    }
    return p;
  }

  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponent, double>& terms() const { return terms_; }

  double coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0.0 : it->second;
  }

  void add_term(const Exponent& e, double c) {
    if (std::accumulate(e.begin(), e.end(), 0) != degree_)
      fail(ErrorKind::InvalidInput, "exponent does not match degree");
    if (c == 0.0) return;
    double& slot = terms_[e];
    slot += c;
    if (slot == 0.0) terms_.erase(e);
  }

  double max_abs_coeff() const {
    double m = 0;
    for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
    return m;
  }

  /// Drops coefficients below rel_tol * max_abs_coeff().
  HomoPoly pruned(double rel_tol) const {
    HomoPoly out(degree_);
    const double cut = rel_tol * max_abs_coeff();
    for (const auto& [e, c] : terms_)
      if (std::abs(c) > cut) out.terms_.emplace(e, c);
    return out;
  }

  /// Largest power of x_var occurring in any term (-1 for the zero polynomial).
  int degree_in(int var) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.at(var));
    return d;
  }

  template <class T>
  T operator()(const std::array<T, N>& x) const {
    T acc{};
    for (const auto& [e, c] : terms_) {
      T mono = T(c);
      for (int i = 0; i < N; ++i)
        for (int k = 0; k < e[i]; ++k) mono *= x[i];
      acc += mono;
    }
    return acc;
  }

  HomoPoly derivative(int var) const {
    HomoPoly out(degree_ > 0 ? degree_ - 1 : 0);
    if (degree_ == 0) return out;
    for (const auto& [e, c] : terms_) {
      if (e.at(var) == 0) continue;
      Exponent f = e;
      --f[var];
      out.add_term(f, c * e[var]);
    }
    return out;
  }

  /// p(T w): x_i = sum_j T[i][j] w_j.
  HomoPoly substitute_linear(const std::array<std::array<double, N>, N>& t) const {
    std::array<HomoPoly, N> forms;
    for (int i = 0; i < N; ++i) forms[i] = linear(t[i]);
    HomoPoly out(degree_);
    for (const auto& [e, c] : terms_) {
      HomoPoly mono = constant(c);
      for (int i = 0; i < N; ++i)
        for (int k = 0; k < e[i]; ++k) mono = mono * forms[i];
      out = out + mono;
    }
    return out;
  }

  friend HomoPoly operator+(const HomoPoly& a, const HomoPoly& b) {
    if (a.is_zero() && a.degree_ != b.degree_) return b;
    if (b.is_zero() && a.degree_ != b.degree_) return a;
    if (a.degree_ != b.degree_)
      fail(ErrorKind::InvalidInput, "adding forms of different degree");
    HomoPoly out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, c);
    return out;
  }

  friend HomoPoly operator-(const HomoPoly& a, const HomoPoly& b) {
    return a + (-1.0) * b;
  }

  friend HomoPoly operator*(const HomoPoly& a, const HomoPoly& b) {
    HomoPoly out(a.degree_ + b.degree_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e;
        for (int i = 0; i < N; ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    return out;
  }

  friend HomoPoly operator*(double s, const HomoPoly& p) {
    HomoPoly out(p.degree_);
    if (s == 0.0) return out;
    for (const auto& [e, c] : p.terms_) out.terms_.emplace(e, s * c);
    return out;
  }

 private:
  int degree_ = 0;
  std::map<Exponent, double> terms_;
};

using HomoPoly3 = HomoPoly<3>;
using BinaryForm = HomoPoly<2>;

/// Splits p by powers of x_var: result[k] is the coefficient form of x_var^k,
/// a homogeneous polynomial of degree deg(p) - k in the remaining variables.
template <int N>
std::vector<HomoPoly<N - 1>> expand_in_variable(const HomoPoly<N>& p, int var) {
  std::vector<HomoPoly<N - 1>> out;
  for (int k = 0; k <= p.degree(); ++k) out.emplace_back(p.degree() - k);
  for (const auto& [e, c] : p.terms()) {
    typename HomoPoly<N - 1>::Exponent f{};
    for (int i = 0, j = 0; i < N; ++i)
      if (i != var) f[j++] = e[i];
    out[e.at(var)].add_term(f, c);
  }
  return out;
}

/// Leibniz determinant of a square matrix of forms.
template <int N>
HomoPoly<N> determinant(const std::vector<std::vector<HomoPoly<N>>>& m) {
  const int n = static_cast<int>(m.size());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  HomoPoly<N> out;
  bool first = true;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    HomoPoly<N> term = HomoPoly<N>::constant(inversions % 2 ? -1.0 : 1.0);
    for (int i = 0; i < n; ++i) term = term * m[i][perm[i]];
    out = first ? term : out + term;
    first = false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace rotquad::algebra
