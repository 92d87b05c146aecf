#include "rotquad/algebra/polynomial_system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "rotquad/algebra/poly1.hpp"
#include "rotquad/error.hpp"

namespace rotquad::algebra {

namespace {

using cd = std::complex<double>;
using Triple = std::array<cd, 3>;

// A resultant whose coefficients sit this far below the Hadamard bound of its
// Sylvester matrices is taken to vanish identically.
constexpr double kZeroResultant = 1e-11;
constexpr double kRealTol = 1e-7;
constexpr int kTransformAttempts = 8;

struct Slices {
  std::vector<BinaryForm> p, q;  // coefficient forms by power of the variable
  int m = 0, n = 0;              // actual degrees in the variable
};

Slices slice(const HomoPoly3& p, const HomoPoly3& q, int var) {
  Slices s{expand_in_variable(p, var), expand_in_variable(q, var),
           p.degree_in(var), q.degree_in(var)};
  s.m = std::max(s.m, 0);
  s.n = std::max(s.n, 0);
  return s;
}

struct SylvesterValue {
  cd det;
  double hadamard;
};

SylvesterValue sylvester_at(const Slices& s, cd x, cd y) {
  const int m = s.m, n = s.n, size = m + n;
  const std::array<cd, 2> pt{x, y};
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(size, size);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k) S(i, i + k) = s.p[m - k](pt);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= n; ++k) S(n + i, i + k) = s.q[n - k](pt);
  double had = 1;
  for (int i = 0; i < size; ++i) had *= S.row(i).norm();
  return {S.partialPivLu().determinant(), had};
}

// Coefficients of R(1, t) ascending in t, where R(x, y) is the resultant.
std::vector<double> resultant_coeffs(const Slices& s, int dp, int dq) {
  const int D = s.m * dq + s.n * dp - s.m * s.n;
  const int K = D + 1;
  std::vector<cd> vals(K);
  double had = 0;
  for (int k = 0; k < K; ++k) {
    const cd w = std::polar(1.0, 2 * std::numbers::pi * k / K);
    const auto v = sylvester_at(s, 1.0, w);
    vals[k] = v.det;
    had = std::max(had, v.hadamard);
  }
  std::vector<double> c(K);
  double cmax = 0;
  for (int j = 0; j < K; ++j) {
    cd acc = 0;
    for (int k = 0; k < K; ++k)
      acc += vals[k] * std::polar(1.0, -2 * std::numbers::pi * j * k / K);
    c[j] = acc.real() / K;
    cmax = std::max(cmax, std::abs(c[j]));
  }
  if (cmax <= kZeroResultant * had)
    fail(ErrorKind::Degenerate,
         "positive-dimensional or shared factor: resultant vanishes identically");
  return c;
}

void check_inputs(const HomoPoly3& p, const HomoPoly3& q) {
  if (p.is_zero() || q.is_zero())
    fail(ErrorKind::InvalidInput, "polynomial is identically zero");
}

double max_coeff_or_one(const HomoPoly3& f) {
  const double m = f.max_abs_coeff();
  return m > 0 ? m : 1.0;
}

double unit_residual(const HomoPoly3& f, double scale, Triple x) {
  const double nrm = std::sqrt(std::norm(x[0]) + std::norm(x[1]) + std::norm(x[2]));
  for (cd& c : x) c /= nrm;
  return std::abs(f(x)) / scale;
}

using Mat3Arr = std::array<std::array<double, 3>, 3>;

// Deterministic family of generic rotations.
Mat3Arr generic_rotation(int attempt) {
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL + static_cast<unsigned>(attempt));
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  Eigen::Quaterniond qr(unit() - 0.5, unit() - 0.5, unit() - 0.5, unit() - 0.5);
  qr.normalize();
  const Eigen::Matrix3d R = qr.toRotationMatrix();
  Mat3Arr t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = R(i, j);
  return t;
}

Triple transform_point(const Mat3Arr& t, const Triple& w) {
  Triple x{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) x[i] += t[i][j] * w[j];
  return x;
}

// Newton on the affine chart where the largest coordinate is fixed to 1.
Triple polish(const HomoPoly3& p, const HomoPoly3& q, Triple x) {
  const std::array<HomoPoly3, 3> dp{p.derivative(0), p.derivative(1), p.derivative(2)};
  const std::array<HomoPoly3, 3> dq{q.derivative(0), q.derivative(1), q.derivative(2)};
  const double sp = max_coeff_or_one(p), sq = max_coeff_or_one(q);
  auto resid = [&](const Triple& t) {
    return unit_residual(p, sp, t) + unit_residual(q, sq, t);
  };
  int fix = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(x[i]) > std::abs(x[fix])) fix = i;
  const cd pivot = x[fix];
  for (cd& c : x) c /= pivot;
  const int a = (fix + 1) % 3, b = (fix + 2) % 3;
  double best = resid(x);
  for (int it = 0; it < 8 && best > 0; ++it) {
    Eigen::Matrix2cd J;
    J << dp[a](x), dp[b](x), dq[a](x), dq[b](x);
    const Eigen::Vector2cd f(p(x), q(x));
    const auto lu = J.fullPivLu();
    if (!lu.isInvertible()) break;
    const Eigen::Vector2cd step = lu.solve(f);
    Triple cand = x;
    cand[a] -= step(0);
    cand[b] -= step(1);
    const double r = resid(cand);
    if (!(r < best)) break;
    best = r;
    x = cand;
  }
  return x;
}

struct Attempt {
  std::vector<ProjRoot2> roots;
  double worst_residual = std::numeric_limits<double>::infinity();
};

Attempt solve_with_transform(const HomoPoly3& p, const HomoPoly3& q,
                             const Mat3Arr& t) {
  Attempt out;
  const HomoPoly3 pt = p.substitute_linear(t);
  const HomoPoly3 qt = q.substitute_linear(t);
  const int dp = p.degree(), dq = q.degree();
  // The eliminated variable must reach full degree so nothing escapes to
  // infinity along it.
  if (std::abs(pt.coeff({0, 0, dp})) < 1e-3 * pt.max_abs_coeff() ||
      std::abs(qt.coeff({0, 0, dq})) < 1e-3 * qt.max_abs_coeff())
    return out;

  const Slices s = slice(pt, qt, 2);
  const std::vector<double> rc = resultant_coeffs(s, dp, dq);
  const int D = static_cast<int>(rc.size()) - 1;
  std::vector<cd> rcc(rc.begin(), rc.end());

  struct Projected {
    cd x, y;
    int mult;
  };
  std::vector<Projected> proj;
  int found = 0;
  for (const auto& r : roots_complex(std::span<const cd>(rcc))) {
    proj.push_back({1.0, r.value, r.multiplicity});
    found += r.multiplicity;
  }
  if (found < D) proj.push_back({0.0, 1.0, D - found});

  const double sp = max_coeff_or_one(pt), sq = max_coeff_or_one(qt);
  const double op = max_coeff_or_one(p), oq = max_coeff_or_one(q);
  out.worst_residual = 0;
  for (const auto& pr : proj) {
    const std::array<cd, 2> xy{pr.x, pr.y};
    std::vector<cd> zp(dp + 1), zq(dq + 1);
    for (int k = 0; k <= dp; ++k) zp[k] = s.p[k](xy);
    for (int k = 0; k <= dq; ++k) zq[k] = s.q[k](xy);
    std::vector<cd> cands;
    for (const auto& r : roots_complex(std::span<const cd>(zp))) cands.push_back(r.value);
    for (const auto& r : roots_complex(std::span<const cd>(zq))) cands.push_back(r.value);
    Triple best_w{};
    double best = std::numeric_limits<double>::infinity();
    for (cd z : cands) {
      const Triple w{pr.x, pr.y, z};
      const double r = unit_residual(pt, sp, w) + unit_residual(qt, sq, w);
      if (r < best) {
        best = r;
        best_w = w;
      }
    }
    Triple x = transform_point(t, best_w);
    if (pr.mult == 1) x = polish(p, q, x);
    x = normalize_projective(x);
    const double res = std::max(unit_residual(p, op, x), unit_residual(q, oq, x));
    out.worst_residual = std::max(out.worst_residual, res);
    ProjRoot2 root;
    root.coords = x;
    root.multiplicity = pr.mult;
    root.is_real = std::max({std::abs(x[0].imag()), std::abs(x[1].imag()),
                             std::abs(x[2].imag())}) <= kRealTol;
    out.roots.push_back(root);
  }
  return out;
}

}  // namespace

std::array<std::complex<double>, 3> normalize_projective(
    std::array<std::complex<double>, 3> x) {
  int big = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(x[i]) > std::abs(x[big])) big = i;
  const double mag = std::abs(x[big]);
  if (mag == 0) fail(ErrorKind::InvalidInput, "projective point has all coordinates zero");
  const cd phase = x[big] / mag;
  double nrm = 0;
  for (cd& c : x) {
    c /= phase;
    nrm += std::norm(c);
  }
  nrm = std::sqrt(nrm);
  for (cd& c : x) c /= nrm;
  x[big] = x[big].real();
  return x;
}

bool projectively_equal(const std::array<std::complex<double>, 3>& a,
                        const std::array<std::complex<double>, 3>& b, double tol) {
  const auto u = normalize_projective(a), v = normalize_projective(b);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(u[i] * v[j] - u[j] * v[i]) > tol) return false;
  return true;
}

double normalized_residual(const HomoPoly3& f,
                           const std::array<std::complex<double>, 3>& x) {
  return unit_residual(f, max_coeff_or_one(f), x);
}

BinaryForm resultant_elim(const HomoPoly3& p, const HomoPoly3& q, int var) {
  check_inputs(p, q);
  if (var < 0 || var > 2) fail(ErrorKind::InvalidInput, "variable index must be 0, 1 or 2");
  const Slices s = slice(p, q, var);
  if (s.m == 0 && s.n == 0)
    fail(ErrorKind::InvalidInput, "eliminated variable does not occur in either polynomial");
  const std::vector<double> c = resultant_coeffs(s, p.degree(), q.degree());
  const int D = static_cast<int>(c.size()) - 1;
  BinaryForm out(D);
  for (int j = 0; j <= D; ++j) out.add_term({D - j, j}, c[j]);
  return out;
}

// Retries with further transforms until every root meets tol, keeping the best.
std::vector<ProjRoot2> solve_homo_system(const HomoPoly3& p, const HomoPoly3& q,
                                         double tol) {
  check_inputs(p, q);
  if (p.degree() == 0 || q.degree() == 0) return {};
  Attempt best;
  for (int attempt = 0; attempt < kTransformAttempts; ++attempt) {
    Attempt a = solve_with_transform(p, q, generic_rotation(attempt));
    if (a.worst_residual < best.worst_residual) best = std::move(a);
    if (best.worst_residual <= tol) break;
  }
  if (best.roots.empty())
    fail(ErrorKind::Internal, "no admissible generic coordinate transform found");
  return best.roots;
}

}  // namespace rotquad::algebra
