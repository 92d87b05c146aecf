#include "rotquad/linegeom/revolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rotquad/algebra/matrix.hpp"
#include "rotquad/algebra/poly1.hpp"
#include "rotquad/error.hpp"

namespace rotquad::linegeom {

using algebra::Poly1;

Quadric::Quadric(const Mat4& q) {
  const Mat4 s = 0.5 * (q + q.transpose());
  const double n = s.norm();
  if (!(n > 0)) fail(ErrorKind::InvalidInput, "quadric matrix is zero");
  q_ = s / n;
  int bi = 0, bj = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j)
      if (std::abs(q_(i, j)) > std::abs(q_(bi, bj)) + 1e-12) {
        bi = i;
        bj = j;
      }
  if (q_(bi, bj) < 0) q_ = -q_;
}

double Quadric::eval_homogeneous(const Vec4& x) const {
  const Vec4 u = x.normalized();
  return u.dot(q_ * u);
}

double Quadric::eval(const Vec3& x) const {
  return eval_homogeneous(Vec4(x(0), x(1), x(2), 1));
}

std::array<double, 10> Quadric::coefficients() const {
  const Mat4& q = q_;
  return {q(0, 0), q(1, 1), q(2, 2), q(0, 1), q(0, 2),
          q(1, 2), q(0, 3), q(1, 3), q(2, 3), q(3, 3)};
}

std::array<int, 2> Quadric::signature(double tol) const {
  Eigen::SelfAdjointEigenSolver<Mat4> es(q_);
  const auto& ev = es.eigenvalues();
  const double cut = tol * ev.cwiseAbs().maxCoeff();
  std::array<int, 2> sig{0, 0};
  for (int i = 0; i < 4; ++i) {
    if (ev(i) > cut) ++sig[0];
    if (ev(i) < -cut) ++sig[1];
  }
  return sig;
}

namespace {

// Homogeneous plane (n, -n.P) spanned by two lines meeting at P.
Vec4 plane_of(const PlueckerLine& a, const PlueckerLine& b, const Vec3& p) {
  const Vec3 n = a.d().cross(b.d()).normalized();
  return Vec4(n(0), n(1), n(2), -n.dot(p));
}

Mat4 sym_product(const Vec4& a, const Vec4& b) {
  return 0.5 * (a * b.transpose() + b * a.transpose());
}

constexpr double kSignatureTol = 1e-11;

struct Member {
  double gap = std::numeric_limits<double>::infinity();
  double spread = 0;
  double pair = 0;  // magnitude of the closest eigenvalue pair
};

// All three relative to the largest eigenvalue magnitude.
Member inspect(const Mat3& a) {
  const auto e = algebra::sym3_eigen(a, 1e-6);
  const auto& v = e.values;
  const double big = std::max(v.cwiseAbs().maxCoeff(), 1e-300);
  const bool low = v(1) - v(0) < v(2) - v(1);
  const double pair = low ? 0.5 * std::abs(v(0) + v(1)) : 0.5 * std::abs(v(1) + v(2));
  return {std::min(v(1) - v(0), v(2) - v(1)) / big, (v(2) - v(0)) / big, pair / big};
}

// Golden-section refinement of the eigengap near a candidate parameter.
double refine(const Mat3& a1, const Mat3& a2, double lam) {
  const double h = 1e-4 * std::max(1.0, std::abs(lam));
  double lo = lam - h, hi = lam + h;
  const double g = 0.5 * (std::sqrt(5.0) - 1);
  auto f = [&](double l) { return inspect(a2 + l * a1).gap; };
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    }
  }
  const double best = 0.5 * (lo + hi);
  return f(best) < f(lam) ? best : lam;
}

}  // namespace

std::pair<Quadric, Quadric> quadric_pencil_through(const SkewQuad& sq) {
  if (sq.planar) fail(ErrorKind::Degenerate, "pencil degenerate: quadrilateral is planar");
  const auto& l = sq.lines;
  const auto& v = sq.vertices;
  const Vec4 p01 = plane_of(l[0], l[1], v[0]), p12 = plane_of(l[1], l[2], v[1]),
             p23 = plane_of(l[2], l[3], v[2]), p30 = plane_of(l[3], l[0], v[3]);
  return {Quadric(sym_product(p01, p23)), Quadric(sym_product(p12, p30))};
}

namespace {

// The same quad in coordinates x' = (x - c) / s, c the vertex centroid and s
// the scale, so that determinant and signature thresholds are scale-free.
SkewQuad normalized_quad(const SkewQuad& sq, Vec3& c) {
  c = Vec3::Zero();
  for (const auto& v : sq.vertices) c += v / 4;
  SkewQuad n = sq;
  for (int k = 0; k < 4; ++k) {
    n.vertices[k] = (sq.vertices[k] - c) / sq.scale;
    n.lines[k] = PlueckerLine::from_point_direction(n.vertices[k], sq.lines[k].d());
  }
  n.scale = 1;
  return n;
}

std::optional<RevolutionQuadric> revolution_member_normalized(const SkewQuad& sq,
                                                              double tol);

}  // namespace

std::optional<RevolutionQuadric> revolution_member(const SkewQuad& sq, double tol) {
  if (sq.planar) fail(ErrorKind::Degenerate, "pencil degenerate: quadrilateral is planar");
  Vec3 c;
  auto r = revolution_member_normalized(normalized_quad(sq, c), tol);
  if (!r) return r;
  // (x', 1) = T (x, 1).
  Mat4 t = Mat4::Identity();
  t.topLeftCorner<3, 3>() /= sq.scale;
  t.topRightCorner<3, 1>() = -c / sq.scale;
  r->quadric = Quadric(t.transpose() * r->quadric.matrix() * t);
  r->axis = PlueckerLine::from_point_direction(sq.scale * r->axis.foot() + c, r->axis.d())
                .canonical();
  const EdgeSums s = opposite_edge_sums(sq);
  r->equal_sum_gap = s.gap() / sq.scale;
  r->signed_sum_gap = s.best_signed_gap() / sq.scale;
  r->oriented_sum_gap = s.oriented_gap() / sq.scale;
  return r;
}

namespace {

std::optional<RevolutionQuadric> revolution_member_normalized(const SkewQuad& sq,
                                                              double tol) {
  const auto [d1, d2] = quadric_pencil_through(sq);
  const Mat3 a1 = d1.matrix().topLeftCorner<3, 3>(), a2 = d2.matrix().topLeftCorner<3, 3>();

  std::array<std::array<Poly1, 3>, 3> m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = Poly1::linear(a2(i, j), a1(i, j));
  // Characteristic polynomial mu^3 + ca mu^2 + cb mu + cc of A(lambda).
  const Poly1 ca = -1.0 * (m[0][0] + m[1][1] + m[2][2]);
  const Poly1 cb = m[0][0] * m[1][1] - m[0][1] * m[0][1] + m[0][0] * m[2][2] -
                   m[0][2] * m[0][2] + m[1][1] * m[2][2] - m[1][2] * m[1][2];
  const Poly1 det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[1][2]) -
                    m[0][1] * (m[0][1] * m[2][2] - m[1][2] * m[0][2]) +
                    m[0][2] * (m[0][1] * m[1][2] - m[1][1] * m[0][2]);
  const Poly1 cc = -1.0 * det;
  const Poly1 disc = 18.0 * (ca * cb * cc) - 4.0 * (ca * ca * ca * cc) + ca * ca * cb * cb -
                     4.0 * (cb * cb * cb) - 27.0 * (cc * cc);

  std::vector<double> cands;
  if (!disc.is_zero()) {
    // Real double eigenvalues of a symmetric family are double roots of the
    // (nonnegative) discriminant: critical points of it, or near-real roots.
    const Poly1 dd = disc.derivative();
    if (!dd.is_zero())
      for (const auto& r : algebra::roots_real(dd, 1e-7)) cands.push_back(r.value);
    for (const auto& r : algebra::roots_complex(disc))
      if (std::abs(r.value.imag()) <= 1e-3 * std::max(1.0, std::abs(r.value)))
        cands.push_back(r.value.real());
  }

  // Eigengap accepted as a double eigenvalue: 1e-6 at the default tolerance.
  const double gap_tol = 1e3 * tol;
  std::optional<RevolutionQuadric> best;
  for (double lam : cands) {
    if (!std::isfinite(lam)) continue;
    lam = refine(a1, a2, lam);
    const Mat4 qm = d2.matrix() + lam * d1.matrix();
    const Member mem = inspect(qm.topLeftCorner<3, 3>());
    // Near a plane pair two eigenvalues almost vanish and look repeated;
    // measuring the gap against the pair itself rejects that.
    if (mem.gap > gap_tol * mem.pair || mem.spread <= gap_tol) continue;
    const Quadric q(qm);
    // det(D2 + lambda D1) is proportional to lambda^2, so only the two
    // plane pairs are singular; they have signature (1, 1). A thin but
    // proper hyperboloid keeps a tiny fourth eigenvalue, hence the small cut.
    const auto sig = q.signature(kSignatureTol);
    if (sig[0] != 2 || sig[1] != 2) continue;
    const double rel_gap = mem.gap / mem.pair;
    if (best && best->eigengap <= rel_gap) continue;

    const Mat3 a = q.matrix().topLeftCorner<3, 3>();
    const Vec3 b = q.matrix().topRightCorner<3, 1>();
    const auto e = algebra::sym3_eigen(a, 1e-6);
    const bool low_pair = e.values(1) - e.values(0) < e.values(2) - e.values(1);
    const Vec3 dir = e.vectors.col(low_pair ? 2 : 0);
    const Vec3 center = -a.ldlt().solve(b);
    best = RevolutionQuadric{q, PlueckerLine::from_point_direction(center, dir).canonical(),
                             lam, rel_gap};
  }
  return best;
}

}  // namespace

}  // namespace rotquad::linegeom
