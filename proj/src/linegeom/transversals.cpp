#include "rotquad/linegeom/transversals.hpp"

#include <algorithm>
#include <cmath>

#include "rotquad/algebra/matrix.hpp"
#include "rotquad/error.hpp"

namespace rotquad::linegeom {

namespace {

using cd = std::complex<double>;

// Pluecker inner product, halved: x_d . x_m for x == y.
template <class V>
auto omega(const V& x, const V& y) {
  return 0.5 * (x.template head<3>().dot(y.template tail<3>()) +
                y.template head<3>().dot(x.template tail<3>()));
}

}  // namespace

const char* to_string(Reality r) noexcept {
  switch (r) {
    case Reality::RealDistinct:
      return "real_distinct";
    case Reality::RealDouble:
      return "real_double";
    case Reality::ComplexPair:
      return "complex_pair";
  }
  return "unknown";
}

Transversals transversals_of_four(const std::array<PlueckerLine, 4>& lines,
                                  double tol) {
  // Work about the centroid of the feet at unit scale.
  Vec3 c = Vec3::Zero();
  for (const auto& l : lines) c += l.foot() / 4;
  double s = 0;
  for (const auto& l : lines) s = std::max(s, (l.foot() - c).norm());
  if (s < 1e-12) s = 1;

  Eigen::Matrix<double, 4, 6> a;
  for (int i = 0; i < 4; ++i) {
    const Vec3 m = (lines[i].m() - c.cross(lines[i].d())) / s;
    a.row(i) << m.transpose(), lines[i].d().transpose();
  }
  if (algebra::rank_with_tol(a, std::max(tol, 1e-12) * 10) != 4)
    fail(ErrorKind::Degenerate,
         "degenerate line configuration: transversals are not isolated");
  Eigen::JacobiSVD<Eigen::Matrix<double, 4, 6>> svd(a, Eigen::ComputeFullV);
  const Vec6 x = svd.matrixV().col(4), y = svd.matrixV().col(5);

  // A mu^2 + 2 B mu nu + C nu^2 = 0 for mu x + nu y.
  const double qa = omega(x, x), qb = omega(x, y), qc = omega(y, y);
  const double disc = qb * qb - qa * qc;
  const double dscale = std::max({qb * qb, std::abs(qa * qc), 1e-300});

  Transversals out;
  const cd root = std::sqrt(cd(disc));
  std::array<Eigen::Matrix<cd, 6, 1>, 2> sol;
  for (int k = 0; k < 2; ++k) {
    const cd sgn = k == 0 ? 1.0 : -1.0;
    if (std::abs(qa) >= std::abs(qc)) {
      const cd mu = (-qb + sgn * root) / qa;
      sol[k] = mu * x.cast<cd>() + y.cast<cd>();
    } else {
      const cd nu = (-qb + sgn * root) / qc;
      sol[k] = x.cast<cd>() + nu * y.cast<cd>();
    }
    // Undo the normalization: m = s m' + c x d.
    Eigen::Matrix<cd, 3, 1> d = sol[k].head<3>(), m = sol[k].tail<3>();
    m = s * m + c.cast<cd>().cross(d);
    out.coords[k] << d, m;
  }

  if (std::abs(disc) <= tol * dscale) {
    out.reality = Reality::RealDouble;
  } else if (disc > 0) {
    out.reality = Reality::RealDistinct;
  } else {
    out.reality = Reality::ComplexPair;
    return out;
  }

  const int count = out.reality == Reality::RealDouble ? 1 : 2;
  for (int k = 0; k < count; ++k) {
    const Vec6 v = out.coords[k].real();
    if (v.head<3>().norm() <= 1e-9 * v.tail<3>().norm())
      fail(ErrorKind::Degenerate, "degenerate line configuration: transversal at infinity");
    out.lines.push_back(PlueckerLine::from_coords(v, 1e-5).canonical());
  }
  for (const auto& t : out.lines)
    for (const auto& l : lines)
      out.residual = std::max(out.residual, std::abs(reciprocal_product(t, l)) /
                                                std::max({1.0, t.m().norm(), l.m().norm()}));
  return out;
}

}  // namespace rotquad::linegeom
