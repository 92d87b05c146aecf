#include "rotquad/loci/concyclicity.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "rotquad/algebra/matrix.hpp"
#include "rotquad/error.hpp"

namespace rotquad::loci {

namespace {

struct Normalized {
  std::array<Vec3, 4> y;
  double spread = 0;
};

Normalized normalize(const std::array<Vec3, 4>& pts) {
  Vec3 c = Vec3::Zero();
  for (const auto& p : pts) c += p;
  c /= 4;
  Normalized n;
  for (const auto& p : pts) n.spread = std::max(n.spread, (p - c).norm());
  const double s = n.spread > 0 ? n.spread : 1.0;
  for (int k = 0; k < 4; ++k) n.y[k] = (pts[k] - c) / s;
  return n;
}

double det3(const Vec3& a, const Vec3& b, const Vec3& c) { return a.dot(b.cross(c)); }

// Dependency coefficients of three coplanar vectors: a cross product of two
// rows of [u v w], chosen once and kept fixed so that they stay polynomial.
Vec3 dependency(const Mat3& m, int r0, int r1) { return m.row(r0).cross(m.row(r1)); }

}  // namespace

Vec3 Circle3D::point(double s) const {
  if (kind == Kind::Line) return carrier.point_at(s);
  Vec3 n = plane.n.normalized();
  Vec3 e1 = n.unitOrthogonal();
  Vec3 e2 = n.cross(e1);
  return center + radius * (std::cos(s) * e1 + std::sin(s) * e2);
}

double Circle3D::distance_to(const Vec3& x) const {
  if (kind == Kind::Line) return carrier.distance_to(x);
  const Vec3 n = plane.n.normalized();
  const Vec3 r = x - center;
  const double h = r.dot(n);
  const double rho = (r - h * n).norm();
  return std::hypot(h, rho - radius);
}

std::array<Vec3, 4> homologous_points(const RotationQuadrilateral& q, const Vec3& x) {
  std::array<Vec3, 4> out;
  for (int k = 0; k < 4; ++k) out[k] = q.displacements[k].apply(x);
  return out;
}

double coplanarity_residual(const std::array<Vec3, 4>& pts) {
  const Normalized n = normalize(pts);
  return det3(n.y[1] - n.y[0], n.y[2] - n.y[0], n.y[3] - n.y[0]);
}

Circle3D circle_through(const Vec3& a, const Vec3& b, const Vec3& c, double tol) {
  const Vec3 u = b - a, v = c - a;
  const Vec3 w = u.cross(v);
  const double size = std::max({u.norm(), v.norm(), (c - b).norm()});
  Circle3D out;
  if (w.norm() <= tol * size * size) {
    out.kind = Circle3D::Kind::Line;
    const std::array<std::pair<Vec3, Vec3>, 3> pairs{{{a, b}, {a, c}, {b, c}}};
    auto far = *std::max_element(pairs.begin(), pairs.end(), [](auto& p, auto& q) {
      return (p.first - p.second).norm() < (q.first - q.second).norm();
    });
    out.carrier = linegeom::line_through(far.first, far.second);
    return out;
  }
  const Vec3 off = (u.squaredNorm() * v.cross(w) + v.squaredNorm() * w.cross(u)) /
                   (2 * w.squaredNorm());
  out.center = a + off;
  out.radius = off.norm();
  out.plane = HomPlane::through(out.center, w.normalized());
  return out;
}

Concyclicity concyclicity_check(const std::array<Vec3, 4>& pts, double tol) {
  const Normalized n = normalize(pts);
  Concyclicity r;
  r.spread = n.spread;
  if (n.spread == 0) {
    r.concyclic = r.degenerate = true;
    return r;
  }
  Eigen::Matrix<double, 3, 4> b;
  for (int k = 0; k < 3; ++k) {
    const Vec3& p = n.y[k];
    const Vec3& q = n.y[k + 1];
    b(k, 0) = 0.5 * (p.squaredNorm() - q.squaredNorm());
    b.block<1, 3>(k, 1) = (p - q).transpose();
  }
  const Eigen::VectorXd sv = algebra::singular_values(b);
  const double ratio = sv(0) > 0 ? sv(2) / sv(0) : 0.0;
  const double copl = std::abs(coplanarity_residual(pts));
  r.relative = std::max(ratio, copl);
  r.residual = r.relative * n.spread;
  r.concyclic = algebra::rank_with_tol(b, tol) <= 2 && copl <= tol;

  std::vector<Vec3> distinct;
  for (const auto& p : pts) {
    bool seen = false;
    for (const auto& d : distinct) seen = seen || (p - d).norm() <= tol * n.spread;
    if (seen)
      r.degenerate = true;
    else
      distinct.push_back(p);
  }
  if (!r.concyclic) return r;
  if (distinct.size() == 2) {
    Circle3D c;
    c.kind = Circle3D::Kind::Line;
    c.carrier = linegeom::line_through(distinct[0], distinct[1]);
    r.circle = c;
  } else if (distinct.size() >= 3) {
    // The triple of largest area fixes the circle most robustly.
    double best = -1;
    std::array<int, 3> pick{0, 1, 2};
    const int m = static_cast<int>(distinct.size());
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        for (int k = j + 1; k < m; ++k) {
          const double area =
              (distinct[j] - distinct[i]).cross(distinct[k] - distinct[i]).norm();
          if (area > best) {
            best = area;
            pick = {i, j, k};
          }
        }
    r.circle = circle_through(distinct[pick[0]], distinct[pick[1]], distinct[pick[2]], tol);
  }
  return r;
}

LinePolynomialReport line_polynomials(const std::array<Displacement, 4>& positions,
                           const PlueckerLine& line, double tscale, double tol) {
  if (!(tscale > 0)) fail(ErrorKind::InvalidInput, "parameter scale must be positive");
  LinePolynomialReport rep;
  rep.tscale = tscale;
  constexpr int kSamples = 9;
  std::vector<double> ts(kSamples), cop(kSamples), circ(kSamples);
  auto images = [&](double t) {
    std::array<Vec3, 4> x;
    for (int k = 0; k < 4; ++k) x[k] = positions[k].apply(line.point_at(t * tscale));
    return x;
  };
  auto differences = [](const std::array<Vec3, 4>& x) {
    Mat3 m;
    m.col(0) = x[0] - x[1];
    m.col(1) = x[1] - x[2];
    m.col(2) = x[2] - x[3];
    return m;
  };
  // Choose the row pair giving the best-conditioned dependency at t = 0.
  int r0 = 0, r1 = 1;
  {
    const Mat3 m = differences(images(0.0));
    double best = -1;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        const double v = dependency(m, i, j).norm();
        if (v > best) {
          best = v;
          r0 = i;
          r1 = j;
        }
      }
  }
  double cop_bound = 0, circ_bound = 0;
  for (int s = 0; s < kSamples; ++s) {
    const double t = -1.0 + 2.0 * s / (kSamples - 1);
    ts[s] = t;
    const auto x = images(t);
    const Mat3 m = differences(x);
    cop[s] = m.determinant();
    Vec3 c = Vec3::Zero();
    for (const auto& p : x) c += p / 4;
    double spread = 0;
    for (const auto& p : x) spread = std::max(spread, (p - c).norm());
    cop_bound = std::max(cop_bound, spread * spread * spread);
    const Vec3 lam = dependency(m, r0, r1);
    double acc = 0, bound = 0;
    for (int k = 0; k < 3; ++k) {
      const double w = x[k].squaredNorm() - x[k + 1].squaredNorm();
      acc += lam(k) * w;
      bound += std::abs(lam(k)) * (x[k].squaredNorm() + x[k + 1].squaredNorm());
    }
    circ[s] = acc;
    circ_bound = std::max(circ_bound, bound);
  }
  rep.coplanarity = algebra::fit_poly1(ts, cop, 3);
  rep.circularity = algebra::fit_poly1(ts, circ, 4);
  const double cb = cop_bound > 0 ? cop_bound : 1.0;
  const double qb = circ_bound > 0 ? circ_bound : 1.0;
  rep.coplanarity_relative = rep.coplanarity.max_abs_coeff() / cb;
  rep.circularity_relative = rep.circularity.max_abs_coeff() / qb;
  rep.coplanar_everywhere = rep.coplanarity_relative <= tol;
  rep.concyclic_everywhere = rep.coplanar_everywhere && rep.circularity_relative <= tol;
  rep.circularity_degree = -1;
  for (int k = rep.circularity.degree(); k >= 0; --k)
    if (std::abs(rep.circularity[k]) > tol * qb) {
      rep.circularity_degree = k;
      break;
    }
  return rep;
}

}  // namespace rotquad::loci
