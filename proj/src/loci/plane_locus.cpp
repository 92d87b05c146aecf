#include "rotquad/loci/plane_locus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "rotquad/algebra/matrix.hpp"
#include "rotquad/error.hpp"

namespace rotquad::loci {

namespace {

using algebra::HomoPoly;
using algebra::HomoPoly3;
using cd = std::complex<double>;

constexpr double kZeroForm = 1e-12;

double max_imag(const std::array<cd, 3>& x) {
  return std::max({std::abs(x[0].imag()), std::abs(x[1].imag()), std::abs(x[2].imag())});
}

Eigen::Vector3cd to_vec(const std::array<cd, 3>& x) { return {x[0], x[1], x[2]}; }

double angle_between_lines(const Vec3& a, const Vec3& b) {
  return std::atan2(a.cross(b).norm(), std::abs(a.dot(b)));
}

// Relative size of the bilinear cross product: zero iff a and b are
// complex-proportional.
double parallel_residual(const Eigen::Vector3cd& a, const Eigen::Vector3cd& b) {
  const double s = a.norm() * b.norm();
  return s > 0 ? a.cross(b).norm() / s : 0.0;
}

}  // namespace

const char* to_string(RootReality r) noexcept {
  switch (r) {
    case RootReality::Real: return "real";
    case RootReality::Indeterminate: return "indeterminate";
    case RootReality::Complex: return "complex";
  }
  return "complex";
}

const char* to_string(PlaneClassKind k) noexcept {
  switch (k) {
    case PlaneClassKind::AxisOrthogonal: return "axis_orthogonal";
    case PlaneClassKind::TransversalOrthogonal: return "transversal_orthogonal";
    case PlaneClassKind::Spurious: return "spurious";
    case PlaneClassKind::Unmatched: return "unmatched";
  }
  return "unmatched";
}

PlanePolynomials plane_locus_polynomials(const RotationQuadrilateral& q) {
  using P4 = HomoPoly<4>;
  std::vector<std::vector<P4>> m(4, std::vector<P4>(4));
  for (int i = 0; i < 4; ++i) {
    const Mat3& r = q.displacements[i].rotation;
    const Vec3 rt = r.transpose() * q.displacements[i].translation;
    // e_i = (e0 - (R n).t, R n) with n = (e1, e2, e3).
    m[i][0] = P4::linear({1.0, -rt(0), -rt(1), -rt(2)});
    for (int j = 0; j < 3; ++j) m[i][j + 1] = P4::linear({0.0, r(j, 0), r(j, 1), r(j, 2)});
  }
  PlanePolynomials out;
  out.E = algebra::determinant<4>(m);
  const auto parts = algebra::expand_in_variable<4>(out.E, 0);
  out.F = parts[0];
  out.G = parts[1];
  const double emax = std::max(out.E.max_abs_coeff(), std::numeric_limits<double>::min());
  for (std::size_t k = 2; k < parts.size(); ++k)
    out.e0_nonlinearity = std::max(out.e0_nonlinearity, parts[k].max_abs_coeff() / emax);
  if (out.e0_nonlinearity > kZeroForm)
    fail(ErrorKind::Internal, "plane condition is not linear in the homogenizing coordinate");
  out.degenerate = out.G.max_abs_coeff() <= kZeroForm * emax;
  return out;
}

PlaneLocus plane_locus(const RotationQuadrilateral& q, double tol, double tol_angle,
                       double tol_imag, double tol_indeterminate) {
  const PlanePolynomials pp = plane_locus_polynomials(q);
  if (pp.degenerate || pp.F.max_abs_coeff() <= kZeroForm * pp.E.max_abs_coeff())
    fail(ErrorKind::Degenerate, "non-generic quadrilateral");
  std::vector<algebra::ProjRoot2> roots;
  try {
    roots = algebra::solve_homo_system(pp.F, pp.G, tol);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Degenerate) fail(ErrorKind::Degenerate, "non-generic quadrilateral");
    throw;
  }

  std::vector<std::pair<PlaneClassKind, Vec3>> predicted;
  for (const auto& a : q.rel_axes_moving) predicted.push_back({PlaneClassKind::AxisOrthogonal, a.d()});
  for (const auto& t : q.real_transversals())
    predicted.push_back({PlaneClassKind::TransversalOrthogonal, t.d()});
  const double rank_tol = 1e3 * tol;

  PlaneLocus out;
  for (const auto& r : roots) {
    PlaneLocusClass c;
    c.coords = r.coords;
    c.multiplicity = r.multiplicity;
    out.total_multiplicity += r.multiplicity;
    c.residual_f = algebra::normalized_residual(pp.F, r.coords);
    c.residual_g = algebra::normalized_residual(pp.G, r.coords);
    const double im = max_imag(r.coords);
    c.reality = im <= tol_imag            ? RootReality::Real
                : im <= tol_indeterminate ? RootReality::Indeterminate
                                          : RootReality::Complex;
    const Eigen::Vector3cd x = to_vec(r.coords);
    c.normal_direction = x.real().normalized();
    if (c.reality == RootReality::Complex) {
      Eigen::MatrixXcd imgs(3, 4);
      for (int i = 0; i < 4; ++i) imgs.col(i) = q.displacements[i].rotation.cast<cd>() * x;
      c.image_rank = algebra::complex_rank_with_tol(imgs, rank_tol);
      c.kind = c.image_rank <= 2 ? PlaneClassKind::Spurious : PlaneClassKind::Unmatched;
    } else {
      Eigen::MatrixXd imgs(3, 4);
      for (int i = 0; i < 4; ++i) imgs.col(i) = q.displacements[i].rotation * c.normal_direction;
      c.image_rank = algebra::rank_with_tol(imgs, rank_tol);
      if (c.image_rank <= 2) {
        c.kind = PlaneClassKind::Spurious;
      } else {
        c.match_angle = std::numeric_limits<double>::infinity();
        int axis_seen = 0, trans_seen = 0;
        for (const auto& [kind, dir] : predicted) {
          const int idx = kind == PlaneClassKind::AxisOrthogonal ? axis_seen++ : trans_seen++;
          const double a = angle_between_lines(c.normal_direction, dir);
          if (a < c.match_angle) {
            c.match_angle = a;
            c.kind = kind;
            c.index = idx;
          }
        }
        if (!(c.match_angle <= tol_angle)) {
          c.kind = PlaneClassKind::Unmatched;
          c.index = -1;
        }
      }
    }
    if (c.valid()) out.valid_count += 1;
    out.classes.push_back(c);
  }
  return out;
}

SphericalDirections spherical_coplanar_directions(const std::array<Mat3, 4>& rotations,
                                                  double tol) {
  for (const auto& r : rotations)
    if ((r.transpose() * r - Mat3::Identity()).norm() > 1e-8 || r.determinant() < 0)
      fail(ErrorKind::InvalidInput, "matrix is not a proper rotation");
  std::array<std::array<HomoPoly3, 3>, 4> x;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j)
      x[i][j] = HomoPoly3::linear({rotations[i](j, 0), rotations[i](j, 1), rotations[i](j, 2)});
  auto det_of = [&](int a, int b, int c) {
    std::vector<std::vector<HomoPoly3>> m{{x[a][0], x[a][1], x[a][2]},
                                          {x[b][0], x[b][1], x[b][2]},
                                          {x[c][0], x[c][1], x[c][2]}};
    return algebra::determinant<3>(m);
  };
  const HomoPoly3 c1 = det_of(0, 1, 2), c2 = det_of(0, 1, 3);
  const char* msg = "positive-dimensional solution set: the cubics share a component";
  if (c1.max_abs_coeff() <= kZeroForm || c2.max_abs_coeff() <= kZeroForm)
    fail(ErrorKind::Degenerate, msg);
  std::vector<algebra::ProjRoot2> roots;
  try {
    roots = algebra::solve_homo_system(c1, c2, tol);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Degenerate) fail(ErrorKind::Degenerate, msg);
    throw;
  }
  SphericalDirections out;
  const double rank_tol = 1e3 * tol;
  for (const auto& r : roots) {
    SphericalRoot s;
    s.root = r;
    out.total_multiplicity += r.multiplicity;
    const Eigen::Vector3cd v = to_vec(r.coords);
    std::array<Eigen::Vector3cd, 4> img;
    Eigen::MatrixXcd m(3, 4);
    for (int i = 0; i < 4; ++i) {
      img[i] = rotations[i].cast<cd>() * v;
      m.col(i) = img[i];
    }
    s.image_rank = algebra::complex_rank_with_tol(m, rank_tol);
    if (s.image_rank <= 2) {
      out.valid.push_back(s);
      continue;
    }
    s.pair_residual = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        const double res = parallel_residual(img[i], img[j]);
        if (res < s.pair_residual) {
          s.pair_residual = res;
          s.pair = {i, j};
        }
      }
    out.spurious.push_back(s);
  }
  return out;
}

}  // namespace rotquad::loci
