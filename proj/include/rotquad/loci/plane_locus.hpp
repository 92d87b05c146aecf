#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "rotquad/algebra/homo_poly.hpp"
#include "rotquad/algebra/polynomial_system.hpp"
#include "rotquad/construct/rotation_quadrilateral.hpp"

namespace rotquad::loci {

using construct::RotationQuadrilateral;

/// E(e0, e1, e2, e3) = det of the four transformed plane vectors
/// e^T A_i^-1, split as E = F(e1, e2, e3) + e0 G(e1, e2, e3).
struct PlanePolynomials {
  algebra::HomoPoly<4> E;
  algebra::HomoPoly3 F;  // degree 4
  algebra::HomoPoly3 G;  // degree 3: the four rotated normals are concyclic
  // max |coefficient of e0^k|, k >= 2, relative to max |coefficient of E|.
  double e0_nonlinearity = 0;
  // G vanishes identically (all rotation parts equal, for instance).
  bool degenerate = false;
};

PlanePolynomials plane_locus_polynomials(const RotationQuadrilateral& q);

enum class RootReality { Real, Indeterminate, Complex };
const char* to_string(RootReality r) noexcept;

enum class PlaneClassKind { AxisOrthogonal, TransversalOrthogonal, Spurious, Unmatched };
const char* to_string(PlaneClassKind k) noexcept;

/// One pencil of parallel planes, given by its moving-frame normal.
struct PlaneLocusClass {
  std::array<std::complex<double>, 3> coords{};  // normalized projective root
  Vec3 normal_direction = Vec3::UnitZ();         // real part, unit length
  RootReality reality = RootReality::Complex;
  PlaneClassKind kind = PlaneClassKind::Unmatched;
  int index = -1;            // axis i or transversal 0/1 for matched classes
  double match_angle = 0;    // radians to the matched prediction
  int multiplicity = 1;
  int image_rank = 3;        // rank of the rotated normals n_0..n_3
  double residual_f = 0;     // normalized |F|, |G| at the root
  double residual_g = 0;

  bool valid() const {
    return reality == RootReality::Real &&
           (kind == PlaneClassKind::AxisOrthogonal ||
            kind == PlaneClassKind::TransversalOrthogonal);
  }
};

struct PlaneLocus {
  std::vector<PlaneLocusClass> classes;
  int total_multiplicity = 0;
  int valid_count = 0;
};

/// Solves {F = 0, G = 0}; real roots whose rotated normals span a plane
/// through the origin are spurious, the others are matched against the axis
/// and transversal directions within tol_angle radians. Roots whose
/// imaginary part exceeds tol_imag but not tol_indeterminate are reported as
/// indeterminate.
PlaneLocus plane_locus(const RotationQuadrilateral& q, double tol = 1e-9,
                       double tol_angle = 1e-7, double tol_imag = 1e-7,
                       double tol_indeterminate = 1e-5);

/// Root of the two cubics det(x0, x1, x2) = det(x0, x1, x3) = 0 with x_i = R_i x.
struct SphericalRoot {
  algebra::ProjRoot2 root;
  int image_rank = 3;  // complex rank of x_0..x_3
  // For spurious roots: the pair (i, j) with R_i x parallel to R_j x, i.e. an
  // eigendirection of R_i^T R_j, and how well it matched.
  std::array<int, 2> pair{-1, -1};
  double pair_residual = 0;
};

struct SphericalDirections {
  std::vector<SphericalRoot> valid;     // x_0..x_3 span at most a plane
  std::vector<SphericalRoot> spurious;  // the others
  int total_multiplicity = 0;
};

/// Moving-frame lines through the origin whose four rotated images are
/// coplanar. Throws Degenerate when the cubics share a component (for
/// instance R_0 = R_1).
SphericalDirections spherical_coplanar_directions(const std::array<Mat3, 4>& rotations,
                                                  double tol = 1e-9);

}  // namespace rotquad::loci
