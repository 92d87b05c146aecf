#pragma once

#include <array>

#include <Eigen/Dense>

namespace rotquad::algebra {

/// Number of singular values above tol * sigma_max. Zero for the zero matrix.
int rank_with_tol(const Eigen::MatrixXd& m, double tol);
int complex_rank_with_tol(const Eigen::MatrixXcd& m, double tol);

/// Singular values in descending order.
Eigen::VectorXd singular_values(const Eigen::MatrixXd& m);

struct SymEigen3 {
  Eigen::Vector3d values;   // ascending
  Eigen::Matrix3d vectors;  // orthonormal columns, right-handed
};

/// Eigen-decomposition of a symmetric 3x3 matrix. Throws when the asymmetric
/// part exceeds tol relative to the matrix norm.
SymEigen3 sym3_eigen(const Eigen::Matrix3d& m, double tol = 1e-9);

}  // namespace rotquad::algebra
