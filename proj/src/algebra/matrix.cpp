#include "rotquad/algebra/matrix.hpp"

#include <algorithm>

#include "rotquad/error.hpp"

namespace rotquad::algebra {

namespace {

int count_above(const Eigen::VectorXd& sv, double tol) {
  if (sv.size() == 0 || sv(0) == 0) return 0;
  const double cut = tol * sv(0);
  return static_cast<int>(std::count_if(sv.begin(), sv.end(),
                                        [cut](double s) { return s > cut; }));
}

}  // namespace

Eigen::VectorXd singular_values(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return {};
  return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
}

int rank_with_tol(const Eigen::MatrixXd& m, double tol) {
  return count_above(singular_values(m), tol);
}

int complex_rank_with_tol(const Eigen::MatrixXcd& m, double tol) {
  if (m.size() == 0) return 0;
  return count_above(Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues(), tol);
}

SymEigen3 sym3_eigen(const Eigen::Matrix3d& m, double tol) {
  const double scale = std::max(m.norm(), 1e-300);
  if ((m - m.transpose()).norm() > tol * scale)
    fail(ErrorKind::InvalidInput, "sym3_eigen: matrix is not symmetric");
  const Eigen::Matrix3d s = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(s);
  SymEigen3 out{solver.eigenvalues(), solver.eigenvectors()};
  if (out.vectors.determinant() < 0) out.vectors.col(2) *= -1;
  return out;
}

}  // namespace rotquad::algebra
