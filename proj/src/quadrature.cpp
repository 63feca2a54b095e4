#include "reslab/quadrature.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace reslab {

GaussLegendre::GaussLegendre(int n) : nodes(n), weights(n) {
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double beta = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = beta;
    jacobi(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  nodes = solver.eigenvalues();
  weights = 2.0 * solver.eigenvectors().row(0).transpose().array().square();
}

const GaussLegendre& gauss16() {
  static const GaussLegendre rule(16);
  return rule;
}

}  // namespace reslab
