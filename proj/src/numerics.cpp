#include "qmem/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace qmem {

double hermiticity_defect(const MatrixXcd& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Spectrum hermitian_eig(const MatrixXcd& m) {
  if (m.rows() != m.cols()) throw BadDimError("hermitian_eig: matrix not square");
  if (m.rows() > 32) throw BadDimError("hermitian_eig: dimension exceeds 32");
  if (hermiticity_defect(m) > kHermiticityTol)
    throw NonHermitianError("hermitian_eig: input not Hermitian");

  Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success)
    throw NoConvergenceError("hermitian_eig: eigensolver did not converge");

  const auto n = m.rows();
  Spectrum s;
  s.values.resize(n);
  s.vectors.resize(n, n);
  // Eigen returns ascending order
  for (Eigen::Index k = 0; k < n; ++k) {
    s.values(k) = solver.eigenvalues()(n - 1 - k);
    s.vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return s;
}

MatrixXcd psd_sqrt(const MatrixXcd& m) {
  Spectrum s = hermitian_eig(m);
  if (s.values.minCoeff() < -1e-8)
    throw NotPsdError("psd_sqrt: matrix has a negative eigenvalue");
  VectorXd roots = s.values.cwiseMax(0.0).cwiseSqrt();
  return s.vectors * roots.asDiagonal() * s.vectors.adjoint();
}

MatrixXcd nearest_psd(const MatrixXcd& h) {
  Spectrum s = hermitian_eig(h);
  VectorXd clipped = s.values.cwiseMax(0.0);
  return s.vectors * clipped.asDiagonal() * s.vectors.adjoint();
}

Matrix4cd partial_transpose(const Matrix4cd& rho, Subsystem sub) {
  Matrix4cd out;
  for (int a = 0; a < 2; ++a)
    for (int i = 0; i < 2; ++i)
      for (int b = 0; b < 2; ++b)
        for (int j = 0; j < 2; ++j) {
          if (sub == Subsystem::First)
            out(2 * a + i, 2 * b + j) = rho(2 * b + i, 2 * a + j);
          else
            out(2 * a + i, 2 * b + j) = rho(2 * a + j, 2 * b + i);
        }
  return out;
}

Matrix2cd partial_trace(const Matrix4cd& rho, Subsystem keep) {
  Matrix2cd out = Matrix2cd::Zero();
  if (keep == Subsystem::First) {
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int i = 0; i < 2; ++i) out(a, b) += rho(2 * a + i, 2 * b + i);
  } else {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int a = 0; a < 2; ++a) out(i, j) += rho(2 * a + i, 2 * a + j);
  }
  return out;
}

}  // namespace qmem
