#pragma once

// Shared random-object generators for the test suites. Everything is seeded
// so failures reproduce.

#include <complex>
#include <random>

#include "qmem/channel.hpp"
#include "qmem/numerics.hpp"

namespace qmem::test {

inline Eigen::MatrixXcd random_gaussian(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      m(r, c) = std::complex<double>(gauss(rng), gauss(rng));
  return m;
}

inline Eigen::MatrixXcd random_hermitian(int dim, std::mt19937_64& rng) {
  Eigen::MatrixXcd g = random_gaussian(dim, dim, rng);
  return 0.5 * (g + g.adjoint());
}

inline Eigen::MatrixXcd random_density(int dim, std::mt19937_64& rng) {
  Eigen::MatrixXcd g = random_gaussian(dim, dim, rng);
  Eigen::MatrixXcd rho = g * g.adjoint();
  return rho / rho.trace().real();
}

inline Eigen::MatrixXcd random_unitary(int dim, std::mt19937_64& rng) {
  Eigen::MatrixXcd g = random_gaussian(dim, dim, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    std::complex<double> d = r(i, i);
    q.col(i) *= d / std::abs(d);
  }
  return q;
}

/// Haar-isometry Kraus set: QR of a 2k x 2 Gaussian matrix, split into k
/// stacked 2x2 blocks.
inline KrausSet random_kraus(int k, std::mt19937_64& rng) {
  Eigen::MatrixXcd g = random_gaussian(2 * k, 2, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd iso =
      Eigen::MatrixXcd(qr.householderQ()).leftCols(2);
  KrausSet out;
  for (int i = 0; i < k; ++i) out.ops.push_back(iso.block<2, 2>(2 * i, 0));
  return out;
}

inline KrausSet random_channel(std::mt19937_64& rng) {
  return random_kraus(4, rng);
}

}  // namespace qmem::test
