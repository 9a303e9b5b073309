#include <doctest.h>

#include <cmath>
#include <random>

#include "qmem/numerics.hpp"
#include "support.hpp"

using namespace qmem;

namespace {

// Characteristic polynomial coefficients via Faddeev-LeVerrier; real for
// Hermitian input.
Eigen::VectorXd char_poly(const MatrixXcd& m) {
  const int n = static_cast<int>(m.rows());
  Eigen::VectorXd coeff(n + 1);  // coeff(k) multiplies lambda^(n-k)
  coeff(0) = 1.0;
  MatrixXcd mk = MatrixXcd::Zero(n, n);
  for (int k = 1; k <= n; ++k) {
    mk = m * mk + coeff(k - 1) * MatrixXcd::Identity(n, n);
    coeff(k) = -(m * mk).trace().real() / k;
  }
  return coeff;
}

double eval_poly(const Eigen::VectorXd& c, double x) {
  double v = 0.0;
  for (int i = 0; i < c.size(); ++i) v = v * x + c(i);
  return v;
}

// Independent eigenvalue oracle: isolate sign changes of the characteristic
// polynomial on a fine grid, then bisect each interval.
std::vector<double> roots_by_bisection(const MatrixXcd& m) {
  Eigen::VectorXd c = char_poly(m);
  double bound = m.cwiseAbs().rowwise().sum().maxCoeff() + 1.0;
  const int grid = 200000;
  std::vector<double> roots;
  double prev_x = -bound, prev_v = eval_poly(c, prev_x);
  for (int i = 1; i <= grid; ++i) {
    double x = -bound + 2.0 * bound * i / grid;
    double v = eval_poly(c, x);
    if (prev_v == 0.0) roots.push_back(prev_x);
    if (prev_v * v < 0.0) {
      double lo = prev_x, hi = x, flo = prev_v;
      for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = eval_poly(c, mid);
        if (flo * fm <= 0.0)
          hi = mid;
        else {
          lo = mid;
          flo = fm;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_x = x;
    prev_v = v;
  }
  std::sort(roots.rbegin(), roots.rend());
  return roots;
}

}  // namespace

TEST_CASE("hermitian_eig on the identity") {
  Spectrum s = hermitian_eig(MatrixXcd::Identity(4, 4));
  for (int i = 0; i < 4; ++i) CHECK(s.values(i) == doctest::Approx(1.0));
}

TEST_CASE("hermitian_eig on sigma_x") {
  MatrixXcd sx(2, 2);
  sx << 0, 1, 1, 0;
  Spectrum s = hermitian_eig(sx);
  CHECK(s.values(0) == doctest::Approx(1.0));
  CHECK(s.values(1) == doctest::Approx(-1.0));
}

TEST_CASE("hermitian_eig matches the characteristic-polynomial oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    MatrixXcd m = test::random_hermitian(4, rng);
    Spectrum s = hermitian_eig(m);
    auto roots = roots_by_bisection(m);
    REQUIRE(roots.size() == 4);
    for (int i = 0; i < 4; ++i)
      CHECK(s.values(i) == doctest::Approx(roots[i]).epsilon(1e-8));
  }
}

TEST_CASE("hermitian_eig reconstruction and orthonormality") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 1000; ++trial) {
    int dim = 2 + trial % 3;
    MatrixXcd m = test::random_hermitian(dim, rng);
    Spectrum s = hermitian_eig(m);
    MatrixXcd rebuilt =
        s.vectors * s.values.asDiagonal().toDenseMatrix().cast<std::complex<double>>() *
        s.vectors.adjoint();
    CHECK((m - rebuilt).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((s.vectors.adjoint() * s.vectors - MatrixXcd::Identity(dim, dim))
              .cwiseAbs()
              .maxCoeff() < 1e-10);
    for (Eigen::Index i = 1; i < s.values.size(); ++i)
      CHECK(s.values(i - 1) >= s.values(i));
  }
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
  MatrixXcd m(2, 2);
  m << 0, 1, 0, 0;
  CHECK_THROWS_AS(hermitian_eig(m), NonHermitianError);
}

TEST_CASE("psd_sqrt basics") {
  CHECK((psd_sqrt(MatrixXcd::Identity(3, 3)) - MatrixXcd::Identity(3, 3))
            .cwiseAbs()
            .maxCoeff() < 1e-12);
  MatrixXcd d = MatrixXcd::Zero(2, 2);
  d(0, 0) = 4.0;
  d(1, 1) = 9.0;
  MatrixXcd r = psd_sqrt(d);
  CHECK(r(0, 0).real() == doctest::Approx(2.0));
  CHECK(r(1, 1).real() == doctest::Approx(3.0));
}

TEST_CASE("psd_sqrt squaring round trip and commutation") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    MatrixXcd g = test::random_gaussian(4, 4, rng);
    MatrixXcd p = g * g.adjoint();
    MatrixXcd r = psd_sqrt(p);
    CHECK((r * r - p).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((r * p - p * r).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("psd_sqrt rejects indefinite input") {
  MatrixXcd d = MatrixXcd::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -1.0;
  CHECK_THROWS_AS(psd_sqrt(d), NotPsdError);
}

TEST_CASE("partial_transpose of the maximally entangled projector") {
  Eigen::Vector4cd v;
  v << 1, 0, 0, 1;
  Matrix4cd phi = v * v.adjoint() / 2.0;
  Spectrum s = hermitian_eig(partial_transpose(phi, Subsystem::First));
  CHECK(s.values(0) == doctest::Approx(0.5));
  CHECK(s.values(1) == doctest::Approx(0.5));
  CHECK(s.values(2) == doctest::Approx(0.5));
  CHECK(s.values(3) == doctest::Approx(-0.5));
}

TEST_CASE("partial_transpose on product states transposes one factor") {
  std::mt19937_64 rng(14);
  Matrix2cd a = test::random_density(2, rng);
  Matrix2cd b = test::random_density(2, rng);
  Matrix4cd prod;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      prod.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  Matrix4cd expect;
  Matrix2cd bt = b.transpose();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      expect.block<2, 2>(2 * i, 2 * j) = a(i, j) * bt;
  CHECK((partial_transpose(prod, Subsystem::Second) - expect)
            .cwiseAbs()
            .maxCoeff() < 1e-12);
}

TEST_CASE("partial_transpose is a trace-preserving involution") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 1000; ++trial) {
    Matrix4cd h = test::random_hermitian(4, rng);
    for (Subsystem sub : {Subsystem::First, Subsystem::Second}) {
      Matrix4cd pt = partial_transpose(h, sub);
      CHECK(std::abs((pt.trace() - h.trace()).real()) < 1e-12);
      CHECK(hermiticity_defect(pt) < 1e-12);
      CHECK((partial_transpose(pt, sub) - h).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("partial_trace marginals") {
  Eigen::Vector4cd v;
  v << 1, 0, 0, 1;
  Matrix4cd phi = v * v.adjoint() / 2.0;
  Matrix2cd marg = partial_trace(phi, Subsystem::First);
  CHECK((marg - 0.5 * Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-12);

  std::mt19937_64 rng(16);
  Matrix2cd a = test::random_density(2, rng);
  Matrix2cd b = test::random_density(2, rng);
  Matrix4cd prod;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      prod.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  CHECK((partial_trace(prod, Subsystem::Second) - b).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("partial_trace agrees with the index-summation oracle") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    Matrix4cd rho = test::random_density(4, rng);
    // explicit double-loop sums
    Matrix2cd keep_first = Matrix2cd::Zero();
    Matrix2cd keep_second = Matrix2cd::Zero();
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int i = 0; i < 2; ++i) {
          keep_first(a, b) += rho(2 * a + i, 2 * b + i);
          keep_second(a, b) += rho(2 * i + a, 2 * i + b);
        }
    CHECK((partial_trace(rho, Subsystem::First) - keep_first)
              .cwiseAbs()
              .maxCoeff() < 1e-12);
    CHECK((partial_trace(rho, Subsystem::Second) - keep_second)
              .cwiseAbs()
              .maxCoeff() < 1e-12);
    CHECK(std::abs(partial_trace(rho, Subsystem::First).trace().real() - 1.0) <
          1e-12);
    CHECK(std::abs(partial_trace(rho, Subsystem::Second).trace().real() - 1.0) <
          1e-12);
  }
}

TEST_CASE("nearest_psd clips negative eigenvalues") {
  MatrixXcd d = MatrixXcd::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -1.0;
  MatrixXcd p = nearest_psd(d);
  CHECK(p(0, 0).real() == doctest::Approx(1.0));
  CHECK(std::abs(p(1, 1)) < 1e-12);

  std::mt19937_64 rng(18);
  MatrixXcd psd_in = test::random_density(4, rng);
  CHECK((nearest_psd(psd_in) - psd_in).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("nearest_psd is Frobenius-optimal against sampled PSD matrices") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    MatrixXcd h = test::random_hermitian(3, rng);
    MatrixXcd best = nearest_psd(h);
    double dist = (h - best).norm();
    for (int sample = 0; sample < 200; ++sample) {
      MatrixXcd g = test::random_gaussian(3, 3, rng);
      MatrixXcd x = g * g.adjoint();
      if (sample % 3 == 0) x *= 0.1;
      CHECK((h - x).norm() >= dist - 1e-9);
    }
  }
}
