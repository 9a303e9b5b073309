#include <doctest.h>

#include <cmath>
#include <random>

#include "qmem/metrics.hpp"
#include "support.hpp"

using namespace qmem;

namespace {

Matrix4cd phi_plus() {
  Eigen::Vector4cd v;
  v << 1, 0, 0, 1;
  v /= std::sqrt(2.0);
  return v * v.adjoint();
}

Matrix4cd product_state(const Matrix2cd& a, const Matrix2cd& b) {
  Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

}  // namespace

TEST_CASE("concurrence of reference states") {
  Matrix2cd zero = Matrix2cd::Zero();
  zero(0, 0) = 1.0;
  CHECK(concurrence(product_state(zero, zero)) == doctest::Approx(0.0));
  CHECK(concurrence(phi_plus()) == doctest::Approx(1.0));

  for (double p : {0.1, 0.4, 0.8, 1.0}) {
    Matrix4cd choi = choi_from_kraus(preset_depolarizing(p)).m;
    double expect = std::max(0.0, (3.0 * p - 1.0) / 2.0);
    CHECK(concurrence(choi) == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("negativity of reference states") {
  std::mt19937_64 rng(41);
  Matrix2cd a = test::random_density(2, rng);
  Matrix2cd b = test::random_density(2, rng);
  CHECK(negativity(product_state(a, b)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(negativity(phi_plus()) == doctest::Approx(0.5));

  for (double p : {0.1, 0.4, 0.8, 1.0}) {
    Matrix4cd choi = choi_from_kraus(preset_depolarizing(p)).m;
    double expect = std::max(0.0, (3.0 * p - 1.0) / 4.0);
    CHECK(negativity(choi) == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("negativity and concurrence are local-unitary invariant") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix4cd rho = choi_from_kraus(test::random_channel(rng)).m;
    Matrix4cd uv = Matrix4cd::Zero();
    Matrix2cd u = test::random_unitary(2, rng);
    Matrix2cd v = test::random_unitary(2, rng);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) uv.block<2, 2>(2 * i, 2 * j) = u(i, j) * v;
    Matrix4cd rotated = uv * rho * uv.adjoint();
    CHECK(std::abs(negativity(rotated) - negativity(rho)) < 1e-9);
    CHECK(std::abs(concurrence(rotated) - concurrence(rho)) < 1e-9);
  }
}

TEST_CASE("is_eb reference channels") {
  CHECK(is_eb(choi_from_kraus(preset_depolarizing(0.2))));
  CHECK_FALSE(is_eb(choi_from_kraus(preset_amplitude_damping(0.9))));
  Matrix2cd zero = Matrix2cd::Zero();
  zero(0, 0) = 1.0;
  CHECK(is_eb(choi_from_kraus(preset_replacer(zero))));
  CHECK(is_eb(choi_from_kraus(preset_z_measure_prepare())));
}

TEST_CASE("PPT, zero negativity and zero robustness agree") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 1000; ++trial) {
    Matrix4cd rho = test::random_density(4, rng);
    bool ppt = hermitian_eig(partial_transpose(rho, Subsystem::Second))
                   .values.minCoeff() >= -1e-6;
    bool zero_neg = negativity(rho) <= 1e-6;
    CHECK(ppt == zero_neg);
    if (trial < 40)  // robustness is the slow one
      CHECK(ppt == (state_robustness(rho).value <= 1e-6 + 1e-4));
  }
}

TEST_CASE("memory_robustness of EB presets is zero") {
  Matrix2cd zero = Matrix2cd::Zero();
  zero(0, 0) = 1.0;
  CHECK(memory_robustness(choi_from_kraus(preset_replacer(zero))).value == 0.0);
  CHECK(memory_robustness(choi_from_kraus(preset_z_measure_prepare())).value ==
        0.0);
  for (double p : {0.1, 0.3333}) {
    CHECK(memory_robustness(choi_from_kraus(preset_depolarizing(p))).value ==
          0.0);
  }
}

TEST_CASE("memory_robustness of the identity channel is sandwiched") {
  ChoiState id = choi_from_kraus(preset_identity());
  RobustnessResult r = memory_robustness(id);
  CHECK(r.value > negativity(id.m) - 1e-4);  // >= negativity - tol
  CHECK(r.value <= 1.0 + 1e-4);              // volume bound with V = 4pi/3
  CHECK(std::abs(r.value - 1.0) < 3e-4);
  CHECK(r.t_hi - r.t_lo <= 1e-4 + 1e-12);
}

TEST_CASE("robustness tolerance range is enforced") {
  ChoiState id = choi_from_kraus(preset_identity());
  CHECK_THROWS_AS(memory_robustness(id, 1e-7), BadParamError);
  CHECK_THROWS_AS(memory_robustness(id, 0.5), BadParamError);
}

TEST_CASE("entanglement ordering chain on random states") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 500; ++trial) {
    Matrix4cd rho = test::random_density(4, rng);
    CHECK(concurrence(rho) >= negativity(rho) - 1e-7);
  }
  // E_R is bounded by the trace-norm defect of the partial transpose,
  // which is twice the negativity; tight for maximally entangled states.
  for (int trial = 0; trial < 25; ++trial) {
    Matrix4cd rho = test::random_density(4, rng);
    double er = state_robustness(rho).value;
    CHECK(2.0 * negativity(rho) >= er - 2e-4);
    CHECK(er >= 0.0);
  }
  // E_R(phi+) = 1 = E_C(phi+); saturates both bounds
  double er_phi = state_robustness(phi_plus()).value;
  CHECK(std::abs(er_phi - 1.0) < 5e-4);
}

TEST_CASE("volume bound and robustness relations on random channels") {
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 25; ++trial) {
    ChoiState c = choi_from_kraus(test::random_channel(rng));
    double qm = memory_robustness(c).value;
    double bound = volume_bound(ellipsoid_of_channel(pauli_form(c)));
    CHECK(qm <= bound + 1e-4);
    // constraining the noise to Choi states cannot decrease the optimum
    CHECK(qm >= state_robustness(c.m).value - 2e-4);
    // for Choi-state noise the optimum is the trace-norm defect of the
    // partial transpose (exact SDP cross-check)
    CHECK(std::abs(qm - 2.0 * negativity(c.m)) < 3e-4);
  }
}

TEST_CASE("memory_robustness closed forms for the preset families") {
  for (double p : {0.5, 0.7, 0.9, 1.0}) {
    double qm = memory_robustness(choi_from_kraus(preset_depolarizing(p))).value;
    CHECK(std::abs(qm - (3.0 * p - 1.0) / 2.0) < 3e-4);
  }
  for (double g : {0.0, 0.2, 0.5, 0.8}) {
    double qm =
        memory_robustness(choi_from_kraus(preset_amplitude_damping(g))).value;
    CHECK(std::abs(qm - (1.0 - g)) < 3e-4);
  }
}

TEST_CASE("robustness monotonicity along the preset families") {
  double prev = -1.0;
  for (double p : {0.2, 0.4, 0.6, 0.8, 1.0}) {
    double qm = memory_robustness(choi_from_kraus(preset_depolarizing(p))).value;
    CHECK(qm >= prev - 2e-4);
    prev = qm;
  }
  prev = 10.0;
  for (double g : {0.0, 0.25, 0.5, 0.75, 0.95}) {
    double qm =
        memory_robustness(choi_from_kraus(preset_amplitude_damping(g))).value;
    CHECK(qm <= prev + 2e-4);
    prev = qm;
  }
}

TEST_CASE("memory_report aggregates the pieces") {
  MemoryReport id = memory_report(choi_from_kraus(preset_identity()));
  CHECK_FALSE(id.eb);
  CHECK(id.negativity == doctest::Approx(0.5));
  CHECK(id.concurrence == doctest::Approx(1.0));
  CHECK(id.volume_bound == doctest::Approx(1.0));
  CHECK(id.lemma_gap >= -1e-4);

  MemoryReport dep = memory_report(choi_from_kraus(preset_depolarizing(0.2)));
  CHECK(dep.eb);
  CHECK(dep.negativity == doctest::Approx(0.0));
  CHECK(dep.concurrence == doctest::Approx(0.0));
  CHECK(dep.memory_robustness == 0.0);
  CHECK(dep.volume_bound == doctest::Approx(std::pow(0.2, 0.75)));

  MemoryReport dead = memory_report(choi_from_kraus(preset_amplitude_damping(1.0)));
  CHECK(dead.eb);
  CHECK(dead.volume_bound == doctest::Approx(0.0));
}
