#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qmem/ellipsoid.hpp"
#include "qmem/metrics.hpp"

namespace qmem {

/// Density-matrix register, 1 to 5 qubits. Qubit 0 is the most significant
/// bit of the basis index.
struct QRegister {
  int n = 1;
  MatrixXcd rho;
};

QRegister make_register(int n);  // |0...0>

// single- and two-qubit gate matrices
Matrix2cd gate_h();
Matrix2cd gate_x();
Matrix2cd gate_ry(double theta);
Matrix2cd gate_u(double theta, double psi);  // Bloch (sin t cos p, sin t sin p, cos t)
Matrix4cd gate_cnot();
Matrix4cd gate_cry(double theta);
MatrixXcd gate_fredkin();  // control, a, b

/// Apply a unitary given in target-qubit order: rho -> G rho G^dagger.
void apply_gate(QRegister& reg, const MatrixXcd& gate,
                const std::vector<int>& targets);

/// Reduce to the listed qubits (partial trace over the rest).
QRegister reduce_to(const QRegister& reg, const std::vector<int>& keep);

QRegister input_prep(double theta, double psi);

/// Five-qubit Fredkin construction; equals preset depolarizing with
/// P = 1 - sin^2(circuit_theta / 2) applied to the prepared input.
QRegister run_depolarizing_circuit(double input_theta, double input_psi,
                                   double circuit_theta);

/// Two-qubit CRy + CNOT construction; equals preset amplitude damping with
/// gamma = sin^2(circuit_theta).
QRegister run_amplitude_damping_circuit(double input_theta, double input_psi,
                                        double circuit_theta);

struct ShotRecord {
  char basis;  // 'X', 'Y', 'Z'
  int shots = 0;
  int plus_count = 0;
  double estimate() const { return 2.0 * plus_count / shots - 1.0; }
};

Vector3d exact_bloch(const QRegister& reg);

/// Pauli tomography of a one-qubit register with binomial shot noise; the
/// generator is seeded and fully deterministic.
std::pair<BlochPoint, std::vector<ShotRecord>> tomography(const QRegister& reg,
                                                          int shots_per_basis,
                                                          std::uint64_t seed);

enum class SweepPreset { Depolarizing, AmplitudeDamping };

struct SweepRow {
  double theta = 0.0;
  double param = 0.0;  // P or gamma
  double volume = 0.0;
  double volume_bound = 0.0;
  double negativity = 0.0;
  double concurrence = 0.0;
  double memory_robustness = 0.0;
  bool eb = false;
  double fit_residual = 0.0;
  std::string flags;  // semicolon-separated notes; empty on a clean row
  std::vector<BlochPoint> points;
};

struct SweepOptions {
  std::optional<int> shots;  // absent = exact expectations
  std::uint64_t seed = 0;
  std::vector<Vector3d> input_grid;  // empty = default 26-point grid
  double robustness_tol = 1e-4;
};

double sweep_param(SweepPreset preset, double theta);

std::vector<BlochPoint> simulate_points(SweepPreset preset, double circuit_theta,
                                        const std::vector<Vector3d>& inputs,
                                        std::optional<int> shots,
                                        std::uint64_t seed,
                                        std::uint64_t theta_index = 0);

std::vector<SweepRow> sweep(SweepPreset preset,
                            const std::vector<double>& circuit_thetas,
                            const SweepOptions& opts = {});

}  // namespace qmem
