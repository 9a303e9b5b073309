#pragma once

#include <string>
#include <vector>

#include "qmem/numerics.hpp"

namespace qmem {

/// Kraus representation of a single-qubit channel. Completeness
/// sum K^dagger K = I is required (tolerance 1e-9).
struct KrausSet {
  std::vector<Matrix2cd> ops;
};

/// Choi state of a single-qubit channel: 4x4, PSD, unit trace, with the
/// input-copy subsystem first and the output subsystem second. The marginal
/// on the input copy must be I/2.
struct ChoiState {
  Matrix4cd m;
};

/// Pauli expansion coefficients of a two-qubit state with uniform 1/4
/// normalization: rho = 1/4 [I + a.sigma x I + I x b.sigma + sum theta_ij
/// sigma_i x sigma_j]. For a valid Choi state, a = 0.
struct PauliForm {
  Vector3d a;
  Vector3d b;
  Matrix3d theta;
};

/// Bloch-vector action of the channel: r -> m*r + c.
struct AffineMap {
  Matrix3d m;
  Vector3d c;
};

struct CptpReport {
  bool psd = false;
  bool marginal_ok = false;
  bool trace_ok = false;
  bool valid() const { return psd && marginal_ok && trace_ok; }
};

/// Pauli matrix, i in 0..3 = I, X, Y, Z.
const Matrix2cd& pauli(int i);

Vector3d bloch_vector(const Matrix2cd& rho);
Matrix2cd state_from_bloch(const Vector3d& r);

double kraus_completeness_defect(const KrausSet& k);

ChoiState choi_from_kraus(const KrausSet& k);

Matrix2cd apply_kraus(const KrausSet& k, const Matrix2cd& rho);
Matrix2cd apply_choi(const ChoiState& c, const Matrix2cd& rho);

CptpReport is_cptp(const Matrix4cd& m, double tol = 1e-8);

PauliForm pauli_form(const ChoiState& c);
Matrix4cd choi_from_pauli(const PauliForm& p);

AffineMap affine_map(const PauliForm& p);

// Preset channels
KrausSet preset_identity();
KrausSet preset_unitary(const Matrix2cd& u);
KrausSet preset_depolarizing(double p);
KrausSet preset_amplitude_damping(double gamma);
KrausSet preset_replacer(const Matrix2cd& sigma);
KrausSet preset_z_measure_prepare();

/// Compose: apply `k` then the unitary `u` (post), or `u` then `k` (pre).
KrausSet compose_post_unitary(const KrausSet& k, const Matrix2cd& u);
KrausSet compose_pre_unitary(const KrausSet& k, const Matrix2cd& u);

}  // namespace qmem
