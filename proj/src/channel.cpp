#include "qmem/channel.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <complex>

namespace qmem {

using namespace std::complex_literals;

const Matrix2cd& pauli(int i) {
  static const Matrix2cd mats[4] = {
      (Matrix2cd() << 1, 0, 0, 1).finished(),
      (Matrix2cd() << 0, 1, 1, 0).finished(),
      (Matrix2cd() << 0, -1i, 1i, 0).finished(),
      (Matrix2cd() << 1, 0, 0, -1).finished(),
  };
  return mats[i];
}

Vector3d bloch_vector(const Matrix2cd& rho) {
  Vector3d r;
  for (int i = 0; i < 3; ++i) r(i) = (rho * pauli(i + 1)).trace().real();
  return r;
}

Matrix2cd state_from_bloch(const Vector3d& r) {
  Matrix2cd rho = 0.5 * pauli(0);
  for (int i = 0; i < 3; ++i) rho += 0.5 * r(i) * pauli(i + 1);
  return rho;
}

static Matrix4cd phi_plus() {
  Eigen::Vector4cd v;
  v << 1, 0, 0, 1;
  v /= std::sqrt(2.0);
  return v * v.adjoint();
}

double kraus_completeness_defect(const KrausSet& k) {
  Matrix2cd sum = Matrix2cd::Zero();
  for (const auto& op : k.ops) sum += op.adjoint() * op;
  return (sum - Matrix2cd::Identity()).cwiseAbs().maxCoeff();
}

ChoiState choi_from_kraus(const KrausSet& k) {
  if (k.ops.empty() || k.ops.size() > 4)
    throw IncompleteKrausError("choi_from_kraus: need 1-4 Kraus operators");
  if (kraus_completeness_defect(k) > 1e-8)
    throw IncompleteKrausError("choi_from_kraus: sum K^dag K != I");
  Matrix4cd phi = phi_plus();
  Matrix4cd out = Matrix4cd::Zero();
  for (const auto& op : k.ops) {
    Matrix4cd big = Matrix4cd::Zero();
    big.block<2, 2>(0, 0) = op;
    big.block<2, 2>(2, 2) = op;  // I (x) K
    out += big * phi * big.adjoint();
  }
  return ChoiState{out};
}

Matrix2cd apply_kraus(const KrausSet& k, const Matrix2cd& rho) {
  Matrix2cd out = Matrix2cd::Zero();
  for (const auto& op : k.ops) out += op * rho * op.adjoint();
  return out;
}

Matrix2cd apply_choi(const ChoiState& c, const Matrix2cd& rho) {
  if (std::abs(rho.trace().real() - 1.0) > 1e-8 ||
      hermiticity_defect(rho) > 1e-8)
    throw BadStateError("apply_choi: input is not a density matrix");
  Matrix4cd big = Matrix4cd::Zero();
  Matrix2cd rt = rho.transpose();
  big.block<2, 2>(0, 0) = rt(0, 0) * Matrix2cd::Identity();
  big.block<2, 2>(0, 2) = rt(0, 1) * Matrix2cd::Identity();
  big.block<2, 2>(2, 0) = rt(1, 0) * Matrix2cd::Identity();
  big.block<2, 2>(2, 2) = rt(1, 1) * Matrix2cd::Identity();  // rho^T (x) I
  return 2.0 * partial_trace(big * c.m, Subsystem::Second);
}

CptpReport is_cptp(const Matrix4cd& m, double tol) {
  CptpReport rep;
  rep.trace_ok = std::abs(m.trace().real() - 1.0) <= tol &&
                 std::abs(m.trace().imag()) <= tol;
  if (hermiticity_defect(m) <= 1e-7) {
    Matrix4cd h = 0.5 * (m + m.adjoint());
    rep.psd = hermitian_eig(h).values.minCoeff() >= -tol;
    Matrix2cd marg = partial_trace(h, Subsystem::First);
    rep.marginal_ok =
        (marg - 0.5 * Matrix2cd::Identity()).cwiseAbs().maxCoeff() <= tol;
  }
  return rep;
}

PauliForm pauli_form(const ChoiState& c) {
  PauliForm p;
  for (int i = 0; i < 3; ++i) {
    Matrix4cd si = Eigen::kroneckerProduct(pauli(i + 1), pauli(0)).eval();
    Matrix4cd so = Eigen::kroneckerProduct(pauli(0), pauli(i + 1)).eval();
    p.a(i) = (c.m * si).trace().real();
    p.b(i) = (c.m * so).trace().real();
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Matrix4cd sij =
          Eigen::kroneckerProduct(pauli(i + 1), pauli(j + 1)).eval();
      p.theta(i, j) = (c.m * sij).trace().real();
    }
  return p;
}

Matrix4cd choi_from_pauli(const PauliForm& p) {
  Matrix4cd m = 0.25 * Matrix4cd::Identity();
  for (int i = 0; i < 3; ++i) {
    m += 0.25 * p.a(i) * Eigen::kroneckerProduct(pauli(i + 1), pauli(0));
    m += 0.25 * p.b(i) * Eigen::kroneckerProduct(pauli(0), pauli(i + 1));
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      m += 0.25 * p.theta(i, j) *
           Eigen::kroneckerProduct(pauli(i + 1), pauli(j + 1));
  return m;
}

AffineMap affine_map(const PauliForm& p) {
  if (p.a.norm() > 1e-8)
    throw NonzeroAError("affine_map: input-copy Bloch vector is not null");
  // Output Bloch component: s_j = B_j + sum_i Theta_ij rtilde_i with
  // rtilde = diag(1,-1,1) r (transpose convention on the input copy).
  Vector3d d(1.0, -1.0, 1.0);
  AffineMap am;
  am.m = p.theta.transpose() * d.asDiagonal();
  am.c = p.b;
  return am;
}

KrausSet preset_identity() { return KrausSet{{Matrix2cd::Identity()}}; }

KrausSet preset_unitary(const Matrix2cd& u) {
  if ((u.adjoint() * u - Matrix2cd::Identity()).cwiseAbs().maxCoeff() > 1e-8)
    throw BadParamError("preset_unitary: matrix is not unitary");
  return KrausSet{{u}};
}

KrausSet preset_depolarizing(double p) {
  if (p < 0.0 || p > 1.0) throw BadParamError("preset_depolarizing: P out of [0,1]");
  KrausSet k;
  k.ops.push_back(std::sqrt((1.0 + 3.0 * p) / 4.0) * pauli(0));
  for (int i = 1; i < 4; ++i)
    k.ops.push_back(std::sqrt((1.0 - p) / 4.0) * pauli(i));
  return k;
}

KrausSet preset_amplitude_damping(double gamma) {
  if (gamma < 0.0 || gamma > 1.0)
    throw BadParamError("preset_amplitude_damping: gamma out of [0,1]");
  Matrix2cd e0, e1;
  e0 << 1, 0, 0, std::sqrt(1.0 - gamma);
  e1 << 0, std::sqrt(gamma), 0, 0;
  return KrausSet{{e0, e1}};
}

KrausSet preset_replacer(const Matrix2cd& sigma) {
  if (std::abs(sigma.trace().real() - 1.0) > 1e-8 ||
      hermiticity_defect(sigma) > 1e-8)
    throw BadParamError("preset_replacer: sigma is not a density matrix");
  Spectrum s = hermitian_eig(sigma);
  if (s.values.minCoeff() < -1e-9)
    throw BadParamError("preset_replacer: sigma is not PSD");
  // K_{kj} = sqrt(s_k) |v_k><j| : rho -> sigma for every input
  KrausSet k;
  for (int ev = 0; ev < 2; ++ev) {
    double w = std::max(0.0, s.values(ev));
    if (w < 1e-14) continue;
    for (int j = 0; j < 2; ++j) {
      Matrix2cd op = Matrix2cd::Zero();
      op.col(j) = std::sqrt(w) * s.vectors.col(ev);
      k.ops.push_back(op);
    }
  }
  return k;
}

KrausSet preset_z_measure_prepare() {
  Matrix2cd k0 = Matrix2cd::Zero(), k1 = Matrix2cd::Zero();
  k0(0, 0) = 1.0;
  k1(1, 1) = 1.0;
  return KrausSet{{k0, k1}};
}

KrausSet compose_post_unitary(const KrausSet& k, const Matrix2cd& u) {
  KrausSet out;
  for (const auto& op : k.ops) out.ops.push_back(u * op);
  return out;
}

KrausSet compose_pre_unitary(const KrausSet& k, const Matrix2cd& u) {
  KrausSet out;
  for (const auto& op : k.ops) out.ops.push_back(op * u);
  return out;
}

}  // namespace qmem
