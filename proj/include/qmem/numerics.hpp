#pragma once

#include <Eigen/Dense>

#include "qmem/errors.hpp"

namespace qmem {

using Eigen::Matrix2cd;
using Eigen::Matrix3d;
using Eigen::Matrix4cd;
using Eigen::MatrixXcd;
using Eigen::Vector3d;
using Eigen::VectorXd;

enum class Subsystem { First, Second };

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.
struct Spectrum {
  VectorXd values;    // descending
  MatrixXcd vectors;  // orthonormal columns, vectors.col(k) <-> values(k)
};

inline constexpr double kHermiticityTol = 1e-9;

/// max_ij |M - M^dagger|
double hermiticity_defect(const MatrixXcd& m);

Spectrum hermitian_eig(const MatrixXcd& m);

/// Principal square root of a PSD matrix. Eigenvalues in [-1e-10, 0) are
/// clipped to zero; below -1e-8 is an error.
MatrixXcd psd_sqrt(const MatrixXcd& m);

/// Frobenius-nearest PSD matrix to a Hermitian input (negative eigenvalues
/// clipped in the eigenbasis).
MatrixXcd nearest_psd(const MatrixXcd& h);

Matrix4cd partial_transpose(const Matrix4cd& rho, Subsystem sub);

Matrix2cd partial_trace(const Matrix4cd& rho, Subsystem keep);

}  // namespace qmem
