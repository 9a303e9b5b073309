#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmem/channel.hpp"

namespace qmem {

/// Channel ellipsoid: image of the Bloch ball under the channel's affine
/// action. chirality is sign(det Theta); 0 means undetermined (fitted from
/// output points alone).
struct Ellipsoid {
  Vector3d center = Vector3d::Zero();
  Matrix3d Q = Matrix3d::Zero();   // symmetric PSD shape matrix
  Vector3d semiaxes = Vector3d::Zero();  // descending, l_i = sqrt(lambda_i(Q))
  Matrix3d axes = Matrix3d::Identity();  // orthonormal columns
  int chirality = 0;
  bool degenerate = false;
};

struct BlochPoint {
  Vector3d r;
  std::string input_id;
  double weight = 1.0;
};

enum class FitMode { Exact, LeastSquares };

struct FitOptions {
  FitMode mode = FitMode::Exact;
  double degeneracy_tol = 1e-6;
};

struct FitResult {
  Ellipsoid ellipsoid;
  double residual = 0.0;  // RMS algebraic distance
};

struct Mesh {
  std::vector<Vector3d> vertices;
  std::vector<std::array<int, 3>> faces;  // 0-indexed
};

/// Fill semiaxes/axes of an ellipsoid from its shape matrix.
Ellipsoid make_ellipsoid(const Vector3d& center, const Matrix3d& q,
                         int chirality, double degeneracy_tol = 1e-6);

Ellipsoid ellipsoid_of_channel(const PauliForm& p);

double volume(const Ellipsoid& e);

/// Volume-based upper bound on memory robustness: (3V / 4pi)^(1/4).
double volume_bound(const Ellipsoid& e);

std::vector<BlochPoint> sample_outputs(const ChoiState& c,
                                       const std::vector<Vector3d>& inputs);

FitResult fit_ellipsoid(const std::vector<BlochPoint>& points,
                        const FitOptions& opts = {});

/// All chirality candidates consistent with the geometry that pass the CPTP
/// check. Candidate chirality is -1 for Theta = diag(1,-1,1) sqrt(Q) and +1
/// for its negation. Throws NoValidCandidateError when neither is CP.
std::vector<std::pair<ChoiState, int>> reconstruct_choi_candidates(
    const Ellipsoid& e);

Mesh mesh(const Ellipsoid& e, int resolution);

/// 26-point sampling grid: octahedron vertices, edge midpoints and cube
/// diagonals, all unit norm.
const std::vector<Vector3d>& default_input_grid();

}  // namespace qmem
