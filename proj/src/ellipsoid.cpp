#include "qmem/ellipsoid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qmem {

namespace {

struct SymEig3 {
  Vector3d values;  // descending
  Matrix3d vectors;
};

SymEig3 sym_eig3(const Matrix3d& m) {
  Eigen::SelfAdjointEigenSolver<Matrix3d> solver(m);
  SymEig3 out;
  for (int k = 0; k < 3; ++k) {
    out.values(k) = solver.eigenvalues()(2 - k);
    out.vectors.col(k) = solver.eigenvectors().col(2 - k);
  }
  return out;
}

const Vector3d kMirror(1.0, -1.0, 1.0);

}  // namespace

Ellipsoid make_ellipsoid(const Vector3d& center, const Matrix3d& q,
                         int chirality, double degeneracy_tol) {
  Ellipsoid e;
  e.center = center;
  e.Q = 0.5 * (q + q.transpose());
  SymEig3 eg = sym_eig3(e.Q);
  e.semiaxes = eg.values.cwiseMax(0.0).cwiseSqrt();
  e.axes = eg.vectors;
  e.chirality = chirality;
  e.degenerate = eg.values.minCoeff() < degeneracy_tol;
  return e;
}

Ellipsoid ellipsoid_of_channel(const PauliForm& p) {
  if (p.a.norm() > 1e-8)
    throw NonzeroAError("ellipsoid_of_channel: nonzero input-copy marginal");
  double det = p.theta.determinant();
  int chirality = det > 1e-12 ? 1 : (det < -1e-12 ? -1 : 0);
  return make_ellipsoid(p.b, p.theta.transpose() * p.theta, chirality);
}

double volume(const Ellipsoid& e) {
  return 4.0 * std::numbers::pi / 3.0 *
         std::abs(e.semiaxes(0) * e.semiaxes(1) * e.semiaxes(2));
}

double volume_bound(const Ellipsoid& e) {
  return std::pow(3.0 * volume(e) / (4.0 * std::numbers::pi), 0.25);
}

std::vector<BlochPoint> sample_outputs(const ChoiState& c,
                                       const std::vector<Vector3d>& inputs) {
  AffineMap am = affine_map(pauli_form(c));
  std::vector<BlochPoint> out;
  out.reserve(inputs.size());
  int id = 0;
  for (const auto& r : inputs) {
    if (r.norm() > 1.0 + 1e-9)
      throw BadInputError("sample_outputs: input Bloch vector outside ball");
    out.push_back({am.m * r + am.c, std::to_string(id++), 1.0});
  }
  return out;
}

FitResult fit_ellipsoid(const std::vector<BlochPoint>& points,
                        const FitOptions& opts) {
  const auto n = points.size();
  if (n < 9) throw TooFewPointsError("fit_ellipsoid: need at least 9 points");
  for (const auto& p : points)
    if (p.r.norm() > 1.15)
      throw BadInputError("fit_ellipsoid: point far outside Bloch ball");

  Vector3d mean = Vector3d::Zero();
  for (const auto& p : points) mean += p.r;
  mean /= static_cast<double>(n);

  double spread = 0.0;
  for (const auto& p : points) spread = std::max(spread, (p.r - mean).norm());
  if (spread < 1e-9) {
    // All outputs coincide: point ellipsoid (replacer-like channel).
    FitResult res;
    res.ellipsoid = make_ellipsoid(mean, Matrix3d::Zero(), 0, opts.degeneracy_tol);
    res.residual = 0.0;
    return res;
  }

  Eigen::MatrixXd centered(n, 3);
  for (size_t i = 0; i < n; ++i) centered.row(i) = (points[i].r - mean).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered);
  if (svd.singularValues()(2) < 1e-7 * svd.singularValues()(0))
    throw DegenerateDataError("fit_ellipsoid: points are coplanar");

  // Quadric r^T S r + 2 b^T r + d = 0 with tr(S) = 1; unknowns
  // (s11, s22, s12, s13, s23, b1, b2, b3, d), s33 eliminated.
  Eigen::MatrixXd design(n, 9);
  Eigen::VectorXd rhs(n);
  for (size_t i = 0; i < n; ++i) {
    const Vector3d& r = points[i].r;
    double w = std::sqrt(std::max(points[i].weight, 0.0));
    double x = r(0), y = r(1), z = r(2);
    design.row(i) << x * x - z * z, y * y - z * z, 2 * x * y, 2 * x * z,
        2 * y * z, 2 * x, 2 * y, 2 * z, 1.0;
    design.row(i) *= w;
    rhs(i) = -z * z * w;
  }
  Eigen::VectorXd q = design.colPivHouseholderQr().solve(rhs);
  if (!q.allFinite())
    throw DegenerateDataError("fit_ellipsoid: rank-deficient design matrix");

  Matrix3d s;
  s << q(0), q(2), q(3), q(2), q(1), q(4), q(3), q(4), 1.0 - q(0) - q(1);
  Vector3d b(q(5), q(6), q(7));
  double d = q(8);

  SymEig3 es = sym_eig3(s);
  if (es.values.minCoeff() <= 0.0) {
    if (es.values.minCoeff() < -opts.degeneracy_tol)
      throw NotAnEllipsoidError("fit_ellipsoid: quadric is not an ellipsoid");
    // near-flat quadric; clamp and report as degenerate
    es.values = es.values.cwiseMax(1e-12);
  }
  Vector3d inv = es.values.cwiseInverse();
  Matrix3d s_inv = es.vectors * inv.asDiagonal() * es.vectors.transpose();
  Vector3d center = -s_inv * b;
  double k = center.dot(s * center) - d;
  if (k <= 0.0)
    throw NotAnEllipsoidError("fit_ellipsoid: quadric has no real surface");
  Matrix3d shape = k * s_inv;

  FitResult res;
  res.ellipsoid = make_ellipsoid(center, shape, 0, opts.degeneracy_tol);
  double acc = 0.0, wsum = 0.0;
  for (const auto& p : points) {
    Vector3d v = p.r - center;
    double resid = v.dot(s * v) / k - 1.0;
    acc += p.weight * resid * resid;
    wsum += p.weight;
  }
  res.residual = std::sqrt(acc / wsum);
  return res;
}

std::vector<std::pair<ChoiState, int>> reconstruct_choi_candidates(
    const Ellipsoid& e) {
  SymEig3 eg = sym_eig3(e.Q);
  if (eg.values.minCoeff() < -1e-8)
    throw NotPsdError("reconstruct_choi_candidates: shape matrix not PSD");
  Vector3d roots = eg.values.cwiseMax(0.0).cwiseSqrt();
  Matrix3d sqrt_q = eg.vectors * roots.asDiagonal() * eg.vectors.transpose();

  std::vector<std::pair<ChoiState, int>> out;
  for (int sign : {-1, +1}) {
    // sign -1: Theta = diag(1,-1,1) sqrt(Q), det <= 0 (identity-like)
    Matrix3d theta = kMirror.asDiagonal() * sqrt_q;
    if (sign == +1) theta = -theta;
    PauliForm p{Vector3d::Zero(), e.center, theta};
    Matrix4cd m = choi_from_pauli(p);
    if (is_cptp(m, 1e-7).valid()) {
      if (!out.empty() && (out.back().first.m - m).cwiseAbs().maxCoeff() < 1e-12)
        continue;  // degenerate geometry: both signs give the same state
      out.push_back({ChoiState{m}, sign});
    }
  }
  if (out.empty())
    throw NoValidCandidateError(
        "reconstruct_choi_candidates: geometry admits no CPTP channel");
  return out;
}

Mesh mesh(const Ellipsoid& e, int resolution) {
  if (resolution < 8) throw BadResolutionError("mesh: resolution must be >= 8");
  const int n = resolution;
  Mesh m;
  auto surface = [&](const Vector3d& u) {
    return Vector3d(e.center + e.axes * e.semiaxes.cwiseProduct(u));
  };
  m.vertices.push_back(surface(Vector3d(0, 0, 1)));
  for (int i = 1; i < n; ++i) {
    double phi = std::numbers::pi * i / n;
    for (int j = 0; j < n; ++j) {
      double psi = 2.0 * std::numbers::pi * j / n;
      m.vertices.push_back(surface(Vector3d(
          std::sin(phi) * std::cos(psi), std::sin(phi) * std::sin(psi),
          std::cos(phi))));
    }
  }
  m.vertices.push_back(surface(Vector3d(0, 0, -1)));
  const int bottom = n * (n - 1) + 1;
  auto ring = [&](int i, int j) { return 1 + (i - 1) * n + (j % n); };
  for (int j = 0; j < n; ++j) m.faces.push_back({0, ring(1, j), ring(1, j + 1)});
  for (int i = 1; i < n - 1; ++i)
    for (int j = 0; j < n; ++j) {
      m.faces.push_back({ring(i, j), ring(i + 1, j), ring(i + 1, j + 1)});
      m.faces.push_back({ring(i, j), ring(i + 1, j + 1), ring(i, j + 1)});
    }
  for (int j = 0; j < n; ++j)
    m.faces.push_back({bottom, ring(n - 1, j + 1), ring(n - 1, j)});
  return m;
}

const std::vector<Vector3d>& default_input_grid() {
  static const std::vector<Vector3d> grid = [] {
    std::vector<Vector3d> g;
    for (int axis = 0; axis < 3; ++axis)
      for (int s : {1, -1}) {
        Vector3d v = Vector3d::Zero();
        v(axis) = s;
        g.push_back(v);
      }
    const double h = 1.0 / std::numbers::sqrt2;
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b)
        for (int sa : {1, -1})
          for (int sb : {1, -1}) {
            Vector3d v = Vector3d::Zero();
            v(a) = sa * h;
            v(b) = sb * h;
            g.push_back(v);
          }
    const double c = 1.0 / std::sqrt(3.0);
    for (int sx : {1, -1})
      for (int sy : {1, -1})
        for (int sz : {1, -1}) g.push_back(Vector3d(sx * c, sy * c, sz * c));
    return g;
  }();
  return grid;
}

}  // namespace qmem
