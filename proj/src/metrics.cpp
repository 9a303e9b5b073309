#include "qmem/metrics.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>

namespace qmem {

namespace {

void require_density(const Matrix4cd& rho) {
  if (hermiticity_defect(rho) > 1e-8 ||
      std::abs(rho.trace().real() - 1.0) > 1e-7)
    throw BadStateError("expected a two-qubit density matrix");
}

double min_pt_eigenvalue(const Matrix4cd& rho) {
  return hermitian_eig(partial_transpose(rho, Subsystem::Second))
      .values.minCoeff();
}

using NoiseSet = detail::RobustnessNoise;

double frob(const Matrix4cd& m) { return m.norm(); }

Matrix4cd proj_psd(const Matrix4cd& x) {
  return nearest_psd(0.5 * (x + x.adjoint()));
}

// Affine noise constraints: trace 1 always; for Choi noise additionally the
// input-copy marginal must be I/2, i.e. the sigma_i (x) I Pauli components
// vanish.
Matrix4cd proj_affine(const Matrix4cd& x, NoiseSet ns) {
  Matrix4cd out = x;
  out += (1.0 - x.trace()) / 4.0 * Matrix4cd::Identity();
  if (ns == NoiseSet::Choi) {
    for (int i = 1; i < 4; ++i) {
      Matrix4cd p = Eigen::kroneckerProduct(pauli(i), pauli(0)).eval();
      out -= (out * p).trace() / 4.0 * p;
    }
  }
  return out;
}

// {X : PT(rho + t X) is PSD}; the map X -> PT(rho + t X) is a scaled isometry
// so the projection pulls back the PSD projection.
Matrix4cd proj_ppt_shift(const Matrix4cd& x, const Matrix4cd& rho, double t) {
  Matrix4cd y = partial_transpose(rho + t * x, Subsystem::Second);
  Matrix4cd yp = proj_psd(y);
  return (partial_transpose(yp, Subsystem::Second) - rho) / t;
}

}  // namespace

namespace detail {

constexpr int kMaxCycles = 50000;
constexpr int kStallWindow = 500;
constexpr double kFeasibleTol = 1e-8;
constexpr double kStallTol = 1e-6;
// Residual decision threshold when the iteration cap is reached. This only
// happens when t sits within about one bisection tolerance of the true
// transition, where first-order projections cannot reach either the feasible
// or the stall criterion; the residual still separates the two sides.
constexpr double kCapDecideTol = 1e-4;

/// Dykstra's alternating projections; true iff a noise state X exists making
/// (rho + t X)/(1 + t) PPT.
bool mix_feasible(const Matrix4cd& rho, double t, RobustnessNoise ns,
                  FeasibilityTrace* trace) {
  Matrix4cd x = 0.25 * Matrix4cd::Identity();
  Matrix4cd inc[3] = {Matrix4cd::Zero(), Matrix4cd::Zero(), Matrix4cd::Zero()};
  double best = std::numeric_limits<double>::infinity();
  int best_cycle = 0;
  for (int cycle = 0; cycle < kMaxCycles; ++cycle) {
    for (int k = 0; k < 3; ++k) {
      Matrix4cd z = x + inc[k];
      Matrix4cd y;
      switch (k) {
        case 0: y = proj_psd(z); break;
        case 1: y = proj_affine(z, ns); break;
        default: y = proj_ppt_shift(z, rho, t); break;
      }
      inc[k] = z - y;
      x = 0.5 * (y + y.adjoint());
    }
    // x is the symmetrized S3 projection, so only the PSD and affine
    // distances can be nonzero.
    double viol = std::max(frob(x - proj_psd(x)), frob(x - proj_affine(x, ns)));
    if (trace) {
      trace->cycles = cycle + 1;
      trace->final_violation = viol;
      trace->violations.push_back(viol);
    }
    if (viol < kFeasibleTol) return true;
    if (viol < best * (1.0 - 1e-3)) {
      best = viol;
      best_cycle = cycle;
    }
    if (best > kStallTol && cycle - best_cycle >= kStallWindow) return false;
  }
  return best < kCapDecideTol;
}

}  // namespace detail

namespace {

RobustnessResult robustness_impl(const Matrix4cd& rho, double tol,
                                 NoiseSet ns) {
  if (tol < 1e-6 || tol > 1e-2)
    throw BadParamError("robustness: tol must be in [1e-6, 1e-2]");
  require_density(rho);
  if (min_pt_eigenvalue(rho) >= -1e-9) return {0.0, 0.0, 0.0};

  double lo = 0.0, hi = 1.0;
  while (!detail::mix_feasible(rho, hi, ns)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 64.0)
      throw NoConvergenceError("robustness: no feasible mixing weight found");
  }
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (detail::mix_feasible(rho, mid, ns))
      hi = mid;
    else
      lo = mid;
  }
  return {0.5 * (lo + hi), lo, hi};
}

}  // namespace

double concurrence(const Matrix4cd& rho) {
  require_density(rho);
  if (hermitian_eig(0.5 * (rho + rho.adjoint())).values.minCoeff() < -1e-8)
    throw BadStateError("concurrence: state not PSD");
  Matrix4cd yy = Eigen::kroneckerProduct(pauli(2), pauli(2)).eval();
  Matrix4cd spin_flipped = yy * rho.conjugate() * yy;
  // eigenvalues of rho * rho_tilde are the squares of the usual lambdas
  Eigen::ComplexEigenSolver<Matrix4cd> solver(rho * spin_flipped);
  std::array<double, 4> lambda{};
  for (int i = 0; i < 4; ++i) {
    // real and nonnegative for valid states; clip numerical noise
    double v = std::max(0.0, solver.eigenvalues()(i).real());
    lambda[i] = std::sqrt(v);
  }
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  double c = lambda[0] - lambda[1] - lambda[2] - lambda[3];
  return std::clamp(c, 0.0, 1.0);
}

double negativity(const Matrix4cd& rho) {
  require_density(rho);
  Spectrum s = hermitian_eig(partial_transpose(rho, Subsystem::Second));
  double neg = 0.0;
  for (Eigen::Index i = 0; i < s.values.size(); ++i)
    if (s.values(i) < 0.0) neg -= s.values(i);
  return neg;
}

bool is_eb(const ChoiState& c, double tol) {
  return min_pt_eigenvalue(c.m) >= -tol;
}

RobustnessResult memory_robustness(const ChoiState& c, double tol) {
  return robustness_impl(c.m, tol, NoiseSet::Choi);
}

RobustnessResult state_robustness(const Matrix4cd& rho, double tol) {
  return robustness_impl(rho, tol, NoiseSet::Density);
}

MemoryReport memory_report(const ChoiState& c, double robustness_tol,
                           double ppt_tol) {
  MemoryReport rep;
  rep.eb = is_eb(c, ppt_tol);
  rep.negativity = negativity(c.m);
  rep.concurrence = concurrence(c.m);
  Ellipsoid e = ellipsoid_of_channel(pauli_form(c));
  rep.volume = volume(e);
  rep.volume_bound = volume_bound(e);
  rep.memory_robustness = rep.eb ? 0.0 : memory_robustness(c, robustness_tol).value;
  rep.lemma_gap = rep.volume_bound - rep.memory_robustness;
  return rep;
}

}  // namespace qmem
