#include "qmem/circuitsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace qmem {

namespace {

using namespace std::complex_literals;

int bit_of(int index, int qubit, int n) { return (index >> (n - 1 - qubit)) & 1; }

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t theta_index,
                          std::uint64_t input_index) {
  return mix64(base ^ mix64(theta_index + 1) ^ mix64((input_index + 1) << 20));
}

}  // namespace

QRegister make_register(int n) {
  if (n < 1 || n > 5) throw BadParamError("make_register: 1-5 qubits");
  QRegister reg;
  reg.n = n;
  reg.rho = MatrixXcd::Zero(1 << n, 1 << n);
  reg.rho(0, 0) = 1.0;
  return reg;
}

Matrix2cd gate_h() {
  Matrix2cd h;
  h << 1, 1, 1, -1;
  return h / std::numbers::sqrt2;
}

Matrix2cd gate_x() { return pauli(1); }

Matrix2cd gate_ry(double theta) {
  Matrix2cd g;
  double c = std::cos(theta / 2), s = std::sin(theta / 2);
  g << c, -s, s, c;
  return g;
}

Matrix2cd gate_u(double theta, double psi) {
  Matrix2cd g;
  double c = std::cos(theta / 2), s = std::sin(theta / 2);
  g << c, -s * std::exp(-1i * psi), s * std::exp(1i * psi), c;
  return g;
}

Matrix4cd gate_cnot() {
  Matrix4cd g = Matrix4cd::Zero();
  g(0, 0) = g(1, 1) = g(2, 3) = g(3, 2) = 1.0;
  return g;
}

Matrix4cd gate_cry(double theta) {
  Matrix4cd g = Matrix4cd::Zero();
  g.block<2, 2>(0, 0) = Matrix2cd::Identity();
  g.block<2, 2>(2, 2) = gate_ry(theta);
  return g;
}

MatrixXcd gate_fredkin() {
  MatrixXcd g = MatrixXcd::Identity(8, 8);
  g(5, 5) = g(6, 6) = 0.0;
  g(5, 6) = g(6, 5) = 1.0;  // |1ab> -> |1ba>
  return g;
}

void apply_gate(QRegister& reg, const MatrixXcd& gate,
                const std::vector<int>& targets) {
  const int k = static_cast<int>(targets.size());
  if (gate.rows() != (1 << k) || gate.cols() != (1 << k))
    throw BadTargetsError("apply_gate: gate size does not match target count");
  std::vector<bool> seen(reg.n, false);
  for (int t : targets) {
    if (t < 0 || t >= reg.n || seen[t])
      throw BadTargetsError("apply_gate: invalid or repeated target");
    seen[t] = true;
  }
  const int dim = 1 << reg.n;
  MatrixXcd full = MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    int ti = 0;
    for (int q = 0; q < k; ++q) ti = (ti << 1) | bit_of(i, targets[q], reg.n);
    for (int j = 0; j < dim; ++j) {
      bool same = true;
      for (int q = 0; q < reg.n && same; ++q)
        if (!seen[q] && bit_of(i, q, reg.n) != bit_of(j, q, reg.n)) same = false;
      if (!same) continue;
      int tj = 0;
      for (int q = 0; q < k; ++q) tj = (tj << 1) | bit_of(j, targets[q], reg.n);
      full(i, j) = gate(ti, tj);
    }
  }
  reg.rho = full * reg.rho * full.adjoint();
}

QRegister reduce_to(const QRegister& reg, const std::vector<int>& keep) {
  QRegister out;
  out.n = static_cast<int>(keep.size());
  const int dim_out = 1 << out.n;
  const int dim_in = 1 << reg.n;
  out.rho = MatrixXcd::Zero(dim_out, dim_out);
  for (int i = 0; i < dim_in; ++i)
    for (int j = 0; j < dim_in; ++j) {
      bool traced_equal = true;
      for (int q = 0; q < reg.n && traced_equal; ++q) {
        if (std::find(keep.begin(), keep.end(), q) != keep.end()) continue;
        if (bit_of(i, q, reg.n) != bit_of(j, q, reg.n)) traced_equal = false;
      }
      if (!traced_equal) continue;
      int oi = 0, oj = 0;
      for (int q : keep) {
        oi = (oi << 1) | bit_of(i, q, reg.n);
        oj = (oj << 1) | bit_of(j, q, reg.n);
      }
      out.rho(oi, oj) += reg.rho(i, j);
    }
  return out;
}

QRegister input_prep(double theta, double psi) {
  QRegister reg = make_register(1);
  apply_gate(reg, gate_u(theta, psi), {0});
  return reg;
}

QRegister run_depolarizing_circuit(double input_theta, double input_psi,
                                   double circuit_theta) {
  QRegister reg = make_register(5);
  apply_gate(reg, gate_u(input_theta, input_psi), {0});
  // Bell pair on (q1, q2): q1's marginal is maximally mixed
  apply_gate(reg, gate_h(), {1});
  apply_gate(reg, gate_cnot(), {1, 2});
  // (q3, q4): classical mixture diag(1 - P', P') on q3, P' = sin^2(theta/2)
  apply_gate(reg, gate_ry(circuit_theta), {3});
  apply_gate(reg, gate_cnot(), {3, 4});
  // swap input with the mixed qubit when the control fires
  apply_gate(reg, gate_fredkin(), {3, 0, 1});
  return reduce_to(reg, {0});
}

QRegister run_amplitude_damping_circuit(double input_theta, double input_psi,
                                        double circuit_theta) {
  double gamma = std::sin(circuit_theta) * std::sin(circuit_theta);
  QRegister reg = make_register(2);
  apply_gate(reg, gate_u(input_theta, input_psi), {0});
  // 2 asin(sqrt(gamma)) puts amplitude sqrt(gamma) on |1> of the ancilla
  apply_gate(reg, gate_cry(2.0 * std::asin(std::sqrt(gamma))), {0, 1});
  apply_gate(reg, gate_cnot(), {1, 0});
  return reduce_to(reg, {0});
}

Vector3d exact_bloch(const QRegister& reg) {
  if (reg.n != 1) throw BadParamError("exact_bloch: one-qubit register expected");
  return bloch_vector(reg.rho);
}

std::pair<BlochPoint, std::vector<ShotRecord>> tomography(const QRegister& reg,
                                                          int shots_per_basis,
                                                          std::uint64_t seed) {
  if (shots_per_basis < 1) throw BadShotsError("tomography: shots must be >= 1");
  Vector3d exact = exact_bloch(reg);
  std::mt19937_64 rng(seed);
  BlochPoint point;
  std::vector<ShotRecord> records;
  const char bases[3] = {'X', 'Y', 'Z'};
  for (int i = 0; i < 3; ++i) {
    double p = std::clamp(0.5 * (1.0 + exact(i)), 0.0, 1.0);
    std::binomial_distribution<int> dist(shots_per_basis, p);
    ShotRecord rec{bases[i], shots_per_basis, dist(rng)};
    point.r(i) = rec.estimate();
    records.push_back(rec);
  }
  return {point, records};
}

double sweep_param(SweepPreset preset, double theta) {
  double s = std::sin(preset == SweepPreset::Depolarizing ? theta / 2 : theta);
  double s2 = s * s;
  return preset == SweepPreset::Depolarizing ? 1.0 - s2 : s2;
}

std::vector<BlochPoint> simulate_points(SweepPreset preset, double circuit_theta,
                                        const std::vector<Vector3d>& inputs,
                                        std::optional<int> shots,
                                        std::uint64_t seed,
                                        std::uint64_t theta_index) {
  std::vector<BlochPoint> points;
  points.reserve(inputs.size());
  for (size_t i = 0; i < inputs.size(); ++i) {
    const Vector3d& r = inputs[i];
    if (r.norm() > 1.0 + 1e-9)
      throw BadInputError("simulate_points: input outside Bloch ball");
    double theta_in = std::acos(std::clamp(r(2), -1.0, 1.0));
    double psi_in = std::atan2(r(1), r(0));
    if (psi_in < 0) psi_in += 2.0 * std::numbers::pi;
    QRegister out = preset == SweepPreset::Depolarizing
                        ? run_depolarizing_circuit(theta_in, psi_in, circuit_theta)
                        : run_amplitude_damping_circuit(theta_in, psi_in,
                                                        circuit_theta);
    BlochPoint p;
    if (shots) {
      p = tomography(out, *shots, derive_seed(seed, theta_index, i)).first;
    } else {
      p.r = exact_bloch(out);
    }
    p.input_id = std::to_string(i);
    points.push_back(std::move(p));
  }
  return points;
}

std::vector<SweepRow> sweep(SweepPreset preset,
                            const std::vector<double>& circuit_thetas,
                            const SweepOptions& opts) {
  if (circuit_thetas.empty()) throw BadParamError("sweep: empty theta list");
  std::vector<double> thetas = circuit_thetas;
  std::sort(thetas.begin(), thetas.end());
  const std::vector<Vector3d>& grid =
      opts.input_grid.empty() ? default_input_grid() : opts.input_grid;
  const double ppt_tol = opts.shots ? 1e-3 : 1e-9;

  std::vector<SweepRow> rows;
  double prev_param = -1.0;
  for (size_t ti = 0; ti < thetas.size(); ++ti) {
    SweepRow row;
    row.theta = thetas[ti];
    row.param = sweep_param(preset, row.theta);
    std::vector<std::string> flags;
    if (preset == SweepPreset::AmplitudeDamping && ti > 0 &&
        row.param < prev_param - 1e-12)
      flags.push_back("gamma_nonmonotonic");
    prev_param = row.param;

    try {
      row.points = simulate_points(preset, row.theta, grid, opts.shots,
                                   opts.seed, ti);
      FitResult fit = fit_ellipsoid(row.points);
      row.volume = volume(fit.ellipsoid);
      row.volume_bound = volume_bound(fit.ellipsoid);
      row.fit_residual = fit.residual;
      if (fit.ellipsoid.degenerate) flags.push_back("degenerate");
      try {
        auto candidates = reconstruct_choi_candidates(fit.ellipsoid);
        if (candidates.size() == 2) flags.push_back("two_candidates");
        MemoryReport rep =
            memory_report(candidates.front().first, opts.robustness_tol, ppt_tol);
        row.negativity = rep.negativity;
        row.concurrence = rep.concurrence;
        row.memory_robustness = rep.memory_robustness;
        row.eb = rep.eb;
      } catch (const NoValidCandidateError&) {
        flags.push_back("no_valid_candidate");
      }
    } catch (const FitError& err) {
      flags.push_back(std::string("fit_failed:") + err.what());
    }

    for (size_t i = 0; i < flags.size(); ++i) {
      if (i) row.flags += ';';
      row.flags += flags[i];
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace qmem
