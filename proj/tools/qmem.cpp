// qmem: channel ellipsoids, Choi reconstruction and memory metrics from the
// command line.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <unistd.h>

#include "qmem/io.hpp"

namespace {

using namespace qmem;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitSolver = 3;
constexpr int kExitFit = 4;
constexpr int kExitReconstruct = 5;
constexpr int kExitSweepFailed = 6;

bool use_color() {
  return std::getenv("NO_COLOR") == nullptr && isatty(fileno(stderr));
}

void diag(const std::string& msg) {
  if (use_color())
    std::cerr << "\033[31merror:\033[0m " << msg << '\n';
  else
    std::cerr << "error: " << msg << '\n';
}

void warn(const std::string& msg) {
  if (use_color())
    std::cerr << "\033[33mwarning:\033[0m " << msg << '\n';
  else
    std::cerr << "warning: " << msg << '\n';
}

MemoryReport report_with_bracket(const ChoiState& c, double tol, double ppt_tol,
                                 RobustnessResult& bracket) {
  MemoryReport rep;
  rep.eb = is_eb(c, ppt_tol);
  rep.negativity = negativity(c.m);
  rep.concurrence = concurrence(c.m);
  Ellipsoid e = ellipsoid_of_channel(pauli_form(c));
  rep.volume = volume(e);
  rep.volume_bound = volume_bound(e);
  bracket = rep.eb ? RobustnessResult{} : memory_robustness(c, tol);
  rep.memory_robustness = bracket.value;
  rep.lemma_gap = rep.volume_bound - rep.memory_robustness;
  return rep;
}

int cmd_analyze(const std::string& spec_path, double tol,
                const std::string& out_path) {
  KrausSet kraus = load_channel_spec(spec_path);
  ChoiState choi = choi_from_kraus(kraus);
  if (!is_cptp(choi.m).valid()) {
    diag("channel spec is not CPTP");
    return kExitInput;
  }
  Report report;
  report.provenance.mode = "analytic";
  report.ellipsoid = ellipsoid_of_channel(pauli_form(choi));
  CandidateReport cand;
  cand.chirality = report.ellipsoid.chirality;
  cand.choi = choi;
  RobustnessResult bracket;
  cand.metrics = report_with_bracket(choi, tol, 1e-9, bracket);
  cand.robustness = bracket;
  report.candidates.push_back(std::move(cand));
  atomic_write(out_path, report_to_json(report).dump(2) + "\n");
  return kExitOk;
}

int cmd_fit(const std::string& points_path, double degeneracy_tol, double tol,
            const std::string& out_path, const std::string& mesh_path) {
  std::vector<BlochPoint> points = load_points_csv(points_path);
  FitOptions opts;
  opts.degeneracy_tol = degeneracy_tol;
  FitResult fit = fit_ellipsoid(points, opts);

  Report report;
  report.provenance.mode = "fitted";
  report.provenance.fit_residual = fit.residual;
  report.ellipsoid = fit.ellipsoid;

  int code = kExitOk;
  try {
    for (const auto& [choi, chirality] : reconstruct_choi_candidates(fit.ellipsoid)) {
      CandidateReport cand;
      cand.chirality = chirality;
      cand.choi = choi;
      RobustnessResult bracket;
      cand.metrics = report_with_bracket(choi, tol, 1e-9, bracket);
      cand.robustness = bracket;
      report.candidates.push_back(std::move(cand));
    }
  } catch (const NoValidCandidateError& e) {
    diag(e.what());
    code = kExitReconstruct;  // geometric report still written below
  }
  atomic_write(out_path, report_to_json(report).dump(2) + "\n");
  if (!mesh_path.empty())
    atomic_write(mesh_path, mesh_to_obj(mesh(fit.ellipsoid, 32)));
  return code;
}

int cmd_simulate(const std::string& preset_name, double theta,
                 const std::string& input_arg, std::optional<int> shots,
                 std::uint64_t seed, const std::string& out_path) {
  SweepPreset preset;
  if (preset_name == "depolarizing")
    preset = SweepPreset::Depolarizing;
  else if (preset_name == "amplitude_damping")
    preset = SweepPreset::AmplitudeDamping;
  else
    throw BadParamError("unknown preset '" + preset_name + "'");

  std::vector<Vector3d> grid;
  if (input_arg.empty()) {
    grid = default_input_grid();
  } else {
    double th = 0, ps = 0;
    if (std::sscanf(input_arg.c_str(), "%lf,%lf", &th, &ps) != 2)
      throw BadParamError("--input expects \"theta,psi\"");
    grid.push_back(Vector3d(std::sin(th) * std::cos(ps),
                            std::sin(th) * std::sin(ps), std::cos(th)));
  }
  auto points = simulate_points(preset, theta, grid, shots, seed);
  atomic_write(out_path, points_to_csv(points));
  return kExitOk;
}

int cmd_sweep(const std::string& preset_name, const std::vector<double>& thetas,
              std::optional<int> shots, std::uint64_t seed, double tol,
              const std::string& out_path) {
  SweepPreset preset;
  if (preset_name == "depolarizing")
    preset = SweepPreset::Depolarizing;
  else if (preset_name == "amplitude_damping")
    preset = SweepPreset::AmplitudeDamping;
  else
    throw BadParamError("unknown preset '" + preset_name + "'");

  SweepOptions opts;
  opts.shots = shots;
  opts.seed = seed;
  opts.robustness_tol = tol;
  auto rows = sweep(preset, thetas, opts);
  atomic_write(out_path, sweep_to_csv(rows));

  int ok_rows = 0;
  for (const auto& r : rows) {
    bool failed = r.flags.find("fit_failed") != std::string::npos ||
                  r.flags.find("no_valid_candidate") != std::string::npos;
    if (!failed) ++ok_rows;
    if (!r.flags.empty()) warn("theta " + std::to_string(r.theta) + ": " + r.flags);
  }
  return ok_rows > 0 ? kExitOk : kExitSweepFailed;
}

int cmd_mesh(const std::string& source_path, int resolution, bool with_sphere,
             const std::string& out_path) {
  std::ifstream in(source_path);
  if (!in) throw BadParamError("cannot open input: " + source_path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw BadParamError(std::string("input parse error: ") + e.what());
  }

  Ellipsoid e;
  if (j.is_object() && j.contains("ellipsoid"))
    e = ellipsoid_from_json(j["ellipsoid"]);
  else
    e = ellipsoid_of_channel(pauli_form(choi_from_kraus(channel_from_json(j))));
  if (e.degenerate) warn("ellipsoid is degenerate; mesh collapses");

  Mesh body = mesh(e, resolution);
  Mesh sphere;
  const Mesh* sphere_ptr = nullptr;
  if (with_sphere) {
    sphere = mesh(make_ellipsoid(Vector3d::Zero(), Matrix3d::Identity(), 0),
                  resolution);
    sphere_ptr = &sphere;
  }
  if (out_path.size() > 5 && out_path.substr(out_path.size() - 5) == ".json")
    atomic_write(out_path, mesh_to_json(body, sphere_ptr).dump(2) + "\n");
  else
    atomic_write(out_path, mesh_to_obj(body, sphere_ptr));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"single-qubit channel ellipsoids and memory metrics"};
  app.require_subcommand(1);

  std::string spec_path, points_path, out_path, mesh_path, input_arg, preset_name;
  double tol = 1e-4, degeneracy_tol = 1e-6, theta = 0.0;
  int shots_flag = 0, resolution = 32;
  std::uint64_t seed = 0;
  std::vector<double> thetas;
  bool with_sphere = false;

  CLI::App* analyze = app.add_subcommand("analyze", "channel spec -> report");
  analyze->add_option("spec", spec_path, "channel spec JSON")->required();
  analyze->add_option("--tol", tol, "robustness bisection tolerance");
  analyze->add_option("--out", out_path, "report path")->required();

  CLI::App* fit = app.add_subcommand("fit", "points CSV -> report");
  fit->add_option("points", points_path, "points CSV")->required();
  fit->add_option("--degeneracy-tol", degeneracy_tol, "semiaxis degeneracy cutoff");
  fit->add_option("--tol", tol, "robustness bisection tolerance");
  fit->add_option("--out", out_path, "report path")->required();
  fit->add_option("--mesh", mesh_path, "also write the fitted ellipsoid mesh");

  CLI::App* simulate = app.add_subcommand("simulate", "circuit -> points CSV");
  simulate->add_option("--preset", preset_name, "depolarizing | amplitude_damping")
      ->required();
  simulate->add_option("--theta", theta, "circuit angle")->required();
  simulate->add_option("--input", input_arg, "single input \"theta,psi\" (default 26-point grid)");
  simulate->add_option("--shots", shots_flag, "shots per basis (absent = exact)");
  simulate->add_option("--seed", seed, "rng seed");
  simulate->add_option("--out", out_path, "points CSV path")->required();

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "theta sweep -> CSV");
  sweep_cmd->add_option("--preset", preset_name, "depolarizing | amplitude_damping")
      ->required();
  sweep_cmd->add_option("--thetas", thetas, "circuit angles")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--shots", shots_flag, "shots per basis (absent = exact)");
  sweep_cmd->add_option("--seed", seed, "rng seed");
  sweep_cmd->add_option("--tol", tol, "robustness bisection tolerance");
  sweep_cmd->add_option("--out", out_path, "sweep CSV path")->required();

  CLI::App* mesh_cmd = app.add_subcommand("mesh", "report or channel spec -> mesh");
  mesh_cmd->add_option("source", spec_path, "report JSON or channel spec JSON")
      ->required();
  mesh_cmd->add_option("--resolution", resolution, "band count (>= 8)");
  mesh_cmd->add_flag("--with-sphere", with_sphere, "include the unit Bloch sphere");
  mesh_cmd->add_option("--out", out_path, "mesh path (.obj or .json)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    std::optional<int> shots;
    if (shots_flag > 0) shots = shots_flag;
    if (*analyze) return cmd_analyze(spec_path, tol, out_path);
    if (*fit) return cmd_fit(points_path, degeneracy_tol, tol, out_path, mesh_path);
    if (*simulate)
      return cmd_simulate(preset_name, theta, input_arg, shots, seed, out_path);
    if (*sweep_cmd)
      return cmd_sweep(preset_name, thetas, shots, seed, tol, out_path);
    if (*mesh_cmd) return cmd_mesh(spec_path, resolution, with_sphere, out_path);
  } catch (const NoConvergenceError& e) {
    diag(e.what());
    return kExitSolver;
  } catch (const NoValidCandidateError& e) {
    diag(e.what());
    return kExitReconstruct;
  } catch (const FitError& e) {
    diag(e.what());
    return kExitFit;
  } catch (const std::exception& e) {
    diag(e.what());
    return kExitInput;
  }
  return kExitOk;
}
