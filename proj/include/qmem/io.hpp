#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmem/circuitsim.hpp"
#include "qmem/ellipsoid.hpp"
#include "qmem/metrics.hpp"

namespace qmem {

using Json = nlohmann::ordered_json;

/// Write content to path via a temp file + rename.
void atomic_write(const std::string& path, const std::string& content);

// ---- channel spec JSON ----

KrausSet channel_from_json(const Json& j);
KrausSet load_channel_spec(const std::string& path);

// ---- points CSV: header input_id,x,y,z[,weight] ----

std::string points_to_csv(const std::vector<BlochPoint>& points);
std::vector<BlochPoint> points_from_csv(const std::string& text);
std::vector<BlochPoint> load_points_csv(const std::string& path);

// ---- sweep CSV ----

std::string sweep_to_csv(const std::vector<SweepRow>& rows);

// ---- meshes ----

std::string mesh_to_obj(const Mesh& m, const Mesh* sphere = nullptr);
Json mesh_to_json(const Mesh& m, const Mesh* sphere = nullptr);

// ---- report JSON ----

struct Provenance {
  std::string mode;  // analytic | fitted | simulated
  std::optional<std::uint64_t> seed;
  std::optional<int> shots;
  std::optional<double> fit_residual;
};

struct CandidateReport {
  int chirality = 0;
  ChoiState choi;
  std::optional<MemoryReport> metrics;
  std::optional<RobustnessResult> robustness;
};

struct Report {
  Ellipsoid ellipsoid;
  std::vector<CandidateReport> candidates;
  Provenance provenance;
};

Json report_to_json(const Report& r);
Ellipsoid ellipsoid_from_json(const Json& j);

}  // namespace qmem
