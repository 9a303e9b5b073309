#include "qmem/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace qmem {

namespace {

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

Matrix2cd complex2x2_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2)
    throw BadParamError("channel spec: expected a 2x2 complex matrix");
  Matrix2cd m;
  for (int r = 0; r < 2; ++r) {
    if (!j[r].is_array() || j[r].size() != 2)
      throw BadParamError("channel spec: expected a 2x2 complex matrix");
    for (int c = 0; c < 2; ++c) {
      const Json& e = j[r][c];
      if (!e.is_array() || e.size() != 2)
        throw BadParamError("channel spec: entries must be [re, im]");
      m(r, c) = std::complex<double>(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

Json vec3_to_json(const Vector3d& v) {
  return Json::array({v(0), v(1), v(2)});
}

Json mat3_to_json(const Matrix3d& m) {
  Json rows = Json::array();
  for (int r = 0; r < 3; ++r)
    rows.push_back(Json::array({m(r, 0), m(r, 1), m(r, 2)}));
  return rows;
}

}  // namespace

void atomic_write(const std::string& path, const std::string& content) {
  std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file: " + tmp.string());
    out << content;
  }
  std::filesystem::rename(tmp, target);
}

KrausSet channel_from_json(const Json& j) {
  if (!j.is_object()) throw BadParamError("channel spec: expected an object");
  std::string kind = j.value("kind", j.contains("name") ? "preset" : "");
  if (kind == "kraus") {
    if (!j.contains("ops") || !j["ops"].is_array() || j["ops"].empty())
      throw BadParamError("channel spec: kraus form needs a nonempty ops array");
    KrausSet k;
    for (const Json& op : j["ops"]) k.ops.push_back(complex2x2_from_json(op));
    if (kraus_completeness_defect(k) > 1e-8)
      throw IncompleteKrausError("channel spec: Kraus set not trace preserving");
    return k;
  }
  if (kind == "preset") {
    std::string name = j.value("name", "");
    if (name == "identity") return preset_identity();
    if (name == "depolarizing") return preset_depolarizing(j.at("P").get<double>());
    if (name == "amplitude_damping")
      return preset_amplitude_damping(j.at("gamma").get<double>());
    if (name == "unitary") return preset_unitary(complex2x2_from_json(j.at("matrix")));
    if (name == "replacer") return preset_replacer(complex2x2_from_json(j.at("state")));
    if (name == "z_measure_prepare") return preset_z_measure_prepare();
    throw BadParamError("channel spec: unknown preset '" + name + "'");
  }
  throw BadParamError("channel spec: unknown kind '" + kind + "'");
}

KrausSet load_channel_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadParamError("cannot open channel spec: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw BadParamError(std::string("channel spec parse error: ") + e.what());
  }
  return channel_from_json(j);
}

std::string points_to_csv(const std::vector<BlochPoint>& points) {
  std::ostringstream os;
  os << "# schema_version=1\n";
  os << "input_id,x,y,z,weight\n";
  for (const auto& p : points)
    os << p.input_id << ',' << format_double(p.r(0)) << ','
       << format_double(p.r(1)) << ',' << format_double(p.r(2)) << ','
       << format_double(p.weight) << '\n';
  return os.str();
}

std::vector<BlochPoint> points_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<BlochPoint> out;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line.rfind("input_id,", 0) != 0)
        throw BadInputError("points CSV: missing input_id,x,y,z header");
      header_seen = true;
      continue;
    }
    auto fields = split(line, ',');
    if (fields.size() != 4 && fields.size() != 5)
      throw BadInputError("points CSV: expected 4 or 5 columns");
    BlochPoint p;
    p.input_id = fields[0];
    try {
      for (int i = 0; i < 3; ++i) p.r(i) = std::stod(fields[1 + i]);
      p.weight = fields.size() == 5 ? std::stod(fields[4]) : 1.0;
    } catch (const std::exception&) {
      throw BadInputError("points CSV: malformed number in row");
    }
    if (p.weight <= 0.0) throw BadInputError("points CSV: weight must be positive");
    if (p.r.norm() > 1.15)
      throw BadInputError("points CSV: point far outside the Bloch ball");
    out.push_back(std::move(p));
  }
  if (!header_seen) throw BadInputError("points CSV: empty file");
  return out;
}

std::vector<BlochPoint> load_points_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BadInputError("cannot open points file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return points_from_csv(buf.str());
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "# schema_version=1\n";
  os << "theta,param,volume,volume_bound,negativity,concurrence,"
        "memory_robustness,eb,fit_residual,flags\n";
  for (const auto& r : rows)
    os << format_double(r.theta) << ',' << format_double(r.param) << ','
       << format_double(r.volume) << ',' << format_double(r.volume_bound) << ','
       << format_double(r.negativity) << ',' << format_double(r.concurrence)
       << ',' << format_double(r.memory_robustness) << ','
       << (r.eb ? "true" : "false") << ',' << format_double(r.fit_residual)
       << ',' << r.flags << '\n';
  return os.str();
}

std::string mesh_to_obj(const Mesh& m, const Mesh* sphere) {
  std::ostringstream os;
  os << "# schema_version=1\n";
  os << "o ellipsoid\n";
  for (const auto& v : m.vertices)
    os << "v " << format_double(v(0)) << ' ' << format_double(v(1)) << ' '
       << format_double(v(2)) << '\n';
  for (const auto& f : m.faces)
    os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  if (sphere) {
    const int offset = static_cast<int>(m.vertices.size());
    os << "o bloch_sphere\n";
    for (const auto& v : sphere->vertices)
      os << "v " << format_double(v(0)) << ' ' << format_double(v(1)) << ' '
         << format_double(v(2)) << '\n';
    for (const auto& f : sphere->faces)
      os << "f " << f[0] + 1 + offset << ' ' << f[1] + 1 + offset << ' '
         << f[2] + 1 + offset << '\n';
  }
  return os.str();
}

namespace {
Json mesh_body(const Mesh& m) {
  Json j;
  Json verts = Json::array();
  for (const auto& v : m.vertices) verts.push_back(vec3_to_json(v));
  Json faces = Json::array();
  for (const auto& f : m.faces) faces.push_back(Json::array({f[0], f[1], f[2]}));
  j["vertices"] = std::move(verts);
  j["faces"] = std::move(faces);
  return j;
}
}  // namespace

Json mesh_to_json(const Mesh& m, const Mesh* sphere) {
  Json j;
  j["schema_version"] = "1";
  Json body = mesh_body(m);
  j["vertices"] = body["vertices"];
  j["faces"] = body["faces"];
  if (sphere) j["sphere"] = mesh_body(*sphere);
  return j;
}

Json report_to_json(const Report& r) {
  Json j;
  j["schema_version"] = "1";
  Json prov;
  prov["mode"] = r.provenance.mode;
  if (r.provenance.seed) prov["seed"] = *r.provenance.seed;
  if (r.provenance.shots) prov["shots"] = *r.provenance.shots;
  if (r.provenance.fit_residual) prov["fit_residual"] = *r.provenance.fit_residual;
  j["provenance"] = std::move(prov);

  Json e;
  e["center"] = vec3_to_json(r.ellipsoid.center);
  e["Q"] = mat3_to_json(r.ellipsoid.Q);
  e["semiaxes"] = vec3_to_json(r.ellipsoid.semiaxes);
  e["axes"] = mat3_to_json(r.ellipsoid.axes);
  e["chirality"] = r.ellipsoid.chirality;
  e["degenerate"] = r.ellipsoid.degenerate;
  j["ellipsoid"] = std::move(e);

  Json cands = Json::array();
  for (const auto& c : r.candidates) {
    Json cj;
    cj["chirality"] = c.chirality;
    Json choi = Json::array();
    for (int row = 0; row < 4; ++row) {
      Json jr = Json::array();
      for (int col = 0; col < 4; ++col)
        jr.push_back(Json::array(
            {c.choi.m(row, col).real(), c.choi.m(row, col).imag()}));
      choi.push_back(std::move(jr));
    }
    cj["choi"] = std::move(choi);
    if (c.metrics) {
      Json mj;
      mj["eb"] = c.metrics->eb;
      mj["negativity"] = c.metrics->negativity;
      mj["concurrence"] = c.metrics->concurrence;
      mj["memory_robustness"] = c.metrics->memory_robustness;
      if (c.robustness)
        mj["robustness_bracket"] =
            Json::array({c.robustness->t_lo, c.robustness->t_hi});
      mj["volume"] = c.metrics->volume;
      mj["volume_bound"] = c.metrics->volume_bound;
      mj["lemma_gap"] = c.metrics->lemma_gap;
      cj["metrics"] = std::move(mj);
    }
    cands.push_back(std::move(cj));
  }
  j["candidates"] = std::move(cands);
  return j;
}

Ellipsoid ellipsoid_from_json(const Json& j) {
  Vector3d center;
  for (int i = 0; i < 3; ++i) center(i) = j.at("center")[i].get<double>();
  Matrix3d q;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) q(r, c) = j.at("Q")[r][c].get<double>();
  return make_ellipsoid(center, q, j.value("chirality", 0));
}

}  // namespace qmem
