#include "searchplan/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <set>
#include <sstream>
#include <tuple>

#include "searchplan/error.hpp"
#include "searchplan/format.hpp"

namespace searchplan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string indexed(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

void check_map(const YAML::Node& node, const std::string& path,
               std::initializer_list<const char*> allowed) {
  if (!node.IsMap()) throw ValidationError(path.empty() ? "<root>" : path, "expected a mapping");
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw ValidationError(join(path, key), "unknown field");
  }
}

YAML::Node required(const YAML::Node& node, const std::string& key, const std::string& path) {
  YAML::Node child = node[key];
  if (!child) throw ValidationError(join(path, key), "missing required field");
  return child;
}

double as_double(const YAML::Node& node, const std::string& path) {
  try {
    return node.as<double>();
  } catch (const YAML::Exception&) {
    throw ValidationError(path, "expected a number");
  }
}

int as_int(const YAML::Node& node, const std::string& path) {
  try {
    return node.as<int>();
  } catch (const YAML::Exception&) {
    throw ValidationError(path, "expected an integer");
  }
}

std::string as_string(const YAML::Node& node, const std::string& path) {
  if (!node.IsScalar()) throw ValidationError(path, "expected a string");
  return node.as<std::string>();
}

double get_double(const YAML::Node& node, const std::string& key, const std::string& path) {
  return as_double(required(node, key, path), join(path, key));
}

double get_double(const YAML::Node& node, const std::string& key, const std::string& path,
                  double fallback) {
  return node[key] ? as_double(node[key], join(path, key)) : fallback;
}

std::vector<double> as_doubles(const YAML::Node& node, const std::string& path) {
  if (!node.IsSequence()) throw ValidationError(path, "expected a list");
  std::vector<double> out;
  for (std::size_t i = 0; i < node.size(); ++i) out.push_back(as_double(node[i], indexed(path, i)));
  return out;
}

// [lo, hi] in degrees, returned in radians.
std::pair<double, double> degree_range(const YAML::Node& node, const std::string& path) {
  const auto v = as_doubles(node, path);
  if (v.size() != 2) throw ValidationError(path, "expected [min, max]");
  return {deg_to_rad(v[0]), deg_to_rad(v[1])};
}

// M rows of N values, flattened row-major.
std::vector<double> matrix(const YAML::Node& node, const std::string& path, int rows, int cols) {
  if (!node.IsSequence() || node.size() != static_cast<std::size_t>(rows)) {
    throw ValidationError(path, "expected " + std::to_string(rows) + " rows");
  }
  std::vector<double> out;
  for (std::size_t m = 0; m < node.size(); ++m) {
    const auto row = as_doubles(node[m], indexed(path, m));
    if (row.size() != static_cast<std::size_t>(cols)) {
      throw ValidationError(indexed(path, m), "expected " + std::to_string(cols) + " values");
    }
    out.insert(out.end(), row.begin(), row.end());
  }
  return out;
}

// Re-throws a component's ValidationError with its field under `prefix`.
template <typename F>
void scoped(const std::string& prefix, F&& check) {
  try {
    check();
  } catch (const ValidationError& e) {
    throw ValidationError(join(prefix, e.field()), e.what() + e.field().size() + 2);
  } catch (const ConfigError& e) {
    throw ValidationError(prefix, e.what());
  }
}

Mission parse_mission(const YAML::Node& node, const std::string& path, const SurveillanceGrid& grid) {
  check_map(node, path, {"id", "rcs_m2", "swerling", "required_range"});
  Mission m;
  m.id = as_string(required(node, "id", path), join(path, "id"));
  m.rcs = get_double(node, "rcs_m2", path);
  if (node["swerling"]) {
    std::string sw = as_string(node["swerling"], join(path, "swerling"));
    if (sw == "0" || sw == "1") sw = "SW" + sw;
    try {
      m.swerling = parse_swerling(sw);
    } catch (const ConfigError& e) {
      throw ValidationError(join(path, "swerling"), e.what());
    }
  }
  const std::string rpath = join(path, "required_range");
  const YAML::Node r = required(node, "required_range", path);
  check_map(r, rpath, {"min_height_m", "min_distance_m", "max_range_m", "table"});
  if (r["table"]) {
    m.range.cell_table = matrix(r["table"], join(rpath, "table"), grid.rows, grid.cols);
  } else {
    m.range.min_height = get_double(r, "min_height_m", rpath, 0.0);
    m.range.min_distance = get_double(r, "min_distance_m", rpath);
    m.range.max_range = get_double(r, "max_range_m", rpath);
  }
  return m;
}

Waveform parse_waveform(const YAML::Node& node, const std::string& path, const std::string& base_dir) {
  check_map(node, path, {"id", "duration_s", "wavelength_m", "thresholds"});
  Waveform w;
  w.id = as_string(required(node, "id", path), join(path, "id"));
  w.duration = get_double(node, "duration_s", path);
  w.wavelength = get_double(node, "wavelength_m", path);
  const YAML::Node t = node["thresholds"];
  const std::string tpath = join(path, "thresholds");
  if (!t || (t.IsScalar() && t.as<std::string>() == "generator")) return w;
  check_map(t, tpath, {"file", "table"});
  if (t["file"]) {
    std::filesystem::path file = as_string(t["file"], join(tpath, "file"));
    if (file.is_relative()) file = std::filesystem::path(base_dir) / file;
    load_threshold_table(file.string(), w);
    if (!w.table_mode()) throw ValidationError(join(tpath, "file"), "no rows for waveform '" + w.id + "'");
  }
  if (t["table"]) {
    const YAML::Node rows = t["table"];
    if (!rows.IsSequence()) throw ValidationError(join(tpath, "table"), "expected a list");
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::string cpath = indexed(join(tpath, "table"), i);
      check_map(rows[i], cpath, {"mission", "alpha", "db"});
      const std::string mission = as_string(required(rows[i], "mission", cpath), join(cpath, "mission"));
      if (w.table.count(mission)) throw ValidationError(join(cpath, "mission"), "duplicate curve");
      ThresholdCurve curve;
      curve.alpha = as_doubles(required(rows[i], "alpha", cpath), join(cpath, "alpha"));
      curve.db = as_doubles(required(rows[i], "db", cpath), join(cpath, "db"));
      w.table[mission] = std::move(curve);
    }
  }
  return w;
}

ClutterSpec parse_clutter(const YAML::Node& node, const SurveillanceGrid& grid) {
  ClutterSpec c;
  if (!node) return c;
  check_map(node, "clutter", {"default_alpha", "regions", "table"});
  c.default_alpha = get_double(node, "default_alpha", "clutter", 0.0);
  if (node["regions"]) {
    const YAML::Node regions = node["regions"];
    if (!regions.IsSequence()) throw ValidationError("clutter.regions", "expected a list");
    for (std::size_t i = 0; i < regions.size(); ++i) {
      const std::string path = indexed("clutter.regions", i);
      check_map(regions[i], path, {"name", "az_deg", "el_deg", "alpha"});
      ClutterRegion r;
      if (regions[i]["name"]) r.name = as_string(regions[i]["name"], join(path, "name"));
      std::tie(r.extent.az_min, r.extent.az_max) = degree_range(required(regions[i], "az_deg", path), join(path, "az_deg"));
      std::tie(r.extent.el_min, r.extent.el_max) = degree_range(required(regions[i], "el_deg", path), join(path, "el_deg"));
      r.alpha = get_double(regions[i], "alpha", path);
      c.regions.push_back(std::move(r));
    }
  }
  if (node["table"]) c.table = matrix(node["table"], "clutter.table", grid.rows, grid.cols);
  return c;
}

void check_alpha(double alpha, const std::string& path) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw ValidationError(path, "eclipse coefficient must lie in [0, 1)");
  }
}

std::string format(double v) { return format_number(v); }

// Degree value whose conversion reproduces `rad` bit for bit, when one is
// within a few ulps of the direct conversion.
double degrees_for(double rad) {
  const double d = rad_to_deg(rad);
  double up = d;
  double down = d;
  for (int k = 0; k < 8; ++k) {
    if (deg_to_rad(up) == rad) return up;
    if (deg_to_rad(down) == rad) return down;
    up = std::nextafter(up, kInf);
    down = std::nextafter(down, -kInf);
  }
  return d;
}

void emit_pair(YAML::Emitter& out, double a, double b) {
  out << YAML::Flow << YAML::BeginSeq << format(degrees_for(a)) << format(degrees_for(b))
      << YAML::EndSeq;
}

void emit_list(YAML::Emitter& out, const std::vector<double>& values) {
  out << YAML::Flow << YAML::BeginSeq;
  for (double v : values) out << format(v);
  out << YAML::EndSeq;
}

void emit_matrix(YAML::Emitter& out, const std::vector<double>& values, int rows, int cols) {
  out << YAML::BeginSeq;
  for (int m = 0; m < rows; ++m) {
    emit_list(out, std::vector<double>(values.begin() + static_cast<std::ptrdiff_t>(m) * cols,
                                       values.begin() + static_cast<std::ptrdiff_t>(m + 1) * cols));
  }
  out << YAML::EndSeq;
}

}  // namespace

ClutterMap ClutterSpec::build(const SurveillanceGrid& grid) const {
  ClutterMap map;
  map.rows = grid.rows;
  map.cols = grid.cols;
  if (!table.empty()) {
    map.alpha = table;
    return map;
  }
  map.alpha.assign(grid.cell_count(), default_alpha);
  for (int m = 0; m < grid.rows; ++m) {
    for (int n = 0; n < grid.cols; ++n) {
      const Direction c = grid.cell_center(m, n);
      for (const ClutterRegion& r : regions) {
        if (c.az >= r.extent.az_min && c.az <= r.extent.az_max && c.el >= r.extent.el_min &&
            c.el <= r.extent.el_max) {
          map.alpha[grid.cell_index(m, n)] = r.alpha;
        }
      }
    }
  }
  return map;
}

std::size_t Scenario::waveform_index(const std::string& id) const {
  for (std::size_t i = 0; i < waveforms.size(); ++i) {
    if (waveforms[i].id == id) return i;
  }
  throw ConfigError("unknown waveform '" + id + "'");
}

std::size_t Scenario::mission_index(const std::string& id) const {
  for (std::size_t i = 0; i < missions.size(); ++i) {
    if (missions[i].id == id) return i;
  }
  throw ConfigError("unknown mission '" + id + "'");
}

void validate(const Scenario& s) {
  scoped("array", [&] { s.array.validate(); });
  validate(s.budget);
  scoped("", [&] { s.grid.validate(); });
  if (!(s.loss.beta >= 0.0)) throw ValidationError("scan_loss.beta", "must be non-negative");
  if (s.loss.tilt != s.array.tilt) throw ValidationError("scan_loss", "tilt must match array.tilt_deg");
  if (s.points_per_edge < 2) throw ValidationError("cover.points_per_edge", "must be at least 2");
  if (s.missions.empty()) throw ValidationError("missions", "at least one mission is required");
  if (s.waveforms.empty()) throw ValidationError("waveforms", "at least one waveform is required");

  std::set<std::string> ids;
  for (std::size_t i = 0; i < s.missions.size(); ++i) {
    const std::string path = indexed("missions", i);
    const Mission& m = s.missions[i];
    if (m.id.empty()) throw ValidationError(join(path, "id"), "must not be empty");
    if (!ids.insert(m.id).second) throw ValidationError(join(path, "id"), "duplicate mission id '" + m.id + "'");
    scoped(path, [&] { validate(m); });
    if (!m.range.cell_table.empty() && m.range.cell_table.size() != s.grid.cell_count()) {
      throw ValidationError(join(path, "required_range.table"), "size does not match the grid");
    }
  }
  ids.clear();
  for (std::size_t i = 0; i < s.waveforms.size(); ++i) {
    const std::string path = indexed("waveforms", i);
    const Waveform& w = s.waveforms[i];
    if (w.id.empty()) throw ValidationError(join(path, "id"), "must not be empty");
    if (!ids.insert(w.id).second) throw ValidationError(join(path, "id"), "duplicate waveform id '" + w.id + "'");
    scoped(path, [&] { validate(w); });
    if (!w.table_mode()) continue;
    for (const Mission& m : s.missions) {
      if (!w.table.count(m.id)) {
        throw ValidationError(join(path, "thresholds"), "no curve for mission '" + m.id + "'");
      }
    }
    for (const auto& [mission, curve] : w.table) {
      bool known = false;
      for (const Mission& m : s.missions) known = known || m.id == mission;
      if (!known) throw ValidationError(join(path, "thresholds." + mission), "unknown mission");
    }
  }

  check_alpha(s.clutter.default_alpha, "clutter.default_alpha");
  for (std::size_t i = 0; i < s.clutter.regions.size(); ++i) {
    const std::string path = indexed("clutter.regions", i);
    const ClutterRegion& r = s.clutter.regions[i];
    if (!r.extent.valid()) throw ValidationError(path, "requires min < max in az_deg and el_deg");
    check_alpha(r.alpha, join(path, "alpha"));
  }
  if (!s.clutter.table.empty()) {
    if (s.clutter.table.size() != s.grid.cell_count()) {
      throw ValidationError("clutter.table", "size does not match the grid");
    }
    for (std::size_t c = 0; c < s.clutter.table.size(); ++c) {
      check_alpha(s.clutter.table[c], indexed("clutter.table", c));
    }
  }
}

Scenario parse_scenario(std::istream& in, const std::string& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(in);
  } catch (const YAML::Exception& e) {
    throw IoError("scenario parse error at line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  check_map(root, "", {"name", "array", "budget", "grid", "scan_loss", "cover", "missions", "waveforms", "clutter"});

  Scenario s;
  if (root["name"]) s.name = as_string(root["name"], "name");

  const YAML::Node a = required(root, "array", "");
  check_map(a, "array", {"rows", "cols", "dx_m", "dy_m", "tilt_deg"});
  s.array.rows = as_int(required(a, "rows", "array"), "array.rows");
  s.array.cols = as_int(required(a, "cols", "array"), "array.cols");
  s.array.dx = get_double(a, "dx_m", "array");
  s.array.dy = get_double(a, "dy_m", "array");
  s.array.tilt = deg_to_rad(get_double(a, "tilt_deg", "array", 0.0));

  const YAML::Node b = required(root, "budget", "");
  check_map(b, "budget", {"mean_power_w", "reception_gain", "uniform_losses", "pd", "pfa", "a_max"});
  s.budget.mean_power = get_double(b, "mean_power_w", "budget");
  s.budget.reception_gain = get_double(b, "reception_gain", "budget", 1.0);
  s.budget.uniform_losses = get_double(b, "uniform_losses", "budget", 1.0);
  s.budget.pd = get_double(b, "pd", "budget");
  s.budget.pfa = get_double(b, "pfa", "budget");
  s.budget.a_max = get_double(b, "a_max", "budget");

  const YAML::Node g = required(root, "grid", "");
  check_map(g, "grid", {"az_deg", "el_deg", "rows", "cols"});
  std::tie(s.grid.extent.az_min, s.grid.extent.az_max) = degree_range(required(g, "az_deg", "grid"), "grid.az_deg");
  std::tie(s.grid.extent.el_min, s.grid.extent.el_max) = degree_range(required(g, "el_deg", "grid"), "grid.el_deg");
  s.grid.rows = as_int(required(g, "rows", "grid"), "grid.rows");
  s.grid.cols = as_int(required(g, "cols", "grid"), "grid.cols");
  if (s.grid.rows < 1 || s.grid.cols < 1) throw ValidationError("grid", "rows and cols must be positive");

  s.loss.tilt = s.array.tilt;
  if (root["scan_loss"]) {
    check_map(root["scan_loss"], "scan_loss", {"beta"});
    s.loss.beta = get_double(root["scan_loss"], "beta", "scan_loss", 3.0);
  }
  if (root["cover"]) {
    check_map(root["cover"], "cover", {"points_per_edge"});
    if (root["cover"]["points_per_edge"]) {
      s.points_per_edge = as_int(root["cover"]["points_per_edge"], "cover.points_per_edge");
    }
  }

  const YAML::Node missions = required(root, "missions", "");
  if (!missions.IsSequence()) throw ValidationError("missions", "expected a list");
  for (std::size_t i = 0; i < missions.size(); ++i) {
    s.missions.push_back(parse_mission(missions[i], indexed("missions", i), s.grid));
  }
  const YAML::Node waveforms = required(root, "waveforms", "");
  if (!waveforms.IsSequence()) throw ValidationError("waveforms", "expected a list");
  for (std::size_t i = 0; i < waveforms.size(); ++i) {
    s.waveforms.push_back(parse_waveform(waveforms[i], indexed("waveforms", i), base_dir));
  }
  s.clutter = parse_clutter(root["clutter"], s.grid);

  validate(s);
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file " + path);
  const std::string dir = std::filesystem::path(path).parent_path().string();
  return parse_scenario(in, dir.empty() ? "." : dir);
}

void save_scenario(std::ostream& os, const Scenario& s) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  if (!s.name.empty()) out << YAML::Key << "name" << YAML::Value << s.name;

  out << YAML::Key << "array" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "rows" << YAML::Value << s.array.rows;
  out << YAML::Key << "cols" << YAML::Value << s.array.cols;
  out << YAML::Key << "dx_m" << YAML::Value << format(s.array.dx);
  out << YAML::Key << "dy_m" << YAML::Value << format(s.array.dy);
  out << YAML::Key << "tilt_deg" << YAML::Value << format(degrees_for(s.array.tilt));
  out << YAML::EndMap;

  out << YAML::Key << "budget" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "mean_power_w" << YAML::Value << format(s.budget.mean_power);
  out << YAML::Key << "reception_gain" << YAML::Value << format(s.budget.reception_gain);
  out << YAML::Key << "uniform_losses" << YAML::Value << format(s.budget.uniform_losses);
  out << YAML::Key << "pd" << YAML::Value << format(s.budget.pd);
  out << YAML::Key << "pfa" << YAML::Value << format(s.budget.pfa);
  out << YAML::Key << "a_max" << YAML::Value << format(s.budget.a_max);
  out << YAML::EndMap;

  out << YAML::Key << "grid" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "az_deg" << YAML::Value;
  emit_pair(out, s.grid.extent.az_min, s.grid.extent.az_max);
  out << YAML::Key << "el_deg" << YAML::Value;
  emit_pair(out, s.grid.extent.el_min, s.grid.extent.el_max);
  out << YAML::Key << "rows" << YAML::Value << s.grid.rows;
  out << YAML::Key << "cols" << YAML::Value << s.grid.cols;
  out << YAML::EndMap;

  out << YAML::Key << "scan_loss" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "beta" << YAML::Value << format(s.loss.beta) << YAML::EndMap;
  out << YAML::Key << "cover" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "points_per_edge" << YAML::Value << s.points_per_edge << YAML::EndMap;

  out << YAML::Key << "missions" << YAML::Value << YAML::BeginSeq;
  for (const Mission& m : s.missions) {
    out << YAML::BeginMap;
    out << YAML::Key << "id" << YAML::Value << m.id;
    out << YAML::Key << "rcs_m2" << YAML::Value << format(m.rcs);
    out << YAML::Key << "swerling" << YAML::Value << to_string(m.swerling);
    out << YAML::Key << "required_range" << YAML::Value << YAML::BeginMap;
    if (m.range.cell_table.empty()) {
      out << YAML::Key << "min_height_m" << YAML::Value << format(m.range.min_height);
      out << YAML::Key << "min_distance_m" << YAML::Value << format(m.range.min_distance);
      out << YAML::Key << "max_range_m" << YAML::Value << format(m.range.max_range);
    } else {
      out << YAML::Key << "table" << YAML::Value;
      emit_matrix(out, m.range.cell_table, s.grid.rows, s.grid.cols);
    }
    out << YAML::EndMap << YAML::EndMap;
  }
  out << YAML::EndSeq;

  out << YAML::Key << "waveforms" << YAML::Value << YAML::BeginSeq;
  for (const Waveform& w : s.waveforms) {
    out << YAML::BeginMap;
    out << YAML::Key << "id" << YAML::Value << w.id;
    out << YAML::Key << "duration_s" << YAML::Value << format(w.duration);
    out << YAML::Key << "wavelength_m" << YAML::Value << format(w.wavelength);
    out << YAML::Key << "thresholds" << YAML::Value;
    if (!w.table_mode()) {
      out << "generator";
    } else {
      out << YAML::BeginMap << YAML::Key << "table" << YAML::Value << YAML::BeginSeq;
      for (const auto& [mission, curve] : w.table) {
        out << YAML::BeginMap;
        out << YAML::Key << "mission" << YAML::Value << mission;
        out << YAML::Key << "alpha" << YAML::Value;
        emit_list(out, curve.alpha);
        out << YAML::Key << "db" << YAML::Value;
        emit_list(out, curve.db);
        out << YAML::EndMap;
      }
      out << YAML::EndSeq << YAML::EndMap;
    }
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;

  out << YAML::Key << "clutter" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "default_alpha" << YAML::Value << format(s.clutter.default_alpha);
  if (!s.clutter.regions.empty()) {
    out << YAML::Key << "regions" << YAML::Value << YAML::BeginSeq;
    for (const ClutterRegion& r : s.clutter.regions) {
      out << YAML::BeginMap;
      if (!r.name.empty()) out << YAML::Key << "name" << YAML::Value << r.name;
      out << YAML::Key << "az_deg" << YAML::Value;
      emit_pair(out, r.extent.az_min, r.extent.az_max);
      out << YAML::Key << "el_deg" << YAML::Value;
      emit_pair(out, r.extent.el_min, r.extent.el_max);
      out << YAML::Key << "alpha" << YAML::Value << format(r.alpha);
      out << YAML::EndMap;
    }
    out << YAML::EndSeq;
  }
  if (!s.clutter.table.empty()) {
    out << YAML::Key << "table" << YAML::Value;
    emit_matrix(out, s.clutter.table, s.grid.rows, s.grid.cols);
  }
  out << YAML::EndMap;
  out << YAML::EndMap;
  os << out.c_str() << '\n';
}

void save_scenario(const std::string& path, const Scenario& s) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write scenario file " + path);
  save_scenario(out, s);
  if (!out) throw IoError("failed while writing scenario file " + path);
}

void load_threshold_table(const std::string& path, Waveform& waveform) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open threshold table " + path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string wid;
    std::string mid;
    std::string alpha_text;
    std::string db_text;
    if (!(fields >> wid)) continue;
    std::string extra;
    if (!(fields >> mid >> alpha_text >> db_text) || (fields >> extra)) {
      throw IoError(path + ":" + std::to_string(lineno) + ": expected 4 columns");
    }
    if (wid != waveform.id) continue;
    double alpha = 0.0;
    double db = 0.0;
    try {
      std::size_t used = 0;
      alpha = std::stod(alpha_text, &used);
      if (used != alpha_text.size()) throw std::invalid_argument(alpha_text);
      db = std::stod(db_text, &used);
      if (used != db_text.size()) throw std::invalid_argument(db_text);
    } catch (const std::exception&) {
      throw IoError(path + ":" + std::to_string(lineno) + ": malformed number");
    }
    ThresholdCurve& curve = waveform.table[mid];
    curve.alpha.push_back(alpha);
    curve.db.push_back(db);
  }
}

}  // namespace searchplan
