#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "searchplan/error.hpp"
#include "searchplan/scenario.hpp"
#include "support.hpp"

using namespace searchplan;
using testsupport::source_path;

namespace {

const char* kMinimal = R"(name: minimal
array: {rows: 4, cols: 4, dx_m: 0.05, dy_m: 0.05}
budget: {mean_power_w: 1.0e+24, pd: 0.8, pfa: 1.0e-6, a_max: 1}
grid: {az_deg: [-10, 10], el_deg: [5, 25], rows: 2, cols: 2}
missions:
  - id: air
    rcs_m2: 1
    required_range: {min_height_m: 1000, min_distance_m: 2000, max_range_m: 5000}
waveforms:
  - id: pulse
    duration_s: 0.001
    wavelength_m: 0.1
)";

Scenario parse(const std::string& text) {
  std::istringstream in(text);
  return parse_scenario(in, source_path("scenarios"));
}

std::string field_of(const std::string& text) {
  try {
    parse(text);
  } catch (const ValidationError& e) {
    return e.field();
  }
  return "<no error>";
}

Scenario round_trip(const Scenario& s) {
  std::stringstream ss;
  save_scenario(ss, s);
  return parse_scenario(ss);
}

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("minimal scenario loads with defaults") {
  const Scenario s = parse(kMinimal);
  CHECK(s.name == "minimal");
  CHECK(s.array.rows == 4);
  CHECK(s.array.tilt == 0.0);
  CHECK(s.budget.reception_gain == 1.0);
  CHECK(s.budget.uniform_losses == 1.0);
  CHECK(s.loss.beta == 3.0);
  CHECK(s.points_per_edge == 3);
  CHECK(s.grid.cell_count() == 4);
  CHECK(s.grid.extent.az_min == doctest::Approx(deg_to_rad(-10.0)));
  CHECK(s.missions[0].swerling == Swerling::kSW1);
  CHECK_FALSE(s.waveforms[0].table_mode());
  const ClutterMap c = s.clutter_map();
  CHECK(c.alpha == std::vector<double>(4, 0.0));
  CHECK(s.waveform_index("pulse") == 0);
  CHECK(s.mission_index("air") == 0);
  CHECK_THROWS_AS(s.waveform_index("nope"), ConfigError);
}

TEST_CASE("bundled scenarios load") {
  const Scenario toy = load_scenario(source_path("scenarios/toy_2x2.yaml"));
  CHECK(toy.grid.cell_count() == 4);
  CHECK(toy.missions.size() == 1);

  const Scenario pc = load_scenario(source_path("scenarios/paper_case.yaml"));
  CHECK(pc.array.rows == 20);
  CHECK(pc.array.cols == 20);
  CHECK(pc.array.dx == doctest::Approx(pc.waveforms[0].wavelength / 2));
  CHECK(pc.grid.cell_count() == 360);
  CHECK(pc.missions.size() == 2);
  CHECK(pc.waveforms.size() == 2);
  CHECK(pc.missions.size() * pc.grid.cell_count() == 720);
  const ClutterMap c = pc.clutter_map();
  double hot = 0;
  for (double a : c.alpha) hot += a > 0.0;
  CHECK(hot > 0);
  CHECK(hot < 360);
}

TEST_CASE("eclipse coefficient of one is rejected") {
  const std::string text = std::string(kMinimal) +
                           "clutter:\n  regions:\n    - {name: sea, az_deg: [-10, 0], el_deg: [5, 15], alpha: 1.0}\n";
  try {
    parse(text);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(e.field() == "clutter.regions[0].alpha");
    CHECK(std::string(e.what()).find("[0, 1)") != std::string::npos);
  }
  CHECK(field_of(std::string(kMinimal) + "clutter: {default_alpha: -0.1}\n") == "clutter.default_alpha");
}

TEST_CASE("validation errors carry field paths") {
  auto replaced = [](const std::string& from, const std::string& to) {
    std::string t = kMinimal;
    t.replace(t.find(from), from.size(), to);
    return t;
  };
  CHECK(field_of(replaced("rcs_m2: 1", "rcs_m2: -1")) == "missions[0].rcs_m2");
  CHECK(field_of(replaced("rcs_m2: 1", "rcs_m2: 1\n    colour: red")) == "missions[0].colour");
  CHECK(field_of(replaced("duration_s: 0.001", "duration_s: 0")) == "waveforms[0].duration_s");
  CHECK(field_of(replaced("pfa: 1.0e-6", "pfa: 0.9")) == "budget");
  CHECK(field_of(replaced("rows: 4, cols: 4", "rows: 4")) == "array.cols");
  CHECK(field_of(replaced("rows: 2, cols: 2", "rows: 2, cols: two")) == "grid.cols");
  CHECK(field_of(replaced("az_deg: [-10, 10]", "az_deg: [10, -10]")) == "grid");
  CHECK(field_of(replaced("rcs_m2: 1", "rcs_m2: 1\n    swerling: SW4")) == "missions[0].swerling");
  const std::string dup = std::string(kMinimal) + "  - {id: pulse, duration_s: 0.002, wavelength_m: 0.1}\n";
  CHECK(field_of(dup) == "waveforms[1].id");
  std::istringstream broken("array: [1, 2\n");
  CHECK_THROWS_AS(parse_scenario(broken), IoError);
  CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.yaml"), IoError);
}

TEST_CASE("scenario round trip") {
  for (const char* rel : {"scenarios/toy_2x2.yaml", "scenarios/paper_case.yaml", "scenarios/toy_uncoverable.yaml"}) {
    const Scenario s = load_scenario(source_path(rel));
    CHECK(round_trip(s) == s);
  }
  Scenario s = testsupport::small_scenario();
  s.array.tilt = deg_to_rad(17.3);
  s.loss.tilt = s.array.tilt;
  s.grid.extent = {deg_to_rad(-33.3), deg_to_rad(12.7), deg_to_rad(0.1), deg_to_rad(41.9)};
  s.missions[0].swerling = Swerling::kSW0;
  s.missions[0].range = {};
  s.missions[0].range.cell_table = {1000.5, 2000.25, 3000.125, 1e-3};
  s.waveforms[0].table["air"] = {{0.0, 0.3, 0.6}, {10.0, 12.5, INFINITY}};
  s.clutter.default_alpha = 0.05;
  s.clutter.regions.push_back({"patch", {deg_to_rad(-20), deg_to_rad(0), deg_to_rad(1), deg_to_rad(9)}, 0.2});
  validate(s);
  CHECK(round_trip(s) == s);
  s.clutter.table = {0.0, 0.1, 0.2, 0.3};
  CHECK(round_trip(s) == s);

  const auto path = std::filesystem::temp_directory_path() / "searchplan_roundtrip.yaml";
  save_scenario(path.string(), s);
  CHECK(load_scenario(path.string()) == s);
  std::filesystem::remove(path);
}

TEST_CASE("clutter regions and tables") {
  SurveillanceGrid g;
  g.extent = {deg_to_rad(-20), deg_to_rad(20), deg_to_rad(0), deg_to_rad(20)};
  g.rows = 2;
  g.cols = 4;
  ClutterSpec spec;
  spec.default_alpha = 0.01;
  spec.regions.push_back({"a", {deg_to_rad(-20), deg_to_rad(0), deg_to_rad(0), deg_to_rad(20)}, 0.1});
  spec.regions.push_back({"b", {deg_to_rad(-12), deg_to_rad(12), deg_to_rad(0), deg_to_rad(10)}, 0.3});
  const ClutterMap c = spec.build(g);
  CHECK(c.rows == 2);
  CHECK(c.cols == 4);
  const std::vector<double> expected{0.1, 0.3, 0.3, 0.01, 0.1, 0.1, 0.01, 0.01};
  CHECK(c.alpha == expected);
  spec.table = {0, 0, 0, 0, 0.5, 0.5, 0.5, 0.5};
  CHECK(spec.build(g).alpha == spec.table);
}

TEST_CASE("threshold tables from a file") {
  const auto file = temp_file("searchplan_thresholds.txt",
                              "# waveform mission alpha db\n"
                              "pulse air 0.0 11.0\n"
                              "pulse air 0.5 14.0\n"
                              "other air 0.0 3.0\n"
                              "pulse air 0.9 inf\n");
  Waveform w;
  w.id = "pulse";
  load_threshold_table(file.string(), w);
  REQUIRE(w.table.count("air") == 1);
  CHECK(w.table["air"].alpha == std::vector<double>{0.0, 0.5, 0.9});
  CHECK(w.table["air"].db[1] == 14.0);
  CHECK(std::isinf(w.table["air"].db[2]));

  std::string text = kMinimal;
  text.replace(text.find("wavelength_m: 0.1"), 17,
               "wavelength_m: 0.1\n    thresholds: {file: " + file.string() + "}");
  const Scenario s = parse(text);
  CHECK(s.waveforms[0].table == w.table);
  CHECK(round_trip(s) == s);

  const auto bad = temp_file("searchplan_thresholds_bad.txt", "pulse air zero 11\n");
  Waveform w2;
  w2.id = "pulse";
  CHECK_THROWS_AS(load_threshold_table(bad.string(), w2), IoError);
  CHECK_THROWS_AS(load_threshold_table("/nonexistent/t.txt", w2), IoError);
  std::filesystem::remove(file);
  std::filesystem::remove(bad);
}

TEST_CASE("inline threshold table must name every mission") {
  std::string text = kMinimal;
  text.replace(text.find("wavelength_m: 0.1"), 17,
               "wavelength_m: 0.1\n    thresholds:\n      table:\n        - {mission: ghost, alpha: [0], db: [10]}");
  CHECK(field_of(text).rfind("waveforms[0].thresholds", 0) == 0);
}
