// searchplan: plan, solve and inspect radar search patterns.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <sstream>

#include "searchplan/covergen.hpp"
#include "searchplan/error.hpp"
#include "searchplan/format.hpp"
#include "searchplan/instance.hpp"
#include "searchplan/parallel.hpp"
#include "searchplan/pipeline.hpp"
#include "searchplan/report.hpp"
#include "searchplan/scenario.hpp"
#include "searchplan/solver.hpp"

namespace sp = searchplan;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitLimited = 2;
constexpr int kExitUncoverable = 3;
constexpr int kExitInternal = 4;

struct SolverFlags {
  double gap = -1.0;
  double time_limit = std::numeric_limits<double>::infinity();
  std::size_t node_limit = std::numeric_limits<std::size_t>::max();

  sp::BnbParams params() const {
    sp::BnbParams p;
    p.gap_tol = gap;
    p.time_limit = time_limit;
    p.node_limit = node_limit;
    return p;
  }
};

void add_solver_flags(CLI::App* cmd, SolverFlags& f) {
  cmd->add_option("--gap", f.gap, "Absolute optimality gap (default: 1e-6 of the cheapest dwell)");
  cmd->add_option("--time-limit", f.time_limit, "Branch&Bound time limit, seconds");
  cmd->add_option("--node-limit", f.node_limit, "Branch&Bound node limit");
}

void progress(const std::string& line) { std::cerr << "[searchplan] " << line << std::endl; }

int exit_for(const sp::IpSolution& sol) {
  return sol.proof == sp::Proof::kOptimal ? kExitOk : kExitLimited;
}

int cmd_plan(const std::string& scenario_path, const std::string& out_dir, const SolverFlags& flags,
             unsigned threads, const std::string& export_path, bool store_feeds) {
  const auto start = std::chrono::steady_clock::now();
  const sp::Scenario scenario = sp::load_scenario(scenario_path);
  progress("loaded " + scenario_path + ": " + std::to_string(scenario.grid.rows) + "x" +
           std::to_string(scenario.grid.cols) + " grid, " + std::to_string(scenario.missions.size()) +
           " missions, " + std::to_string(scenario.waveforms.size()) + " waveforms");

  sp::PlanOptions options;
  options.solver = flags.params();
  options.threads = threads;
  options.progress = progress;
  sp::PlanResult plan = sp::build_plan_instance(scenario, options);
  if (!export_path.empty()) {
    sp::write_instance(export_path, plan.instance);
    progress("instance written to " + export_path);
  }
  const auto t0 = std::chrono::steady_clock::now();
  plan.solution = sp::branch_and_bound(plan.instance, options.solver);
  plan.times.solve = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  plan.check = sp::verify_cover(plan.instance, plan.solution.selected);
  if (!plan.check.ok) {
    std::cerr << "error: solver output leaves row " << plan.check.first_uncovered << " uncovered\n";
    return kExitInternal;
  }

  const sp::SolutionReport report = sp::make_report(scenario, plan);
  if (!report.feasible()) {
    std::cerr << "error: report coverage maps contain uncovered cells\n";
    return kExitInternal;
  }
  sp::write_report(report, out_dir, store_feeds);
  const double total =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::cout << "dwells     " << report.dwells.size() << '\n'
            << "budget_s   " << sp::format_number(report.budget) << '\n'
            << "bound_s    " << sp::format_number(report.bound) << '\n'
            << "lp_bound_s " << sp::format_number(plan.solution.root_bound) << '\n'
            << "proof      " << sp::to_string(report.proof) << '\n'
            << "nodes      " << report.nodes << '\n'
            << "rows       " << plan.instance.rows() << '\n'
            << "columns    " << plan.instance.cols() << '\n'
            << "raw        " << plan.candidates.raw << '\n'
            << "surviving  " << plan.candidates.feasible << '\n'
            << "time_synthesis_s " << plan.times.synthesis << '\n'
            << "time_covergen_s  " << plan.times.covergen << '\n'
            << "time_solve_s     " << plan.times.solve << '\n'
            << "time_total_s     " << total << '\n';
  return exit_for(plan.solution);
}

int cmd_solve(const std::string& instance_path, const SolverFlags& flags, const std::string& out) {
  const sp::SetCoverInstance inst = sp::read_instance(instance_path);
  progress("instance " + instance_path + ": " + std::to_string(inst.rows()) + " rows, " +
           std::to_string(inst.cols()) + " columns");
  const sp::IpSolution sol = sp::branch_and_bound(inst, flags.params());
  if (!sp::verify_cover(inst, sol.selected).ok) {
    std::cerr << "error: solver output is not a cover\n";
    return kExitInternal;
  }
  std::cout << "objective  " << sp::format_number(sol.objective) << '\n'
            << "bound      " << sp::format_number(sol.bound) << '\n'
            << "lp_bound   " << sp::format_number(sol.root_bound) << '\n'
            << "proof      " << sp::to_string(sol.proof) << '\n'
            << "nodes      " << sol.node_count << '\n'
            << "selected  ";
  for (std::size_t j : sol.selected) std::cout << ' ' << j;
  std::cout << '\n';
  if (!out.empty()) sp::write_solution(out, sol);
  return exit_for(sol);
}

sp::SubRectangle parse_rect(const std::string& text) {
  sp::SubRectangle r;
  char c1 = 0, c2 = 0, c3 = 0;
  std::istringstream in(text);
  if (!(in >> r.row_lo >> c1 >> r.row_hi >> c2 >> r.col_lo >> c3 >> r.col_hi) || c1 != ',' ||
      c2 != ',' || c3 != ',' || !in.eof()) {
    throw sp::ConfigError("rectangle must be row_lo,row_hi,col_lo,col_hi");
  }
  return r;
}

int cmd_inspect(const std::string& scenario_path, const std::string& rect_text,
                const std::string& waveform_id, const std::string& out_dir) {
  namespace fs = std::filesystem;
  const sp::Scenario s = sp::load_scenario(scenario_path);
  const sp::SubRectangle rect = parse_rect(rect_text);
  if (!rect.valid_for(s.grid)) throw sp::ConfigError("rectangle " + rect.to_string() + " is outside the grid");
  const std::size_t w = s.waveform_index(waveform_id);
  const sp::Waveform& wave = s.waveforms[w];

  const sp::ClutterMap clutter = s.clutter_map();
  const sp::SynthesisContext ctx(s.grid, s.array, wave, s.missions, clutter, s.loss, s.budget,
                                 s.points_per_edge);
  const sp::IdealPattern ideal = sp::ideal_pattern(rect, ctx);
  const sp::SynthesizedPattern pattern = sp::synthesize(ideal, s.array, wave.wavelength, w);
  const sp::FeedMatrix feeds = pattern.feeds();

  const sp::TestLattice lattice(s.grid, s.array.tilt, s.points_per_edge);
  const std::vector<double> gains = sp::gain_map(s.array, feeds, lattice.uv(), wave.wavelength);

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw sp::IoError("cannot create " + out_dir + ": " + ec.message());
  const fs::path dir(out_dir);
  sp::write_csv((dir / "gain.csv").string(), gains, lattice.rows(), lattice.cols());
  sp::write_pgm((dir / "gain.pgm").string(), gains, lattice.rows(), lattice.cols());

  const std::size_t cells = s.grid.cell_count();
  for (const sp::Mission& m : s.missions) {
    std::vector<double> cover(cells, 0.0);
    for (std::uint32_t c : sp::discrete_cover(feeds, s.array, wave, m, s.grid, clutter, s.loss,
                                              s.budget, s.points_per_edge)) {
      cover[c] = 1.0;
    }
    std::vector<double> range(cells, 0.0);
    for (std::size_t c = 0; c < cells; ++c) {
      double worst = std::numeric_limits<double>::infinity();
      for (std::size_t k : lattice.cell_points(c)) {
        worst = std::min(worst, sp::detection_range(gains[k], wave, m, clutter.at(c), s.loss,
                                                    lattice.directions()[k], s.budget));
      }
      range[c] = worst;
    }
    sp::write_csv((dir / ("cover_" + m.id + ".csv")).string(), cover, s.grid.rows, s.grid.cols);
    sp::write_pgm((dir / ("cover_" + m.id + ".pgm")).string(), cover, s.grid.rows, s.grid.cols);
    sp::write_csv((dir / ("range_" + m.id + ".csv")).string(), range, s.grid.rows, s.grid.cols);
    sp::write_pgm((dir / ("range_" + m.id + ".pgm")).string(), range, s.grid.rows, s.grid.cols);
    const auto count = std::count(cover.begin(), cover.end(), 1.0);
    std::cout << "cover " << m.id << ' ' << count << " cells\n";
  }
  std::cout << "rectangle  " << rect.to_string() << '\n'
            << "waveform   " << wave.id << '\n'
            << "fallback   " << (ideal.fallback ? "yes" : "no") << '\n'
            << "peak_gain  " << sp::format_number(*std::max_element(gains.begin(), gains.end())) << '\n'
            << "digest     " << sp::hex64(sp::feed_digest(feeds)) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum-time radar search pattern planner"};
  app.require_subcommand(1);

  SolverFlags flags;
  std::string scenario_path;
  std::string out_dir = "report";
  unsigned threads = sp::default_thread_count();
  std::string export_path;
  bool store_feeds = false;
  CLI::App* plan = app.add_subcommand("plan", "Synthesize candidates, solve and write a report");
  plan->add_option("scenario", scenario_path, "Scenario file")->required();
  plan->add_option("--out", out_dir, "Report directory");
  plan->add_option("--threads", threads, "Workers for synthesis and cover generation");
  plan->add_option("--export-instance", export_path, "Also write the set cover instance");
  plan->add_flag("--store-feeds", store_feeds, "Write full feed matrices of the selected dwells");
  add_solver_flags(plan, flags);

  std::string instance_path;
  std::string solution_path;
  CLI::App* solve = app.add_subcommand("solve", "Solve an exported set cover instance");
  solve->add_option("instance", instance_path, "Instance file")->required();
  solve->add_option("--out", solution_path, "Solution file");
  add_solver_flags(solve, flags);

  std::string rect_text;
  std::string waveform_id;
  std::string inspect_out = "inspect";
  CLI::App* inspect = app.add_subcommand("inspect", "Synthesize one dwell and write its maps");
  inspect->add_option("scenario", scenario_path, "Scenario file")->required();
  inspect->add_option("--rect", rect_text, "row_lo,row_hi,col_lo,col_hi")->required();
  inspect->add_option("--waveform", waveform_id, "Waveform id")->required();
  inspect->add_option("--out", inspect_out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (plan->parsed()) {
      return cmd_plan(scenario_path, out_dir, flags, threads, export_path, store_feeds);
    }
    if (solve->parsed()) return cmd_solve(instance_path, flags, solution_path);
    return cmd_inspect(scenario_path, rect_text, waveform_id, inspect_out);
  } catch (const sp::UncoverableError& e) {
    std::cerr << "uncoverable: " << e.what() << '\n';
    return kExitUncoverable;
  } catch (const sp::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const sp::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const sp::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
