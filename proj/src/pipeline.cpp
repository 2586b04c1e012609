#include "searchplan/pipeline.hpp"

#include <chrono>
#include <sstream>

namespace searchplan {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

void report(const PlanOptions& options, const std::string& line) {
  if (options.progress) options.progress(line);
}

}  // namespace

std::vector<SynthesisContext> synthesis_contexts(const Scenario& s) {
  const ClutterMap clutter = s.clutter_map();
  std::vector<SynthesisContext> out;
  out.reserve(s.waveforms.size());
  for (const Waveform& w : s.waveforms) {
    out.emplace_back(s.grid, s.array, w, s.missions, clutter, s.loss, s.budget, s.points_per_edge);
  }
  return out;
}

CoverEngine cover_engine(const Scenario& s) {
  return CoverEngine(s.grid, s.array, s.waveforms, s.missions, s.clutter_map(), s.loss, s.budget,
                     s.points_per_edge);
}

PlanResult build_plan_instance(const Scenario& s, const PlanOptions& options) {
  PlanResult out;
  auto t0 = Clock::now();
  const auto rects = enumerate_subrectangles(s.grid);
  const auto contexts = synthesis_contexts(s);
  SynthesisBatch batch = synthesize_all(rects, contexts, options.threads);
  out.times.synthesis = since(t0);
  {
    std::ostringstream msg;
    msg << "synthesis: " << batch.patterns.size() << " of " << batch.requested << " patterns in "
        << out.times.synthesis << " s";
    report(options, msg.str());
  }

  t0 = Clock::now();
  const CoverEngine engine = cover_engine(s);
  CandidateOptions copt;
  copt.threads = options.threads;
  out.candidates = build_candidates(std::move(batch), s.waveforms, engine, copt);
  out.instance = assemble_instance(out.candidates, s.missions, s.grid);
  out.times.covergen = since(t0);
  {
    std::ostringstream msg;
    msg << "covergen: " << out.candidates.feasible << " feasible dwells, "
        << out.candidates.dwells.size() << " distinct columns, " << out.instance.rows()
        << " rows in " << out.times.covergen << " s";
    report(options, msg.str());
  }
  return out;
}

PlanResult run_plan(const Scenario& s, const PlanOptions& options) {
  PlanResult out = build_plan_instance(s, options);
  const auto t0 = Clock::now();
  out.solution = branch_and_bound(out.instance, options.solver);
  out.times.solve = since(t0);
  out.check = verify_cover(out.instance, out.solution.selected);
  std::ostringstream msg;
  msg << "solve: " << out.solution.selected.size() << " dwells, budget " << out.solution.objective
      << " s, bound " << out.solution.bound << ", " << out.solution.node_count << " nodes, "
      << to_string(out.solution.proof) << " in " << out.times.solve << " s";
  report(options, msg.str());
  return out;
}

}  // namespace searchplan
