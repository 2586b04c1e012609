#pragma once

#include <functional>
#include <string>
#include <vector>

#include "searchplan/covergen.hpp"
#include "searchplan/instance.hpp"
#include "searchplan/scenario.hpp"
#include "searchplan/solver.hpp"

namespace searchplan {

struct PlanOptions {
  BnbParams solver;
  unsigned threads = 1;  // synthesis and cover generation only
  std::function<void(const std::string&)> progress;  // optional
};

struct StageTimes {
  double synthesis = 0.0;  // seconds
  double covergen = 0.0;
  double solve = 0.0;
};

struct PlanResult {
  CandidateSet candidates;
  SetCoverInstance instance;
  IpSolution solution;
  CoverCheck check;
  StageTimes times;
};

// Builds the per-waveform synthesis contexts and the cover engine of a
// scenario.
std::vector<SynthesisContext> synthesis_contexts(const Scenario& scenario);
CoverEngine cover_engine(const Scenario& scenario);

// Candidate generation up to the assembled instance. Throws
// UncoverableError when some cell cannot be covered.
PlanResult build_plan_instance(const Scenario& scenario, const PlanOptions& options = {});

// Full pipeline: candidates, instance, Branch&Bound and the cover audit.
PlanResult run_plan(const Scenario& scenario, const PlanOptions& options = {});

}  // namespace searchplan
