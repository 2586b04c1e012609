#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "searchplan/instance.hpp"
#include "searchplan/lp.hpp"

namespace searchplan {

enum class Proof { kNone, kOptimal, kGapLimited, kTimeLimited };

const char* to_string(Proof proof);
Proof parse_proof(const std::string& text);

struct IpSolution {
  std::vector<std::size_t> selected;  // ascending column indices
  double objective = 0.0;
  Proof proof = Proof::kNone;
  double bound = 0.0;  // best proven lower bound
  std::size_t node_count = 0;
  std::size_t branchings = 0;
  double root_bound = 0.0;
  // Global lower bound after each processed node (when requested).
  std::vector<double> bound_trace;
};

// Greedy weighted set cover: repeatedly take the column with the smallest
// cost per newly covered row, lowest index on ties. Throws UncoverableError
// if some row has no column.
IpSolution greedy_cover(const SetCoverInstance& inst);

struct CoverCheck {
  bool ok = false;
  std::size_t first_uncovered = 0;  // rows() when ok
};

// Independent feasibility audit: re-scans the matrix for a row no selected
// column covers.
CoverCheck verify_cover(const SetCoverInstance& inst, std::span<const std::size_t> selected);

// Classic set cover reductions, iterated to a fixed point: a row covered by
// a single column forces that column; a row whose column set contains
// another row's is dropped; a column whose rows are a subset of a no-more-
// expensive column's rows is dropped (lowest index kept among equals). An
// optimal cover of `reduced` plus `forced` is optimal for the original.
struct Presolved {
  SetCoverInstance reduced;
  std::vector<std::size_t> column_map;  // reduced column -> original column
  std::vector<std::size_t> forced;      // original columns fixed to 1
  double forced_cost = 0.0;
  std::size_t removed_rows = 0;
  std::size_t removed_cols = 0;
};

Presolved presolve(const SetCoverInstance& inst);

struct BnbParams {
  // Absolute gap; negative means 1e-6 times the smallest positive cost.
  double gap_tol = -1.0;
  double time_limit = std::numeric_limits<double>::infinity();  // seconds
  std::size_t node_limit = std::numeric_limits<std::size_t>::max();
  bool use_presolve = true;
  // Prune with the common cost unit when one exists.
  bool use_cost_unit = true;
  bool record_bound_trace = false;
  LpOptions lp;
};

// Exact Branch&Bound over the LP relaxation: best-bound-first node order,
// branching on the most fractional variable (lowest index on ties), nodes
// pruned once their bound reaches the incumbent. When every cost is an
// integer multiple of a common unit, a node is also pruned when its bound
// leaves no room for a cover cheaper by one unit. Throws UncoverableError
// for instances with an empty row.
IpSolution branch_and_bound(const SetCoverInstance& inst, const BnbParams& params = {});

// Solution file: key/value header followed by one selected column per line.
void write_solution(const std::string& path, const IpSolution& sol);
IpSolution read_solution(const std::string& path);

}  // namespace searchplan
