#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "searchplan/instance.hpp"

namespace searchplan {

enum class LpStatus { kOptimal, kInfeasible, kIterationLimit };

const char* to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kOptimal;
  double objective = 0.0;    // c^T x at the returned point (true costs)
  std::vector<double> x;     // structural values, clipped to their bounds
  std::vector<double> duals; // row duals y >= 0 (clipped), original cost units
  // Lagrangian bound sum(y) + sum_j min_{x_j in bounds} (c_j - y^T A_j) x_j.
  // A valid lower bound on the LP optimum for any y >= 0, so it stays valid
  // under cost perturbation, rounding and iteration limits. +inf when
  // infeasible.
  double dual_bound = 0.0;
  std::size_t iterations = 0;
};

struct LpOptions {
  double primal_tol = 1e-9;
  double dual_tol = 1e-9;
  double pivot_tol = 1e-9;
  // Relative downward cost perturbation against dual degeneracy. Keeps the
  // perturbed optimum within this relative distance of the true optimum.
  double perturbation = 5e-8;
  int refactor_interval = 100;
  std::size_t max_iterations = 0;  // 0: automatic
};

// Bounded dual simplex for the set cover relaxation
//   min c^T x  s.t.  A x - s = 1,  lo <= x <= hi,  s >= 0
// with an explicit dense basis inverse updated by row operations and
// refactored periodically. Costs are scaled to unit maximum internally.
// The basis persists between solve() calls, so re-solving after bound
// changes starts from the previous optimal basis; any such basis stays dual
// feasible once nonbasic boxed variables are moved to the bound matching the
// sign of their reduced cost.
class DualSimplex {
 public:
  explicit DualSimplex(const SetCoverInstance& inst, LpOptions options = {});

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }

  // Structural bounds; lo, hi in {0, 1} with lo <= hi.
  void set_bounds(std::size_t j, double lo, double hi);
  double lower(std::size_t j) const { return lo_[j]; }
  double upper(std::size_t j) const { return hi_[j]; }

  LpSolution solve();

 private:
  enum class Outcome { kOptimal, kInfeasible, kLimit, kNumerical };

  bool combinatorially_feasible() const;
  void refactor();
  void recompute_primal();
  void recompute_duals();
  void repair_dual_feasibility();
  Outcome iterate(std::size_t limit);
  double nonbasic_value(std::size_t var) const;
  void column_times_binv(std::size_t var, std::vector<double>& out) const;
  LpSolution extract(LpStatus status) const;

  const SetCoverInstance& inst_;
  LpOptions opt_;
  std::size_t m_;
  std::size_t n_;
  double cost_scale_;
  std::vector<double> true_cost_;  // scaled, unperturbed
  std::vector<double> cost_;       // working costs, structurals then slacks
  std::vector<double> lo_;
  std::vector<double> hi_;
  std::vector<std::size_t> basis_;   // var per basis position
  std::vector<std::int64_t> pos_;    // basis position per var, -1 if nonbasic
  std::vector<char> at_upper_;
  std::vector<double> binv_;         // row-major m x m
  std::vector<double> xb_;
  std::vector<double> d_;
  std::vector<double> weight_;       // dual steepest-edge row norms
  std::vector<double> rho_;
  std::vector<double> alpha_row_;
  std::vector<double> alpha_col_;
  std::vector<std::vector<std::uint32_t>> row_cols_;
  std::size_t since_refactor_ = 0;
  std::size_t iterations_ = 0;
  bool primal_stale_ = true;
};

// One-shot relaxation with variables pinned to 0 or 1.
LpSolution solve_lp(const SetCoverInstance& inst, std::span<const std::size_t> fixed_zero = {},
                    std::span<const std::size_t> fixed_one = {}, const LpOptions& options = {});

}  // namespace searchplan
