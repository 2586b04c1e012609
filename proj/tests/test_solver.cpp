#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <filesystem>
#include <limits>
#include <random>
#include <sstream>
#include <vector>

#include "searchplan/error.hpp"
#include "searchplan/instance.hpp"
#include "searchplan/lp.hpp"
#include "searchplan/solver.hpp"
#include "support.hpp"

using namespace searchplan;
using testsupport::cyclic_instance;
using testsupport::exhaustive_optimum;
using testsupport::random_instance;

namespace {

SetCoverInstance make(std::size_t rows, const std::vector<std::pair<double, std::vector<std::uint32_t>>>& cols) {
  SetCoverInstance inst(rows);
  for (const auto& [c, r] : cols) inst.add_column(c, r);
  return inst;
}

// LP optimum by enumerating every vertex of {Ax >= 1, 0 <= x <= 1}.
double vertex_optimum(const SetCoverInstance& inst) {
  const int n = static_cast<int>(inst.cols());
  const int m = static_cast<int>(inst.rows());
  const int total = m + 2 * n;
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(total, n);
  Eigen::VectorXd h(total);
  for (int j = 0; j < n; ++j) {
    for (std::uint32_t r : inst.column(j)) G(r, j) = 1.0;
  }
  h.head(m).setOnes();
  for (int j = 0; j < n; ++j) {
    G(m + j, j) = 1.0;  // x_j >= 0
    h(m + j) = 0.0;
    G(m + n + j, j) = -1.0;  // -x_j >= -1
    h(m + n + j) = -1.0;
  }
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> pick(n);
  for (int i = 0; i < n; ++i) pick[i] = i;
  while (true) {
    Eigen::MatrixXd S(n, n);
    Eigen::VectorXd t(n);
    for (int i = 0; i < n; ++i) {
      S.row(i) = G.row(pick[i]);
      t(i) = h(pick[i]);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(S);
    if (lu.isInvertible()) {
      const Eigen::VectorXd x = lu.solve(t);
      if (((G * x - h).array() >= -1e-9).all()) {
        double obj = 0.0;
        for (int j = 0; j < n; ++j) obj += inst.cost(j) * x(j);
        best = std::min(best, obj);
      }
    }
    int i = n - 1;
    while (i >= 0 && pick[i] == total - n + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int k = i + 1; k < n; ++k) pick[k] = pick[k - 1] + 1;
  }
  return best;
}

void check_lp_point(const SetCoverInstance& inst, const LpSolution& sol) {
  std::vector<double> ax(inst.rows(), 0.0);
  double obj = 0.0;
  for (std::size_t j = 0; j < inst.cols(); ++j) {
    CHECK(sol.x[j] >= -1e-6);
    CHECK(sol.x[j] <= 1.0 + 1e-6);
    obj += inst.cost(j) * sol.x[j];
    for (std::uint32_t r : inst.column(j)) ax[r] += sol.x[j];
  }
  for (double v : ax) CHECK(v >= 1.0 - 1e-6);
  CHECK(obj == doctest::Approx(sol.objective).epsilon(1e-9));
  CHECK(sol.dual_bound <= sol.objective + 1e-9 * std::max(1.0, sol.objective));
}

double cover_cost(const SetCoverInstance& inst, const std::vector<std::size_t>& sel) {
  double c = 0.0;
  for (std::size_t j : sel) c += inst.cost(j);
  return c;
}

}  // namespace

TEST_CASE("LP relaxation reference instances") {
  const auto one = make(3, {{3.0, {0, 1, 2}}});
  LpSolution s = solve_lp(one);
  CHECK(s.status == LpStatus::kOptimal);
  CHECK(s.objective == doctest::Approx(3.0));
  CHECK(s.x[0] == doctest::Approx(1.0));

  const auto two = make(2, {{1.0, {0}}, {2.0, {1}}});
  s = solve_lp(two);
  CHECK(s.objective == doctest::Approx(3.0));
  CHECK(s.x[0] == doctest::Approx(1.0));
  CHECK(s.x[1] == doctest::Approx(1.0));

  const auto cyc = cyclic_instance();
  s = solve_lp(cyc);
  CHECK(s.status == LpStatus::kOptimal);
  CHECK(s.objective == doctest::Approx(1.5).epsilon(1e-12));
  for (double x : s.x) CHECK(x == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(vertex_optimum(cyc) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("LP objective matches vertex enumeration") {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<std::size_t> rows(1, 5), cols(1, 6);
  for (int trial = 0; trial < 150; ++trial) {
    const auto inst = random_instance(rng, rows(rng), cols(rng), 0.4, trial % 2 == 0);
    const LpSolution s = solve_lp(inst);
    REQUIRE(s.status == LpStatus::kOptimal);
    const double oracle = vertex_optimum(inst);
    CHECK(s.objective == doctest::Approx(oracle).epsilon(1e-7));
    check_lp_point(inst, s);
  }
}

TEST_CASE("LP fixings and infeasibility") {
  const auto cyc = cyclic_instance();
  const std::vector<std::size_t> one{0};
  LpSolution s = solve_lp(cyc, {}, one);
  CHECK(s.objective == doctest::Approx(2.0));
  CHECK(s.x[0] == doctest::Approx(1.0));

  const std::vector<std::size_t> zero{0, 1};
  s = solve_lp(cyc, zero);
  CHECK(s.status == LpStatus::kInfeasible);

  const auto two = make(2, {{1.0, {0}}, {2.0, {1}}, {2.5, {0, 1}}});
  const std::vector<std::size_t> z2{2};
  s = solve_lp(two, z2);
  CHECK(s.objective == doctest::Approx(3.0));
}

TEST_CASE("warm re-solves agree with fresh solves") {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = random_instance(rng, 25, 60, 0.15, trial % 2 == 0);
    DualSimplex lp(inst);
    std::uniform_int_distribution<std::size_t> col(0, inst.cols() - 1);
    std::vector<std::size_t> zero, onev;
    for (int step = 0; step < 6; ++step) {
      const std::size_t j = col(rng);
      if (std::find(zero.begin(), zero.end(), j) != zero.end() ||
          std::find(onev.begin(), onev.end(), j) != onev.end()) {
        continue;
      }
      if (step % 2 == 0) {
        zero.push_back(j);
        lp.set_bounds(j, 0.0, 0.0);
      } else {
        onev.push_back(j);
        lp.set_bounds(j, 1.0, 1.0);
      }
      const LpSolution warm = lp.solve();
      const LpSolution cold = solve_lp(inst, zero, onev);
      REQUIRE(warm.status == cold.status);
      if (cold.status == LpStatus::kOptimal) {
        CHECK(warm.objective == doctest::Approx(cold.objective).epsilon(1e-7));
        check_lp_point(inst, warm);
      }
    }
  }
}

TEST_CASE("greedy cover examples") {
  const auto one = make(3, {{1.0, {0}}, {2.0, {0, 1, 2}}, {1.0, {2}}});
  const auto whole = make(3, {{5.0, {0, 1, 2}}});
  CHECK(greedy_cover(whole).selected == std::vector<std::size_t>{0});
  CHECK(greedy_cover(one).selected == std::vector<std::size_t>{1});

  const auto singles = make(3, {{1.0, {0}}, {2.0, {1}}, {3.0, {2}}});
  const IpSolution s = greedy_cover(singles);
  CHECK(s.selected == std::vector<std::size_t>{0, 1, 2});
  CHECK(s.objective == doctest::Approx(6.0));
  CHECK(s.proof == Proof::kNone);

  const IpSolution c = greedy_cover(cyclic_instance());
  CHECK(c.objective == doctest::Approx(2.0));
  CHECK(c.selected == std::vector<std::size_t>{0, 1});

  SetCoverInstance bad(2);
  const std::vector<std::uint32_t> r0{0};
  bad.add_column(1.0, r0);
  CHECK_THROWS_AS(greedy_cover(bad), UncoverableError);
}

TEST_CASE("verify_cover") {
  const auto cyc = cyclic_instance();
  const CoverCheck none = verify_cover(cyc, {});
  CHECK_FALSE(none.ok);
  CHECK(none.first_uncovered == 0);
  const std::vector<std::size_t> all{0, 1, 2};
  CHECK(verify_cover(cyc, all).ok);
  const std::vector<std::size_t> just1{1};
  const CoverCheck partial = verify_cover(cyc, just1);
  CHECK_FALSE(partial.ok);
  CHECK(partial.first_uncovered == 0);
  const std::vector<std::size_t> pair{0, 1};
  CHECK(verify_cover(cyc, pair).ok);
  CHECK(verify_cover(SetCoverInstance(0), {}).ok);
}

TEST_CASE("Branch&Bound on the cyclic instance") {
  BnbParams plain;
  plain.use_presolve = false;
  plain.use_cost_unit = false;
  const IpSolution p = branch_and_bound(cyclic_instance(), plain);
  CHECK(p.objective == 2.0);
  CHECK(p.proof == Proof::kOptimal);
  CHECK(p.root_bound == doctest::Approx(1.5).epsilon(1e-7));
  CHECK(p.branchings >= 1);

  const IpSolution d = branch_and_bound(cyclic_instance());
  CHECK(d.objective == 2.0);
  CHECK(d.proof == Proof::kOptimal);
  CHECK(d.bound == 2.0);
}

TEST_CASE("integral relaxations need no branching") {
  const auto inst = make(4, {{1.0, {0, 1}}, {1.0, {2, 3}}, {3.0, {0, 1, 2, 3}}, {1.5, {1, 2}}});
  BnbParams plain;
  plain.use_presolve = false;
  const IpSolution s = branch_and_bound(inst, plain);
  CHECK(s.branchings == 0);
  CHECK(s.objective == 2.0);
  CHECK(s.selected == std::vector<std::size_t>{0, 1});
}

TEST_CASE("Branch&Bound equals exhaustive enumeration") {
  std::mt19937_64 rng(107);
  std::uniform_int_distribution<std::size_t> rows(1, 9), cols(1, 14);
  std::uniform_real_distribution<double> dens(0.15, 0.5);
  for (int trial = 0; trial < 300; ++trial) {
    const bool integer = trial % 3 != 0;
    const auto inst = random_instance(rng, rows(rng), cols(rng), dens(rng), integer);
    const double oracle = exhaustive_optimum(inst);
    BnbParams params;
    params.use_presolve = trial % 2 == 0;
    params.use_cost_unit = trial % 4 < 2;
    const IpSolution s = branch_and_bound(inst, params);
    CHECK(s.proof == Proof::kOptimal);
    if (integer) {
      CHECK(s.objective == oracle);
    } else {
      CHECK(s.objective == doctest::Approx(oracle).epsilon(1e-12));
    }
    CHECK(verify_cover(inst, s.selected).ok);
    CHECK(cover_cost(inst, s.selected) == doctest::Approx(s.objective).epsilon(1e-12));
    CHECK(s.bound <= s.objective);
    CHECK(std::is_sorted(s.selected.begin(), s.selected.end()));
  }
}

TEST_CASE("sandwich: LP <= B&B <= greedy") {
  std::mt19937_64 rng(109);
  for (int trial = 0; trial < 12; ++trial) {
    const auto inst = random_instance(rng, 30, 150, 0.08, trial % 2 == 0);
    const LpSolution lp = solve_lp(inst);
    const IpSolution ip = branch_and_bound(inst);
    const IpSolution gr = greedy_cover(inst);
    CHECK(lp.objective <= ip.objective + 1e-7 * ip.objective);
    CHECK(ip.objective <= gr.objective + 1e-12);
    CHECK(ip.proof == Proof::kOptimal);
    CHECK(verify_cover(inst, ip.selected).ok);
  }
}

TEST_CASE("global bound is non-decreasing") {
  std::mt19937_64 rng(113);
  for (int trial = 0; trial < 8; ++trial) {
    const auto inst = random_instance(rng, 40, 120, 0.06, false);
    BnbParams params;
    params.record_bound_trace = true;
    const IpSolution s = branch_and_bound(inst, params);
    for (std::size_t i = 1; i < s.bound_trace.size(); ++i) CHECK(s.bound_trace[i] >= s.bound_trace[i - 1]);
    for (double b : s.bound_trace) CHECK(b <= s.objective);
  }
}

TEST_CASE("cost scaling scales the optimum") {
  std::mt19937_64 rng(127);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = random_instance(rng, 8, 12, 0.3, true);
    const IpSolution base = branch_and_bound(inst);
    for (double factor : {3.0, 4.0, 0.25}) {
      const IpSolution scaled = branch_and_bound(inst.scaled(factor));
      CHECK(scaled.objective == base.objective * factor);
      CHECK(cover_cost(inst, scaled.selected) == base.objective);
    }
  }
}

TEST_CASE("degenerate and uncoverable instances") {
  const IpSolution empty = branch_and_bound(SetCoverInstance(0));
  CHECK(empty.selected.empty());
  CHECK(empty.objective == 0.0);
  CHECK(empty.proof == Proof::kOptimal);

  SetCoverInstance bad(3);
  const std::vector<std::uint32_t> r{0, 2};
  bad.add_column(1.0, r);
  CHECK_THROWS_AS(branch_and_bound(bad), UncoverableError);
  CHECK(bad.first_empty_row() == 1);
}

TEST_CASE("limits return a valid incumbent and bound") {
  std::mt19937_64 rng(131);
  const auto inst = random_instance(rng, 60, 400, 0.05, false);
  BnbParams t;
  t.time_limit = 0.0;
  const IpSolution a = branch_and_bound(inst, t);
  CHECK(verify_cover(inst, a.selected).ok);
  CHECK(a.bound <= a.objective);
  CHECK((a.proof == Proof::kTimeLimited || a.proof == Proof::kOptimal));

  BnbParams n;
  n.node_limit = 1;
  const IpSolution b = branch_and_bound(inst, n);
  CHECK(verify_cover(inst, b.selected).ok);
  CHECK(b.bound <= b.objective);
  CHECK(b.node_count <= 1);
  CHECK((b.proof == Proof::kGapLimited || b.proof == Proof::kOptimal));

  BnbParams g;
  g.gap_tol = 1e9;
  const IpSolution c = branch_and_bound(inst, g);
  CHECK(c.proof == Proof::kOptimal);
  CHECK(c.node_count <= 1);
}

TEST_CASE("presolve preserves the optimum") {
  std::mt19937_64 rng(137);
  int reduced_something = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = random_instance(rng, 9, 12, 0.3, trial % 2 == 0);
    const Presolved p = presolve(inst);
    CHECK(p.reduced.cols() == p.column_map.size());
    double forced = 0.0;
    for (std::size_t j : p.forced) forced += inst.cost(j);
    CHECK(p.forced_cost == doctest::Approx(forced));
    for (std::size_t j = 0; j < p.reduced.cols(); ++j) {
      CHECK(p.reduced.cost(j) == inst.cost(p.column_map[j]));
    }
    const double rest = p.reduced.rows() == 0 ? 0.0 : exhaustive_optimum(p.reduced);
    CHECK(p.forced_cost + rest == doctest::Approx(exhaustive_optimum(inst)).epsilon(1e-12));
    reduced_something += p.removed_cols > 0 || p.removed_rows > 0 || !p.forced.empty();
  }
  CHECK(reduced_something > 0);
}

TEST_CASE("presolve reductions") {
  // Row 0 is covered only by column 1, which also covers row 1. Column 0 is
  // then useless, column 3 duplicates column 2, and row 2 forces column 2.
  const auto inst = make(3, {{1.0, {1}}, {2.0, {0, 1}}, {1.0, {1, 2}}, {1.0, {2}}});
  const Presolved p = presolve(inst);
  CHECK(p.forced == std::vector<std::size_t>{1, 2});
  CHECK(p.forced_cost == 3.0);
  CHECK(p.reduced.rows() == 0);

  // Row 1 contains row 0's columns, so it is dropped; nothing else reduces.
  const auto rows = make(3, {{2.0, {0, 1}}, {3.0, {0, 1, 2}}, {2.0, {1, 2}}});
  const Presolved q = presolve(rows);
  CHECK(q.forced.empty());
  CHECK(q.removed_rows == 1);
  CHECK(q.reduced.rows() == 2);
  CHECK(q.reduced.cols() == 3);
  CHECK(branch_and_bound(rows).objective == 3.0);

  const auto empty_row = make(2, {{1.0, {0}}});
  CHECK_THROWS_AS(presolve(empty_row), UncoverableError);
}

TEST_CASE("instance text round trip") {
  std::mt19937_64 rng(139);
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = random_instance(rng, 20, 50, 0.2, trial % 2 == 0);
    std::stringstream ss;
    write_instance(ss, inst);
    const SetCoverInstance back = read_instance(ss);
    CHECK(back == inst);
  }
  std::stringstream text("p 2 2\n1.5 0\n2 1\n0 0\n1 1\n1 0\n");
  const SetCoverInstance parsed = read_instance(text);
  CHECK(parsed.rows() == 2);
  CHECK(parsed.cols() == 2);
  CHECK(parsed.cost(0) == 1.5);
  CHECK(std::vector<std::uint32_t>(parsed.column(0).begin(), parsed.column(0).end()) ==
        std::vector<std::uint32_t>{0, 1});

  std::stringstream bad_header("q 2 2\n");
  CHECK_THROWS_AS(read_instance(bad_header), IoError);
  std::stringstream bad_entry("p 2 1\n1 0\n5 0\n");
  CHECK_THROWS_AS(read_instance(bad_entry), IoError);
  CHECK_THROWS_AS(read_instance(std::string("/nonexistent/instance.txt")), IoError);
}

TEST_CASE("solution file round trip") {
  std::mt19937_64 rng(149);
  const auto inst = random_instance(rng, 15, 30, 0.2, false);
  const IpSolution s = branch_and_bound(inst);
  const auto path = std::filesystem::temp_directory_path() / "searchplan_solution_test.txt";
  write_solution(path.string(), s);
  const IpSolution back = read_solution(path.string());
  CHECK(back.objective == s.objective);
  CHECK(back.bound == s.bound);
  CHECK(back.proof == s.proof);
  CHECK(back.node_count == s.node_count);
  CHECK(back.selected == s.selected);
  std::filesystem::remove(path);
  CHECK(parse_proof(to_string(Proof::kGapLimited)) == Proof::kGapLimited);
}
