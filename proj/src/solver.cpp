#include "searchplan/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <queue>
#include <sstream>

#include "searchplan/error.hpp"

namespace searchplan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kIntTol = 1e-6;

double total_cost(const SetCoverInstance& inst, std::span<const std::size_t> selected) {
  double sum = 0.0;
  for (std::size_t j : selected) sum += inst.cost(j);
  return sum;
}

void require_coverable(const SetCoverInstance& inst) {
  const std::size_t empty = inst.first_empty_row();
  if (empty < inst.rows()) {
    throw UncoverableError("row " + std::to_string(empty) + " has no covering column");
  }
}

// Greedy completion of a partial cover. `allowed` masks usable columns and
// `weight` scales each column's cost in the selection score.
std::vector<std::size_t> greedy_complete(const SetCoverInstance& inst,
                                         std::vector<std::size_t> selected,
                                         const std::vector<char>& allowed,
                                         const std::vector<double>& weight) {
  std::vector<char> covered(inst.rows(), 0);
  std::size_t remaining = inst.rows();
  std::vector<char> taken(inst.cols(), 0);
  for (std::size_t j : selected) {
    taken[j] = 1;
    for (std::uint32_t r : inst.column(j)) {
      if (!covered[r]) {
        covered[r] = 1;
        --remaining;
      }
    }
  }
  std::vector<std::size_t> fresh(inst.cols(), 0);
  for (std::size_t j = 0; j < inst.cols(); ++j) {
    if (taken[j] || !allowed[j]) continue;
    for (std::uint32_t r : inst.column(j)) fresh[j] += covered[r] ? 0 : 1;
  }
  struct Entry {
    double score;
    std::size_t fresh;
    std::size_t col;
  };
  // score_a / fresh_a < score_b / fresh_b, lowest index on ties.
  auto worse = [](const Entry& a, const Entry& b) {
    const double lhs = a.score * static_cast<double>(b.fresh);
    const double rhs = b.score * static_cast<double>(a.fresh);
    if (lhs != rhs) return lhs > rhs;
    return a.col > b.col;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);
  for (std::size_t j = 0; j < inst.cols(); ++j) {
    if (fresh[j] > 0) heap.push({inst.cost(j) * weight[j], fresh[j], j});
  }
  while (remaining > 0 && !heap.empty()) {
    Entry top = heap.top();
    heap.pop();
    std::size_t now = 0;
    for (std::uint32_t r : inst.column(top.col)) now += covered[r] ? 0 : 1;
    if (now == 0) continue;
    if (now != top.fresh) {
      top.fresh = now;
      heap.push(top);
      continue;
    }
    selected.push_back(top.col);
    for (std::uint32_t r : inst.column(top.col)) {
      if (!covered[r]) {
        covered[r] = 1;
        --remaining;
      }
    }
  }
  if (remaining > 0) return {};
  return selected;
}

// Drops columns whose rows are all covered twice, most expensive first.
std::vector<std::size_t> remove_redundant(const SetCoverInstance& inst,
                                          std::vector<std::size_t> selected) {
  std::vector<std::uint32_t> count(inst.rows(), 0);
  for (std::size_t j : selected) {
    for (std::uint32_t r : inst.column(j)) ++count[r];
  }
  std::vector<std::size_t> order = selected;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (inst.cost(a) != inst.cost(b)) return inst.cost(a) > inst.cost(b);
    return a > b;
  });
  std::vector<char> drop(inst.cols(), 0);
  for (std::size_t j : order) {
    const auto col = inst.column(j);
    if (std::all_of(col.begin(), col.end(), [&](std::uint32_t r) { return count[r] >= 2; })) {
      drop[j] = 1;
      for (std::uint32_t r : col) --count[r];
    }
  }
  std::erase_if(selected, [&](std::size_t j) { return drop[j] != 0; });
  std::sort(selected.begin(), selected.end());
  return selected;
}

// Common unit u such that every cost is an integer multiple of u, or 0.
double cost_unit(const std::vector<double>& costs) {
  double max_cost = 0.0;
  for (double c : costs) {
    if (c < 0.0) return 0.0;
    max_cost = std::max(max_cost, c);
  }
  if (max_cost == 0.0) return 0.0;
  const double tol = 1e-9 * max_cost;
  double unit = 0.0;
  for (double c : costs) {
    if (c <= tol) continue;
    if (unit == 0.0) {
      unit = c;
      continue;
    }
    double a = std::max(unit, c);
    double b = std::min(unit, c);
    while (b > tol) {
      double r = std::fmod(a, b);
      if (r < tol || b - r < tol) r = 0.0;
      a = b;
      b = r;
    }
    unit = a;
  }
  if (unit < 1e-6 * max_cost) return 0.0;
  for (double c : costs) {
    const double k = c / unit;
    if (std::abs(k - std::round(k)) > 1e-7 * std::max(1.0, k)) return 0.0;
  }
  return unit;
}

class Bitsets {
 public:
  Bitsets(std::size_t count, std::size_t bits) : words_((bits + 63) / 64), data_(count * words_, 0) {}
  void set(std::size_t set, std::size_t bit) { data_[set * words_ + bit / 64] |= 1ULL << (bit % 64); }
  const std::uint64_t* get(std::size_t set) const { return &data_[set * words_]; }
  std::size_t words() const { return words_; }

 private:
  std::size_t words_;
  std::vector<std::uint64_t> data_;
};

struct ActiveMask {
  explicit ActiveMask(std::size_t bits) : words((bits + 63) / 64, 0), flag(bits, 1) {
    for (std::size_t b = 0; b < bits; ++b) words[b / 64] |= 1ULL << (b % 64);
  }
  void clear(std::size_t b) {
    flag[b] = 0;
    words[b / 64] &= ~(1ULL << (b % 64));
  }
  std::vector<std::uint64_t> words;
  std::vector<char> flag;
};

// (a & mask) subset of b; sets `equal` when (a & mask) == (b & mask).
bool masked_subset(const std::uint64_t* a, const std::uint64_t* b, const ActiveMask& mask,
                   bool& equal) {
  equal = true;
  for (std::size_t w = 0; w < mask.words.size(); ++w) {
    const std::uint64_t am = a[w] & mask.words[w];
    const std::uint64_t bm = b[w] & mask.words[w];
    if (am & ~bm) return false;
    if (am != bm) equal = false;
  }
  return true;
}

}  // namespace

const char* to_string(Proof proof) {
  switch (proof) {
    case Proof::kNone:
      return "none";
    case Proof::kOptimal:
      return "optimal";
    case Proof::kGapLimited:
      return "gap-limited";
    case Proof::kTimeLimited:
      return "time-limited";
  }
  return "none";
}

Proof parse_proof(const std::string& text) {
  if (text == "optimal") return Proof::kOptimal;
  if (text == "gap-limited") return Proof::kGapLimited;
  if (text == "time-limited") return Proof::kTimeLimited;
  if (text == "none") return Proof::kNone;
  throw IoError("unknown proof status '" + text + "'");
}

IpSolution greedy_cover(const SetCoverInstance& inst) {
  IpSolution out;
  if (inst.rows() == 0) return out;
  require_coverable(inst);
  const std::vector<char> allowed(inst.cols(), 1);
  const std::vector<double> weight(inst.cols(), 1.0);
  out.selected = greedy_complete(inst, {}, allowed, weight);
  std::sort(out.selected.begin(), out.selected.end());
  out.objective = total_cost(inst, out.selected);
  return out;
}

CoverCheck verify_cover(const SetCoverInstance& inst, std::span<const std::size_t> selected) {
  std::vector<char> hit(inst.rows(), 0);
  for (std::size_t j : selected) {
    if (j >= inst.cols()) throw ConfigError("selected column " + std::to_string(j) + " out of range");
    for (std::uint32_t r : inst.column(j)) hit[r] = 1;
  }
  for (std::size_t r = 0; r < inst.rows(); ++r) {
    if (!hit[r]) return {false, r};
  }
  return {true, inst.rows()};
}

Presolved presolve(const SetCoverInstance& inst) {
  const std::size_t m = inst.rows();
  const std::size_t n = inst.cols();
  const auto rows_of_col = [&](std::size_t j) { return inst.column(j); };
  const auto cols_of_row = inst.row_lists();

  Bitsets col_bits(n, m);
  Bitsets row_bits(m, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::uint32_t r : rows_of_col(j)) {
      col_bits.set(j, r);
      row_bits.set(r, j);
    }
  }
  ActiveMask rows(m);
  ActiveMask cols(n);
  std::vector<std::size_t> row_count(m);  // active columns per active row
  std::vector<std::size_t> col_count(n);  // active rows per active column
  for (std::size_t r = 0; r < m; ++r) row_count[r] = cols_of_row[r].size();
  for (std::size_t j = 0; j < n; ++j) col_count[j] = rows_of_col(j).size();

  Presolved out;
  auto drop_col = [&](std::size_t j) {
    cols.clear(j);
    for (std::uint32_t r : rows_of_col(j)) --row_count[r];
  };
  auto drop_row = [&](std::size_t r) {
    rows.clear(r);
    for (std::uint32_t j : cols_of_row[r]) --col_count[j];
  };

  bool changed = true;
  while (changed) {
    changed = false;

    for (std::size_t r = 0; r < m; ++r) {
      if (!rows.flag[r]) continue;
      if (row_count[r] == 0) throw UncoverableError("row " + std::to_string(r) + " has no covering column");
      if (row_count[r] != 1) continue;
      std::size_t j = n;
      for (std::uint32_t c : cols_of_row[r]) {
        if (cols.flag[c]) {
          j = c;
          break;
        }
      }
      out.forced.push_back(j);
      out.forced_cost += inst.cost(j);
      for (std::uint32_t rr : rows_of_col(j)) {
        if (rows.flag[rr]) drop_row(rr);
      }
      drop_col(j);
      changed = true;
    }

    for (std::size_t j = 0; j < n; ++j) {
      if (!cols.flag[j]) continue;
      if (col_count[j] == 0) {
        drop_col(j);
        changed = true;
        continue;
      }
      std::size_t rarest = m;
      for (std::uint32_t r : rows_of_col(j)) {
        if (rows.flag[r] && (rarest == m || row_count[r] < row_count[rarest])) rarest = r;
      }
      for (std::uint32_t k : cols_of_row[rarest]) {
        if (k == j || !cols.flag[k] || inst.cost(k) > inst.cost(j)) continue;
        bool equal = false;
        if (!masked_subset(col_bits.get(j), col_bits.get(k), rows, equal)) continue;
        if (inst.cost(k) == inst.cost(j) && equal && k > j) continue;
        drop_col(j);
        changed = true;
        break;
      }
    }

    for (std::size_t r = 0; r < m; ++r) {
      if (!rows.flag[r]) continue;
      std::size_t pivot = n;
      for (std::uint32_t j : cols_of_row[r]) {
        if (cols.flag[j] && (pivot == n || col_count[j] < col_count[pivot])) pivot = j;
      }
      for (std::uint32_t k : rows_of_col(pivot)) {
        if (k == r || !rows.flag[k]) continue;
        bool equal = false;
        if (!masked_subset(row_bits.get(r), row_bits.get(k), cols, equal)) continue;
        if (equal && k < r) continue;
        drop_row(k);  // covering r always covers k
        changed = true;
      }
    }
  }

  std::vector<std::int64_t> new_row(m, -1);
  std::size_t kept_rows = 0;
  for (std::size_t r = 0; r < m; ++r) {
    if (rows.flag[r]) new_row[r] = static_cast<std::int64_t>(kept_rows++);
  }
  out.reduced = SetCoverInstance(kept_rows);
  std::vector<std::uint32_t> buf;
  for (std::size_t j = 0; j < n; ++j) {
    if (!cols.flag[j]) continue;
    buf.clear();
    for (std::uint32_t r : rows_of_col(j)) {
      if (new_row[r] >= 0) buf.push_back(static_cast<std::uint32_t>(new_row[r]));
    }
    out.reduced.add_column(inst.cost(j), buf);
    out.column_map.push_back(j);
  }
  std::sort(out.forced.begin(), out.forced.end());
  out.removed_rows = m - kept_rows;
  out.removed_cols = n - out.column_map.size();
  return out;
}

IpSolution branch_and_bound(const SetCoverInstance& inst, const BnbParams& params) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  IpSolution best;
  best.proof = Proof::kOptimal;
  if (inst.rows() == 0) return best;
  require_coverable(inst);

  double gap = params.gap_tol;
  if (gap < 0.0) {
    double min_cost = kInf;
    for (double c : inst.costs()) {
      if (c > 0.0) min_cost = std::min(min_cost, c);
    }
    gap = std::isinf(min_cost) ? 1e-12 : 1e-6 * min_cost;
  }
  const double unit = params.use_cost_unit ? cost_unit(inst.costs()) : 0.0;

  {
    IpSolution greedy = greedy_cover(inst);
    best.selected = remove_redundant(inst, greedy.selected);
    best.objective = total_cost(inst, best.selected);
  }

  Presolved pre;
  if (params.use_presolve) {
    pre = presolve(inst);
  } else {
    pre.reduced = inst;
    pre.column_map.resize(inst.cols());
    for (std::size_t j = 0; j < inst.cols(); ++j) pre.column_map[j] = j;
  }
  const SetCoverInstance& red = pre.reduced;
  const std::size_t n = red.cols();

  auto offer = [&](std::vector<std::size_t> reduced_cols) {
    std::vector<std::size_t> cand = pre.forced;
    for (std::size_t j : reduced_cols) cand.push_back(pre.column_map[j]);
    std::sort(cand.begin(), cand.end());
    if (!verify_cover(inst, cand).ok) return false;
    cand = remove_redundant(inst, std::move(cand));
    const double obj = total_cost(inst, cand);
    if (obj < best.objective) {
      best.objective = obj;
      best.selected = std::move(cand);
      return true;
    }
    return false;
  };

  if (red.rows() == 0) {
    offer({});
    best.bound = best.objective;
    best.root_bound = best.objective;
    return best;
  }

  auto prunable = [&](double lb) {
    if (lb >= best.objective - gap) return true;
    return unit > 0.0 && lb > best.objective - unit * (1.0 - 1e-6);
  };

  DualSimplex lp(red, params.lp);
  std::vector<double> root_hi(n, 1.0);
  std::vector<double> root_duals;
  double root_lb = -kInf;

  // Root reduced-cost fixing: forcing x_j = 1 raises the Lagrangian bound by
  // the reduced cost of j.
  auto fix_by_reduced_cost = [&] {
    if (root_duals.empty()) return;
    for (std::size_t j = 0; j < n; ++j) {
      if (root_hi[j] == 0.0) continue;
      double rc = red.cost(j);
      for (std::uint32_t r : red.column(j)) rc -= root_duals[r];
      if (rc > 0.0 && prunable(root_lb + rc)) {
        root_hi[j] = 0.0;
        if (lp.lower(j) == 0.0) lp.set_bounds(j, 0.0, 0.0);
      }
    }
  };

  struct Node {
    double bound;
    std::size_t depth;
    std::uint64_t id;
    std::vector<std::pair<std::uint32_t, std::uint8_t>> fixings;
  };
  auto later = [](const Node& a, const Node& b) {
    if (a.bound != b.bound) return a.bound > b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.id > b.id;
  };
  std::priority_queue<Node, std::vector<Node>, decltype(later)> open(later);
  std::uint64_t next_id = 0;
  open.push({-kInf, 0, next_id++, {}});

  std::vector<std::uint32_t> applied;
  std::vector<char> allowed(n, 1);
  std::vector<double> weight(n, 1.0);
  double global_lb = -kInf;
  Proof stop = Proof::kOptimal;

  while (!open.empty()) {
    if (elapsed() > params.time_limit) {
      stop = Proof::kTimeLimited;
      break;
    }
    if (best.node_count >= params.node_limit) {
      stop = Proof::kGapLimited;
      break;
    }
    Node node = open.top();
    open.pop();
    global_lb = std::max(global_lb, node.bound);
    if (params.record_bound_trace && std::isfinite(global_lb)) {
      best.bound_trace.push_back(std::min(global_lb, best.objective));
    }
    // Nodes leave in bound order, so the rest of the queue is prunable too.
    if (prunable(node.bound)) break;

    for (std::uint32_t j : applied) lp.set_bounds(j, 0.0, root_hi[j]);
    applied.clear();
    bool conflict = false;
    for (const auto& [j, v] : node.fixings) {
      if (v == 1 && root_hi[j] == 0.0) conflict = true;
      lp.set_bounds(j, v, v);
      applied.push_back(j);
    }
    if (conflict) continue;

    const LpSolution sol = lp.solve();
    ++best.node_count;
    if (sol.status == LpStatus::kInfeasible) continue;
    const double lb = std::max(node.bound, pre.forced_cost + sol.dual_bound);
    if (node.depth == 0) {
      root_lb = lb;
      best.root_bound = lb;
      root_duals = sol.duals;
      fix_by_reduced_cost();
    }
    if (prunable(lb)) continue;

    bool integral = sol.status == LpStatus::kOptimal;
    std::size_t branch = n;
    double branch_dist = kInf;
    for (std::size_t j = 0; j < n; ++j) {
      const double x = sol.x[j];
      const double frac = std::min(x, 1.0 - x);
      if (frac <= kIntTol) continue;
      integral = false;
      const double dist = std::abs(x - 0.5);
      if (dist < branch_dist) {
        branch_dist = dist;
        branch = j;
      }
    }

    if (integral) {
      std::vector<std::size_t> chosen;
      for (std::size_t j = 0; j < n; ++j) {
        if (sol.x[j] > 0.5) chosen.push_back(j);
      }
      if (offer(std::move(chosen))) fix_by_reduced_cost();
      continue;
    }

    if (node.depth == 0 || best.node_count % 10 == 0) {
      std::vector<std::size_t> seed;
      for (std::size_t j = 0; j < n; ++j) {
        allowed[j] = lp.upper(j) > 0.5 ? 1 : 0;
        weight[j] = 1.0 - 0.5 * sol.x[j];
        if (sol.x[j] >= 1.0 - kIntTol) seed.push_back(j);
      }
      auto rounded = greedy_complete(red, std::move(seed), allowed, weight);
      if (!rounded.empty() && offer(std::move(rounded))) fix_by_reduced_cost();
      if (prunable(lb)) continue;
    }

    if (branch == n) {
      // Iteration-limited LP with an integral-looking point: split on the
      // first free column instead.
      for (std::size_t j = 0; j < n && branch == n; ++j) {
        if (lp.lower(j) != lp.upper(j)) branch = j;
      }
      if (branch == n) continue;
    }
    ++best.branchings;
    for (std::uint8_t v : {std::uint8_t{1}, std::uint8_t{0}}) {
      Node child{lb, node.depth + 1, next_id++, node.fixings};
      child.fixings.emplace_back(static_cast<std::uint32_t>(branch), v);
      open.push(std::move(child));
    }
  }

  if (stop == Proof::kOptimal) {
    best.proof = Proof::kOptimal;
    best.bound = best.objective;
  } else {
    double lb = global_lb;
    if (!open.empty()) lb = std::max(lb, open.top().bound);
    best.proof = prunable(lb) ? Proof::kOptimal : stop;
    best.bound = std::min(lb, best.objective);
    if (best.proof == Proof::kOptimal) best.bound = best.objective;
  }
  return best;
}

void write_solution(const std::string& path, const IpSolution& sol) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write solution file " + path);
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << "objective " << sol.objective << '\n';
  out << "bound " << sol.bound << '\n';
  out << "proof " << to_string(sol.proof) << '\n';
  out << "nodes " << sol.node_count << '\n';
  out << "selected " << sol.selected.size() << '\n';
  for (std::size_t j : sol.selected) out << j << '\n';
  if (!out) throw IoError("failed while writing solution file " + path);
}

IpSolution read_solution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open solution file " + path);
  IpSolution sol;
  std::string key;
  std::string proof;
  std::size_t count = 0;
  if (!(in >> key >> sol.objective) || key != "objective") throw IoError(path + ": expected objective");
  if (!(in >> key >> sol.bound) || key != "bound") throw IoError(path + ": expected bound");
  if (!(in >> key >> proof) || key != "proof") throw IoError(path + ": expected proof");
  sol.proof = parse_proof(proof);
  if (!(in >> key >> sol.node_count) || key != "nodes") throw IoError(path + ": expected nodes");
  if (!(in >> key >> count) || key != "selected") throw IoError(path + ": expected selected");
  sol.selected.resize(count);
  for (std::size_t& j : sol.selected) {
    if (!(in >> j)) throw IoError(path + ": truncated selection list");
  }
  return sol;
}

}  // namespace searchplan
