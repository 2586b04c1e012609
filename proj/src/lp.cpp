#include "searchplan/lp.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "searchplan/error.hpp"

namespace searchplan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Deterministic value in [0, 1) per column.
double unit_hash(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

}  // namespace

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kIterationLimit:
      return "iteration-limit";
  }
  return "unknown";
}

DualSimplex::DualSimplex(const SetCoverInstance& inst, LpOptions options)
    : inst_(inst), opt_(options), m_(inst.rows()), n_(inst.cols()) {
  cost_scale_ = 0.0;
  for (double c : inst.costs()) cost_scale_ = std::max(cost_scale_, std::abs(c));
  if (cost_scale_ == 0.0) cost_scale_ = 1.0;

  const std::size_t total = n_ + m_;
  true_cost_.resize(n_);
  cost_.assign(total, 0.0);
  for (std::size_t j = 0; j < n_; ++j) {
    true_cost_[j] = inst.cost(j) / cost_scale_;
    cost_[j] = true_cost_[j] - opt_.perturbation * unit_hash(j) * std::abs(true_cost_[j]);
  }
  lo_.assign(total, 0.0);
  hi_.assign(total, 1.0);
  std::fill(hi_.begin() + static_cast<std::ptrdiff_t>(n_), hi_.end(), kInf);

  basis_.resize(m_);
  pos_.assign(total, -1);
  at_upper_.assign(total, 0);
  for (std::size_t i = 0; i < m_; ++i) {
    basis_[i] = n_ + i;
    pos_[n_ + i] = static_cast<std::int64_t>(i);
  }
  binv_.assign(m_ * m_, 0.0);
  for (std::size_t i = 0; i < m_; ++i) binv_[i * m_ + i] = -1.0;
  weight_.assign(m_, 1.0);
  xb_.assign(m_, 0.0);
  d_.assign(total, 0.0);
  for (std::size_t j = 0; j < n_; ++j) d_[j] = cost_[j];
  rho_.resize(m_);
  alpha_row_.assign(total, 0.0);
  alpha_col_.resize(m_);
  row_cols_ = inst.row_lists();
  if (opt_.max_iterations == 0) opt_.max_iterations = 20 * (m_ + n_) + 1000;
}

void DualSimplex::set_bounds(std::size_t j, double lo, double hi) {
  if (j >= n_ || lo > hi) throw ConfigError("invalid LP bound change");
  if (pos_[j] < 0) {
    const double before = nonbasic_value(j);
    lo_[j] = lo;
    hi_[j] = hi;
    if (nonbasic_value(j) != before) primal_stale_ = true;
  } else {
    lo_[j] = lo;
    hi_[j] = hi;
  }
}

double DualSimplex::nonbasic_value(std::size_t var) const { return at_upper_[var] ? hi_[var] : lo_[var]; }

bool DualSimplex::combinatorially_feasible() const {
  // x = hi is feasible iff every row keeps a column with upper bound 1.
  for (const auto& cols : row_cols_) {
    bool ok = false;
    for (std::uint32_t j : cols) {
      if (hi_[j] > 0.5) {
        ok = true;
        break;
      }
    }
    if (!ok) return false;
  }
  return true;
}

void DualSimplex::refactor() {
  // With R the rows whose slack is nonbasic and J the basic structurals
  // (|R| = |J| = k), ordering rows (R, S) and columns (J, slacks of S) gives
  // B = [A_RJ 0; A_SJ -I], whose inverse only needs A_RJ^{-1}.
  std::vector<std::size_t> structurals;
  std::vector<std::int64_t> r_index(m_, -1);
  for (std::size_t p = 0; p < m_; ++p) {
    if (basis_[p] < n_) structurals.push_back(p);
  }
  std::vector<std::size_t> r_rows;
  for (std::size_t i = 0; i < m_; ++i) {
    if (pos_[n_ + i] < 0) {
      r_index[i] = static_cast<std::int64_t>(r_rows.size());
      r_rows.push_back(i);
    }
  }
  const std::size_t k = structurals.size();
  if (r_rows.size() != k) throw Error("internal: inconsistent simplex basis");

  Eigen::MatrixXd arj = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::uint32_t r : inst_.column(basis_[structurals[a]])) {
      if (r_index[r] >= 0) arj(r_index[r], static_cast<Eigen::Index>(a)) = 1.0;
    }
  }
  Eigen::MatrixXd inv;
  if (k > 0) inv = arj.partialPivLu().inverse();

  std::fill(binv_.begin(), binv_.end(), 0.0);
  for (std::size_t a = 0; a < k; ++a) {
    double* row = &binv_[structurals[a] * m_];
    for (std::size_t b = 0; b < k; ++b) row[r_rows[b]] = inv(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  }
  for (std::size_t p = 0; p < m_; ++p) {
    if (basis_[p] < n_) continue;
    const std::size_t s = basis_[p] - n_;
    double* row = &binv_[p * m_];
    row[s] = -1.0;
    // Row s of A_SJ A_RJ^{-1}.
    for (std::size_t a = 0; a < k; ++a) {
      const auto col = inst_.column(basis_[structurals[a]]);
      if (!std::binary_search(col.begin(), col.end(), static_cast<std::uint32_t>(s))) continue;
      for (std::size_t b = 0; b < k; ++b) row[r_rows[b]] += inv(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
    }
  }
  for (std::size_t p = 0; p < m_; ++p) {
    const double* row = &binv_[p * m_];
    double w = 0.0;
    for (std::size_t c = 0; c < m_; ++c) w += row[c] * row[c];
    weight_[p] = w;
  }
  since_refactor_ = 0;
}

void DualSimplex::recompute_primal() {
  std::vector<double> rhs(m_, 1.0);
  for (std::size_t j = 0; j < n_; ++j) {
    if (pos_[j] >= 0) continue;
    const double v = nonbasic_value(j);
    if (v == 0.0) continue;
    for (std::uint32_t r : inst_.column(j)) rhs[r] -= v;
  }
  // Nonbasic slacks sit at zero.
  for (std::size_t p = 0; p < m_; ++p) {
    const double* row = &binv_[p * m_];
    double sum = 0.0;
    for (std::size_t c = 0; c < m_; ++c) sum += row[c] * rhs[c];
    xb_[p] = sum;
  }
  primal_stale_ = false;
}

void DualSimplex::recompute_duals() {
  std::vector<double> y(m_, 0.0);
  for (std::size_t p = 0; p < m_; ++p) {
    const double cb = cost_[basis_[p]];
    if (cb == 0.0) continue;
    const double* row = &binv_[p * m_];
    for (std::size_t c = 0; c < m_; ++c) y[c] += cb * row[c];
  }
  for (std::size_t j = 0; j < n_; ++j) {
    if (pos_[j] >= 0) {
      d_[j] = 0.0;
      continue;
    }
    double s = 0.0;
    for (std::uint32_t r : inst_.column(j)) s += y[r];
    d_[j] = cost_[j] - s;
  }
  for (std::size_t i = 0; i < m_; ++i) d_[n_ + i] = pos_[n_ + i] >= 0 ? 0.0 : y[i];
}

void DualSimplex::repair_dual_feasibility() {
  for (std::size_t var = 0; var < n_ + m_; ++var) {
    if (pos_[var] >= 0) continue;
    if (var < n_) {
      if (lo_[var] == hi_[var]) continue;
      if (d_[var] < -opt_.dual_tol && !at_upper_[var]) {
        at_upper_[var] = 1;
        primal_stale_ = true;
      } else if (d_[var] > opt_.dual_tol && at_upper_[var]) {
        at_upper_[var] = 0;
        primal_stale_ = true;
      }
    } else if (d_[var] < -opt_.dual_tol) {
      // Shift the slack cost so the basis stays dual feasible.
      cost_[var] -= d_[var];
      d_[var] = 0.0;
    }
  }
}

void DualSimplex::column_times_binv(std::size_t var, std::vector<double>& out) const {
  if (var >= n_) {
    const std::size_t s = var - n_;
    for (std::size_t p = 0; p < m_; ++p) out[p] = -binv_[p * m_ + s];
    return;
  }
  const auto col = inst_.column(var);
  for (std::size_t p = 0; p < m_; ++p) {
    const double* row = &binv_[p * m_];
    double sum = 0.0;
    for (std::uint32_t r : col) sum += row[r];
    out[p] = sum;
  }
}

DualSimplex::Outcome DualSimplex::iterate(std::size_t limit) {
  const std::size_t total = n_ + m_;
  for (std::size_t it = 0; it < limit; ++it) {
    if (since_refactor_ >= static_cast<std::size_t>(opt_.refactor_interval)) {
      refactor();
      recompute_duals();
      repair_dual_feasibility();
      recompute_primal();
    }

    // Leaving row: largest squared infeasibility over steepest-edge weight.
    std::size_t r = m_;
    double best = 0.0;
    for (std::size_t p = 0; p < m_; ++p) {
      const std::size_t var = basis_[p];
      double infeas = 0.0;
      if (xb_[p] < lo_[var] - opt_.primal_tol) {
        infeas = lo_[var] - xb_[p];
      } else if (xb_[p] > hi_[var] + opt_.primal_tol) {
        infeas = xb_[p] - hi_[var];
      } else {
        continue;
      }
      const double score = infeas * infeas / std::max(weight_[p], 1e-12);
      if (score > best) {
        best = score;
        r = p;
      }
    }
    if (r == m_) return Outcome::kOptimal;

    const std::size_t leaving = basis_[r];
    const bool to_lower = xb_[r] < lo_[leaving];
    const double s = to_lower ? 1.0 : -1.0;
    const double target = to_lower ? lo_[leaving] : hi_[leaving];

    // Pivot row alpha_j = rho^T a_j over nonbasic variables.
    std::copy_n(&binv_[r * m_], m_, rho_.begin());
    std::size_t row_work = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (rho_[i] != 0.0) row_work += row_cols_[i].size();
    }
    if (row_work < inst_.nonzeros()) {
      std::fill_n(alpha_row_.begin(), n_, 0.0);
      for (std::size_t i = 0; i < m_; ++i) {
        const double v = rho_[i];
        if (v == 0.0) continue;
        for (std::uint32_t j : row_cols_[i]) alpha_row_[j] += v;
      }
    } else {
      for (std::size_t j = 0; j < n_; ++j) {
        if (pos_[j] >= 0) continue;
        double sum = 0.0;
        for (std::uint32_t rr : inst_.column(j)) sum += rho_[rr];
        alpha_row_[j] = sum;
      }
    }
    for (std::size_t i = 0; i < m_; ++i) alpha_row_[n_ + i] = -rho_[i];

    // Harris two-pass ratio test.
    double t_max = kInf;
    for (std::size_t var = 0; var < total; ++var) {
      if (pos_[var] >= 0 || lo_[var] == hi_[var]) continue;
      const double slope = s * alpha_row_[var];
      if (!at_upper_[var]) {
        if (slope < -opt_.pivot_tol) t_max = std::min(t_max, (d_[var] + opt_.dual_tol) / -slope);
      } else if (slope > opt_.pivot_tol) {
        t_max = std::min(t_max, (-d_[var] + opt_.dual_tol) / slope);
      }
    }
    if (t_max == kInf) return combinatorially_feasible() ? Outcome::kNumerical : Outcome::kInfeasible;

    std::size_t q = total;
    double q_slope = 0.0;
    double q_ratio = 0.0;
    for (std::size_t var = 0; var < total; ++var) {
      if (pos_[var] >= 0 || lo_[var] == hi_[var]) continue;
      const double slope = s * alpha_row_[var];
      double ratio;
      if (!at_upper_[var]) {
        if (!(slope < -opt_.pivot_tol)) continue;
        ratio = std::max(d_[var], 0.0) / -slope;
      } else {
        if (!(slope > opt_.pivot_tol)) continue;
        ratio = std::max(-d_[var], 0.0) / slope;
      }
      if (ratio > t_max) continue;
      if (q == total || std::abs(slope) > std::abs(q_slope)) {
        q = var;
        q_slope = slope;
        q_ratio = ratio;
      }
    }
    if (q == total) return Outcome::kNumerical;

    column_times_binv(q, alpha_col_);
    const double pivot = alpha_col_[r];
    if (std::abs(pivot) < opt_.pivot_tol ||
        std::abs(pivot - alpha_row_[q]) > 1e-7 * (1.0 + std::abs(pivot))) {
      return Outcome::kNumerical;
    }

    // Dual update.
    const double t = q_ratio;
    if (t != 0.0) {
      for (std::size_t var = 0; var < total; ++var) {
        if (pos_[var] < 0) d_[var] += t * s * alpha_row_[var];
      }
    }
    d_[q] = 0.0;
    d_[leaving] = s * t;

    // Primal update.
    const double delta = (xb_[r] - target) / pivot;
    const double entering_value = nonbasic_value(q) + delta;
    for (std::size_t p = 0; p < m_; ++p) xb_[p] -= delta * alpha_col_[p];
    xb_[r] = entering_value;

    at_upper_[leaving] = (!to_lower && lo_[leaving] != hi_[leaving]) ? 1 : 0;
    pos_[leaving] = -1;
    basis_[r] = q;
    pos_[q] = static_cast<std::int64_t>(r);
    at_upper_[q] = 0;

    // Basis inverse update and steepest-edge weights.
    double* prow = &binv_[r * m_];
    const double inv_pivot = 1.0 / pivot;
    double wr = 0.0;
    for (std::size_t c = 0; c < m_; ++c) {
      prow[c] *= inv_pivot;
      wr += prow[c] * prow[c];
    }
    weight_[r] = wr;
    for (std::size_t p = 0; p < m_; ++p) {
      if (p == r) continue;
      const double f = alpha_col_[p];
      if (f == 0.0) continue;
      double* row = &binv_[p * m_];
      double w = 0.0;
      for (std::size_t c = 0; c < m_; ++c) {
        row[c] -= f * prow[c];
        w += row[c] * row[c];
      }
      weight_[p] = w;
    }
    ++since_refactor_;
    ++iterations_;
  }
  return Outcome::kLimit;
}

LpSolution DualSimplex::solve() {
  if (!combinatorially_feasible()) return extract(LpStatus::kInfeasible);
  const std::size_t start = iterations_;
  LpStatus status = LpStatus::kIterationLimit;
  for (int attempt = 0; attempt < 4; ++attempt) {
    if (attempt > 0) {
      refactor();
      recompute_duals();
    }
    repair_dual_feasibility();
    if (primal_stale_) recompute_primal();
    const std::size_t used = iterations_ - start;
    const Outcome outcome = iterate(opt_.max_iterations > used ? opt_.max_iterations - used : 0);
    if (outcome == Outcome::kOptimal) {
      status = LpStatus::kOptimal;
      break;
    }
    if (outcome == Outcome::kInfeasible) {
      status = LpStatus::kInfeasible;
      break;
    }
    if (outcome == Outcome::kLimit) break;
  }
  LpSolution out = extract(status);
  out.iterations = iterations_ - start;
  return out;
}

LpSolution DualSimplex::extract(LpStatus status) const {
  LpSolution out;
  out.status = status;
  out.x.assign(n_, 0.0);
  for (std::size_t j = 0; j < n_; ++j) {
    const double v = pos_[j] >= 0 ? xb_[static_cast<std::size_t>(pos_[j])] : nonbasic_value(j);
    out.x[j] = std::clamp(v, lo_[j], hi_[j]);
  }
  out.objective = 0.0;
  for (std::size_t j = 0; j < n_; ++j) out.objective += inst_.cost(j) * out.x[j];
  if (status == LpStatus::kInfeasible) {
    out.dual_bound = kInf;
    return out;
  }

  std::vector<double> y(m_, 0.0);
  for (std::size_t p = 0; p < m_; ++p) {
    const double cb = cost_[basis_[p]];
    if (cb == 0.0) continue;
    const double* row = &binv_[p * m_];
    for (std::size_t c = 0; c < m_; ++c) y[c] += cb * row[c];
  }
  out.duals.resize(m_);
  double bound = 0.0;
  for (std::size_t i = 0; i < m_; ++i) {
    out.duals[i] = std::max(y[i], 0.0) * cost_scale_;
    bound += out.duals[i];
  }
  for (std::size_t j = 0; j < n_; ++j) {
    double reduced = inst_.cost(j);
    for (std::uint32_t r : inst_.column(j)) reduced -= out.duals[r];
    bound += std::min(reduced * lo_[j], reduced * hi_[j]);
  }
  out.dual_bound = bound;
  return out;
}

LpSolution solve_lp(const SetCoverInstance& inst, std::span<const std::size_t> fixed_zero,
                    std::span<const std::size_t> fixed_one, const LpOptions& options) {
  DualSimplex lp(inst, options);
  std::vector<char> mark(inst.cols(), 0);
  for (std::size_t j : fixed_zero) {
    if (j >= inst.cols()) throw ConfigError("fixed column out of range");
    mark[j] = 1;
    lp.set_bounds(j, 0.0, 0.0);
  }
  for (std::size_t j : fixed_one) {
    if (j >= inst.cols()) throw ConfigError("fixed column out of range");
    if (mark[j]) throw ConfigError("column " + std::to_string(j) + " fixed to both 0 and 1");
    lp.set_bounds(j, 1.0, 1.0);
  }
  return lp.solve();
}

}  // namespace searchplan
