#include "searchplan/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "searchplan/error.hpp"

namespace searchplan {

void SetCoverInstance::add_column(double cost, std::span<const std::uint32_t> rows) {
  if (!std::isfinite(cost)) throw ConfigError("column cost must be finite");
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k] >= rows_) throw ConfigError("column references a row beyond the instance");
    if (k > 0 && rows[k] <= rows[k - 1]) throw ConfigError("column rows must be strictly increasing");
  }
  costs_.push_back(cost);
  row_index_.insert(row_index_.end(), rows.begin(), rows.end());
  col_start_.push_back(row_index_.size());
}

std::vector<std::vector<std::uint32_t>> SetCoverInstance::row_lists() const {
  std::vector<std::vector<std::uint32_t>> out(rows_);
  for (std::size_t j = 0; j < cols(); ++j) {
    for (std::uint32_t r : column(j)) out[r].push_back(static_cast<std::uint32_t>(j));
  }
  return out;
}

std::size_t SetCoverInstance::first_empty_row() const {
  std::vector<char> hit(rows_, 0);
  for (std::uint32_t r : row_index_) hit[r] = 1;
  const auto it = std::find(hit.begin(), hit.end(), 0);
  return static_cast<std::size_t>(it - hit.begin());
}

SetCoverInstance SetCoverInstance::scaled(double factor) const {
  SetCoverInstance out = *this;
  for (double& c : out.costs_) c *= factor;
  return out;
}

void write_instance(std::ostream& out, const SetCoverInstance& inst) {
  out << "p " << inst.rows() << ' ' << inst.cols() << '\n';
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (std::size_t j = 0; j < inst.cols(); ++j) out << inst.cost(j) << ' ' << j << '\n';
  for (std::size_t j = 0; j < inst.cols(); ++j) {
    for (std::uint32_t r : inst.column(j)) out << r << ' ' << j << '\n';
  }
}

void write_instance(const std::string& path, const SetCoverInstance& inst) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write instance file " + path);
  write_instance(out, inst);
  if (!out) throw IoError("failed while writing instance file " + path);
}

namespace {

bool next_data_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  throw IoError("instance line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

SetCoverInstance read_instance(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_data_line(in, line, line_no)) parse_fail(line_no, "missing 'p rows cols' header");
  std::istringstream header(line);
  std::string tag;
  std::size_t rows = 0;
  std::size_t cols = 0;
  if (!(header >> tag >> rows >> cols) || tag != "p") parse_fail(line_no, "expected 'p rows cols'");

  std::vector<double> costs(cols);
  for (std::size_t k = 0; k < cols; ++k) {
    if (!next_data_line(in, line, line_no)) parse_fail(line_no, "missing cost lines");
    std::istringstream ls(line);
    double cost = 0.0;
    std::size_t j = 0;
    if (!(ls >> cost >> j)) parse_fail(line_no, "expected '<cost> <column>'");
    if (j != k) parse_fail(line_no, "cost lines must list columns in order");
    costs[k] = cost;
  }
  std::vector<std::vector<std::uint32_t>> entries(cols);
  while (next_data_line(in, line, line_no)) {
    std::istringstream ls(line);
    std::size_t r = 0;
    std::size_t j = 0;
    if (!(ls >> r >> j)) parse_fail(line_no, "expected '<row> <column>'");
    if (r >= rows || j >= cols) parse_fail(line_no, "entry out of range");
    entries[j].push_back(static_cast<std::uint32_t>(r));
  }
  SetCoverInstance inst(rows);
  for (std::size_t j = 0; j < cols; ++j) {
    auto& e = entries[j];
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    inst.add_column(costs[j], e);
  }
  return inst;
}

SetCoverInstance read_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open instance file " + path);
  return read_instance(in);
}

}  // namespace searchplan
