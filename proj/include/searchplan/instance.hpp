#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace searchplan {

// Weighted set cover instance min c^T x s.t. A x >= 1, x binary. A is binary
// and stored column-wise; each column lists the rows it covers, ascending.
class SetCoverInstance {
 public:
  SetCoverInstance() = default;
  explicit SetCoverInstance(std::size_t rows) : rows_(rows) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return costs_.size(); }
  std::size_t nonzeros() const { return row_index_.size(); }
  const std::vector<double>& costs() const { return costs_; }
  double cost(std::size_t j) const { return costs_[j]; }

  std::span<const std::uint32_t> column(std::size_t j) const {
    return {row_index_.data() + col_start_[j], col_start_[j + 1] - col_start_[j]};
  }

  // Rows must be strictly increasing and < rows().
  void add_column(double cost, std::span<const std::uint32_t> rows);

  // Row-wise view: columns covering each row, ascending.
  std::vector<std::vector<std::uint32_t>> row_lists() const;

  // Index of the first row no column covers, or rows() if none.
  std::size_t first_empty_row() const;

  // Same columns with all costs multiplied by `factor`.
  SetCoverInstance scaled(double factor) const;

  friend bool operator==(const SetCoverInstance&, const SetCoverInstance&) = default;

 private:
  std::size_t rows_ = 0;
  std::vector<double> costs_;
  std::vector<std::size_t> col_start_{0};
  std::vector<std::uint32_t> row_index_;
};

// Plain-text sparse format:
//   p <rows> <cols>
//   <cost> <j>            one line per column, j = 0 .. cols-1
//   <row> <col>           one line per non-zero entry
// Costs are written with round-trip precision.
void write_instance(std::ostream& out, const SetCoverInstance& inst);
void write_instance(const std::string& path, const SetCoverInstance& inst);
SetCoverInstance read_instance(std::istream& in);
SetCoverInstance read_instance(const std::string& path);

}  // namespace searchplan
