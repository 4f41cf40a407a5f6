#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace pripel {

/// Dense row-major cost matrix.
class CostMatrix {
 public:
  CostMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::int32_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::int32_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const std::int32_t> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::int32_t> data_;
};

/// Minimum-cost rectangular assignment with min(rows, cols) pairs, solved by
/// shortest augmenting paths with potentials in O(min^2 * max). Entry r of the
/// result is the column assigned to row r, or nullopt if r stays unassigned.
/// Rows are inserted in index order and ties go to the lowest column, so the
/// result is a pure function of the matrix.
std::vector<std::optional<std::size_t>> solve_assignment(const CostMatrix& cost);

}  // namespace pripel
