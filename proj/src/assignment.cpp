#include "pripel/assignment.hpp"

#include <algorithm>
#include <limits>

namespace pripel {

namespace {

// n <= m. cost(i, j) for 0-based i < n, j < m. Returns the column of each row.
template <class Cost>
std::vector<std::size_t> hungarian(std::size_t n, std::size_t m, Cost&& cost) {
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  // 1-based internally; column 0 is the virtual source of each augmenting path.
  std::vector<std::int64_t> u(n + 1, 0), v(m + 1, 0), minv(m + 1);
  std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
  std::vector<char> used(m + 1);

  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      std::int64_t delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        std::int64_t cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<std::size_t> col_of_row(n);
  for (std::size_t j = 1; j <= m; ++j) {
    if (p[j] != 0) col_of_row[p[j] - 1] = j - 1;
  }
  return col_of_row;
}

}  // namespace

std::vector<std::optional<std::size_t>> solve_assignment(const CostMatrix& cost) {
  const std::size_t rows = cost.rows();
  const std::size_t cols = cost.cols();
  std::vector<std::optional<std::size_t>> result(rows);
  if (rows == 0 || cols == 0) return result;

  if (rows <= cols) {
    auto cols_of = hungarian(rows, cols, [&](std::size_t i, std::size_t j) { return std::int64_t{cost(i, j)}; });
    for (std::size_t r = 0; r < rows; ++r) result[r] = cols_of[r];
  } else {
    CostMatrix transposed(cols, rows);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) transposed(c, r) = cost(r, c);
    }
    auto rows_of =
        hungarian(cols, rows, [&](std::size_t i, std::size_t j) { return std::int64_t{transposed(i, j)}; });
    for (std::size_t c = 0; c < cols; ++c) result[rows_of[c]] = c;
  }
  return result;
}

}  // namespace pripel
