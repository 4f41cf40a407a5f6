#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <set>

#include "pripel/assignment.hpp"

using namespace pripel;

namespace {

// Exhaustive minimum over injective maps of the smaller side into the larger.
std::int64_t brute_force_min(const CostMatrix& c) {
  const bool wide = c.rows() <= c.cols();
  const std::size_t small = wide ? c.rows() : c.cols();
  const std::size_t large = wide ? c.cols() : c.rows();
  std::vector<std::size_t> perm(large);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  do {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < small; ++i) total += wide ? c(i, perm[i]) : c(perm[i], i);
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::int64_t cost_of(const CostMatrix& c, const std::vector<std::optional<std::size_t>>& a) {
  std::int64_t total = 0;
  for (std::size_t r = 0; r < a.size(); ++r) {
    if (a[r]) total += c(r, *a[r]);
  }
  return total;
}

void check_valid(const CostMatrix& c, const std::vector<std::optional<std::size_t>>& a) {
  REQUIRE(a.size() == c.rows());
  std::set<std::size_t> cols;
  std::size_t assigned = 0;
  for (const auto& col : a) {
    if (!col) continue;
    ++assigned;
    CHECK(*col < c.cols());
    CHECK(cols.insert(*col).second);
  }
  CHECK(assigned == std::min(c.rows(), c.cols()));
}

}  // namespace

TEST_CASE("empty sides") {
  CHECK(solve_assignment(CostMatrix(0, 4)).empty());
  auto a = solve_assignment(CostMatrix(3, 0));
  CHECK(a.size() == 3);
  CHECK(std::none_of(a.begin(), a.end(), [](auto& x) { return x.has_value(); }));
}

TEST_CASE("known square instance") {
  CostMatrix c(3, 3);
  const int v[3][3] = {{4, 1, 3}, {2, 0, 5}, {3, 2, 2}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c(i, j) = v[i][j];
  auto a = solve_assignment(c);
  check_valid(c, a);
  CHECK(cost_of(c, a) == 5);
}

TEST_CASE("rectangular instances leave the surplus unassigned") {
  CostMatrix tall(5, 3);
  auto a = solve_assignment(tall);
  check_valid(tall, a);
  CHECK(std::count(a.begin(), a.end(), std::nullopt) == 2);
}

TEST_CASE("matches the exhaustive optimum on random instances") {
  std::mt19937_64 gen(2024);
  std::uniform_int_distribution<int> size(1, 6), cost(0, 9);
  for (int trial = 0; trial < 500; ++trial) {
    CostMatrix c(size(gen), size(gen));
    for (std::size_t i = 0; i < c.rows(); ++i)
      for (std::size_t j = 0; j < c.cols(); ++j) c(i, j) = cost(gen);
    auto a = solve_assignment(c);
    check_valid(c, a);
    CHECK(cost_of(c, a) == brute_force_min(c));
  }
}

TEST_CASE("deterministic") {
  std::mt19937_64 gen(7);
  CostMatrix c(40, 25);
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j) c(i, j) = static_cast<int>(gen() % 4);
  CHECK(solve_assignment(c) == solve_assignment(c));
}
