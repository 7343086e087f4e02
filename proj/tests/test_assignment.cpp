#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "semmap/assignment.hpp"
#include "semmap/errors.hpp"

using namespace semmap;

namespace {

// Exhaustive reference for square matrices.
double brute_force_square(const CostMatrix& costs) {
  const int n = static_cast<int>(costs.rows());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (int r = 0; r < n; ++r) total += costs(r, perm[r]);
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Exhaustive reference for rectangular matrices: choose min(R, C) pairs,
// each row and column used at most once, minimizing total cost.
void brute_force_rect_impl(const CostMatrix& costs, int row, int remaining,
                           std::vector<bool>& col_used, double partial,
                           double& best) {
  if (remaining == 0) {
    best = std::min(best, partial);
    return;
  }
  const int rows = static_cast<int>(costs.rows());
  if (row >= rows || rows - row < remaining) return;
  brute_force_rect_impl(costs, row + 1, remaining, col_used, partial, best);
  for (int c = 0; c < costs.cols(); ++c) {
    if (col_used[c]) continue;
    col_used[c] = true;
    brute_force_rect_impl(costs, row + 1, remaining - 1, col_used,
                          partial + costs(row, c), best);
    col_used[c] = false;
  }
}

double brute_force_rect(const CostMatrix& costs) {
  std::vector<bool> col_used(costs.cols(), false);
  double best = std::numeric_limits<double>::infinity();
  const int k = static_cast<int>(std::min(costs.rows(), costs.cols()));
  brute_force_rect_impl(costs, 0, k, col_used, 0.0, best);
  return best;
}

void check_valid_matching(const CostMatrix& costs,
                          const std::vector<std::pair<int, int>>& matches) {
  std::vector<bool> row_used(costs.rows(), false);
  std::vector<bool> col_used(costs.cols(), false);
  for (const auto& [r, c] : matches) {
    REQUIRE(r >= 0);
    REQUIRE(r < costs.rows());
    REQUIRE(c >= 0);
    REQUIRE(c < costs.cols());
    CHECK(!row_used[r]);
    CHECK(!col_used[c]);
    row_used[r] = true;
    col_used[c] = true;
  }
  CHECK(matches.size() ==
        static_cast<std::size_t>(std::min(costs.rows(), costs.cols())));
}

}  // namespace

TEST_SUITE("assignment") {

TEST_CASE("trivial cases") {
  CostMatrix one(1, 1);
  one << 4.0;
  const auto m = hungarian(one);
  REQUIRE(m.size() == 1);
  CHECK(m[0] == std::pair<int, int>{0, 0});
  CHECK(assignment_cost(one, m) == doctest::Approx(4.0));

  CostMatrix two(2, 2);
  two << 1.0, 2.0, 2.0, 1.0;
  const auto d = hungarian(two);
  REQUIRE(d.size() == 2);
  CHECK(d[0] == std::pair<int, int>{0, 0});
  CHECK(d[1] == std::pair<int, int>{1, 1});
  CHECK(assignment_cost(two, d) == doctest::Approx(2.0));

  CostMatrix empty(0, 0);
  CHECK(hungarian(empty).empty());
}

TEST_CASE("square matrices match exhaustive search") {
  std::mt19937 gen(321);
  std::uniform_real_distribution<double> uni(0.0, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 5;  // up to 6x6
    CostMatrix costs(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) costs(r, c) = uni(gen);
    const auto matches = hungarian(costs);
    check_valid_matching(costs, matches);
    CHECK(assignment_cost(costs, matches) ==
          doctest::Approx(brute_force_square(costs)).epsilon(1e-9));
  }
}

TEST_CASE("rectangular matrices match exhaustive search") {
  std::mt19937 gen(654);
  std::uniform_real_distribution<double> uni(0.0, 5.0);
  const std::vector<std::pair<int, int>> shapes = {
      {3, 5}, {5, 3}, {1, 4}, {4, 1}, {2, 6}, {6, 2}};
  for (const auto& [rows, cols] : shapes) {
    for (int trial = 0; trial < 10; ++trial) {
      CostMatrix costs(rows, cols);
      for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) costs(r, c) = uni(gen);
      const auto matches = hungarian(costs);
      check_valid_matching(costs, matches);
      CHECK(assignment_cost(costs, matches) ==
            doctest::Approx(brute_force_rect(costs)).epsilon(1e-9));
    }
  }
}

TEST_CASE("ties resolve to the lexicographically smallest matching") {
  CostMatrix square(2, 2);
  square << 1.0, 1.0, 1.0, 1.0;
  auto m = hungarian(square);
  REQUIRE(m.size() == 2);
  CHECK(m[0] == std::pair<int, int>{0, 0});
  CHECK(m[1] == std::pair<int, int>{1, 1});

  CostMatrix wide = CostMatrix::Zero(2, 3);
  m = hungarian(wide);
  REQUIRE(m.size() == 2);
  CHECK(m[0] == std::pair<int, int>{0, 0});
  CHECK(m[1] == std::pair<int, int>{1, 1});

  CostMatrix tall = CostMatrix::Zero(3, 2);
  m = hungarian(tall);
  REQUIRE(m.size() == 2);
  CHECK(m[0] == std::pair<int, int>{0, 0});
  CHECK(m[1] == std::pair<int, int>{1, 1});

  // A cheap later pairing must win over an equal-cost earlier row when
  // the optimum requires it; otherwise earlier rows take precedence.
  CostMatrix skew(2, 2);
  skew << 1.0, 5.0, 1.0, 5.0;
  m = hungarian(skew);
  CHECK(m[0] == std::pair<int, int>{0, 0});
  CHECK(m[1] == std::pair<int, int>{1, 1});
}

TEST_CASE("shifting all costs by a constant preserves the matching") {
  std::mt19937 gen(99);
  std::uniform_real_distribution<double> uni(0.0, 4.0);
  CostMatrix costs(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) costs(r, c) = uni(gen);
  const auto base = hungarian(costs);
  const CostMatrix shifted = costs.array() + 17.5;
  const auto moved = hungarian(shifted);
  REQUIRE(base.size() == moved.size());
  for (std::size_t i = 0; i < base.size(); ++i) CHECK(base[i] == moved[i]);
}

TEST_CASE("non-finite costs are rejected") {
  CostMatrix bad(2, 2);
  bad << 1.0, 2.0, std::numeric_limits<double>::infinity(), 0.0;
  CHECK_THROWS_AS(hungarian(bad), DataError);
  bad(1, 0) = std::nan("");
  CHECK_THROWS_AS(hungarian(bad), DataError);
}

}  // TEST_SUITE
