#include "semmap/assignment.hpp"

#include <cmath>
#include <limits>

#include "semmap/errors.hpp"

namespace semmap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Kuhn-Munkres with row/column potentials on a square matrix.
// Returns row -> column.
std::vector<int> solve_square(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1, 0);

  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = -1;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = a(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
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
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }

  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j] > 0) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

// Optimal total cost of a (possibly rectangular) matching, via padding.
double optimal_cost(const Eigen::MatrixXd& costs) {
  const int nr = static_cast<int>(costs.rows());
  const int nc = static_cast<int>(costs.cols());
  if (nr == 0 || nc == 0) return 0.0;
  const int n = std::max(nr, nc);
  const double pad = costs.maxCoeff() + 1.0;
  Eigen::MatrixXd a = Eigen::MatrixXd::Constant(n, n, pad);
  a.topLeftCorner(nr, nc) = costs;
  const std::vector<int> row_to_col = solve_square(a);
  double total = 0.0;
  for (int r = 0; r < nr; ++r)
    if (row_to_col[r] < nc) total += costs(r, row_to_col[r]);
  return total;
}

}  // namespace

std::vector<std::pair<int, int>> hungarian(const CostMatrix& costs) {
  const int nr = static_cast<int>(costs.rows());
  const int nc = static_cast<int>(costs.cols());
  if (nr == 0 || nc == 0) return {};
  if (!costs.allFinite()) throw DataError("hungarian: non-finite cost entry");

  const double best = optimal_cost(costs);
  const double eps = 1e-9 * std::max(1.0, std::abs(best));

  // Fix pairs greedily in (row, col) order, keeping only choices that a
  // re-solve of the remaining subproblem certifies as still optimal.
  // Skipping a row ranks after matching it to any column.
  std::vector<char> col_used(nc, 0);
  std::vector<std::pair<int, int>> out;
  double forced = 0.0;
  int cols_left = nc;

  for (int r = 0; r < nr && cols_left > 0; ++r) {
    const int rows_left = nr - r - 1;  // rows after this one
    bool taken = false;
    for (int c = 0; c < nc && !taken; ++c) {
      if (col_used[c]) continue;
      Eigen::MatrixXd sub(rows_left, cols_left - 1);
      int jj = 0;
      for (int j = 0; j < nc; ++j) {
        if (col_used[j] || j == c) continue;
        for (int i = 0; i < rows_left; ++i) sub(i, jj) = costs(r + 1 + i, j);
        ++jj;
      }
      if (forced + costs(r, c) + optimal_cost(sub) <= best + eps) {
        col_used[c] = 1;
        --cols_left;
        forced += costs(r, c);
        out.emplace_back(r, c);
        taken = true;
      }
    }
    // Not taken: this row is unmatched in every remaining optimal
    // matching (only possible when rows outnumber columns).
  }
  return out;
}

double assignment_cost(const CostMatrix& costs,
                       const std::vector<std::pair<int, int>>& pairs) {
  double total = 0.0;
  for (const auto& [r, c] : pairs) total += costs(r, c);
  return total;
}

}  // namespace semmap
