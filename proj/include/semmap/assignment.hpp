#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

namespace semmap {

// Rows are tracked instances, columns are observations, entries are
// association costs (Mahalanobis distances).
using CostMatrix = Eigen::MatrixXd;

// Minimum-cost bipartite matching of size min(rows, cols).
//
// Rectangular matrices are squared up by padding with a constant larger
// than the maximum entry; padded pairs never appear in the output. Among
// all minimum-cost matchings the lexicographically smallest (by the
// row-sorted pair list) is returned, so results are deterministic even
// with tied costs. Entries must be finite.
std::vector<std::pair<int, int>> hungarian(const CostMatrix& costs);

// Sum of the matrix entries selected by an assignment.
double assignment_cost(const CostMatrix& costs,
                       const std::vector<std::pair<int, int>>& pairs);

}  // namespace semmap
