#include "gmas/lp.hpp"

#include <cmath>
#include <vector>

#include "gmas/errors.hpp"

namespace gmas::lp {

namespace {

constexpr double kPivotTol = 1e-11;

// Tableau simplex over the columns listed in `allowed`, minimizing the
// objective row that is already reduced against the starting basis.
// Returns false when the problem is unbounded.
bool run_simplex(Eigen::MatrixXd& tableau, std::vector<int>& basis,
                 const std::vector<bool>& allowed, int max_iterations) {
  const int rows = static_cast<int>(tableau.rows()) - 1;
  const int cols = static_cast<int>(tableau.cols()) - 1;
  for (int iter = 0; iter < max_iterations; ++iter) {
    // Bland's rule: lowest-index column with a negative reduced cost.
    int pivot_col = -1;
    for (int j = 0; j < cols; ++j) {
      if (!allowed[static_cast<size_t>(j)]) continue;
      if (tableau(rows, j) < -kPivotTol) {
        pivot_col = j;
        break;
      }
    }
    if (pivot_col == -1) return true;

    int pivot_row = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < rows; ++i) {
      double coef = tableau(i, pivot_col);
      if (coef > kPivotTol) {
        double ratio = tableau(i, cols) / coef;
        if (pivot_row == -1 || ratio < best_ratio - kPivotTol ||
            (ratio < best_ratio + kPivotTol && basis[static_cast<size_t>(i)] <
                                                   basis[static_cast<size_t>(pivot_row)])) {
          pivot_row = i;
          best_ratio = ratio;
        }
      }
    }
    if (pivot_row == -1) return false;  // unbounded along pivot_col

    double pivot = tableau(pivot_row, pivot_col);
    tableau.row(pivot_row) /= pivot;
    for (int i = 0; i <= rows; ++i) {
      if (i == pivot_row) continue;
      double factor = tableau(i, pivot_col);
      if (factor != 0.0) tableau.row(i) -= factor * tableau.row(pivot_row);
    }
    basis[static_cast<size_t>(pivot_row)] = pivot_col;
  }
  throw ResourceError("simplex iteration limit exceeded");
}

}  // namespace

Result solve_standard(const Eigen::VectorXd& c, const Eigen::MatrixXd& a,
                      const Eigen::VectorXd& b, int max_iterations) {
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  if (c.size() != cols || b.size() != rows)
    throw DimensionError("inconsistent LP dimensions");

  // Phase 1 tableau: [A | I | b] with artificial variables basic, rows
  // flipped so b >= 0.
  Eigen::MatrixXd tab = Eigen::MatrixXd::Zero(rows + 1, cols + rows + 1);
  for (int i = 0; i < rows; ++i) {
    double sign = b[i] < 0.0 ? -1.0 : 1.0;
    tab.block(i, 0, 1, cols) = sign * a.row(i);
    tab(i, cols + i) = 1.0;
    tab(i, cols + rows) = sign * b[i];
  }
  // Phase-1 objective: sum of artificials, reduced against the basis.
  for (int j = 0; j <= cols + rows; ++j) {
    if (j >= cols && j < cols + rows) continue;
    double s = 0.0;
    for (int i = 0; i < rows; ++i) s += tab(i, j);
    tab(rows, j) = -s;
  }

  std::vector<int> basis(static_cast<size_t>(rows));
  for (int i = 0; i < rows; ++i) basis[static_cast<size_t>(i)] = cols + i;
  std::vector<bool> allowed(static_cast<size_t>(cols + rows), true);

  if (!run_simplex(tab, basis, allowed, max_iterations))
    throw NumericalError("phase-1 LP unbounded");
  double phase1 = -tab(rows, cols + rows);
  if (phase1 > 1e-8) return {Status::infeasible, Eigen::VectorXd(), 0.0};

  // Drive any artificial variables still basic (at zero) out of the basis.
  for (int i = 0; i < rows; ++i) {
    if (basis[static_cast<size_t>(i)] < cols) continue;
    int replacement = -1;
    for (int j = 0; j < cols; ++j) {
      if (std::abs(tab(i, j)) > 1e-9) {
        replacement = j;
        break;
      }
    }
    if (replacement == -1) continue;  // redundant row
    double pivot = tab(i, replacement);
    tab.row(i) /= pivot;
    for (int r = 0; r <= rows; ++r) {
      if (r == i) continue;
      double factor = tab(r, replacement);
      if (factor != 0.0) tab.row(r) -= factor * tab.row(i);
    }
    basis[static_cast<size_t>(i)] = replacement;
  }

  // Phase 2: swap in the real objective, reduced against the basis; block
  // the artificial columns.
  for (int j = 0; j < cols + rows; ++j) tab(rows, j) = j < cols ? c[j] : 0.0;
  tab(rows, cols + rows) = 0.0;
  for (int i = 0; i < rows; ++i) {
    int bj = basis[static_cast<size_t>(i)];
    double cost = bj < cols ? c[bj] : 0.0;
    if (cost != 0.0) tab.row(rows) -= cost * tab.row(i);
  }
  for (int j = cols; j < cols + rows; ++j) allowed[static_cast<size_t>(j)] = false;

  if (!run_simplex(tab, basis, allowed, max_iterations))
    return {Status::unbounded, Eigen::VectorXd(), 0.0};

  Eigen::VectorXd x = Eigen::VectorXd::Zero(cols);
  for (int i = 0; i < rows; ++i) {
    int bj = basis[static_cast<size_t>(i)];
    if (bj < cols) x[bj] = tab(i, cols + rows);
  }
  return {Status::optimal, x, c.dot(x)};
}

}  // namespace gmas::lp
