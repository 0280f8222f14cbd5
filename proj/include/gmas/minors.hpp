#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gmas/numeric.hpp"

namespace gmas {

// One signed principal minor (-1)^|alpha| * det(A[alpha, alpha]).
struct SignedMinor {
  std::vector<int> index_set;  // ascending, 0-based
  double value;
  // Scale-aware zero threshold: rel_tol times the product of the row norms
  // of the submatrix (Hadamard bound scale).
  double zero_tol;
};

// All 2^n - 1 signed principal minors, enumerated by index-set bitmask.
// Throws DimensionError for n > 14.
std::vector<SignedMinor> signed_principal_minors(const Eigen::MatrixXd& a,
                                                 double rel_tol = kRelZeroTol);

// P-matrix: every signed principal minor strictly positive.
bool is_P_matrix(const Eigen::MatrixXd& a, double rel_tol = kRelZeroTol);

// P0+-matrix: every signed principal minor >= 0 and, for each order
// 1..n, at least one strictly positive.
bool is_P0plus_matrix(const Eigen::MatrixXd& a, double rel_tol = kRelZeroTol);

}  // namespace gmas
