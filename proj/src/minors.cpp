#include "gmas/minors.hpp"

#include <cmath>
#include <string>

#include "gmas/errors.hpp"

namespace gmas {

std::vector<SignedMinor> signed_principal_minors(const Eigen::MatrixXd& a,
                                                 double rel_tol) {
  if (a.rows() != a.cols()) throw DimensionError("matrix must be square");
  const int n = static_cast<int>(a.rows());
  if (n > kMinorEnumerationCap)
    throw DimensionError("principal-minor enumeration capped at n = " +
                         std::to_string(kMinorEnumerationCap));

  std::vector<SignedMinor> out;
  out.reserve((1u << n) - 1);
  std::vector<int> idx;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    idx.clear();
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    const int r = static_cast<int>(idx.size());
    Eigen::MatrixXd sub(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) sub(i, j) = a(idx[i], idx[j]);
    double det = r == 1 ? sub(0, 0) : sub.determinant();
    double row_norm_product = 1.0;
    for (int i = 0; i < r; ++i) row_norm_product *= sub.row(i).norm();
    SignedMinor sm;
    sm.index_set = idx;
    sm.value = (r % 2 == 0 ? 1.0 : -1.0) * det;
    sm.zero_tol = rel_tol * row_norm_product;
    out.push_back(std::move(sm));
  }
  return out;
}

bool is_P_matrix(const Eigen::MatrixXd& a, double rel_tol) {
  for (const SignedMinor& sm : signed_principal_minors(a, rel_tol))
    if (sm.value <= sm.zero_tol) return false;
  return true;
}

bool is_P0plus_matrix(const Eigen::MatrixXd& a, double rel_tol) {
  const int n = static_cast<int>(a.rows());
  std::vector<bool> order_has_positive(static_cast<size_t>(n) + 1, false);
  for (const SignedMinor& sm : signed_principal_minors(a, rel_tol)) {
    if (sm.value < -sm.zero_tol) return false;
    if (sm.value > sm.zero_tol) order_has_positive[sm.index_set.size()] = true;
  }
  for (int r = 1; r <= n; ++r)
    if (!order_has_positive[static_cast<size_t>(r)]) return false;
  return true;
}

}  // namespace gmas
