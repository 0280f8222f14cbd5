#include "gmas/sign_vectors.hpp"

#include <cmath>
#include <vector>

#include "gmas/errors.hpp"
#include "gmas/lp.hpp"

namespace gmas {

SignVector sign_pattern(const Eigen::VectorXd& v, double tol) {
  SignVector s(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    s[i] = v[i] > tol ? 1 : (v[i] < -tol ? -1 : 0);
  return s;
}

std::optional<Eigen::VectorXd> realize_sign_vector(const Subspace& s,
                                                   const SignVector& sigma,
                                                   double margin) {
  if (sigma.size() != s.ambient)
    throw DimensionError("sign vector length does not match the ambient dimension");
  const int n = s.ambient;
  const int dim = s.dim();
  if (dim == 0) return std::nullopt;

  int support = 0;
  for (int i = 0; i < n; ++i) {
    if (sigma[i] < -1 || sigma[i] > 1)
      throw PreconditionError("sign vector entries must be in {-1, 0, +1}");
    if (sigma[i] != 0) ++support;
  }
  if (support == 0) return std::nullopt;

  // Variables (all >= 0): coefficient split c+ (dim), c- (dim), the margin
  // t, one surplus per supported row, one slack per coefficient bound.
  // Rows: supported rows (>=), zero rows (=), bounds c+_j <= 1, c-_j <= 1.
  const int vt = 2 * dim;                      // index of t
  const int v_surplus = vt + 1;                // first surplus
  const int v_slack = v_surplus + support;     // first bound slack
  const int cols = v_slack + 2 * dim;
  const int rows = n + 2 * dim;

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, cols);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(rows);
  int row = 0, surplus = 0;
  for (int i = 0; i < n; ++i) {
    const double sgn = static_cast<double>(sigma[i]);
    for (int j = 0; j < dim; ++j) {
      double coef = (sgn == 0.0 ? 1.0 : sgn) * s.basis(i, j);
      a(row, j) = coef;
      a(row, dim + j) = -coef;
    }
    if (sigma[i] != 0) {
      a(row, vt) = -1.0;
      a(row, v_surplus + surplus++) = -1.0;
    }
    ++row;
  }
  for (int j = 0; j < 2 * dim; ++j) {
    a(row, j) = 1.0;
    a(row, v_slack + j) = 1.0;
    b(row) = 1.0;
    ++row;
  }

  Eigen::VectorXd c = Eigen::VectorXd::Zero(cols);
  c[vt] = -1.0;  // maximize t

  lp::Result res = lp::solve_standard(c, a, b);
  if (res.status != lp::Status::optimal) return std::nullopt;
  if (res.x[vt] <= margin) return std::nullopt;

  Eigen::VectorXd coeffs = res.x.segment(0, dim) - res.x.segment(dim, dim);
  Eigen::VectorXd v = s.basis * coeffs;
  // Sanity: the LP margin must survive the reconstruction.
  for (int i = 0; i < n; ++i) {
    if (sigma[i] != 0 && sigma[i] * v[i] <= margin) return std::nullopt;
    if (sigma[i] == 0 && std::abs(v[i]) > 1e-7) return std::nullopt;
  }
  return v;
}

std::optional<SignWitness> sign_vectors_intersect(const Subspace& s1,
                                                  const Subspace& s2,
                                                  double margin,
                                                  int ambient_cap) {
  if (s1.ambient != s2.ambient)
    throw DimensionError("subspaces live in different ambient spaces");
  const int n = s1.ambient;
  if (n > ambient_cap)
    throw DimensionError("sign-vector enumeration capped at ambient dimension " +
                         std::to_string(ambient_cap));
  if (s1.dim() == 0 || s2.dim() == 0) return std::nullopt;

  long long total = 1;
  for (int i = 0; i < n; ++i) total *= 3;

  // Lexicographic sweep with component values ordered -1 < 0 < +1; patterns
  // whose first nonzero entry is -1 are mirror images of ones already seen.
  SignVector sigma(n);
  for (long long code = 0; code < total; ++code) {
    long long rem = code;
    for (int i = n - 1; i >= 0; --i) {
      sigma[i] = static_cast<int>(rem % 3) - 1;
      rem /= 3;
    }
    int first_nonzero = 0;
    while (first_nonzero < n && sigma[first_nonzero] == 0) ++first_nonzero;
    if (first_nonzero == n || sigma[first_nonzero] == -1) continue;

    auto u = realize_sign_vector(s1, sigma, margin);
    if (!u) continue;
    auto v = realize_sign_vector(s2, sigma, margin);
    if (!v) continue;
    return SignWitness{*u, *v, sigma};
  }
  return std::nullopt;
}

}  // namespace gmas
