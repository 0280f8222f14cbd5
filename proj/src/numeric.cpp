#include "gmas/numeric.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace gmas {

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double power_monomial(const Eigen::VectorXd& x, const Eigen::VectorXd& exponent) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double e = exponent[i];
    if (e == 0.0) continue;
    acc += e * std::log(std::max(x[i], kLogFloor));
  }
  return std::exp(acc);
}

std::vector<std::complex<double>> sorted_eigenvalues(const Eigen::MatrixXd& m) {
  std::vector<std::complex<double>> out;
  if (m.rows() == 0) return out;
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, /*computeEigenvectors=*/false);
  out.reserve(static_cast<size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(es.eigenvalues()[i]);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

double max_real_eigenvalue(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return -std::numeric_limits<double>::infinity();
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, /*computeEigenvectors=*/false);
  double best = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    best = std::max(best, es.eigenvalues()[i].real());
  return best;
}

}  // namespace gmas
