#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace gmas {

// Shared relative zero tolerance for criterion boundaries (strict vs. weak
// inequalities) and definiteness/stability classification.
inline constexpr double kRelZeroTol = 1e-9;
// Relative rank tolerance for column-pivoted QR.
inline constexpr double kRankTol = 1e-10;
// Relative tolerance for image-containment preconditions.
inline constexpr double kImageTol = 1e-8;
// Orthonormality tolerance for subspace bases.
inline constexpr double kOrthonormalTol = 1e-12;
// Relative symmetry tolerance for definiteness checks.
inline constexpr double kSymmetryTol = 1e-10;
// Relative residual tolerance for complex-balance certificates.
inline constexpr double kBalanceTol = 1e-10;
// Feasibility margin for sign-vector realizability.
inline constexpr double kSignMargin = 1e-9;
// Concentrations are clipped to this floor before taking logarithms.
inline constexpr double kLogFloor = 1e-300;
// Largest matrix order for which all principal minors are enumerated.
inline constexpr int kMinorEnumerationCap = 14;

// Shortest round-trip decimal representation of a double.
std::string format_double(double value);

// SplitMix64 step; used to derive independent per-sample RNG streams from
// (seed, index) so sampling results do not depend on evaluation order.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (index + 1));
  splitmix64(s);
  return splitmix64(s);
}

// x^e with the componentwise exp/log convention: x is clipped to kLogFloor
// before the logarithm, and a zero exponent contributes nothing even for
// tiny x.
double power_monomial(const Eigen::VectorXd& x, const Eigen::VectorXd& exponent);

// Eigenvalues of a real dense matrix, sorted by (real, imag).
std::vector<std::complex<double>> sorted_eigenvalues(const Eigen::MatrixXd& m);

// Largest real part of the spectrum; -inf for a 0x0 matrix.
double max_real_eigenvalue(const Eigen::MatrixXd& m);

// Magnitude scale of a matrix: the largest absolute entry.
inline double entry_scale(const Eigen::MatrixXd& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

}  // namespace gmas
