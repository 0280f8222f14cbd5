#pragma once

#include <Eigen/Dense>
#include <optional>

#include "gmas/numeric.hpp"
#include "gmas/subspace.hpp"

namespace gmas {

// Entries in {-1, 0, +1}.
using SignVector = Eigen::VectorXi;

SignVector sign_pattern(const Eigen::VectorXd& v, double tol = 0.0);

// A vector of S realizing the sign pattern sigma with margin
// |v_i| >= margin on the support (and v_i = 0 off it), found by maximizing
// the margin over the basis coefficients with ||coeffs||_inf <= 1.
std::optional<Eigen::VectorXd> realize_sign_vector(const Subspace& s,
                                                   const SignVector& sigma,
                                                   double margin = kSignMargin);

struct SignWitness {
  Eigen::VectorXd u;  // in S1
  Eigen::VectorXd v;  // in S2
  SignVector sigma;
};

// Searches for a nonzero sign vector realized by both subspaces, sweeping
// sign patterns in lexicographic order (components ordered -1 < 0 < +1,
// patterns with leading sign -1 pruned by symmetry) and returning the first
// witness. Returns nullopt when the sign-vector intersection is trivial.
// Throws DimensionError when the ambient dimension exceeds ambient_cap.
std::optional<SignWitness> sign_vectors_intersect(const Subspace& s1,
                                                  const Subspace& s2,
                                                  double margin = kSignMargin,
                                                  int ambient_cap = 12);

}  // namespace gmas
