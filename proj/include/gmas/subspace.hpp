#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "gmas/network.hpp"
#include "gmas/numeric.hpp"

namespace gmas {

// A linear subspace of R^ambient, stored as an orthonormal basis (one
// column per basis vector; zero columns means the trivial subspace).
struct Subspace {
  int ambient = 0;
  Eigen::MatrixXd basis;

  int dim() const { return static_cast<int>(basis.cols()); }
};

// Wraps an orthonormal basis; throws PreconditionError if the columns are
// not orthonormal to kOrthonormalTol.
Subspace make_subspace(const Eigen::MatrixXd& orthonormal_basis);

Subspace full_space(int n);

// Column space of M via column-pivoted QR; diagonal entries of R below
// rank_tol times the largest are treated as zero.
Subspace column_space(const Eigen::MatrixXd& m, double rank_tol = kRankTol);

Subspace orthogonal_complement(const Subspace& s);

// Relative residual of projecting the columns of A onto S (0 when im A is
// contained in S).
double image_containment_residual(const Eigen::MatrixXd& a, const Subspace& s);

// B^T A B for the orthonormal basis B of S. Throws PreconditionError when
// im A is not contained in S to kImageTol (relative).
Eigen::MatrixXd restrict_to(const Eigen::MatrixXd& a, const Subspace& s);

enum class Definiteness {
  negative_definite,
  negative_semidefinite,
  indefinite_or_positive,
};

const char* to_string(Definiteness d);

// Classifies the quadratic form of symmetric H restricted to S, with the
// zero thresholds taken relative to the Frobenius norm of H. Throws
// PreconditionError if H is asymmetric beyond kSymmetryTol (relative).
Definiteness definiteness_on(const Eigen::MatrixXd& h, const Subspace& s,
                             double zero_tol = kRelZeroTol);

// Spectral-norm gap between the orthogonal projectors of two subspaces.
double subspace_gap(const Subspace& s1, const Subspace& s2);

// Stoichiometric subspace S = im(Y * incidence).
Subspace stoichiometric_subspace(const GmasNetwork& net, double rank_tol = kRankTol);

// Kinetic-order subspace S~ = im(Ytilde * incidence).
Subspace kinetic_subspace(const GmasNetwork& net, double rank_tol = kRankTol);

}  // namespace gmas
