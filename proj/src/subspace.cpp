#include "gmas/subspace.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "gmas/errors.hpp"

namespace gmas {

Subspace make_subspace(const Eigen::MatrixXd& orthonormal_basis) {
  Subspace s;
  s.ambient = static_cast<int>(orthonormal_basis.rows());
  s.basis = orthonormal_basis;
  if (s.dim() > 0) {
    Eigen::MatrixXd gram = s.basis.transpose() * s.basis;
    gram -= Eigen::MatrixXd::Identity(s.dim(), s.dim());
    if (gram.cwiseAbs().maxCoeff() > kOrthonormalTol)
      throw PreconditionError("subspace basis is not orthonormal");
  }
  return s;
}

Subspace full_space(int n) {
  Subspace s;
  s.ambient = n;
  s.basis = Eigen::MatrixXd::Identity(n, n);
  return s;
}

Subspace column_space(const Eigen::MatrixXd& m, double rank_tol) {
  Subspace s;
  s.ambient = static_cast<int>(m.rows());
  if (m.cols() == 0 || m.rows() == 0 || entry_scale(m) == 0.0) {
    s.basis = Eigen::MatrixXd::Zero(s.ambient, 0);
    return s;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr;
  qr.setThreshold(rank_tol);
  qr.compute(m);
  const int r = static_cast<int>(qr.rank());
  Eigen::MatrixXd q = qr.householderQ();
  s.basis = q.leftCols(r);
  return s;
}

Subspace orthogonal_complement(const Subspace& s) {
  if (s.dim() == 0) return full_space(s.ambient);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(s.basis);
  Eigen::MatrixXd q = qr.householderQ();
  Subspace out;
  out.ambient = s.ambient;
  out.basis = q.rightCols(s.ambient - s.dim());
  return out;
}

double image_containment_residual(const Eigen::MatrixXd& a, const Subspace& s) {
  if (static_cast<int>(a.rows()) != s.ambient)
    throw DimensionError("matrix rows do not match the ambient dimension");
  const double scale = a.norm();
  if (scale == 0.0) return 0.0;
  Eigen::MatrixXd off = a - s.basis * (s.basis.transpose() * a);
  return off.norm() / scale;
}

Eigen::MatrixXd restrict_to(const Eigen::MatrixXd& a, const Subspace& s) {
  if (a.rows() != a.cols()) throw DimensionError("matrix must be square");
  double residual = image_containment_residual(a, s);
  if (residual > kImageTol)
    throw PreconditionError("image of the matrix is not contained in the subspace (relative residual " +
                            format_double(residual) + ")");
  return s.basis.transpose() * a * s.basis;
}

const char* to_string(Definiteness d) {
  switch (d) {
    case Definiteness::negative_definite: return "negative_definite";
    case Definiteness::negative_semidefinite: return "negative_semidefinite";
    case Definiteness::indefinite_or_positive: return "indefinite_or_positive";
  }
  return "?";
}

Definiteness definiteness_on(const Eigen::MatrixXd& h, const Subspace& s,
                             double zero_tol) {
  if (h.rows() != h.cols()) throw DimensionError("matrix must be square");
  if (static_cast<int>(h.rows()) != s.ambient)
    throw DimensionError("matrix size does not match the ambient dimension");
  const double scale = h.norm();
  if (scale > 0.0) {
    double asym = (h - h.transpose()).cwiseAbs().maxCoeff();
    if (asym > kSymmetryTol * scale)
      throw PreconditionError("matrix is asymmetric beyond tolerance");
  }
  if (s.dim() == 0) return Definiteness::negative_definite;
  Eigen::MatrixXd restricted = s.basis.transpose() * h * s.basis;
  restricted = 0.5 * (restricted + restricted.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(restricted);
  const double max_eig = es.eigenvalues().maxCoeff();
  if (max_eig < -zero_tol * scale) return Definiteness::negative_definite;
  if (max_eig <= zero_tol * scale) return Definiteness::negative_semidefinite;
  return Definiteness::indefinite_or_positive;
}

double subspace_gap(const Subspace& s1, const Subspace& s2) {
  if (s1.ambient != s2.ambient)
    throw DimensionError("subspaces live in different ambient spaces");
  Eigen::MatrixXd p1 = s1.basis * s1.basis.transpose();
  Eigen::MatrixXd p2 = s2.basis * s2.basis.transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(p1 - p2);
  return svd.singularValues().size() == 0 ? 0.0 : svd.singularValues()[0];
}

Subspace stoichiometric_subspace(const GmasNetwork& net, double rank_tol) {
  StructuralMatrices sm = structural_matrices(net);
  return column_space(sm.y * sm.incidence, rank_tol);
}

Subspace kinetic_subspace(const GmasNetwork& net, double rank_tol) {
  StructuralMatrices sm = structural_matrices(net);
  return column_space(sm.ytilde * sm.incidence, rank_tol);
}

}  // namespace gmas
