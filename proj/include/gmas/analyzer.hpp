#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "gmas/dynamics.hpp"
#include "gmas/network.hpp"
#include "gmas/sign_vectors.hpp"
#include "gmas/stability.hpp"
#include "gmas/subspace.hpp"

namespace gmas {

enum class NetworkClass { classical, single_cycle, weakly_reversible, general };

const char* to_string(NetworkClass c);

// classical: kinetic == stoichiometric complex at every source vertex;
// single_cycle: the edge set is exactly one directed simple cycle covering
// all vertices; weakly_reversible: per the graph test; general otherwise.
// A network that is both classical and single_cycle reports classical (both
// analyses still run in full_report).
NetworkClass classify(const GmasNetwork& net);

struct ClassicalCertificate {
  Eigen::VectorXd x_star;
  Eigen::VectorXd d;              // the diagonal of D
  Eigen::VectorXd p;              // diagonal of P = diag(x_star)^{-1} D
  Eigen::MatrixXd h;              // P J D + D J^T P
  Definiteness definiteness = Definiteness::indefinite_or_positive;
  double route_agreement = 0.0;   // relative gap to the symmetrized-Laplacian route
};

// Explicit stability certificate for classical networks: for any positive
// equilibrium x_star (rates built to balance it) and any positive diagonal
// D, P = diag(x_star)^{-1} D makes P J D + D J^T P negative definite on S.
// Verified through two independent algebraic routes before returning.
ClassicalCertificate classical_certificate(const GmasNetwork& net,
                                           const Eigen::VectorXd& x_star,
                                           const Eigen::VectorXd& d_diag);

// The entropy-like Lyapunov function sum_i p_i x*_i (x_i/x*_i (log(x_i/x*_i) - 1) + 1)
// written with x_i explicit: sum_i p_i (x_i (log(x_i/x*_i) - 1) + x*_i).
double entropy_lyapunov(const Eigen::VectorXd& p, const Eigen::VectorXd& x_star,
                        const Eigen::VectorXd& x);

struct UniquenessWitness {
  Eigen::VectorXd u;  // in the orthogonal complement of the kinetic subspace
  Eigen::VectorXd v;  // in the stoichiometric subspace, same sign pattern
  Eigen::VectorXd x_star;
  RateAssignment rates;
  double jv_residual = 0.0;  // ||J v|| / (||J|| ||v||)
};

struct UniquenessResult {
  bool unique = false;
  std::optional<UniquenessWitness> witness;
};

// Equilibria are unique within every positive stoichiometric class for all
// rate constants iff sign(S) and sign(S~ perp) share no nonzero sign
// vector. When they do, the witness pair is turned into a concrete
// (x_star, k) at which J annihilates a stoichiometric direction, certified
// by ||J v|| <= 1e-9 ||J|| ||v||.
UniquenessResult uniqueness_check(const GmasNetwork& net, int ambient_cap = 12);

struct InstabilityWitness {
  Eigen::VectorXd d;        // destabilizing diagonal
  Eigen::VectorXd x_star;   // 1 / d componentwise
  RateAssignment rates;
  double epsilon = 1.0;     // member of the rate family used (1 = direct)
  std::complex<double> eigenvalue;  // unstable restricted eigenvalue of J
  double balance_residual = 0.0;
  bool verified = false;
};

struct CycleNetworkResult {
  Eigen::MatrixXd a;        // Y A_{k=1} Ytilde^T
  Subspace s;
  Verdict d_stable;         // <=> linear stability for all rate constants
  Verdict diagonally_d_stable;
  std::optional<InstabilityWitness> witness;  // when d_stable fails
};

// Single-cycle characterization: every positive complex-balanced
// equilibrium is linearly stable for every rate assignment iff
// Y A_{k=1} Ytilde^T is D-stable on S (diagonal version analogous). A
// failed verdict is concretized into rates and an equilibrium whose
// Jacobian is certifiably unstable on S.
CycleNetworkResult analyze_cycle_network(const GmasNetwork& net,
                                         const StabilityOptions& opts = {});

struct CycleFinding {
  Cycle cycle;
  Eigen::MatrixXd a_c;
  int dim_sc = 0;
  Verdict verdict;  // D-semistability of a_c on S^C
  std::optional<InstabilityWitness> witness;  // when the verdict fails
};

// Necessary conditions for weakly reversible networks: linear stability for
// all rate constants requires every cycle's limit matrix to be
// D-semistable on its subspace. Certified failures are concretized through
// the epsilon rate family (halving from eps = 1, at most 60 times).
std::vector<CycleFinding> analyze_weakly_reversible(const GmasNetwork& net,
                                                    const StabilityOptions& opts = {});

struct StructuralSummary {
  int species = 0;
  int vertices = 0;
  int edges = 0;
  int dim_s = 0;
  int dim_s_tilde = 0;
  bool weakly_reversible = false;
  long long cycle_count = 0;
};

struct AnalysisReport {
  NetworkClass network_class = NetworkClass::general;
  StructuralSummary structure;
  std::optional<UniquenessResult> uniqueness;
  std::string uniqueness_skipped_reason;
  std::vector<CycleFinding> cycles;
  std::optional<CycleNetworkResult> global;
  std::optional<ClassicalCertificate> classical;
  std::vector<std::string> notes;
};

// Dispatches on the classification, runs every applicable analysis, and
// asserts cross-analysis consistency (a certified stable-for-all-k cycle
// network must also be unique; violations throw std::logic_error).
AnalysisReport full_report(const GmasNetwork& net, const StabilityOptions& opts = {});

}  // namespace gmas
