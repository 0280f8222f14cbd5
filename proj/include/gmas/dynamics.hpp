#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "gmas/network.hpp"
#include "gmas/numeric.hpp"
#include "gmas/subspace.hpp"

namespace gmas {

// Throws PreconditionError unless every component is strictly positive.
void require_positive(const Eigen::VectorXd& x, const char* what = "state");

// Vertex monomials x^Ytilde (one entry per vertex; 1 at non-sources).
Eigen::VectorXd monomials(const GmasNetwork& net, const Eigen::VectorXd& x);

// Right-hand side sum over edges k_e * x^ytilde(src) * (y(tgt) - y(src)).
Eigen::VectorXd rhs(const GmasNetwork& net, const Eigen::VectorXd& k,
                    const Eigen::VectorXd& x);

// Jacobian Y A_k diag(x^Ytilde) Ytilde^T diag(x)^{-1}.
Eigen::MatrixXd jacobian(const GmasNetwork& net, const Eigen::VectorXd& k,
                         const Eigen::VectorXd& x);

struct BalanceCheck {
  bool balanced = false;
  double residual = 0.0;  // ||A_k x^Ytilde||_inf
  double scale = 0.0;     // largest vertex throughput
};

// Complex balance test ||A_k x^Ytilde||_inf <= rel_tol * max vertex
// throughput.
BalanceCheck is_complex_balanced(const GmasNetwork& net, const Eigen::VectorXd& k,
                                 const Eigen::VectorXd& x,
                                 double rel_tol = kBalanceTol);

struct EquilibriumCertificate {
  Eigen::VectorXd x_star;
  RateAssignment rates;
  double residual = 0.0;
};

// Rates making x_star complex balanced: the sum over all simple cycles of
// the per-cycle assignment k_e = 1 / x_star^ytilde(src e) on the cycle's
// edges. Requires weak reversibility; the certificate is re-verified before
// it is returned.
EquilibriumCertificate construct_rates(const GmasNetwork& net,
                                       const Eigen::VectorXd& x_star,
                                       long long cycle_cap = 1000000);

struct EpsilonFamily {
  RateAssignment rates;      // k^eps
  Eigen::MatrixXd jacobian;  // J(x_star) under k^eps
  double balance_residual = 0.0;
};

// One member of the rate family k^eps = k^C + eps * sum of the other
// per-cycle assignments. x_star stays complex balanced for every eps > 0,
// and the Jacobian converges to Y A^C_{k=1} Ytilde^T diag(x_star)^{-1}
// linearly in eps.
EpsilonFamily epsilon_family(const GmasNetwork& net, const Cycle& cycle,
                             const Eigen::VectorXd& x_star, double eps,
                             long long cycle_cap = 1000000);

struct CycleLimit {
  Eigen::MatrixXd a;  // Y A^C_{k=1} Ytilde^T
  Subspace s;         // im(Y I_{E(C)})
};

CycleLimit cycle_limit_matrix(const GmasNetwork& net, const Cycle& cycle);

struct KernelCheck {
  bool passed = false;
  int kernel_dim = 0;
  int component_count = 0;
  double gap = 0.0;  // projector gap between the two kernels
};

// At a complex-balanced equilibrium, ker(A_k diag(x_star^Ytilde)) equals
// ker(incidence^T): dimension = number of connected components, spanned by
// component indicators. Verified numerically with the given gap tolerance.
KernelCheck kernel_lemma_check(const GmasNetwork& net, const Eigen::VectorXd& k,
                               const Eigen::VectorXd& x_star,
                               double gap_tol = 1e-8);

struct IntegrateOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double initial_step = 0.0;  // 0 = choose automatically
  double min_step_scale = 1e-14;
  long long max_steps = 2000000;
  double positivity_floor = 1e-12;
};

enum class TrajectoryStatus { completed, positivity_floor, stiff };

const char* to_string(TrajectoryStatus s);

struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  TrajectoryStatus status = TrajectoryStatus::completed;
  std::string message;
};

// Embedded Dormand-Prince 4(5) integration of the mass-action ODE from
// x0 > 0 to t_end. Stops early (with a partial trajectory and a status
// flag) when a component falls below the positivity floor or the step size
// collapses.
Trajectory integrate(const GmasNetwork& net, const Eigen::VectorXd& k,
                     const Eigen::VectorXd& x0, double t_end,
                     const IntegrateOptions& opts = {});

// CSV with header t,x1,...,xn.
std::string trajectory_csv(const Trajectory& traj);

}  // namespace gmas
