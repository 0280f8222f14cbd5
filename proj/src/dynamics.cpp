#include "gmas/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "gmas/errors.hpp"

namespace gmas {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

void check_rates(const GmasNetwork& net, const VectorXd& k) {
  if (k.size() != net.num_edges())
    throw DimensionError("rate vector length does not match the edge count");
}

std::vector<int> sorted_edges(const Cycle& cycle) {
  std::vector<int> e = cycle.edges;
  std::sort(e.begin(), e.end());
  return e;
}

// Per-cycle rate assignment k_e = 1 / x_star^ytilde(src e) on the cycle's
// edges. It balances x_star on the cycle subgraph: every cycle vertex gets
// unit inflow and unit outflow.
VectorXd cycle_rates(const GmasNetwork& net, const Cycle& cycle, const VectorXd& phi) {
  VectorXd k = VectorXd::Zero(net.num_edges());
  for (int e : cycle.edges) k[e] = 1.0 / phi[net.edges[static_cast<std::size_t>(e)].from];
  return k;
}

}  // namespace

void require_positive(const VectorXd& x, const char* what) {
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (!(x[i] > 0.0))
      throw PreconditionError(std::string(what) + " must be strictly positive (component " +
                              std::to_string(i + 1) + " is " + format_double(x[i]) + ")");
}

VectorXd monomials(const GmasNetwork& net, const VectorXd& x) {
  if (x.size() != net.num_species())
    throw DimensionError("state vector length does not match the species count");
  VectorXd phi(net.num_vertices());
  for (int i = 0; i < net.num_vertices(); ++i) {
    const ComplexPair& c = net.vertices[static_cast<std::size_t>(i)];
    if (net.is_source(i) && c.kinetic)
      phi[i] = power_monomial(x, *c.kinetic);
    else if (net.is_source(i))
      phi[i] = power_monomial(x, c.stoich);
    else
      phi[i] = 1.0;
  }
  return phi;
}

VectorXd rhs(const GmasNetwork& net, const VectorXd& k, const VectorXd& x) {
  check_rates(net, k);
  VectorXd phi = monomials(net, x);
  VectorXd dx = VectorXd::Zero(net.num_species());
  for (int e = 0; e < net.num_edges(); ++e) {
    const Edge& ed = net.edges[static_cast<std::size_t>(e)];
    const VectorXd& ys = net.vertices[static_cast<std::size_t>(ed.from)].stoich;
    const VectorXd& yt = net.vertices[static_cast<std::size_t>(ed.to)].stoich;
    dx += k[e] * phi[ed.from] * (yt - ys);
  }
  return dx;
}

MatrixXd jacobian(const GmasNetwork& net, const VectorXd& k, const VectorXd& x) {
  check_rates(net, k);
  require_positive(x);
  StructuralMatrices sm = structural_matrices(net);
  MatrixXd ak = laplacian(net, k);
  VectorXd phi = monomials(net, x);
  return sm.y * ak * phi.asDiagonal() * sm.ytilde.transpose() * x.cwiseInverse().asDiagonal();
}

BalanceCheck is_complex_balanced(const GmasNetwork& net, const VectorXd& k,
                                 const VectorXd& x, double rel_tol) {
  check_rates(net, k);
  VectorXd phi = monomials(net, x);
  MatrixXd ak = laplacian(net, k);
  VectorXd v = ak * phi;

  VectorXd inflow = VectorXd::Zero(net.num_vertices());
  VectorXd outflow = VectorXd::Zero(net.num_vertices());
  for (int e = 0; e < net.num_edges(); ++e) {
    const Edge& ed = net.edges[static_cast<std::size_t>(e)];
    const double flow = k[e] * phi[ed.from];
    inflow[ed.to] += flow;
    outflow[ed.from] += flow;
  }
  BalanceCheck out;
  out.residual = v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
  out.scale = 0.0;
  for (int i = 0; i < net.num_vertices(); ++i)
    out.scale = std::max({out.scale, inflow[i], outflow[i]});
  out.balanced = out.residual <= rel_tol * std::max(out.scale, 0.0) ||
                 (out.scale == 0.0 && out.residual == 0.0);
  return out;
}

EquilibriumCertificate construct_rates(const GmasNetwork& net, const VectorXd& x_star,
                                       long long cycle_cap) {
  require_positive(x_star, "equilibrium");
  if (!weakly_reversible(net))
    throw PreconditionError("rate construction requires a weakly reversible network");
  VectorXd phi = monomials(net, x_star);
  std::vector<Cycle> cycles = enumerate_cycles(net, cycle_cap);
  VectorXd k = VectorXd::Zero(net.num_edges());
  for (const Cycle& c : cycles) k += cycle_rates(net, c, phi);
  for (int e = 0; e < net.num_edges(); ++e)
    if (!(k[e] > 0.0))
      throw NumericalError("edge " + std::to_string(e + 1) + " lies on no cycle");

  EquilibriumCertificate cert;
  cert.x_star = x_star;
  cert.rates.k = k;
  BalanceCheck bc = is_complex_balanced(net, k, x_star);
  cert.residual = bc.residual;
  if (!bc.balanced)
    throw NumericalError("constructed rates fail the complex-balance test (residual " +
                         format_double(bc.residual) + ")");
  return cert;
}

EpsilonFamily epsilon_family(const GmasNetwork& net, const Cycle& cycle,
                             const VectorXd& x_star, double eps, long long cycle_cap) {
  require_positive(x_star, "equilibrium");
  if (!(eps > 0.0)) throw PreconditionError("epsilon must be positive");
  VectorXd phi = monomials(net, x_star);
  std::vector<Cycle> cycles = enumerate_cycles(net, cycle_cap);

  const std::vector<int> chosen = sorted_edges(cycle);
  VectorXd k = cycle_rates(net, cycle, phi);
  for (const Cycle& c : cycles)
    if (sorted_edges(c) != chosen) k += eps * cycle_rates(net, c, phi);

  EpsilonFamily fam;
  fam.rates.k = k;
  fam.jacobian = jacobian(net, k, x_star);
  fam.balance_residual = is_complex_balanced(net, k, x_star).residual;
  return fam;
}

CycleLimit cycle_limit_matrix(const GmasNetwork& net, const Cycle& cycle) {
  StructuralMatrices sm = structural_matrices(net);
  VectorXd k = VectorXd::Zero(net.num_edges());
  for (int e : cycle.edges) k[e] = 1.0;
  MatrixXd a = sm.y * laplacian(net, k) * sm.ytilde.transpose();

  MatrixXd cols(net.num_species(), static_cast<Eigen::Index>(cycle.edges.size()));
  MatrixXd yi = sm.y * sm.incidence;
  for (std::size_t j = 0; j < cycle.edges.size(); ++j)
    cols.col(static_cast<Eigen::Index>(j)) = yi.col(cycle.edges[j]);
  return CycleLimit{a, column_space(cols)};
}

KernelCheck kernel_lemma_check(const GmasNetwork& net, const VectorXd& k,
                               const VectorXd& x_star, double gap_tol) {
  check_rates(net, k);
  require_positive(x_star, "equilibrium");
  BalanceCheck bc = is_complex_balanced(net, k, x_star);
  if (!bc.balanced)
    throw PreconditionError("kernel comparison requires a complex-balanced equilibrium");

  VectorXd phi = monomials(net, x_star);
  MatrixXd m = laplacian(net, k) * phi.asDiagonal();

  Eigen::JacobiSVD<MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  int kernel_dim = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) <= kRankTol * std::max(smax, 1e-300)) ++kernel_dim;
  const int v = net.num_vertices();
  MatrixXd kernel = svd.matrixV().rightCols(kernel_dim);

  std::vector<int> comp = connected_components(net);
  const int nc = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  MatrixXd indicators = MatrixXd::Zero(v, nc);
  for (int i = 0; i < v; ++i) indicators(i, comp[static_cast<std::size_t>(i)]) = 1.0;
  indicators.colwise().normalize();

  KernelCheck out;
  out.kernel_dim = kernel_dim;
  out.component_count = nc;
  Subspace ks = kernel_dim ? make_subspace(kernel) : Subspace{v, MatrixXd::Zero(v, 0)};
  Subspace is = make_subspace(indicators);
  out.gap = subspace_gap(ks, is);
  out.passed = kernel_dim == nc && out.gap <= gap_tol;
  return out;
}

const char* to_string(TrajectoryStatus s) {
  switch (s) {
    case TrajectoryStatus::completed: return "completed";
    case TrajectoryStatus::positivity_floor: return "positivity_floor";
    case TrajectoryStatus::stiff: return "stiff";
  }
  return "?";
}

Trajectory integrate(const GmasNetwork& net, const VectorXd& k, const VectorXd& x0,
                     double t_end, const IntegrateOptions& opts) {
  check_rates(net, k);
  require_positive(x0, "initial state");
  if (!(t_end >= 0.0)) throw PreconditionError("t_end must be nonnegative");

  const int n = net.num_species();
  auto f = [&](const VectorXd& x) { return rhs(net, k, x); };

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(x0);
  if (t_end == 0.0) return traj;

  // Dormand-Prince 4(5) coefficients; stage times are not needed for an
  // autonomous right-hand side.
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                      a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                      a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                      e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                      e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

  double t = 0.0;
  VectorXd x = x0;
  VectorXd k1 = f(x);

  double h = opts.initial_step;
  if (h <= 0.0) {
    VectorXd sc = (opts.abs_tol + opts.rel_tol * x.cwiseAbs().array()).matrix();
    const double d0 = (x.cwiseQuotient(sc)).norm() / std::sqrt(static_cast<double>(n));
    const double d1 = (k1.cwiseQuotient(sc)).norm() / std::sqrt(static_cast<double>(n));
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h = std::min(h, t_end);
  }

  for (long long step = 0; step < opts.max_steps; ++step) {
    if (t >= t_end) break;
    h = std::min(h, t_end - t);
    if (h < opts.min_step_scale * std::max(std::abs(t), 1.0)) {
      traj.status = TrajectoryStatus::stiff;
      traj.message = "step size collapsed at t = " + format_double(t);
      return traj;
    }

    VectorXd k2 = f(x + h * (a21 * k1));
    VectorXd k3 = f(x + h * (a31 * k1 + a32 * k2));
    VectorXd k4 = f(x + h * (a41 * k1 + a42 * k2 + a43 * k3));
    VectorXd k5 = f(x + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    VectorXd k6 = f(x + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    VectorXd x_new = x + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    VectorXd k7 = f(x_new);
    VectorXd err_vec = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double err = 0.0;
    for (int i = 0; i < n; ++i) {
      const double sc = opts.abs_tol +
                        opts.rel_tol * std::max(std::abs(x[i]), std::abs(x_new[i]));
      const double q = err_vec[i] / sc;
      err += q * q;
    }
    err = std::sqrt(err / n);

    if (err <= 1.0) {  // NaN fails this test and rejects the step
      t += h;
      x = x_new;
      k1 = k7;
      traj.times.push_back(t);
      traj.states.push_back(x);
      if (x.minCoeff() < opts.positivity_floor) {
        traj.status = TrajectoryStatus::positivity_floor;
        traj.message = "state reached the positivity floor at t = " + format_double(t);
        return traj;
      }
      const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      h *= factor;
    } else {
      const double factor = std::isfinite(err) ? std::max(0.9 * std::pow(err, -0.2), 0.1) : 0.1;
      h *= std::min(factor, 0.9);
    }
  }

  if (t < t_end) {
    traj.status = TrajectoryStatus::stiff;
    traj.message = "step budget exhausted at t = " + format_double(t);
  }
  return traj;
}

std::string trajectory_csv(const Trajectory& traj) {
  const int n = traj.states.empty() ? 0 : static_cast<int>(traj.states.front().size());
  std::string out = "t";
  for (int i = 0; i < n; ++i) out += ",x" + std::to_string(i + 1);
  out += "\n";
  for (std::size_t r = 0; r < traj.times.size(); ++r) {
    out += format_double(traj.times[r]);
    for (int i = 0; i < n; ++i) out += "," + format_double(traj.states[r][i]);
    out += "\n";
  }
  return out;
}

}  // namespace gmas
