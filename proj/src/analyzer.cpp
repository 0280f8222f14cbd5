#include "gmas/analyzer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gmas/errors.hpp"

namespace gmas {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd restrict_image(const MatrixXd& m, const Subspace& s) {
  return s.basis.transpose() * m * s.basis;
}

bool kinetics_match_stoichiometry(const GmasNetwork& net) {
  for (int i = 0; i < net.num_vertices(); ++i) {
    const ComplexPair& c = net.vertices[static_cast<std::size_t>(i)];
    if (net.is_source(i) && c.kinetic && !(*c.kinetic - c.stoich).isZero(0.0))
      return false;
  }
  return true;
}

bool is_single_cycle_graph(const GmasNetwork& net) {
  const int m = net.num_vertices();
  if (net.num_edges() != m || m == 0) return false;
  std::vector<int> indeg(static_cast<std::size_t>(m), 0), outdeg(static_cast<std::size_t>(m), 0);
  for (const Edge& e : net.edges) {
    ++outdeg[static_cast<std::size_t>(e.from)];
    ++indeg[static_cast<std::size_t>(e.to)];
  }
  for (int i = 0; i < m; ++i)
    if (indeg[static_cast<std::size_t>(i)] != 1 || outdeg[static_cast<std::size_t>(i)] != 1)
      return false;
  auto scc = strongly_connected_components(net);
  return *std::max_element(scc.begin(), scc.end()) == 0;
}

// Concretizes a destabilizing diagonal for a cycle limit matrix into the
// equilibrium x* = 1/d. With the per-cycle rates k_e = 1 / x*^ytilde(src),
// A_k diag(x*^Ytilde) has unit weight on every cycle edge, so the limit
// Jacobian is exactly a * diag(d).
std::optional<InstabilityWitness> concretize_cycle_witness(
    const GmasNetwork& net, const Cycle& cycle, const MatrixXd& a, const Subspace& s,
    const std::optional<VectorXd>& d_hint, const StabilityOptions& opts,
    int max_halvings) {
  std::optional<VectorXd> d = d_hint;
  if (!d) d = find_destabilizing_diagonal(a, s, opts);
  if (!d) return std::nullopt;

  InstabilityWitness w;
  w.d = *d;
  w.x_star = d->cwiseInverse();

  for (int halving = 0; halving <= max_halvings; ++halving) {
    const double eps = std::ldexp(1.0, -halving);
    EpsilonFamily fam = epsilon_family(net, cycle, w.x_star, eps);
    Subspace s_net = stoichiometric_subspace(net);
    MatrixXd m = restrict_image(fam.jacobian, s_net);
    auto eigs = sorted_eigenvalues(m);
    if (eigs.empty()) break;
    std::complex<double> top = eigs.back();
    w.epsilon = eps;
    w.eigenvalue = top;
    w.rates = fam.rates;
    w.balance_residual = fam.balance_residual;
    if (top.real() > opts.zero_tol * m.norm()) {
      w.verified = true;
      return w;
    }
  }
  w.verified = false;
  return w;
}

}  // namespace

const char* to_string(NetworkClass c) {
  switch (c) {
    case NetworkClass::classical: return "classical";
    case NetworkClass::single_cycle: return "single_cycle";
    case NetworkClass::weakly_reversible: return "weakly_reversible";
    case NetworkClass::general: return "general";
  }
  return "?";
}

NetworkClass classify(const GmasNetwork& net) {
  if (kinetics_match_stoichiometry(net)) return NetworkClass::classical;
  if (is_single_cycle_graph(net)) return NetworkClass::single_cycle;
  if (weakly_reversible(net)) return NetworkClass::weakly_reversible;
  return NetworkClass::general;
}

ClassicalCertificate classical_certificate(const GmasNetwork& net,
                                           const VectorXd& x_star,
                                           const VectorXd& d_diag) {
  if (!kinetics_match_stoichiometry(net))
    throw PreconditionError("the diagonal certificate applies to classical kinetics only");
  if (!weakly_reversible(net))
    throw PreconditionError("the diagonal certificate requires a weakly reversible network");
  require_positive(x_star, "equilibrium");
  require_positive(d_diag, "diagonal");
  if (d_diag.size() != net.num_species())
    throw DimensionError("diagonal length does not match the species count");

  EquilibriumCertificate eq = construct_rates(net, x_star);
  const VectorXd& k = eq.rates.k;

  ClassicalCertificate cert;
  cert.x_star = x_star;
  cert.d = d_diag;
  cert.p = d_diag.cwiseQuotient(x_star);

  // Route 1: assemble J, then H = P J D + D J^T P.
  MatrixXd j = jacobian(net, k, x_star);
  MatrixXd pjd = cert.p.asDiagonal() * j * d_diag.asDiagonal();
  MatrixXd h1 = pjd + pjd.transpose();

  // Route 2: H = (P Y) (A_k diag(phi) + transpose) (P Y)^T, never forming J.
  StructuralMatrices sm = structural_matrices(net);
  VectorXd phi = monomials(net, x_star);
  MatrixXd m = laplacian(net, k) * phi.asDiagonal();
  MatrixXd py = cert.p.asDiagonal() * sm.y;
  MatrixXd h2 = py * (m + m.transpose()) * py.transpose();

  const double scale = std::max(h1.norm(), 1e-300);
  cert.route_agreement = (h1 - h2).norm() / scale;
  if (cert.route_agreement > 1e-8)
    throw NumericalError("certificate assembly routes disagree (relative gap " +
                         format_double(cert.route_agreement) + ")");

  cert.h = 0.5 * (h1 + h1.transpose());
  cert.definiteness = definiteness_on(cert.h, stoichiometric_subspace(net));
  return cert;
}

double entropy_lyapunov(const VectorXd& p, const VectorXd& x_star, const VectorXd& x) {
  require_positive(x_star, "equilibrium");
  require_positive(x, "state");
  if (p.size() != x.size() || x_star.size() != x.size())
    throw DimensionError("entropy function arguments disagree in length");
  double value = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    value += p[i] * (x[i] * (std::log(x[i] / x_star[i]) - 1.0) + x_star[i]);
  return value;
}

UniquenessResult uniqueness_check(const GmasNetwork& net, int ambient_cap) {
  if (!weakly_reversible(net))
    throw PreconditionError("the uniqueness test applies to weakly reversible networks");

  Subspace s = stoichiometric_subspace(net);
  Subspace st_perp = orthogonal_complement(kinetic_subspace(net));

  UniquenessResult out;
  auto w = sign_vectors_intersect(st_perp, s, kSignMargin, ambient_cap);
  if (!w) {
    out.unique = true;
    return out;
  }

  UniquenessWitness wit;
  wit.u = w->u / w->u.cwiseAbs().maxCoeff();
  wit.v = w->v / w->v.cwiseAbs().maxCoeff();
  const int n = net.num_species();
  // Force exact zeros off the shared support so that v ./ x* equals u
  // componentwise.
  for (int i = 0; i < n; ++i) {
    if (w->sigma[i] == 0) {
      wit.u[i] = 0.0;
      wit.v[i] = 0.0;
    }
  }
  wit.x_star = VectorXd::Ones(n);
  for (int i = 0; i < n; ++i)
    if (w->sigma[i] != 0) wit.x_star[i] = wit.v[i] / wit.u[i];

  EquilibriumCertificate eq = construct_rates(net, wit.x_star);
  wit.rates = eq.rates;
  MatrixXd j = jacobian(net, eq.rates.k, wit.x_star);
  const double denom = std::max(j.norm() * wit.v.norm(), 1e-300);
  wit.jv_residual = (j * wit.v).norm() / denom;

  out.unique = false;
  out.witness = std::move(wit);
  return out;
}

CycleNetworkResult analyze_cycle_network(const GmasNetwork& net,
                                         const StabilityOptions& opts) {
  if (!is_single_cycle_graph(net))
    throw PreconditionError("the whole-network cycle characterization requires a single directed cycle");
  std::vector<Cycle> cycles = enumerate_cycles(net);
  if (cycles.size() != 1)
    throw NumericalError("expected exactly one cycle");

  CycleLimit cl = cycle_limit_matrix(net, cycles.front());
  CycleNetworkResult out;
  out.a = cl.a;
  out.s = cl.s;
  out.d_stable = is_d_stable(cl.a, cl.s, opts);
  out.diagonally_d_stable = is_diagonally_d_stable_on(cl.a, cl.s, false, opts);

  if (out.d_stable.status == Status::fails) {
    out.witness = concretize_cycle_witness(net, cycles.front(), cl.a, cl.s,
                                           out.d_stable.counterexample_d, opts,
                                           /*max_halvings=*/0);
  }
  return out;
}

std::vector<CycleFinding> analyze_weakly_reversible(const GmasNetwork& net,
                                                    const StabilityOptions& opts) {
  if (!weakly_reversible(net))
    throw PreconditionError("the per-cycle necessary conditions require a weakly reversible network");

  std::vector<CycleFinding> findings;
  for (const Cycle& c : enumerate_cycles(net)) {
    CycleFinding f;
    f.cycle = c;
    CycleLimit cl = cycle_limit_matrix(net, c);
    f.a_c = cl.a;
    f.dim_sc = cl.s.dim();
    f.verdict = is_d_semistable(cl.a, cl.s, opts);
    if (f.verdict.status == Status::fails)
      f.witness = concretize_cycle_witness(net, c, cl.a, cl.s,
                                           f.verdict.counterexample_d, opts,
                                           /*max_halvings=*/60);
    findings.push_back(std::move(f));
  }
  return findings;
}

AnalysisReport full_report(const GmasNetwork& net, const StabilityOptions& opts) {
  validate(net);
  AnalysisReport rep;
  rep.network_class = classify(net);

  rep.structure.species = net.num_species();
  rep.structure.vertices = net.num_vertices();
  rep.structure.edges = net.num_edges();
  rep.structure.dim_s = stoichiometric_subspace(net).dim();
  rep.structure.dim_s_tilde = kinetic_subspace(net).dim();
  rep.structure.weakly_reversible = weakly_reversible(net);

  bool cycles_capped = false;
  try {
    rep.structure.cycle_count = static_cast<long long>(enumerate_cycles(net).size());
  } catch (const ResourceError&) {
    rep.structure.cycle_count = -1;
    cycles_capped = true;
    rep.notes.push_back("cycle enumeration exceeded the cap; cycle analyses skipped");
  }

  if (rep.structure.weakly_reversible) {
    if (net.num_species() <= 12) {
      rep.uniqueness = uniqueness_check(net);
      rep.notes.push_back(
          "uniqueness tested as: sign vectors of the stoichiometric subspace and of the "
          "orthogonal complement of the kinetic subspace share only zero");
    } else {
      rep.uniqueness_skipped_reason = "species count exceeds the sign-vector enumeration cap";
    }
  } else {
    rep.uniqueness_skipped_reason = "uniqueness analysis applies to weakly reversible networks";
  }

  if (rep.structure.weakly_reversible && !cycles_capped) {
    rep.cycles = analyze_weakly_reversible(net, opts);
    bool any_fail = false, all_hold = true;
    for (const CycleFinding& f : rep.cycles) {
      if (f.verdict.status == Status::fails) any_fail = true;
      if (f.verdict.status != Status::holds) all_hold = false;
    }
    if (any_fail)
      rep.notes.push_back(
          "a cycle limit matrix is not D-semistable on its subspace: linear stability fails "
          "for some rate constants");
    else if (all_hold)
      rep.notes.push_back(
          "necessary conditions satisfied: every cycle limit matrix is D-semistable on its "
          "subspace (this does not prove stability)");
    else
      rep.notes.push_back("necessary conditions could not all be certified");
  }

  if (!cycles_capped && is_single_cycle_graph(net)) {
    rep.global = analyze_cycle_network(net, opts);
    if (rep.global->d_stable.status == Status::holds)
      rep.notes.push_back(
          "single cycle: the limit matrix is D-stable on its subspace, so every positive "
          "complex-balanced equilibrium is linearly stable for every rate assignment");
    else if (rep.global->d_stable.status == Status::fails)
      rep.notes.push_back(
          "single cycle: the limit matrix is not D-stable on its subspace, so some rate "
          "assignment has an unstable complex-balanced equilibrium");
  }

  if (rep.network_class == NetworkClass::classical && rep.structure.weakly_reversible) {
    const int n = net.num_species();
    rep.classical = classical_certificate(net, VectorXd::Ones(n), VectorXd::Ones(n));
    if (rep.classical->definiteness != Definiteness::negative_definite)
      throw std::logic_error(
          "classical diagonal certificate failed to be negative definite on the "
          "stoichiometric subspace");
    rep.notes.push_back(
        "classical kinetics: the diagonal certificate makes every positive complex-balanced "
        "equilibrium linearly stable for every rate assignment and every diagonal scaling");
  }

  // Cross-analysis consistency: a single-cycle network that is certifiably
  // stable for all rate constants cannot have a degenerate-direction
  // witness.
  if (rep.global && rep.global->d_stable.status == Status::holds && rep.uniqueness &&
      !rep.uniqueness->unique)
    throw std::logic_error(
        "inconsistent analyses: stable for all rate constants but a uniqueness witness with "
        "a singular Jacobian direction exists");

  return rep;
}

}  // namespace gmas
