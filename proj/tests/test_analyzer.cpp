#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <string>

#include "doctest.h"
#include "gmas/analyzer.hpp"
#include "gmas/bundled_examples.hpp"
#include "gmas/dynamics.hpp"
#include "gmas/errors.hpp"
#include "gmas/subspace.hpp"
#include "support.hpp"

using gmas::NetworkClass;
using gmas::Status;
using testsupport::net_from;

namespace {

gmas::GmasNetwork bundled(const std::string& family, const std::string& file) {
  for (const auto& [name, text] : gmas::bundled_networks().at(family))
    if (name == file) return net_from(text);
  FAIL("no bundled network " << family << "/" << file);
  return {};
}

gmas::StabilityOptions fast_opts() {
  gmas::StabilityOptions o;
  o.sample_count = 2000;
  o.sweep_count = 20;
  o.search_starts = 10;
  o.search_iterations = 150;
  return o;
}

}  // namespace

TEST_CASE("classification covers all four classes") {
  CHECK(gmas::classify(bundled("fourcycle", "fourcycle_a0_b0_g0.gcrn")) ==
        NetworkClass::classical);
  CHECK(gmas::classify(bundled("fourcycle", "fourcycle_a5_b0_gm3.gcrn")) ==
        NetworkClass::single_cycle);
  CHECK(gmas::classify(bundled("revchain", "revchain.gcrn")) ==
        NetworkClass::weakly_reversible);
  CHECK(gmas::classify(net_from("species: X\nvertex a: stoich = X, kinetic = 2 X\n"
                                "vertex b: stoich = 0\nedge a -> b\n")) ==
        NetworkClass::general);
  // Mass-action kinetics classify as classical even without reversibility.
  CHECK(gmas::classify(net_from("species: X\nvertex a: stoich = X\n"
                                "vertex b: stoich = 0\nedge a -> b\n")) ==
        NetworkClass::classical);
}

TEST_CASE("classical certificate is negative definite for random data") {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 25; ++trial) {
    auto net = testsupport::random_wr_network(rng);
    // Strip the generated kinetics so every source runs mass action.
    for (auto& v : net.vertices) v.kinetic = v.stoich;
    const Eigen::VectorXd x_star =
        testsupport::random_positive(rng, net.num_species(), 0.2, 3.0);
    const Eigen::VectorXd d =
        testsupport::random_positive(rng, net.num_species(), 0.1, 10.0);
    const auto cert = gmas::classical_certificate(net, x_star, d);
    CHECK(cert.definiteness == gmas::Definiteness::negative_definite);
    CHECK(cert.route_agreement <= 1e-8);
    CHECK((cert.p - d.cwiseQuotient(x_star)).norm() == 0.0);

    // Rebuild H = P J D + D J^T P from scratch and compare.
    const auto eq = gmas::construct_rates(net, x_star);
    const Eigen::MatrixXd j = gmas::jacobian(net, eq.rates.k, x_star);
    const Eigen::MatrixXd pjd = cert.p.asDiagonal() * j * cert.d.asDiagonal();
    const Eigen::MatrixXd h = pjd + pjd.transpose();
    CHECK((cert.h - h).norm() <= 1e-12 * std::max(1.0, h.norm()));
  }
}

TEST_CASE("classical certificate guards its preconditions") {
  const auto chain = net_from(
      "species: X\nvertex a: stoich = X\nvertex b: stoich = 0\nedge a -> b\n");
  CHECK_THROWS_AS(
      gmas::classical_certificate(chain, Eigen::VectorXd::Ones(1), Eigen::VectorXd::Ones(1)),
      gmas::PreconditionError);
  const auto generalized = net_from(
      "species: X\nvertex a: stoich = X, kinetic = 2 X\n"
      "vertex b: stoich = 0, kinetic = X\nedge a <-> b\n");
  CHECK_THROWS_AS(gmas::classical_certificate(generalized, Eigen::VectorXd::Ones(1),
                                              Eigen::VectorXd::Ones(1)),
                  gmas::PreconditionError);
}

TEST_CASE("entropy-like Lyapunov function values") {
  const Eigen::Vector2d p(1.0, 1.0);
  const Eigen::Vector2d x_star(1.0, 1.0);
  CHECK(gmas::entropy_lyapunov(p, x_star, Eigen::Vector2d(std::exp(1.0), 1.0)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(gmas::entropy_lyapunov(p, x_star, x_star) == doctest::Approx(0.0));
  // Strictly positive away from the reference point.
  CHECK(gmas::entropy_lyapunov(p, x_star, Eigen::Vector2d(0.5, 1.0)) > 0.0);
}

TEST_CASE("uniqueness holds when the sign cones are disjoint") {
  const auto net = net_from(
      "species: X Y\n"
      "vertex vx: stoich = X\n"
      "vertex vy: stoich = Y, kinetic = 0\n"
      "edge vx <-> vy\n");
  const auto res = gmas::uniqueness_check(net);
  CHECK(res.unique);
  CHECK_FALSE(res.witness.has_value());
}

TEST_CASE("non-uniqueness produces a certified degenerate direction") {
  const auto net = net_from(
      "species: X Y\n"
      "vertex vx: stoich = X\n"
      "vertex vy: stoich = Y, kinetic = 2 X + Y\n"
      "edge vx <-> vy\n");
  const auto res = gmas::uniqueness_check(net);
  CHECK_FALSE(res.unique);
  REQUIRE(res.witness.has_value());
  const auto& w = *res.witness;
  CHECK(w.jv_residual <= 1e-9);
  CHECK(w.x_star.minCoeff() > 0);
  CHECK(w.rates.k.minCoeff() > 0);
  // v spans the stoichiometric direction (1, -1) and J annihilates it.
  CHECK(w.v(0) * w.v(1) < 0);
  const Eigen::MatrixXd j = gmas::jacobian(net, w.rates.k, w.x_star);
  CHECK((j * w.v).norm() <= 1e-9 * j.norm() * w.v.norm());
  // The equilibrium is genuinely complex balanced.
  CHECK(gmas::is_complex_balanced(net, w.rates.k, w.x_star).balanced);
}

TEST_CASE("single-cycle analysis of the planar example") {
  const auto net = bundled("planar3cycle", "planar3cycle.gcrn");
  const auto res = gmas::analyze_cycle_network(net, fast_opts());
  Eigen::MatrixXd expected(2, 2);
  expected << -1.5, 0, 1.5, -1;
  CHECK((res.a - expected).norm() <= 1e-12);
  CHECK(res.s.dim() == 2);
  CHECK(res.d_stable.status == Status::holds);
  CHECK(res.d_stable.method == gmas::Method::criterion_2x2);
  CHECK(res.diagonally_d_stable.status == Status::holds);
  CHECK_FALSE(res.witness.has_value());
}

TEST_CASE("single-cycle analysis with a two-dimensional subspace") {
  const auto net = bundled("ivanova3cycle", "ivanova3cycle.gcrn");
  const auto res = gmas::analyze_cycle_network(net, fast_opts());
  Eigen::MatrixXd expected(3, 3);
  expected << -1, 0, 1, 1, -1, 0, 0, 1, -1;
  CHECK((res.a - expected).norm() <= 1e-12);
  CHECK(res.s.dim() == 2);
  CHECK(res.d_stable.status == Status::holds);
  CHECK(res.d_stable.method == gmas::Method::criterion_dim_s2);
  // On a proper subspace the diagonal variant can only be probed.
  CHECK(res.diagonally_d_stable.status == Status::inconclusive);
}

TEST_CASE("failed single-cycle verdicts come with a live witness") {
  const auto net = bundled("fourcycle", "fourcycle_a3_b4_gm4.gcrn");
  const auto res = gmas::analyze_cycle_network(net, fast_opts());
  CHECK(res.d_stable.status == Status::fails);
  REQUIRE(res.witness.has_value());
  const auto& w = *res.witness;
  CHECK(w.verified);
  CHECK(w.eigenvalue.real() > 1e-6);
  CHECK(w.d.minCoeff() > 0);
  CHECK((w.x_star - w.d.cwiseInverse()).norm() <= 1e-12);
  CHECK(w.balance_residual <= 1e-8);
  // Re-derive the Jacobian at the witness and confirm the unstable mode.
  const Eigen::MatrixXd j = gmas::jacobian(net, w.rates.k, w.x_star);
  const auto s = gmas::stoichiometric_subspace(net);
  const Eigen::MatrixXd r = gmas::restrict_to(j, s);
  CHECK(gmas::max_real_eigenvalue(r) == doctest::Approx(w.eigenvalue.real()).epsilon(1e-6));
  CHECK(gmas::is_complex_balanced(net, w.rates.k, w.x_star).balanced);
}

TEST_CASE("weakly reversible networks: every cycle passes on the good variants") {
  for (const auto& [family, file] :
       {std::pair<std::string, std::string>{"revchain", "revchain.gcrn"},
        {"ssystem", "ssystem.gcrn"}}) {
    const auto net = bundled(family, file);
    const auto findings = gmas::analyze_weakly_reversible(net, fast_opts());
    REQUIRE(!findings.empty());
    for (const auto& f : findings) {
      CHECK(f.verdict.status == Status::holds);
      CHECK(f.dim_sc >= 1);
      CHECK_FALSE(f.witness.has_value());
    }
  }
}

TEST_CASE("revchain_bad: one cycle fails with a concrete rate family member") {
  const auto net = bundled("revchain", "revchain_bad.gcrn");
  const auto findings = gmas::analyze_weakly_reversible(net, fast_opts());
  REQUIRE(findings.size() == 3);
  int failing = 0;
  for (const auto& f : findings) {
    if (f.verdict.status != Status::fails) {
      CHECK(f.verdict.status == Status::holds);
      continue;
    }
    ++failing;
    CHECK(f.cycle.vertices == std::vector<int>{1, 2});
    REQUIRE(f.witness.has_value());
    const auto& w = *f.witness;
    CHECK(w.verified);
    CHECK(w.epsilon == 1.0);
    CHECK(w.eigenvalue.real() > 1e-6);
    CHECK(w.balance_residual <= 1e-8);
    // Independent reconstruction of the unstable Jacobian.
    const Eigen::MatrixXd j = gmas::jacobian(net, w.rates.k, w.x_star);
    const auto s = gmas::stoichiometric_subspace(net);
    CHECK(gmas::max_real_eigenvalue(gmas::restrict_to(j, s)) > 1e-6);
    CHECK(gmas::is_complex_balanced(net, w.rates.k, w.x_star).balanced);
  }
  CHECK(failing == 1);
}

TEST_CASE("ssystem_bad: the flipped kinetic order destabilizes one pair") {
  const auto net = bundled("ssystem", "ssystem_bad.gcrn");
  const auto findings = gmas::analyze_weakly_reversible(net, fast_opts());
  REQUIRE(findings.size() == 2);
  int failing = 0;
  for (const auto& f : findings)
    if (f.verdict.status == Status::fails) {
      ++failing;
      REQUIRE(f.witness.has_value());
      CHECK(f.witness->verified);
      CHECK(f.witness->eigenvalue.real() > 1e-6);
    }
  CHECK(failing == 1);
}

TEST_CASE("full_report runs on every bundled network") {
  const auto opts = fast_opts();
  for (const auto& [family, files] : gmas::bundled_networks()) {
    for (const auto& [name, text] : files) {
      CAPTURE(name);
      const auto net = net_from(text);
      gmas::AnalysisReport rep;
      CHECK_NOTHROW(rep = gmas::full_report(net, opts));
      CHECK(rep.structure.species == net.num_species());
      CHECK(rep.structure.edges == net.num_edges());
      if (rep.structure.weakly_reversible) {
        CHECK(rep.uniqueness.has_value());
        CHECK(!rep.cycles.empty());
      }
    }
  }
}

TEST_CASE("full_report on the classical cycle includes the certificate") {
  const auto net = bundled("fourcycle", "fourcycle_a0_b0_g0.gcrn");
  const auto rep = gmas::full_report(net, fast_opts());
  CHECK(rep.network_class == NetworkClass::classical);
  REQUIRE(rep.classical.has_value());
  CHECK(rep.classical->definiteness == gmas::Definiteness::negative_definite);
  REQUIRE(rep.global.has_value());
  CHECK(rep.global->d_stable.status == Status::holds);
  CHECK(rep.structure.cycle_count == 1);
  CHECK(rep.structure.dim_s == 3);
}

TEST_CASE("full_report skips uniqueness off the weakly reversible class") {
  const auto net = net_from(
      "species: X\nvertex a: stoich = X, kinetic = 2 X\n"
      "vertex b: stoich = 0\nedge a -> b\n");
  const auto rep = gmas::full_report(net, fast_opts());
  CHECK(rep.network_class == NetworkClass::general);
  CHECK_FALSE(rep.uniqueness.has_value());
  CHECK(rep.uniqueness_skipped_reason ==
        "uniqueness analysis applies to weakly reversible networks");
}
