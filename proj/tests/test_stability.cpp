#include <Eigen/Dense>
#include <optional>
#include <random>
#include <string>

#include "doctest.h"
#include "gmas/errors.hpp"
#include "gmas/stability.hpp"
#include "gmas/subspace.hpp"
#include "support.hpp"

using gmas::Method;
using gmas::Notion;
using gmas::StabilityOptions;
using gmas::Status;
using gmas::Subspace;
using gmas::Verdict;

namespace {

// The recurring 3x3 family: a cycle whose off-diagonal couplings are the
// three parameters. Its stability class changes with (alpha, beta, gamma).
Eigen::MatrixXd cycle_family(double alpha, double beta, double gamma) {
  Eigen::MatrixXd a(3, 3);
  a << -1, 0, gamma, 1 - alpha, -1, 0, alpha, 1 - beta, -1;
  return a;
}

StabilityOptions fast_opts() {
  StabilityOptions o;
  o.sample_count = 2000;
  o.sweep_count = 20;
  o.search_starts = 10;
  o.search_iterations = 150;
  return o;
}

bool has_clause(const Verdict& v, const std::string& needle) {
  for (const auto& c : v.clauses)
    if (c.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("cycle family (0,0,0): diagonally stable across the board") {
  const Eigen::MatrixXd a = cycle_family(0, 0, 0);
  const auto verdicts = gmas::notion_lattice_check(a);
  REQUIRE(verdicts.size() == 8);
  for (int i = 0; i < 8; ++i) {
    CHECK(verdicts[i].notion == static_cast<Notion>(i));
    CHECK(verdicts[i].status == Status::holds);
    CHECK(verdicts[i].certified);
  }
  CHECK(verdicts[4].method == Method::criterion_3x3);
  REQUIRE(verdicts[4].diagonal_certificate.has_value());
  // P = I is itself a certificate here.
  const Eigen::VectorXd p = *verdicts[4].diagonal_certificate;
  Eigen::MatrixXd h = p.asDiagonal() * a;
  h = h + h.transpose().eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues().maxCoeff() < 0);
}

TEST_CASE("cycle family (5,0,-3): D-stable but not diagonally stable") {
  const Eigen::MatrixXd a = cycle_family(5, 0, -3);
  const auto v = gmas::notion_lattice_check(a);
  CHECK(v[0].status == Status::holds);  // stable
  CHECK(v[2].status == Status::holds);  // D-stable
  CHECK(v[2].method == Method::criterion_3x3);
  CHECK(has_clause(v[2], "domination sum 36"));
  CHECK(v[3].status == Status::holds);  // D-semistable via the strict criterion
  CHECK(v[3].method == Method::criterion_3x3);
  CHECK(v[4].status == Status::fails);  // diagonally stable
  CHECK(v[4].certified);
  CHECK(has_clause(v[4], "no common y > 0"));
  CHECK(v[6].status == Status::fails);  // diagonally D-stable: same on full space
  // Semistable diagonal variants stay open: the strict criterion fails but
  // no destabilizing certificate exists either.
  CHECK(v[5].status == Status::inconclusive);
  CHECK_FALSE(v[5].certified);
}

TEST_CASE("cycle family (3,4,-4): stable yet not D-stable") {
  const Eigen::MatrixXd a = cycle_family(3, 4, -4);
  const auto v = gmas::notion_lattice_check(a);
  CHECK(v[0].status == Status::holds);
  CHECK(v[0].certified);
  CHECK(v[2].status == Status::fails);
  CHECK(v[2].method == Method::criterion_3x3);
  CHECK(has_clause(v[2], "domination inequality fails"));
  // The criterion failure is backed by an explicit destabilizing diagonal.
  REQUIRE(v[2].counterexample_d.has_value());
  const Eigen::VectorXd d = *v[2].counterexample_d;
  CHECK(d.minCoeff() > 0);
  CHECK(testsupport::restricted_top(a, d, std::nullopt) > 0);
  CHECK(v[3].status == Status::fails);
  CHECK(v[4].status == Status::fails);
}

TEST_CASE("cycle family (2,-2,1): a negative signed minor kills D-stability") {
  const Eigen::MatrixXd a = cycle_family(2, -2, 1);
  const auto v = gmas::notion_lattice_check(a);
  CHECK(v[0].status == Status::holds);
  CHECK(v[2].status == Status::fails);
  CHECK(has_clause(v[2], "signed principal minor on {1,3} = -1"));
  REQUIRE(v[2].counterexample_d.has_value());
  CHECK(testsupport::restricted_top(a, *v[2].counterexample_d, std::nullopt) > 0);
  CHECK(v[4].status == Status::fails);
}

TEST_CASE("cycle family (0,-2,-3): unstable, so every notion fails") {
  const Eigen::MatrixXd a = cycle_family(0, -2, -3);
  const auto v = gmas::notion_lattice_check(a);
  for (const auto& verdict : v) {
    CHECK(verdict.status == Status::fails);
    CHECK(verdict.certified);
  }
  REQUIRE(v[0].offending_eigenvalue.has_value());
  CHECK(v[0].offending_eigenvalue->real() == doctest::Approx(0.04004191152595121));
  CHECK(std::abs(v[0].offending_eigenvalue->imag()) == doctest::Approx(1.8014054327640037));
  // Identity is already a destabilizing diagonal for the semistable falsifier.
  REQUIRE(v[3].counterexample_d.has_value());
  CHECK((*v[3].counterexample_d - Eigen::VectorXd::Ones(3)).norm() == 0.0);
}

TEST_CASE("minus identity holds everything; zero matrix splits strict from semi") {
  const auto all = gmas::notion_lattice_check(-Eigen::MatrixXd::Identity(2, 2));
  for (const auto& verdict : all) {
    CHECK(verdict.status == Status::holds);
    CHECK(verdict.certified);
  }
  CHECK(all[2].method == Method::criterion_2x2);
  CHECK(all[3].method == Method::criterion_dim_s2);

  const auto zero = gmas::notion_lattice_check(Eigen::MatrixXd::Zero(2, 2));
  for (int i = 0; i < 8; i += 2) {
    CHECK(zero[i].status == Status::fails);      // strict notions
    CHECK(zero[i + 1].status == Status::holds);  // semistable notions
    CHECK(zero[i].certified);
    CHECK(zero[i + 1].certified);
  }
}

TEST_CASE("rotation generator is semistable for every diagonal scaling") {
  Eigen::MatrixXd rot(2, 2);
  rot << 0, -1, 1, 0;
  const auto v = gmas::notion_lattice_check(rot);
  CHECK(v[0].status == Status::fails);
  REQUIRE(v[0].offending_eigenvalue.has_value());
  CHECK(v[0].offending_eigenvalue->real() == doctest::Approx(0.0));
  CHECK(v[1].status == Status::holds);
  // D rot has purely imaginary spectrum for every positive diagonal D.
  CHECK(v[3].status == Status::holds);
  CHECK(v[5].status == Status::holds);
}

TEST_CASE("rank-one maps on their image line") {
  // A = -u v^T with u = (1,2); im A = span{u}, so the line criteria apply.
  const Eigen::Vector2d u(1, 2);
  Eigen::MatrixXd b = u / u.norm();
  const Subspace s = gmas::make_subspace(b);

  const Eigen::MatrixXd good = -u * Eigen::RowVector2d(3, 1);
  const auto vg = gmas::notion_lattice_check(good, s);
  CHECK(vg[0].status == Status::holds);
  CHECK(vg[2].status == Status::holds);
  CHECK(vg[2].method == Method::criterion_dim_s1);
  CHECK(vg[2].subspace_dim == 1);
  CHECK(vg[3].status == Status::holds);
  // On a proper subspace the sampled diagonal D sweep cannot certify holds.
  CHECK(vg[6].status == Status::inconclusive);
  CHECK(has_clause(vg[6], "101 of 101 sampled diagonals"));

  const Eigen::MatrixXd bad = -u * Eigen::RowVector2d(3, -1);
  const auto vb = gmas::notion_lattice_check(bad, s);
  CHECK(vb[0].status == Status::holds);  // A itself contracts the line
  CHECK(vb[2].status == Status::fails);
  CHECK(vb[2].method == Method::criterion_dim_s1);
  CHECK(has_clause(vb[2], "a_22 = 2 is positive"));
  REQUIRE(vb[2].counterexample_d.has_value());
  CHECK(testsupport::restricted_top(bad, *vb[2].counterexample_d, s) > 0);
  CHECK(vb[4].status == Status::holds);  // still diagonally stable on the line
  CHECK(vb[6].status == Status::fails);  // but not for every diagonal scaling
}

TEST_CASE("stability queries reject images leaving the subspace") {
  Eigen::MatrixXd indef = Eigen::Vector2d(-1, 1).asDiagonal();
  Eigen::MatrixXd e1(2, 1);
  e1 << 1, 0;
  const Subspace line = gmas::make_subspace(e1);
  CHECK_THROWS_AS(gmas::is_stable(indef, line), gmas::PreconditionError);
  CHECK_THROWS_AS(gmas::is_d_stable(indef, line), gmas::PreconditionError);
  CHECK_THROWS_AS(gmas::is_diagonally_semistable(indef, line), gmas::PreconditionError);
}

TEST_CASE("explicit diagonal certificate for an upper-triangular matrix") {
  Eigen::MatrixXd a(2, 2);
  a << -1, 4, 0, -1;
  const auto v = gmas::is_diagonally_stable(a);
  CHECK(v.status == Status::holds);
  CHECK(v.method == Method::criterion_2x2);
  REQUIRE(v.diagonal_certificate.has_value());
  const Eigen::VectorXd p = *v.diagonal_certificate;
  CHECK(p.minCoeff() > 0);
  Eigen::MatrixXd h = p.asDiagonal() * a;
  h = h + h.transpose().eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues().maxCoeff() < 0);
}

TEST_CASE("lyapunov_certificate solves the strict case and falls back to the projector") {
  Eigen::MatrixXd a(2, 2);
  a << -1, 4, 0, -1;
  const auto strict = gmas::lyapunov_certificate(a, std::nullopt, true);
  REQUIRE(strict.has_value());
  Eigen::MatrixXd h = *strict * a + a.transpose() * *strict;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues().maxCoeff() < 0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ps(*strict, Eigen::EigenvaluesOnly);
  CHECK(ps.eigenvalues().minCoeff() > 0);

  // Purely rotational flow: no strict certificate, but the projector works
  // for the semidefinite version.
  Eigen::MatrixXd rot(2, 2);
  rot << 0, -1, 1, 0;
  CHECK_FALSE(gmas::lyapunov_certificate(rot, std::nullopt, true).has_value());
  const auto weak = gmas::lyapunov_certificate(rot, std::nullopt, false);
  REQUIRE(weak.has_value());
  Eigen::MatrixXd hw = *weak * rot + rot.transpose() * *weak;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ew(hw, Eigen::EigenvaluesOnly);
  CHECK(ew.eigenvalues().maxCoeff() <= 1e-12);
}

TEST_CASE("sample_diagonal is deterministic with log-uniform range") {
  const Eigen::VectorXd d1 = gmas::sample_diagonal(4, 0x5EED, 17);
  const Eigen::VectorXd d2 = gmas::sample_diagonal(4, 0x5EED, 17);
  CHECK((d1 - d2).norm() == 0.0);
  CHECK((gmas::sample_diagonal(4, 0x5EED, 18) - d1).norm() != 0.0);
  for (int index = 0; index < 200; ++index) {
    const Eigen::VectorXd d = gmas::sample_diagonal(3, 7, static_cast<std::uint64_t>(index));
    CHECK(d.minCoeff() >= 1e-3);
    CHECK(d.maxCoeff() <= 1e3);
  }
}

TEST_CASE("find_destabilizing_diagonal certifies its output") {
  const Eigen::MatrixXd a = cycle_family(3, 4, -4);
  StabilityOptions opts;
  opts.sample_count = 5000;
  const auto d = gmas::find_destabilizing_diagonal(a, std::nullopt, opts);
  REQUIRE(d.has_value());
  CHECK(d->minCoeff() > 0);
  CHECK(testsupport::restricted_top(a, *d, std::nullopt) > 0);
  // A diagonally stable matrix admits no destabilizer.
  const auto none =
      gmas::find_destabilizing_diagonal(cycle_family(0, 0, 0), std::nullopt, fast_opts());
  CHECK_FALSE(none.has_value());
}

TEST_CASE("lattice consistency holds on random matrices") {
  std::mt19937_64 rng(314159);
  std::uniform_real_distribution<double> entry(-3.0, 3.0);
  const StabilityOptions opts = fast_opts();
  for (int trial = 0; trial < 120; ++trial) {
    Eigen::MatrixXd a(3, 3);
    for (int i = 0; i < 9; ++i) a(i / 3, i % 3) = entry(rng);
    // Full space plus a restriction with im A inside the span by build.
    CHECK_NOTHROW(gmas::notion_lattice_check(a, std::nullopt, opts));
    const int r = 1 + static_cast<int>(trial % 2);
    Eigen::MatrixXd g(3, r);
    for (int i = 0; i < 3 * r; ++i) g(i % 3, i / 3) = entry(rng);
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    const Eigen::MatrixXd b =
        qr.householderQ() * Eigen::MatrixXd::Identity(3, r);
    Eigen::MatrixXd m(r, r);
    for (int i = 0; i < r * r; ++i) m(i % r, i / r) = entry(rng);
    const Eigen::MatrixXd restricted = b * m * b.transpose();
    const Subspace s = gmas::make_subspace(b);
    CHECK_NOTHROW(gmas::notion_lattice_check(restricted, s, opts));
  }
}

TEST_CASE("lattice consistency beyond the exact criteria") {
  // 4x4 full space and 3-dimensional subspaces of R^4 have no closed-form
  // criterion, so these runs exercise the screens, the certificate search,
  // and the sampling falsifier together.
  std::mt19937_64 rng(271828);
  std::uniform_real_distribution<double> entry(-3.0, 3.0);
  StabilityOptions opts = fast_opts();
  opts.sample_count = 400;
  opts.sweep_count = 8;
  for (int trial = 0; trial < 40; ++trial) {
    Eigen::MatrixXd a(4, 4);
    for (int i = 0; i < 16; ++i) a(i / 4, i % 4) = entry(rng);
    // Shift odd trials toward stability so holds/inconclusive mixes occur.
    if (trial % 2) a -= 4.0 * Eigen::MatrixXd::Identity(4, 4);
    CHECK_NOTHROW(gmas::notion_lattice_check(a, std::nullopt, opts));

    Eigen::MatrixXd g(4, 3);
    for (int i = 0; i < 12; ++i) g(i % 4, i / 4) = entry(rng);
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    const Eigen::MatrixXd b = qr.householderQ() * Eigen::MatrixXd::Identity(4, 3);
    Eigen::MatrixXd m(3, 3);
    for (int i = 0; i < 9; ++i) m(i % 3, i / 3) = entry(rng);
    if (trial % 2) m -= 4.0 * Eigen::MatrixXd::Identity(3, 3);
    const Eigen::MatrixXd restricted = b * m * b.transpose();
    const Subspace s = gmas::make_subspace(b);
    CHECK_NOTHROW(gmas::notion_lattice_check(restricted, s, opts));
  }
}

TEST_CASE("matrices past the minor enumeration cap still get verdicts") {
  // The P-matrix and P0+ screens only run up to the enumeration cap;
  // beyond it the search and the falsifier must carry the lattice alone.
  const int n = gmas::kMinorEnumerationCap + 1;
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> entry(-0.3, 0.3);
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = i == j ? -6.0 : entry(rng);
  StabilityOptions opts = fast_opts();
  const auto v = gmas::notion_lattice_check(a, std::nullopt, opts);
  CHECK(v[0].status == Status::holds);
  CHECK(v[2].status == Status::inconclusive);
  CHECK(v[2].method == Method::sampling_falsifier);
  CHECK(v[4].status == Status::holds);
  CHECK(v[4].method == Method::lyapunov_search);
  REQUIRE(v[4].diagonal_certificate.has_value());
  CHECK(v[4].diagonal_certificate->size() == n);
}
