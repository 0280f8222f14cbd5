#include <Eigen/Dense>
#include <cmath>

#include "doctest.h"
#include "gmas/errors.hpp"
#include "gmas/sign_vectors.hpp"
#include "gmas/subspace.hpp"

namespace {

gmas::Subspace line(double a, double b) {
  Eigen::MatrixXd basis(2, 1);
  basis << a, b;
  basis /= basis.norm();
  return gmas::make_subspace(basis);
}

gmas::SignVector sv(int a, int b) {
  gmas::SignVector s(2);
  s << a, b;
  return s;
}

}  // namespace

TEST_CASE("sign_pattern applies the zero band") {
  Eigen::VectorXd v(4);
  v << 0.5, -0.2, 0.0, 1e-12;
  gmas::SignVector banded = gmas::sign_pattern(v, 1e-9);
  CHECK(banded(0) == 1);
  CHECK(banded(1) == -1);
  CHECK(banded(2) == 0);
  CHECK(banded(3) == 0);
  // With zero tolerance every nonzero entry keeps its sign.
  CHECK(gmas::sign_pattern(v)(3) == 1);
}

TEST_CASE("realize_sign_vector on a line") {
  const auto s = line(-1, 1);
  const auto hit = gmas::realize_sign_vector(s, sv(1, -1));
  REQUIRE(hit.has_value());
  CHECK((*hit)(0) > 0);
  CHECK((*hit)(1) < 0);
  // The result lies in the line spanned by (-1, 1).
  CHECK(std::abs((*hit)(0) + (*hit)(1)) < 1e-9);
  CHECK_FALSE(gmas::realize_sign_vector(s, sv(1, 1)).has_value());
  CHECK_FALSE(gmas::realize_sign_vector(s, sv(0, 1)).has_value());
  CHECK_FALSE(gmas::realize_sign_vector(s, sv(1, 0)).has_value());
}

TEST_CASE("realize_sign_vector pins zero entries") {
  const auto s = line(1, 0);
  const auto hit = gmas::realize_sign_vector(s, sv(1, 0));
  REQUIRE(hit.has_value());
  CHECK((*hit)(0) > 1e-9);
  CHECK(std::abs((*hit)(1)) <= 1e-7);
}

TEST_CASE("realize_sign_vector rejects degenerate requests") {
  const auto s = line(1, 1);
  CHECK_FALSE(gmas::realize_sign_vector(s, sv(0, 0)).has_value());
  CHECK_THROWS_AS(gmas::realize_sign_vector(s, sv(2, 0)), gmas::PreconditionError);
  gmas::SignVector wrong(3);
  wrong << 1, 0, 0;
  CHECK_THROWS_AS(gmas::realize_sign_vector(s, wrong), gmas::DimensionError);
  // The trivial subspace realizes nothing.
  gmas::Subspace trivial;
  trivial.ambient = 2;
  trivial.basis = Eigen::MatrixXd::Zero(2, 0);
  CHECK_FALSE(gmas::realize_sign_vector(trivial, sv(1, 0)).has_value());
}

TEST_CASE("realizability does not depend on the basis") {
  // The full plane through two different orthonormal bases.
  Eigen::MatrixXd r(2, 2);
  const double t = 1.1;
  r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  const auto s1 = gmas::full_space(2);
  const auto s2 = gmas::make_subspace(r);
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b) {
      const bool r1 = gmas::realize_sign_vector(s1, sv(a, b)).has_value();
      const bool r2 = gmas::realize_sign_vector(s2, sv(a, b)).has_value();
      CHECK(r1 == r2);
    }
}

TEST_CASE("sign_vectors_intersect finds a common pattern") {
  const auto s1 = line(1, 1);
  const auto s2 = line(1, 2);
  const auto w = gmas::sign_vectors_intersect(s1, s2);
  REQUIRE(w.has_value());
  CHECK(w->sigma(0) == 1);
  CHECK(w->sigma(1) == 1);
  CHECK(w->u(0) > 0);
  CHECK(w->u(1) > 0);
  CHECK(std::abs(w->u(0) - w->u(1)) < 1e-9);       // u in span{(1,1)}
  CHECK(std::abs(w->v(1) - 2.0 * w->v(0)) < 1e-9); // v in span{(1,2)}
  // Symmetry of the predicate.
  CHECK(gmas::sign_vectors_intersect(s2, s1).has_value());
}

TEST_CASE("sign_vectors_intersect reports disjoint cones") {
  const auto s1 = line(1, 1);
  const auto s2 = line(1, -2);
  CHECK_FALSE(gmas::sign_vectors_intersect(s1, s2).has_value());
  CHECK_FALSE(gmas::sign_vectors_intersect(s2, s1).has_value());
}

TEST_CASE("sign_vectors_intersect enforces the ambient cap") {
  const auto big = gmas::full_space(13);
  CHECK_THROWS_AS(gmas::sign_vectors_intersect(big, big), gmas::DimensionError);
  const auto ok = gmas::full_space(3);
  CHECK(gmas::sign_vectors_intersect(ok, ok).has_value());
}
