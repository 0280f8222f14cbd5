// Shared helpers for the test suites: deterministic random networks,
// finite-difference oracles, and brute-force stability oracles.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gmas/dynamics.hpp"
#include "gmas/network.hpp"
#include "gmas/numeric.hpp"
#include "gmas/subspace.hpp"

namespace testsupport {

inline gmas::GmasNetwork net_from(const std::string& text) {
  return gmas::parse_network(text).network;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Random connected-ish digraph with up to 5 species and 6 vertices. Stoich
// coefficients are nonnegative on a small grid; kinetic complexes are
// attached to every vertex with entries in [-2, 2].
inline gmas::GmasNetwork random_network(std::mt19937_64& rng) {
  gmas::GmasNetwork net;
  const int n = uniform_int(rng, 1, 5);
  const int m = uniform_int(rng, 2, 6);
  for (int i = 0; i < n; ++i) net.species.push_back("S" + std::to_string(i + 1));
  const double grid[4] = {0.0, 0.5, 1.0, 2.0};
  for (int i = 0; i < m; ++i) {
    gmas::ComplexPair cp;
    cp.stoich = Eigen::VectorXd::Zero(n);
    for (int s = 0; s < n; ++s) cp.stoich[s] = grid[uniform_int(rng, 0, 3)];
    Eigen::VectorXd kin(n);
    for (int s = 0; s < n; ++s) kin[s] = uniform(rng, -2.0, 2.0);
    cp.kinetic = kin;
    net.vertices.push_back(cp);
    net.vertex_names.push_back("v" + std::to_string(i + 1));
  }
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (a != b) pairs.push_back({a, b});
  std::shuffle(pairs.begin(), pairs.end(), rng);
  const int want = uniform_int(rng, 1, std::min<int>(8, static_cast<int>(pairs.size())));
  for (int e = 0; e < want; ++e) net.edges.push_back({pairs[e].first, pairs[e].second});
  return net;
}

// Weakly reversible by construction: vertices are split into groups of at
// least two, each group carries one directed cycle, and some cycle edges
// gain their reverse (which stays inside the strongly connected component).
inline gmas::GmasNetwork random_wr_network(std::mt19937_64& rng) {
  gmas::GmasNetwork net;
  const int n = uniform_int(rng, 1, 5);
  const int m = uniform_int(rng, 2, 6);
  for (int i = 0; i < n; ++i) net.species.push_back("S" + std::to_string(i + 1));
  const double grid[4] = {0.0, 0.5, 1.0, 2.0};
  for (int i = 0; i < m; ++i) {
    gmas::ComplexPair cp;
    cp.stoich = Eigen::VectorXd::Zero(n);
    for (int s = 0; s < n; ++s) cp.stoich[s] = grid[uniform_int(rng, 0, 3)];
    Eigen::VectorXd kin(n);
    for (int s = 0; s < n; ++s) kin[s] = uniform(rng, -2.0, 2.0);
    cp.kinetic = kin;
    net.vertices.push_back(cp);
    net.vertex_names.push_back("v" + std::to_string(i + 1));
  }
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  int split = (m >= 4 && uniform_int(rng, 0, 1)) ? uniform_int(rng, 2, m - 2) : m;
  auto add_cycle = [&](int lo, int hi) {
    const int len = hi - lo;
    if (len < 2) return;
    for (int i = 0; i < len; ++i)
      net.edges.push_back({order[lo + i], order[lo + (i + 1) % len]});
    if (len >= 2 && uniform_int(rng, 0, 1)) {
      // Reverse one cycle edge; for a 2-cycle this is already present.
      if (len > 2) net.edges.push_back({order[lo + 1], order[lo]});
    }
  };
  add_cycle(0, split);
  add_cycle(split, m);
  return net;
}

inline Eigen::VectorXd random_positive(std::mt19937_64& rng, int n, double lo, double hi) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i)
    v[i] = std::exp(uniform(rng, std::log(lo), std::log(hi)));
  return v;
}

// Central finite differences of the right-hand side.
inline Eigen::MatrixXd fd_jacobian(const gmas::GmasNetwork& net, const Eigen::VectorXd& k,
                                   const Eigen::VectorXd& x, double rel_h = 1e-6) {
  const int n = net.num_species();
  Eigen::MatrixXd j(n, n);
  for (int c = 0; c < n; ++c) {
    const double h = rel_h * x[c];
    Eigen::VectorXd xp = x, xm = x;
    xp[c] += h;
    xm[c] -= h;
    j.col(c) = (gmas::rhs(net, k, xp) - gmas::rhs(net, k, xm)) / (2.0 * h);
  }
  return j;
}

// Largest real part of the spectrum of A diag(d) restricted to S (or the
// full space when S has full dimension).
inline double restricted_top(const Eigen::MatrixXd& a, const Eigen::VectorXd& d,
                             const std::optional<gmas::Subspace>& s) {
  Eigen::MatrixXd ad = a * d.asDiagonal();
  if (s && s->dim() < a.rows()) ad = s->basis.transpose() * ad * s->basis;
  return gmas::max_real_eigenvalue(ad);
}

// Sampling oracle: searches for a positive diagonal destabilizing A on S.
// Returns the first certified destabilizer, if any.
inline std::optional<Eigen::VectorXd> oracle_destabilizing_d(
    const Eigen::MatrixXd& a, const std::optional<gmas::Subspace>& s, int trials,
    std::mt19937_64& rng, double margin) {
  const int n = static_cast<int>(a.rows());
  for (int t = 0; t < trials; ++t) {
    Eigen::VectorXd d = t == 0 ? Eigen::VectorXd::Ones(n) : random_positive(rng, n, 1e-3, 1e3);
    if (restricted_top(a, d, s) > margin) return d;
  }
  return std::nullopt;
}

// Grid oracle for diagonal Lyapunov certificates: scans diag(1, p2, ...) on
// a log grid and reports a P that makes P A + A^T P negative definite.
inline std::optional<Eigen::VectorXd> grid_diag_certificate(const Eigen::MatrixXd& a,
                                                            int points_per_axis) {
  const int n = static_cast<int>(a.rows());
  const double lo = std::log(1e-3), hi = std::log(1e3);
  std::vector<int> idx(static_cast<size_t>(n - 1), 0);
  auto value = [&](int i) {
    return std::exp(lo + (hi - lo) * i / std::max(1, points_per_axis - 1));
  };
  while (true) {
    Eigen::VectorXd p(n);
    p[0] = 1.0;
    for (int i = 1; i < n; ++i) p[i] = value(idx[static_cast<size_t>(i - 1)]);
    Eigen::MatrixXd h = p.asDiagonal() * a;
    h = h + h.transpose().eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().maxCoeff() < -1e-9 * h.norm()) return p;
    int axis = 0;
    while (axis < n - 1) {
      if (++idx[static_cast<size_t>(axis)] < points_per_axis) break;
      idx[static_cast<size_t>(axis)] = 0;
      ++axis;
    }
    if (axis == n - 1) return std::nullopt;
  }
}

}  // namespace testsupport
