#include "gmas/bundled_examples.hpp"

namespace gmas {

namespace {

const char* kPlanar3Cycle = R"(# Irreversible three-cycle over two species.
# Every kinetic complex differs from its stoichiometric complex, so the
# dynamics are genuinely power-law. dim S = 2 (full space).
species: X Y
vertex v1: stoich = 2 X, kinetic = X
vertex v2: stoich = 0.5 X + 1.5 Y, kinetic = Y
vertex v3: stoich = 0.5 X + 0.5 Y, kinetic = 0
edge v1 -> v2
edge v2 -> v3
edge v3 -> v1
)";

const char* kIvanova3Cycle = R"(# Irreversible three-cycle over three species with binomial dynamics.
# The stoichiometric subspace is the sum-zero plane, so dim S = 2 while
# dim S-tilde = 2 as well; total concentration is conserved.
species: X Y Z
vertex v1: stoich = 2 X + Y + Z, kinetic = X
vertex v2: stoich = X + 2 Y + Z, kinetic = Y
vertex v3: stoich = X + Y + 2 Z, kinetic = Z
edge v1 -> v2
edge v2 -> v3
edge v3 -> v1
)";

// Four-vertex cycle 0 -> X -> Y -> Z -> 0 with kinetic exponents
// (alpha, beta, gamma): alpha scales X at vertex vy, beta scales Y at
// vertex vz, gamma scales Z at vertex v0. The limit Jacobian at x* = 1,
// k = 1 is
//   [ -1       0      gamma ]
//   [ 1-alpha  -1     0     ]
//   [ alpha    1-beta -1    ].
const char* kFourCycleA0B0G0 = R"(# Four-vertex cycle with kinetic exponents (alpha, beta, gamma) = (0, 0, 0).
# Mass-action kinetics; the cycle matrix is diagonally stable.
species: X Y Z
vertex v0: stoich = 0
vertex vx: stoich = X
vertex vy: stoich = Y
vertex vz: stoich = Z
edge v0 -> vx
edge vx -> vy
edge vy -> vz
edge vz -> v0
)";

const char* kFourCycleA5B0Gm3 = R"(# Four-vertex cycle with kinetic exponents (alpha, beta, gamma) = (5, 0, -3).
# The cycle matrix is D-stable but not diagonally stable.
species: X Y Z
vertex v0: stoich = 0, kinetic = -3 Z
vertex vx: stoich = X
vertex vy: stoich = Y, kinetic = 5 X + Y
vertex vz: stoich = Z
edge v0 -> vx
edge vx -> vy
edge vy -> vz
edge vz -> v0
)";

const char* kFourCycleA3B4Gm4 = R"(# Four-vertex cycle with kinetic exponents (alpha, beta, gamma) = (3, 4, -4).
# The cycle matrix is stable and -A is a P0+ matrix, but A is not D-stable.
species: X Y Z
vertex v0: stoich = 0, kinetic = -4 Z
vertex vx: stoich = X
vertex vy: stoich = Y, kinetic = 3 X + Y
vertex vz: stoich = Z, kinetic = 4 Y + Z
edge v0 -> vx
edge vx -> vy
edge vy -> vz
edge vz -> v0
)";

const char* kFourCycleA2Bm2G1 = R"(# Four-vertex cycle with kinetic exponents (alpha, beta, gamma) = (2, -2, 1).
# The cycle matrix is stable but -A is not a P0+ matrix.
species: X Y Z
vertex v0: stoich = 0, kinetic = Z
vertex vx: stoich = X
vertex vy: stoich = Y, kinetic = 2 X + Y
vertex vz: stoich = Z, kinetic = -2 Y + Z
edge v0 -> vx
edge vx -> vy
edge vy -> vz
edge vz -> v0
)";

const char* kFourCycleA0Bm2Gm3 = R"(# Four-vertex cycle with kinetic exponents (alpha, beta, gamma) = (0, -2, -3).
# -A is a P0+ matrix, yet A is unstable: a complex eigenvalue pair crosses
# into the right half plane.
species: X Y Z
vertex v0: stoich = 0, kinetic = -3 Z
vertex vx: stoich = X
vertex vy: stoich = Y
vertex vz: stoich = Z, kinetic = -2 Y + Z
edge v0 -> vx
edge vx -> vy
edge vy -> vz
edge vz -> v0
)";

const char* kRevChain = R"(# Reversible chain of four vertices over two species. Each reversible pair
# contributes a rank-one cycle matrix -(dy)(dy~)^T on the line spanned by dy.
# Here every product dy_s * dy~_s is nonnegative, so each cycle matrix is
# D-semistable on its line.
species: X Y
vertex v1: stoich = 0
vertex v2: stoich = X, kinetic = 2 X
vertex v3: stoich = X + Y, kinetic = 2 X + 0.5 Y
vertex v4: stoich = 2 X + Y, kinetic = 3.5 X + 0.5 Y
edge v1 <-> v2
edge v2 <-> v3
edge v3 <-> v4
)";

const char* kRevChainBad = R"(# Reversible chain of four vertices over two species. The kinetic complex at
# v3 carries a negative Y exponent, so the middle pair has dy_s * dy~_s < 0
# for species Y and its cycle matrix is not D-semistable on its line: some
# choice of rate constants makes the equilibrium not linearly stable.
species: X Y
vertex v1: stoich = 0
vertex v2: stoich = X, kinetic = 2 X
vertex v3: stoich = X + Y, kinetic = 2 X + -0.5 Y
vertex v4: stoich = 2 X + Y, kinetic = 3.5 X + 0.5 Y
edge v1 <-> v2
edge v2 <-> v3
edge v3 <-> v4
)";

const char* kSSystem = R"(# Two independent reversible pairs 0 <-> Xi, one per species, with power-law
# production kinetics: the kinetic complex at each zero vertex is row i of the
# exponent matrix G, and at Xi it is row i of H (here H = I). Each pair is its
# own linkage class; the two zero vertices are distinct graph nodes sharing
# the same stoichiometric complex.
species: X Y
vertex z1: stoich = 0, kinetic = 0.5 X + 0.1 Y
vertex x1: stoich = X
vertex z2: stoich = 0, kinetic = 0.2 X + 0.3 Y
vertex x2: stoich = Y
edge z1 <-> x1
edge z2 <-> x2
)";

const char* kSSystemBad = R"(# Two independent reversible pairs 0 <-> Xi with power-law production
# kinetics. The X production exponent g11 = 1.5 exceeds the degradation
# exponent h11 = 1, so the first cycle matrix has a positive diagonal entry
# on its line: some choice of rate constants makes the equilibrium not
# linearly stable.
species: X Y
vertex z1: stoich = 0, kinetic = 1.5 X + 0.1 Y
vertex x1: stoich = X
vertex z2: stoich = 0, kinetic = 0.2 X + 0.3 Y
vertex x2: stoich = Y
edge z1 <-> x1
edge z2 <-> x2
)";

}  // namespace

const std::map<std::string, std::vector<std::pair<std::string, std::string>>>&
bundled_networks() {
  static const std::map<std::string, std::vector<std::pair<std::string, std::string>>>
      networks = {
          {"planar3cycle", {{"planar3cycle.gcrn", kPlanar3Cycle}}},
          {"ivanova3cycle", {{"ivanova3cycle.gcrn", kIvanova3Cycle}}},
          {"fourcycle",
           {{"fourcycle_a0_b0_g0.gcrn", kFourCycleA0B0G0},
            {"fourcycle_a5_b0_gm3.gcrn", kFourCycleA5B0Gm3},
            {"fourcycle_a3_b4_gm4.gcrn", kFourCycleA3B4Gm4},
            {"fourcycle_a2_bm2_g1.gcrn", kFourCycleA2Bm2G1},
            {"fourcycle_a0_bm2_gm3.gcrn", kFourCycleA0Bm2Gm3}}},
          {"revchain", {{"revchain.gcrn", kRevChain}, {"revchain_bad.gcrn", kRevChainBad}}},
          {"ssystem", {{"ssystem.gcrn", kSSystem}, {"ssystem_bad.gcrn", kSSystemBad}}},
      };
  return networks;
}

}  // namespace gmas
