#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace gmas {

// A vertex label: the stoichiometric complex y(i) (componentwise >= 0) and,
// for source vertices, the kinetic-order complex ytilde(i) (arbitrary reals).
struct ComplexPair {
  Eigen::VectorXd stoich;
  std::optional<Eigen::VectorXd> kinetic;
};

struct Edge {
  int from = -1;
  int to = -1;
};

// A generalized chemical reaction network: a simple digraph whose vertices
// carry complex pairs. Edges are reactions; rate constants are supplied
// separately so one network can be analyzed across all positive rates.
struct GmasNetwork {
  std::vector<std::string> species;
  std::vector<std::string> vertex_names;
  std::vector<ComplexPair> vertices;
  std::vector<Edge> edges;

  int num_species() const { return static_cast<int>(species.size()); }
  int num_vertices() const { return static_cast<int>(vertices.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }
  bool is_source(int v) const;
};

// Positive rate constants, one per edge, in edge order.
struct RateAssignment {
  Eigen::VectorXd k;
};

// Throws ValidationError if the network violates a structural invariant:
// no vertices, dimension mismatches, negative stoichiometric entries,
// self-loops, duplicate edges, or a source vertex without a kinetic complex.
void validate(const GmasNetwork& net);

struct ParsedNetwork {
  GmasNetwork network;
  // Present when every edge in the file carries a rate annotation.
  std::optional<RateAssignment> rates;
};

// Parses the text network format. Lines are `species: ...`,
// `vertex NAME: stoich = COMPLEX [, kinetic = COMPLEX]`, and
// `edge A -> B [: k = V]` (or `A <-> B [: k = VF, VB]`).  `#` starts a
// comment, a bare `0` denotes the empty complex, and omitted coefficients
// default to 1. Throws ParseError / ValidationError.
ParsedNetwork parse_network(const std::string& text);

// Canonical text form; parse_network(serialize_network(net)) reproduces the
// network exactly.
std::string serialize_network(const GmasNetwork& net,
                              const std::optional<RateAssignment>& rates = std::nullopt);

struct StructuralMatrices {
  Eigen::MatrixXd y;         // n x m, stoichiometric complexes as columns
  Eigen::MatrixXd ytilde;    // n x m, kinetic complexes (zero at non-sources)
  Eigen::MatrixXd incidence; // m x |E|, -1 at source, +1 at target
  Eigen::MatrixXd source;    // m x |E|, +1 at source
};

StructuralMatrices structural_matrices(const GmasNetwork& net);

// Graph Laplacian A_k = incidence * diag(k) * source^T (column sums zero).
Eigen::MatrixXd laplacian(const GmasNetwork& net, const Eigen::VectorXd& k);

// True iff every connected component of the digraph is strongly connected
// (equivalently, every edge stays inside one strongly connected component).
bool weakly_reversible(const GmasNetwork& net);

// Strongly connected component ids, one per vertex.
std::vector<int> strongly_connected_components(const GmasNetwork& net);

// Connected components of the underlying undirected graph.
std::vector<int> connected_components(const GmasNetwork& net);

// A directed simple cycle in canonical form: rotated so the smallest vertex
// index comes first; edges[j] goes vertices[j] -> vertices[(j+1) % L].
struct Cycle {
  std::vector<int> vertices;
  std::vector<int> edges;
};

// All directed simple cycles, sorted lexicographically by vertex sequence.
// Throws ResourceError when the count exceeds `cap`.
std::vector<Cycle> enumerate_cycles(const GmasNetwork& net, long long cap = 1000000);

}  // namespace gmas
