#include "gmas/network.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <utility>

#include "gmas/errors.hpp"

namespace gmas {

bool GmasNetwork::is_source(int v) const {
  for (const Edge& e : edges)
    if (e.from == v) return true;
  return false;
}

void validate(const GmasNetwork& net) {
  const int n = net.num_species();
  const int m = net.num_vertices();
  if (m == 0) throw ValidationError("network has no vertices");
  if (!net.vertex_names.empty() &&
      static_cast<int>(net.vertex_names.size()) != m)
    throw ValidationError("vertex_names size does not match vertex count");

  std::set<std::string> seen_species(net.species.begin(), net.species.end());
  if (static_cast<int>(seen_species.size()) != n)
    throw ValidationError("duplicate species name");

  for (int i = 0; i < m; ++i) {
    const ComplexPair& c = net.vertices[i];
    if (c.stoich.size() != n)
      throw ValidationError("stoichiometric complex dimension mismatch at vertex " +
                            std::to_string(i + 1));
    if ((c.stoich.array() < 0.0).any())
      throw ValidationError("negative stoichiometric coefficient at vertex " +
                            std::to_string(i + 1));
    if (c.kinetic && c.kinetic->size() != n)
      throw ValidationError("kinetic complex dimension mismatch at vertex " +
                            std::to_string(i + 1));
  }

  std::set<std::pair<int, int>> seen_edges;
  for (const Edge& e : net.edges) {
    if (e.from < 0 || e.from >= m || e.to < 0 || e.to >= m)
      throw ValidationError("edge endpoint out of range");
    if (e.from == e.to) throw ValidationError("self-loop edge");
    if (!seen_edges.insert({e.from, e.to}).second)
      throw ValidationError("duplicate edge");
  }
  for (int i = 0; i < m; ++i)
    if (net.is_source(i) && !net.vertices[i].kinetic)
      throw ValidationError("source vertex without kinetic complex: vertex " +
                            std::to_string(i + 1));
}

StructuralMatrices structural_matrices(const GmasNetwork& net) {
  const int n = net.num_species();
  const int m = net.num_vertices();
  const int ne = net.num_edges();
  StructuralMatrices sm;
  sm.y = Eigen::MatrixXd::Zero(n, m);
  sm.ytilde = Eigen::MatrixXd::Zero(n, m);
  for (int i = 0; i < m; ++i) {
    sm.y.col(i) = net.vertices[i].stoich;
    if (net.is_source(i)) sm.ytilde.col(i) = *net.vertices[i].kinetic;
  }
  sm.incidence = Eigen::MatrixXd::Zero(m, ne);
  sm.source = Eigen::MatrixXd::Zero(m, ne);
  for (int e = 0; e < ne; ++e) {
    sm.incidence(net.edges[e].from, e) = -1.0;
    sm.incidence(net.edges[e].to, e) = 1.0;
    sm.source(net.edges[e].from, e) = 1.0;
  }
  return sm;
}

Eigen::MatrixXd laplacian(const GmasNetwork& net, const Eigen::VectorXd& k) {
  const int m = net.num_vertices();
  if (k.size() != net.num_edges())
    throw DimensionError("rate vector length does not match edge count");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
  for (int e = 0; e < net.num_edges(); ++e) {
    const Edge& ed = net.edges[e];
    a(ed.to, ed.from) += k[e];
    a(ed.from, ed.from) -= k[e];
  }
  return a;
}

namespace {

// Iterative Tarjan over the adjacency list.
std::vector<int> tarjan_scc(int m, const std::vector<std::vector<int>>& adj) {
  std::vector<int> index(m, -1), lowlink(m, 0), comp(m, -1);
  std::vector<bool> on_stack(m, false);
  std::vector<int> stack;
  int next_index = 0, comp_count = 0;

  struct Frame {
    int v;
    size_t child;
  };
  for (int start = 0; start < m; ++start) {
    if (index[start] != -1) continue;
    std::vector<Frame> frames{{start, 0}};
    index[start] = lowlink[start] = next_index++;
    stack.push_back(start);
    on_stack[start] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.child < adj[f.v].size()) {
        int w = adj[f.v][f.child++];
        if (index[w] == -1) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[f.v] = std::min(lowlink[f.v], index[w]);
        }
      } else {
        if (lowlink[f.v] == index[f.v]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = comp_count;
            if (w == f.v) break;
          }
          ++comp_count;
        }
        int v = f.v;
        frames.pop_back();
        if (!frames.empty())
          lowlink[frames.back().v] = std::min(lowlink[frames.back().v], lowlink[v]);
      }
    }
  }
  return comp;
}

std::vector<std::vector<int>> adjacency(const GmasNetwork& net) {
  std::vector<std::vector<int>> adj(net.num_vertices());
  for (const Edge& e : net.edges) adj[e.from].push_back(e.to);
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

}  // namespace

std::vector<int> strongly_connected_components(const GmasNetwork& net) {
  return tarjan_scc(net.num_vertices(), adjacency(net));
}

std::vector<int> connected_components(const GmasNetwork& net) {
  const int m = net.num_vertices();
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const Edge& e : net.edges) parent[find(e.from)] = find(e.to);
  std::vector<int> comp(m, -1);
  int count = 0;
  for (int v = 0; v < m; ++v) {
    int r = find(v);
    if (comp[r] == -1) comp[r] = count++;
    comp[v] = comp[r];
  }
  return comp;
}

bool weakly_reversible(const GmasNetwork& net) {
  std::vector<int> scc = strongly_connected_components(net);
  for (const Edge& e : net.edges)
    if (scc[e.from] != scc[e.to]) return false;
  return true;
}

namespace {

// Johnson-style enumeration of directed simple cycles. Each cycle is found
// with its smallest vertex first, so the canonical rotation is automatic.
class CycleEnumerator {
 public:
  CycleEnumerator(int m, std::vector<std::vector<int>> adj, long long cap)
      : m_(m), adj_(std::move(adj)), cap_(cap) {}

  std::vector<std::vector<int>> run() {
    for (int s = 0; s < m_; ++s) {
      start_ = s;
      // Restrict to the strongly connected component of s within the
      // subgraph induced on vertices >= s.
      std::vector<std::vector<int>> sub(m_);
      for (int v = s; v < m_; ++v)
        for (int w : adj_[v])
          if (w >= s) sub[v].push_back(w);
      std::vector<int> comp = tarjan_scc(m_, sub);
      scc_adj_.assign(m_, {});
      for (int v = s; v < m_; ++v)
        for (int w : sub[v])
          if (comp[v] == comp[start_] && comp[w] == comp[start_])
            scc_adj_[v].push_back(w);
      if (scc_adj_[start_].empty()) continue;
      blocked_.assign(m_, false);
      blocked_by_.assign(m_, {});
      circuit(start_);
    }
    std::sort(cycles_.begin(), cycles_.end());
    return std::move(cycles_);
  }

 private:
  bool circuit(int v) {
    bool found = false;
    path_.push_back(v);
    blocked_[v] = true;
    for (int w : scc_adj_[v]) {
      if (w == start_) {
        record();
        found = true;
      } else if (!blocked_[w]) {
        if (circuit(w)) found = true;
      }
    }
    if (found) {
      unblock(v);
    } else {
      for (int w : scc_adj_[v]) blocked_by_[w].insert(v);
    }
    path_.pop_back();
    return found;
  }

  void unblock(int v) {
    blocked_[v] = false;
    std::set<int> deps;
    deps.swap(blocked_by_[v]);
    for (int w : deps)
      if (blocked_[w]) unblock(w);
  }

  void record() {
    if (static_cast<long long>(cycles_.size()) >= cap_)
      throw ResourceError("cycle enumeration cap exceeded");
    cycles_.push_back(path_);
  }

  int m_;
  std::vector<std::vector<int>> adj_;
  long long cap_;
  int start_ = 0;
  std::vector<std::vector<int>> scc_adj_;
  std::vector<bool> blocked_;
  std::vector<std::set<int>> blocked_by_;
  std::vector<int> path_;
  std::vector<std::vector<int>> cycles_;
};

}  // namespace

std::vector<Cycle> enumerate_cycles(const GmasNetwork& net, long long cap) {
  std::map<std::pair<int, int>, int> edge_index;
  for (int e = 0; e < net.num_edges(); ++e)
    edge_index[{net.edges[e].from, net.edges[e].to}] = e;

  CycleEnumerator enumerator(net.num_vertices(), adjacency(net), cap);
  std::vector<std::vector<int>> sequences = enumerator.run();

  std::vector<Cycle> cycles;
  cycles.reserve(sequences.size());
  for (auto& seq : sequences) {
    Cycle c;
    c.vertices = std::move(seq);
    const size_t len = c.vertices.size();
    c.edges.reserve(len);
    for (size_t j = 0; j < len; ++j) {
      int from = c.vertices[j];
      int to = c.vertices[(j + 1) % len];
      c.edges.push_back(edge_index.at({from, to}));
    }
    cycles.push_back(std::move(c));
  }
  return cycles;
}

}  // namespace gmas
