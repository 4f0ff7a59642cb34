#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sgd/certify.hpp"
#include "sgd/formula.hpp"
#include "sgd/graph.hpp"

namespace sgd {

class ReductionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Source problem of a reduction.
///   mtds:         minimum total dominating set -> signed total k-domination
///   mds:          minimum dominating set       -> signed k-domination
///   one_in_three: 1-in-3 SAT                   -> upper signed k-domination
enum class ReductionKind { mtds, mds, one_in_three };

inline std::string_view to_string(ReductionKind r) {
  switch (r) {
    case ReductionKind::mtds: return "mtds";
    case ReductionKind::mds: return "mds";
    case ReductionKind::one_in_three: return "1in3";
  }
  return "?";
}

/// Where a vertex of the reduced graph came from. Source vertices and block
/// numbers are 1-based, local positions inside a block are 0-based.
struct Provenance {
  enum class Kind { original, clique_block, clause_block, variable_block };
  Kind kind = Kind::original;
  int a = 0;
  int b = 0;
  int c = 0;

  std::string label() const {
    std::ostringstream out;
    switch (kind) {
      case Kind::original: out << "original(" << a << ")"; break;
      case Kind::clique_block: out << "clique_block(" << a << "," << b << "," << c << ")"; break;
      case Kind::clause_block: out << "clause_block(" << a << "," << b << ")"; break;
      case Kind::variable_block: out << "variable_block(" << a << "," << b << ")"; break;
    }
    return out.str();
  }

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct ReductionArtifact {
  ReductionKind kind = ReductionKind::mtds;
  int k = 1;
  Graph graph;
  std::vector<Provenance> provenance;  // one per vertex of graph

  // Set reductions: vertices 0..source_order-1 of graph are the copies v' of
  // the source vertices, and a source threshold r maps to
  // threshold_a * r + threshold_b with threshold_b = T - |V(G)|.
  std::optional<Graph> source_graph;
  long long T = 0;
  long long threshold_a = 0;
  long long threshold_b = 0;

  // SAT reduction: target Gamma value (k+1)n + (k+2)m and gadget vertices.
  std::optional<ThreeSatFormula> formula;
  long long threshold_value = 0;
  std::vector<Vertex> clause_vertex;   // c'_i, index i-1
  std::vector<Vertex> x_prime;         // x'_j, index j-1
  std::vector<Vertex> x_double_prime;  // x''_j, index j-1

  Mode mode() const { return kind == ReductionKind::mtds ? Mode::total : Mode::closed; }

  long long map_threshold(long long r) const { return threshold_a * r + threshold_b; }
};

namespace detail {

// Copy of G, then for each source vertex v, blocks(v) disjoint K_size each
// joined to v' through the block's local vertex 0.
template <typename BlockCount>
ReductionArtifact attach_clique_blocks(const Graph& g, int k, int clique_size, BlockCount blocks, ReductionKind kind) {
  if (k < 1) throw ReductionError("k must be positive");
  for (Vertex v = 0; v < g.order(); ++v)
    if (g.degree(v) == 0) throw ReductionError("source graph has isolated vertex " + std::to_string(v + 1));

  ReductionArtifact art;
  art.kind = kind;
  art.k = k;
  auto edges = g.edges();
  for (Vertex v = 0; v < g.order(); ++v) art.provenance.push_back({Provenance::Kind::original, v + 1, 0, 0});
  Vertex next = g.order();
  for (Vertex v = 0; v < g.order(); ++v) {
    const int count = blocks(g.degree(v));
    for (int i = 1; i <= count; ++i) {
      for (int x = 0; x < clique_size; ++x) {
        art.provenance.push_back({Provenance::Kind::clique_block, v + 1, i, x});
        for (int y = x + 1; y < clique_size; ++y) edges.emplace_back(next + x, next + y);
      }
      edges.emplace_back(v, next);
      next += clique_size;
    }
  }
  art.graph = Graph::from_edges(next, edges);
  art.source_graph = g;
  art.T = next - g.order();
  art.threshold_a = 2;
  art.threshold_b = art.T - g.order();
  return art;
}

}  // namespace detail

/// Total domination -> signed total k-domination: d(v)+k-2 copies of K_{k+2}
/// hang off every v'.
inline ReductionArtifact reduce_mtds(const Graph& g, int k) {
  auto art = detail::attach_clique_blocks(
      g, k, k + 2, [k](int d) { return d + k - 2; }, ReductionKind::mtds);
  for (Vertex v = 0; v < g.order(); ++v)
    if (art.graph.degree(v) != 2 * g.degree(v) + k - 2) throw std::logic_error("copy vertex degree mismatch");
  return art;
}

/// Domination -> signed k-domination: d(v)+k-1 copies of K_{k+1} hang off every v'.
inline ReductionArtifact reduce_mds(const Graph& g, int k) {
  return detail::attach_clique_blocks(
      g, k, k + 1, [k](int d) { return d + k - 1; }, ReductionKind::mds);
}

/// 1-in-3 SAT -> upper signed k-domination. Clause blocks K_{k+2} come first
/// (c'_i is local vertex 0), then variable blocks K_{k+3} minus the edge
/// between local vertices 0 (x'_j) and 1 (x''_j). Each clause joins c'_i to
/// the x' of its three variables.
inline ReductionArtifact reduce_1in3(const ThreeSatFormula& f, int k) {
  if (k < 1) throw ReductionError("k must be positive");
  ReductionArtifact art;
  art.kind = ReductionKind::one_in_three;
  art.k = k;
  const int n = f.num_vars();
  const int m = f.num_clauses();
  std::vector<Edge> edges;
  Vertex next = 0;
  for (int i = 1; i <= m; ++i) {
    art.clause_vertex.push_back(next);
    for (int x = 0; x < k + 2; ++x) {
      art.provenance.push_back({Provenance::Kind::clause_block, i, x, 0});
      for (int y = x + 1; y < k + 2; ++y) edges.emplace_back(next + x, next + y);
    }
    next += k + 2;
  }
  for (int j = 1; j <= n; ++j) {
    art.x_prime.push_back(next);
    art.x_double_prime.push_back(next + 1);
    for (int x = 0; x < k + 3; ++x) {
      art.provenance.push_back({Provenance::Kind::variable_block, j, x, 0});
      for (int y = x + 1; y < k + 3; ++y)
        if (!(x == 0 && y == 1)) edges.emplace_back(next + x, next + y);
    }
    next += k + 3;
  }
  for (int i = 0; i < m; ++i)
    for (int x : f.clauses()[i]) edges.emplace_back(art.clause_vertex[i], art.x_prime[x - 1]);

  art.graph = Graph::from_edges(next, edges);
  if (art.graph.order() != static_cast<long long>(k + 3) * n + static_cast<long long>(k + 2) * m)
    throw std::logic_error("gadget order mismatch");
  art.formula = f;
  art.threshold_value = static_cast<long long>(k + 1) * n + static_cast<long long>(k + 2) * m;
  return art;
}

// ---------------------------------------------------------------------------
// Solution transforms
// ---------------------------------------------------------------------------

namespace detail {

inline bool dominates(const Graph& g, const std::vector<Vertex>& S, bool total) {
  std::vector<bool> covered(static_cast<std::size_t>(g.order()), false);
  for (Vertex s : S) {
    if (!total) covered[s] = true;
    for (Vertex u : g.neighbors(s)) covered[u] = true;
  }
  for (bool c : covered)
    if (!c) return false;
  return true;
}

inline std::vector<Vertex> normalized_set(const Graph& g, std::vector<Vertex> S) {
  std::sort(S.begin(), S.end());
  S.erase(std::unique(S.begin(), S.end()), S.end());
  for (Vertex v : S)
    if (v < 0 || v >= g.order()) throw ReductionError("source vertex out of range");
  return S;
}

}  // namespace detail

/// Dominating set (mds) or total dominating set (mtds) of the source graph ->
/// certificate that is -1 exactly on the copies of vertices outside S.
/// Its weight is 2|S| - |V(G)| + T.
inline SignFunction lift_dominating_set(const ReductionArtifact& art, std::vector<Vertex> S) {
  if (art.kind == ReductionKind::one_in_three) throw ReductionError("lift_dominating_set needs a set reduction");
  const Graph& g = *art.source_graph;
  S = detail::normalized_set(g, std::move(S));
  if (!detail::dominates(g, S, art.kind == ReductionKind::mtds))
    throw ReductionError(art.kind == ReductionKind::mtds ? "not a total dominating set" : "not a dominating set");
  std::vector<int> vals(static_cast<std::size_t>(art.graph.order()), 1);
  for (Vertex v = 0; v < g.order(); ++v) vals[v] = -1;
  for (Vertex v : S) vals[v] = 1;
  return SignFunction(std::move(vals));
}

/// 1-in-3 witness -> minimal signed k-dominating function of weight
/// (k+1)n + (k+2)m: f(x'_j) follows x_j, f(x''_j) its negation, +1 elsewhere.
inline SignFunction lift_assignment(const ReductionArtifact& art, const std::vector<bool>& assignment) {
  if (art.kind != ReductionKind::one_in_three) throw ReductionError("lift_assignment needs the SAT reduction");
  if (!art.formula->satisfied_one_in_three(assignment)) throw ReductionError("assignment is not a 1-in-3 witness");
  std::vector<int> vals(static_cast<std::size_t>(art.graph.order()), 1);
  for (std::size_t j = 0; j < assignment.size(); ++j) {
    vals[art.x_prime[j]] = assignment[j] ? 1 : -1;
    vals[art.x_double_prime[j]] = assignment[j] ? -1 : 1;
  }
  return SignFunction(std::move(vals));
}

/// Feasible certificate -> S = {v : f(v') = +1}, a (total) dominating set of
/// the source with |S| = (w(f) + |V(G)| - T) / 2.
inline std::vector<Vertex> project_to_set(const ReductionArtifact& art, const SignFunction& f) {
  if (art.kind == ReductionKind::one_in_three) throw ReductionError("project_to_set needs a set reduction");
  if (!verify(art.graph, art.k, art.mode(), f).feasible) throw ReductionError("certificate is not feasible");
  const Graph& g = *art.source_graph;
  std::vector<Vertex> S;
  for (Vertex v = 0; v < g.order(); ++v)
    if (f[v] == 1) S.push_back(v);
  if (!detail::dominates(g, S, art.kind == ReductionKind::mtds)) throw std::logic_error("projected set does not dominate");
  if (2 * static_cast<long long>(S.size()) != f.weight() + g.order() - art.T)
    throw std::logic_error("projected set size disagrees with certificate weight");
  return S;
}

/// Minimal certificate of weight >= (k+1)n + (k+2)m -> 1-in-3 witness with
/// x_j = TRUE iff f(x'_j) = +1.
inline std::vector<bool> project_to_assignment(const ReductionArtifact& art, const SignFunction& f) {
  if (art.kind != ReductionKind::one_in_three) throw ReductionError("project_to_assignment needs the SAT reduction");
  if (!verify(art.graph, art.k, Mode::closed, f).feasible) throw ReductionError("certificate is not feasible");
  if (!is_minimal_skdf(art.graph, art.k, f).minimal) throw ReductionError("certificate is not minimal");
  if (f.weight() < art.threshold_value) throw ReductionError("certificate weight is below the threshold");
  std::vector<bool> a(art.x_prime.size());
  for (std::size_t j = 0; j < a.size(); ++j) a[j] = f[art.x_prime[j]] == 1;
  if (!art.formula->satisfied_one_in_three(a)) throw std::logic_error("projected assignment is not a 1-in-3 witness");
  return a;
}

/// One line per vertex: "<id> <label>", ids 1-based.
inline std::string emit_provenance(const ReductionArtifact& art) {
  std::ostringstream out;
  for (std::size_t v = 0; v < art.provenance.size(); ++v) out << v + 1 << ' ' << art.provenance[v].label() << '\n';
  return out.str();
}

}  // namespace sgd
