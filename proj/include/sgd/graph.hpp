#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sgd {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

/// Raised when a graph, certificate or formula file does not follow its format.
/// `line()` is 1-based; 0 means the error is not tied to a particular line.
class FormatError : public std::runtime_error {
 public:
  FormatError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Raised on violated preconditions of graph constructions.
class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Neighborhood { open, closed };

/// Immutable simple undirected graph on vertices 0..n-1.
///
/// Adjacency is kept as sorted neighbor vectors. Graphs of order <= 64 also
/// carry per-vertex bitmask rows (bit u set in row v iff u ~ v) so that the
/// enumeration solvers can evaluate neighborhood sums with a popcount.
class Graph {
 public:
  Graph() = default;

  /// Validates and builds. Throws GraphError on loops, duplicates or
  /// out-of-range endpoints.
  static Graph from_edges(int n, const std::vector<Edge>& edges) {
    if (n < 0) throw GraphError("negative vertex count");
    Graph g;
    g.adj_.assign(static_cast<std::size_t>(n), {});
    for (auto [u, v] : edges) {
      if (u < 0 || v < 0 || u >= n || v >= n) throw GraphError("edge endpoint out of range");
      if (u == v) throw GraphError("self-loop at vertex " + std::to_string(u));
      g.adj_[u].push_back(v);
      g.adj_[v].push_back(u);
    }
    for (auto& row : g.adj_) {
      std::sort(row.begin(), row.end());
      if (std::adjacent_find(row.begin(), row.end()) != row.end()) throw GraphError("duplicate edge");
    }
    g.m_ = static_cast<int>(edges.size());
    g.build_masks();
    return g;
  }

  int order() const noexcept { return static_cast<int>(adj_.size()); }
  int size() const noexcept { return m_; }

  const std::vector<Vertex>& neighbors(Vertex v) const {
    check(v);
    return adj_[v];
  }

  int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }

  bool adjacent(Vertex u, Vertex v) const {
    const auto& row = neighbors(u);
    check(v);
    return std::binary_search(row.begin(), row.end(), v);
  }

  /// Minimum degree; 0 on the empty graph.
  int min_degree() const noexcept {
    int d = adj_.empty() ? 0 : static_cast<int>(adj_.front().size());
    for (const auto& row : adj_) d = std::min(d, static_cast<int>(row.size()));
    return d;
  }

  int max_degree() const noexcept {
    int d = 0;
    for (const auto& row : adj_) d = std::max(d, static_cast<int>(row.size()));
    return d;
  }

  /// Edges with u < v, sorted lexicographically.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(static_cast<std::size_t>(m_));
    for (Vertex u = 0; u < order(); ++u)
      for (Vertex v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  /// A new graph with `extra` edges added. Throws if an edge already exists.
  Graph with_edges(const std::vector<Edge>& extra) const {
    auto all = edges();
    all.insert(all.end(), extra.begin(), extra.end());
    return from_edges(order(), all);
  }

  bool has_masks() const noexcept { return !mask_.empty() || adj_.empty(); }

  /// Bitmask of N(v); only valid when has_masks().
  std::uint64_t open_mask(Vertex v) const { return mask_.at(static_cast<std::size_t>(v)); }
  std::uint64_t closed_mask(Vertex v) const { return open_mask(v) | (std::uint64_t{1} << v); }

  friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

 private:
  void check(Vertex v) const {
    if (v < 0 || v >= order()) throw GraphError("vertex " + std::to_string(v) + " out of range");
  }

  void build_masks() {
    mask_.clear();
    if (order() > 64) return;
    mask_.assign(adj_.size(), 0);
    for (std::size_t v = 0; v < adj_.size(); ++v)
      for (Vertex u : adj_[v]) mask_[v] |= std::uint64_t{1} << u;
  }

  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::uint64_t> mask_;
  int m_ = 0;
};

inline std::vector<Vertex> neighborhood(const Graph& g, Vertex v, Neighborhood mode) {
  std::vector<Vertex> out = g.neighbors(v);
  if (mode == Neighborhood::closed) out.insert(std::upper_bound(out.begin(), out.end(), v), v);
  return out;
}

// ---------------------------------------------------------------------------
// Text format: "c" comments, one "p sgd <n> <m>" header, then m "e <u> <v>".
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> tok;
  for (std::string t; in >> t;) tok.push_back(std::move(t));
  return tok;
}

/// Strict non-negative decimal parse; returns -1 on garbage.
inline long long parse_count(const std::string& s) {
  if (s.empty() || s.size() > 18) return -1;
  long long v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return -1;
    v = v * 10 + (c - '0');
  }
  return v;
}

/// Strict signed decimal parse into `out`.
inline bool parse_int(const std::string& s, long long& out) {
  if (s.empty()) return false;
  bool neg = s[0] == '-';
  bool plus = s[0] == '+';
  long long v = parse_count((neg || plus) ? s.substr(1) : s);
  if (v < 0) return false;
  out = neg ? -v : v;
  return true;
}

inline bool is_comment_or_blank(const std::string& line) {
  auto first = line.find_first_not_of(" \t\r");
  if (first == std::string::npos) return true;
  return line[first] == 'c' && (first + 1 == line.size() || line[first + 1] == ' ' || line[first + 1] == '\t' ||
                                line[first + 1] == '\r');
}

}  // namespace detail

inline Graph parse_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  long long n = -1, m = -1;
  std::vector<Edge> edges;
  std::set<Edge> seen;
  std::size_t header_line = 0;

  while (std::getline(in, line)) {
    ++lineno;
    if (detail::is_comment_or_blank(line)) continue;
    auto tok = detail::split_ws(line);
    if (tok[0] == "p") {
      if (n >= 0) throw FormatError(lineno, "duplicate header");
      if (tok.size() != 4 || tok[1] != "sgd") throw FormatError(lineno, "malformed header, expected 'p sgd <n> <m>'");
      n = detail::parse_count(tok[2]);
      m = detail::parse_count(tok[3]);
      if (n < 0 || m < 0) throw FormatError(lineno, "malformed header counts");
      if (n > (1 << 24)) throw FormatError(lineno, "vertex count too large");
      header_line = lineno;
    } else if (tok[0] == "e") {
      if (n < 0) throw FormatError(lineno, "edge before header");
      if (tok.size() != 3) throw FormatError(lineno, "malformed edge line, expected 'e <u> <v>'");
      long long u = detail::parse_count(tok[1]);
      long long v = detail::parse_count(tok[2]);
      if (u < 1 || v < 1 || u > n || v > n) throw FormatError(lineno, "vertex index out of range [1.." + std::to_string(n) + "]");
      if (u == v) throw FormatError(lineno, "self-loop at vertex " + std::to_string(u));
      Edge e{static_cast<Vertex>(std::min(u, v) - 1), static_cast<Vertex>(std::max(u, v) - 1)};
      if (!seen.insert(e).second) throw FormatError(lineno, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
      edges.push_back(e);
    } else {
      throw FormatError(lineno, "unexpected line '" + line + "'");
    }
  }
  if (n < 0) throw FormatError(lineno, "missing header");
  if (static_cast<long long>(edges.size()) != m)
    throw FormatError(lineno == 0 ? header_line : lineno,
                      "header declares " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
  return Graph::from_edges(static_cast<int>(n), edges);
}

inline Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

/// Canonical emission: header, then edges with u < v in lexicographic order.
inline std::string emit_graph(const Graph& g) {
  std::ostringstream out;
  out << "p sgd " << g.order() << ' ' << g.size() << '\n';
  for (auto [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Basic constructions
// ---------------------------------------------------------------------------

inline Graph complete_graph(int n) {
  if (n < 0) throw GraphError("negative order");
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph::from_edges(n, e);
}

/// K_{a,b}: vertices 0..a-1 on one side, a..a+b-1 on the other.
inline Graph complete_bipartite(int a, int b) {
  if (a < 0 || b < 0) throw GraphError("negative side size");
  std::vector<Edge> e;
  for (Vertex u = 0; u < a; ++u)
    for (Vertex v = a; v < a + b; ++v) e.emplace_back(u, v);
  return Graph::from_edges(a + b, e);
}

inline Graph path_graph(int n) {
  if (n < 0) throw GraphError("negative order");
  std::vector<Edge> e;
  for (Vertex v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return Graph::from_edges(n, e);
}

inline Graph cycle_graph(int n) {
  if (n < 3) throw GraphError("cycle needs at least 3 vertices");
  std::vector<Edge> e;
  for (Vertex v = 0; v < n; ++v) e.emplace_back(v, (v + 1) % n);
  return Graph::from_edges(n, e);
}

/// g2's vertices are shifted by g1.order().
inline Graph disjoint_union(const Graph& g1, const Graph& g2) {
  auto e = g1.edges();
  const int off = g1.order();
  for (auto [u, v] : g2.edges()) e.emplace_back(u + off, v + off);
  return Graph::from_edges(g1.order() + g2.order(), e);
}

// ---------------------------------------------------------------------------
// 1-factorization
// ---------------------------------------------------------------------------

/// Set of vertex-disjoint pairs, each stored as (min, max), kept sorted.
class Matching {
 public:
  Matching() = default;

  explicit Matching(std::vector<Edge> pairs) : pairs_(std::move(pairs)) {
    std::set<Vertex> used;
    for (auto& [u, v] : pairs_) {
      if (u == v) throw GraphError("matching pair with equal endpoints");
      if (u > v) std::swap(u, v);
      if (!used.insert(u).second || !used.insert(v).second) throw GraphError("vertex used twice in matching");
    }
    std::sort(pairs_.begin(), pairs_.end());
  }

  const std::vector<Edge>& pairs() const noexcept { return pairs_; }
  std::size_t size() const noexcept { return pairs_.size(); }

  bool is_perfect_on(int n) const {
    if (2 * static_cast<long long>(pairs_.size()) != n) return false;
    for (auto [u, v] : pairs_)
      if (u < 0 || v >= n) return false;
    return true;
  }

  friend bool operator==(const Matching&, const Matching&) = default;

 private:
  std::vector<Edge> pairs_;
};

/// Circle method: vertex n-1 stays fixed, 0..n-2 rotate. Round r pairs r with
/// n-1 and (r+i, r-i) mod (n-1) for i = 1..n/2-1.
inline std::vector<Matching> one_factorization(int n) {
  if (n <= 0 || n % 2 != 0) throw GraphError("1-factorization needs a positive even order, got " + std::to_string(n));
  const int rot = n - 1;
  std::vector<Matching> out;
  out.reserve(static_cast<std::size_t>(rot));
  for (int r = 0; r < rot; ++r) {
    std::vector<Edge> pairs;
    pairs.emplace_back(r, n - 1);
    for (int i = 1; i < n / 2; ++i) pairs.emplace_back((r + i) % rot, ((r - i) % rot + rot) % rot);
    out.emplace_back(std::move(pairs));
  }
  return out;
}

/// Adds the first r factors of one_factorization(|S|), mapped onto S in
/// ascending order. S must be independent in g and of even size.
inline Graph regularize_independent_set(const Graph& g, std::vector<Vertex> S, int r) {
  std::sort(S.begin(), S.end());
  if (std::adjacent_find(S.begin(), S.end()) != S.end()) throw GraphError("vertex set has duplicates");
  for (Vertex v : S)
    if (v < 0 || v >= g.order()) throw GraphError("vertex set out of range");
  for (std::size_t i = 0; i < S.size(); ++i)
    for (std::size_t j = i + 1; j < S.size(); ++j)
      if (g.adjacent(S[i], S[j])) throw GraphError("vertex set is not independent");
  if (S.size() % 2 != 0) throw GraphError("vertex set has odd size");
  if (r < 0) throw GraphError("negative regularity");
  if (r == 0) return g;
  if (r > static_cast<int>(S.size()) - 1) throw GraphError("regularity exceeds |S|-1");

  auto factors = one_factorization(static_cast<int>(S.size()));
  std::vector<Edge> extra;
  for (int f = 0; f < r; ++f)
    for (auto [i, j] : factors[f].pairs()) extra.emplace_back(S[i], S[j]);
  return g.with_edges(extra);
}

}  // namespace sgd
