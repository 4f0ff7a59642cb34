#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sgd/graph.hpp"

namespace sgd {

/// Which neighborhood a constraint sums over: closed N[v] for signed
/// k-domination, open N(v) for signed total k-domination.
enum class Mode { closed, total };

inline std::string_view to_string(Mode m) { return m == Mode::closed ? "closed" : "total"; }

inline std::optional<Mode> parse_mode(std::string_view s) {
  if (s == "closed") return Mode::closed;
  if (s == "total") return Mode::total;
  return std::nullopt;
}

inline Neighborhood neighborhood_of(Mode m) { return m == Mode::closed ? Neighborhood::closed : Neighborhood::open; }

/// Raised when a certificate does not fit the graph it is checked against, or
/// when an operation's precondition on the certificate fails.
class CertificateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Total assignment V -> {-1, +1}.
class SignFunction {
 public:
  SignFunction() = default;

  explicit SignFunction(std::vector<int> values) {
    values_.reserve(values.size());
    for (int x : values) {
      if (x != 1 && x != -1) throw CertificateError("sign function value must be -1 or +1");
      values_.push_back(static_cast<std::int8_t>(x));
      weight_ += x;
    }
  }

  static SignFunction all_plus(int n) { return SignFunction(std::vector<int>(static_cast<std::size_t>(n), 1)); }

  /// +1 exactly on `plus`.
  static SignFunction from_plus_set(int n, const std::vector<Vertex>& plus) {
    std::vector<int> v(static_cast<std::size_t>(n), -1);
    for (Vertex x : plus) v.at(static_cast<std::size_t>(x)) = 1;
    return SignFunction(std::move(v));
  }

  int size() const noexcept { return static_cast<int>(values_.size()); }
  int operator[](Vertex v) const { return values_.at(static_cast<std::size_t>(v)); }
  long long weight() const noexcept { return weight_; }

  SignFunction flipped(Vertex v) const {
    SignFunction out = *this;
    auto& x = out.values_.at(static_cast<std::size_t>(v));
    out.weight_ -= 2 * x;
    x = static_cast<std::int8_t>(-x);
    return out;
  }

  std::vector<int> values() const { return {values_.begin(), values_.end()}; }

  friend bool operator==(const SignFunction& a, const SignFunction& b) { return a.values_ == b.values_; }

 private:
  std::vector<std::int8_t> values_;
  long long weight_ = 0;
};

struct VerifyReport {
  bool feasible = true;
  std::vector<long long> per_vertex_sum;
  std::vector<Vertex> violations;  // ascending
  long long min_slack = 0;         // 0 on the empty graph
};

inline long long neighborhood_sum(const Graph& g, Mode mode, const SignFunction& f, Vertex v) {
  long long s = mode == Mode::closed ? f[v] : 0;
  for (Vertex u : g.neighbors(v)) s += f[u];
  return s;
}

/// Evaluates f(N[v]) (closed) or f(N(v)) (total) at every vertex against k.
/// Never rejects on degree preconditions; an unsatisfiable instance simply
/// reports violations.
inline VerifyReport verify(const Graph& g, int k, Mode mode, const SignFunction& f) {
  if (f.size() != g.order())
    throw CertificateError("certificate has " + std::to_string(f.size()) + " values, graph has " +
                           std::to_string(g.order()) + " vertices");
  if (k < 1) throw CertificateError("k must be positive");
  VerifyReport r;
  r.per_vertex_sum.resize(static_cast<std::size_t>(g.order()));
  for (Vertex v = 0; v < g.order(); ++v) {
    long long s = neighborhood_sum(g, mode, f, v);
    r.per_vertex_sum[v] = s;
    long long slack = s - k;
    if (v == 0 || slack < r.min_slack) r.min_slack = slack;
    if (slack < 0) r.violations.push_back(v);
  }
  r.feasible = r.violations.empty();
  return r;
}

struct MinimalityReport {
  bool minimal = true;
  /// For each +1 vertex with a witness: a u in N[v] with f(N[u]) in {k, k+1}.
  std::map<Vertex, Vertex> witness;
  /// Smallest +1 vertex without a witness, when not minimal.
  std::optional<Vertex> offending;
};

/// Single-flip minimality test for a feasible signed k-dominating function:
/// f is minimal iff every +1 vertex has some u in N[v] with f(N[u]) in {k, k+1}.
inline MinimalityReport is_minimal_skdf(const Graph& g, int k, const SignFunction& f) {
  auto rep = verify(g, k, Mode::closed, f);
  if (!rep.feasible) throw CertificateError("minimality is defined only for feasible signed k-dominating functions");
  auto tight = [&](Vertex u) { return rep.per_vertex_sum[u] == k || rep.per_vertex_sum[u] == k + 1; };

  MinimalityReport out;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (f[v] != 1) continue;
    std::optional<Vertex> w;
    for (Vertex u : neighborhood(g, v, Neighborhood::closed))
      if (tight(u)) {
        w = u;
        break;
      }
    if (w) {
      out.witness.emplace(v, *w);
    } else if (out.minimal) {
      out.minimal = false;
      out.offending = v;
    }
  }
  return out;
}

/// Vertices that are +1 in every feasible certificate of the mode.
/// closed: vertices of degree k-1 or k. total: every neighbor of a vertex of
/// degree k or k+1.
inline std::vector<Vertex> forced_plus_vertices(const Graph& g, int k, Mode mode) {
  std::vector<bool> forced(static_cast<std::size_t>(g.order()), false);
  for (Vertex v = 0; v < g.order(); ++v) {
    int d = g.degree(v);
    if (mode == Mode::closed) {
      if (d == k - 1 || d == k) forced[v] = true;
    } else if (d == k || d == k + 1) {
      for (Vertex u : g.neighbors(v)) forced[u] = true;
    }
  }
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.order(); ++v)
    if (forced[v]) out.push_back(v);
  return out;
}

// ---------------------------------------------------------------------------
// Certificate file: "s sgd-cert <n> <k> <mode>" then n lines "v <i> <+1|-1>".
// ---------------------------------------------------------------------------

struct Certificate {
  int k = 1;
  Mode mode = Mode::closed;
  SignFunction f;
};

inline Certificate parse_certificate(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  long long n = -1, k = 0;
  Mode mode = Mode::closed;
  std::vector<int> values;
  std::size_t assigned = 0;

  while (std::getline(in, line)) {
    ++lineno;
    if (detail::is_comment_or_blank(line)) continue;
    auto tok = detail::split_ws(line);
    if (tok[0] == "s") {
      if (n >= 0) throw FormatError(lineno, "duplicate header");
      if (tok.size() != 5 || tok[1] != "sgd-cert")
        throw FormatError(lineno, "malformed header, expected 's sgd-cert <n> <k> <mode>'");
      n = detail::parse_count(tok[2]);
      k = detail::parse_count(tok[3]);
      auto m = parse_mode(tok[4]);
      if (n < 0 || k < 1) throw FormatError(lineno, "malformed header counts");
      if (!m) throw FormatError(lineno, "mode must be 'closed' or 'total'");
      if (n > (1 << 24)) throw FormatError(lineno, "vertex count too large");
      mode = *m;
      values.assign(static_cast<std::size_t>(n), 0);
    } else if (tok[0] == "v") {
      if (n < 0) throw FormatError(lineno, "value before header");
      if (tok.size() != 3) throw FormatError(lineno, "malformed value line, expected 'v <i> <+1|-1>'");
      long long i = detail::parse_count(tok[1]);
      if (i < 1 || i > n) throw FormatError(lineno, "vertex index out of range [1.." + std::to_string(n) + "]");
      int x;
      if (tok[2] == "+1" || tok[2] == "1")
        x = 1;
      else if (tok[2] == "-1")
        x = -1;
      else
        throw FormatError(lineno, "value must be +1 or -1");
      if (values[i - 1] != 0) throw FormatError(lineno, "vertex " + std::to_string(i) + " assigned twice");
      values[i - 1] = x;
      ++assigned;
    } else {
      throw FormatError(lineno, "unexpected line '" + line + "'");
    }
  }
  if (n < 0) throw FormatError(lineno, "missing header");
  if (assigned != static_cast<std::size_t>(n))
    throw FormatError(lineno, "expected " + std::to_string(n) + " values, found " + std::to_string(assigned));
  return Certificate{static_cast<int>(k), mode, SignFunction(std::move(values))};
}

inline Certificate parse_certificate(const std::string& text) {
  std::istringstream in(text);
  return parse_certificate(in);
}

inline std::string emit_certificate(const Certificate& c) {
  std::ostringstream out;
  out << "s sgd-cert " << c.f.size() << ' ' << c.k << ' ' << to_string(c.mode) << '\n';
  for (Vertex v = 0; v < c.f.size(); ++v) out << "v " << v + 1 << ' ' << (c.f[v] > 0 ? "+1" : "-1") << '\n';
  return out.str();
}

}  // namespace sgd
