#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "sgd/bounds.hpp"
#include "sgd/certify.hpp"
#include "sgd/graph.hpp"

namespace sgd {

class ExtremalError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct BlockSizes {
  int a = 0;  // |A_i|, the +1 side of each block
  int b = 0;  // |B_i|, the -1 side
};

/// Block sizes of the extremal family for the given degrees.
///   closed: a = (d + k + 1 + I_d) / 2,  b = (D - k + 1 - I_D) / 2   (needs D >= d >= k+1)
///   total:  a = (d + k - I_d + 1) / 2,  b = (D - k + I_D - 1) / 2   (needs D >= d >= k+2)
inline BlockSizes extremal_params(int k, int delta, int Delta, Mode mode) {
  if (k < 1) throw ExtremalError("k must be positive");
  if (Delta < delta) throw ExtremalError("maximum degree below minimum degree");
  const int min_delta = mode == Mode::closed ? k + 1 : k + 2;
  if (delta < min_delta)
    throw ExtremalError(std::string(to_string(mode)) + " mode requires minimum degree >= " + std::to_string(min_delta));
  const int id = indicator(delta, k);
  const int iD = indicator(Delta, k);
  int a2, b2;
  if (mode == Mode::closed) {
    a2 = delta + k + 1 + id;
    b2 = Delta - k + 1 - iD;
  } else {
    a2 = delta + k - id + 1;
    b2 = Delta - k + iD - 1;
  }
  if (a2 % 2 != 0 || b2 % 2 != 0) throw std::logic_error("block sizes are not integral");
  BlockSizes s{a2 / 2, b2 / 2};
  if (s.a < 1 || s.a > delta || s.b < 1 || s.b > Delta) throw std::logic_error("block sizes out of range");
  return s;
}

struct ExtremalSpec {
  int k = 1;
  int delta = 0;
  int Delta = 0;
  int t = 0;  // number of blocks; even and > Delta
  Mode mode = Mode::closed;
};

struct ExtremalInstance {
  Graph graph;
  SignFunction certificate;  // +1 on P, -1 on Q
  BlockSizes sizes;
  std::vector<Vertex> P;
  std::vector<Vertex> Q;
  BoundValue bound;  // lower bound at (n, delta, Delta, k); equals the certificate weight
};

/// Smallest even t > Delta.
inline int smallest_admissible_t(int Delta) { return Delta % 2 == 0 ? Delta + 2 : Delta + 1; }

/// t disjoint copies of K_{a,b} (block i occupies a consecutive range, A side
/// first), then P = union of A sides made (Delta - b)-regular and Q = union of
/// B sides made (delta - a)-regular using the circle-method 1-factorization.
inline ExtremalInstance build_extremal(const ExtremalSpec& spec) {
  if (spec.t % 2 != 0) throw ExtremalError("t must be even");
  if (spec.t <= spec.Delta) throw ExtremalError("t must exceed the maximum degree");
  const BlockSizes s = extremal_params(spec.k, spec.delta, spec.Delta, spec.mode);

  const int block = s.a + s.b;
  const int n = spec.t * block;
  std::vector<Edge> edges;
  ExtremalInstance out;
  out.sizes = s;
  for (int i = 0; i < spec.t; ++i) {
    const int base = i * block;
    for (int x = 0; x < s.a; ++x) out.P.push_back(base + x);
    for (int y = 0; y < s.b; ++y) out.Q.push_back(base + s.a + y);
    for (int x = 0; x < s.a; ++x)
      for (int y = 0; y < s.b; ++y) edges.emplace_back(base + x, base + s.a + y);
  }
  Graph g = Graph::from_edges(n, edges);
  g = regularize_independent_set(g, out.P, spec.Delta - s.b);
  g = regularize_independent_set(g, out.Q, spec.delta - s.a);

  out.certificate = SignFunction::from_plus_set(n, out.P);
  out.bound = lower_bound(DegreeProfile{n, spec.delta, spec.Delta, spec.k}, spec.mode);
  out.graph = std::move(g);
  return out;
}

}  // namespace sgd
