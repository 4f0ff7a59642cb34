#pragma once

#include <stdexcept>
#include <string>

#include "sgd/certify.hpp"
#include "sgd/graph.hpp"
#include "sgd/rational.hpp"

namespace sgd {

class BoundError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Inputs of the degree-based lower bounds.
struct DegreeProfile {
  long long n = 0;
  long long delta = 0;  // minimum degree
  long long Delta = 0;  // maximum degree
  int k = 1;
};

inline DegreeProfile profile_of(const Graph& g, int k) {
  if (g.order() == 0) throw BoundError("degree profile of the empty graph is undefined");
  return {g.order(), g.min_degree(), g.max_degree(), k};
}

/// 1 iff x and k have the same parity.
constexpr int indicator(long long x, long long k) noexcept { return ((x - k) % 2 == 0) ? 1 : 0; }

/// Unreduced n * num / den, as the formula states it.
struct RawBound {
  long long num = 0;
  long long den = 1;
  BoundValue value() const { return {num, den}; }
};

namespace detail {

inline void check_profile(const DegreeProfile& p, Mode mode) {
  if (p.k < 1) throw BoundError("k must be positive");
  if (p.n < 1) throw BoundError("order must be positive");
  if (p.delta > p.Delta) throw BoundError("minimum degree exceeds maximum degree");
  if (p.Delta > p.n - 1) throw BoundError("maximum degree exceeds n-1");
  if (mode == Mode::closed && p.delta < p.k - 1) throw BoundError("closed mode requires minimum degree >= k-1");
  if (mode == Mode::total && p.delta < p.k) throw BoundError("total mode requires minimum degree >= k");
}

}  // namespace detail

/// The min/max-degree lower bound on the signed (total) k-domination number,
/// before reduction to lowest terms.
///
///   closed: n (d - D + 2k + I_d + I_D) / (d + D + 2 + I_d - I_D)
///   total:  n (d - D + 2k + 2 - I_d - I_D) / (d + D + I_D - I_d)
///
/// where d, D are the minimum and maximum degree and I_x = indicator(x, k).
inline RawBound lower_bound_raw(const DegreeProfile& p, Mode mode) {
  detail::check_profile(p, mode);
  const long long id = indicator(p.delta, p.k);
  const long long iD = indicator(p.Delta, p.k);
  long long num, den;
  if (mode == Mode::closed) {
    num = p.delta - p.Delta + 2LL * p.k + id + iD;
    den = p.delta + p.Delta + 2 + id - iD;
  } else {
    num = p.delta - p.Delta + 2LL * p.k + 2 - id - iD;
    den = p.delta + p.Delta + iD - id;
  }
  if (den <= 0) throw std::logic_error("non-positive bound denominator under valid preconditions");
  return {p.n * num, den};
}

inline BoundValue lower_bound(const DegreeProfile& p, Mode mode) { return lower_bound_raw(p, mode).value(); }

/// Smallest integer >= lower_bound with the parity of n. Every certificate
/// weight is congruent to n mod 2, so this is still a valid lower bound.
inline long long effective_bound(const DegreeProfile& p, Mode mode) {
  long long w = lower_bound(p, mode).ceil();
  if (((w - p.n) % 2 + 2) % 2 != 0) ++w;
  return w;
}

/// Nearly r-regular graphs (minimum degree r-1, maximum r):
///   closed: kn / (r + I_{r-1}),  total: kn / (r - I_{r-1}).
/// At r = k the total form evaluates to n, although no signed total
/// k-dominating function exists there.
inline BoundValue nearly_regular_bound(long long n, long long r, int k, Mode mode) {
  if (k < 1) throw BoundError("k must be positive");
  if (n < 1) throw BoundError("order must be positive");
  if (r < k) throw BoundError("nearly regular bound requires r >= k");
  const long long i = indicator(r - 1, k);
  const long long den = mode == Mode::closed ? r + i : r - i;
  return {static_cast<long long>(k) * n, den};
}

/// True iff the maximum degree is within the threshold that guarantees a
/// bound of at least c*n:
///   closed: D <= ((1-c) d + 2k - 2c) / (1+c)
///   total:  D <= ((1-c) d + 2k) / (1+c)
inline bool threshold_check(const DegreeProfile& p, const BoundValue& c, Mode mode) {
  if (!(c > BoundValue(-1)) || c > BoundValue(1)) throw BoundError("c must lie in (-1, 1]");
  detail::check_profile(p, mode);
  const BoundValue one(1);
  BoundValue rhs = (one - c) * BoundValue(p.delta) + BoundValue(2LL * p.k);
  if (mode == Mode::closed) rhs = rhs - BoundValue(2) * c;
  rhs = rhs / (one + c);
  return BoundValue(p.Delta) <= rhs;
}

struct NonnegResult {
  bool condition = false;  // Delta <= delta + 2k
  bool bounds_nonnegative = false;
};

/// When Delta <= delta + 2k both lower bounds are >= 0. bounds_nonnegative
/// is evaluated regardless of the condition.
inline NonnegResult nonneg_check(const DegreeProfile& p) {
  if (p.delta < p.k) throw BoundError("nonnegativity check requires minimum degree >= k");
  NonnegResult r;
  r.condition = p.Delta <= p.delta + 2LL * p.k;
  r.bounds_nonnegative = lower_bound(p, Mode::closed) >= BoundValue(0) && lower_bound(p, Mode::total) >= BoundValue(0);
  return r;
}

}  // namespace sgd
