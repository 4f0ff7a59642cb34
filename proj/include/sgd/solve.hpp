#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "sgd/bounds.hpp"
#include "sgd/certify.hpp"
#include "sgd/formula.hpp"
#include "sgd/graph.hpp"

namespace sgd {

/// Resource caps. Defaults are overridden by SGD_MAX_BRUTE_N,
/// SGD_NODE_BUDGET and SGD_THREADS (see from_env).
struct SolverConfig {
  int max_brute_n = 24;
  long long node_budget = 100'000'000;
  int threads = 1;
  int max_subset_n = 20;
  int max_sat_vars = 30;

  static SolverConfig from_env() {
    SolverConfig c;
    auto read = [](const char* name, long long fallback) {
      const char* s = std::getenv(name);
      if (s == nullptr) return fallback;
      long long v = detail::parse_count(s);
      return v > 0 ? v : fallback;
    };
    c.max_brute_n = static_cast<int>(read("SGD_MAX_BRUTE_N", c.max_brute_n));
    c.node_budget = read("SGD_NODE_BUDGET", c.node_budget);
    c.threads = static_cast<int>(read("SGD_THREADS", c.threads));
    return c;
  }
};

/// Raised when an enumeration-only routine is handed an instance above its cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SolveStatus { optimal, infeasible, cap_exceeded };

inline std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::cap_exceeded: return "cap_exceeded";
  }
  return "?";
}

struct SolveResult {
  SolveStatus status = SolveStatus::infeasible;
  /// Optimal value; for cap_exceeded from branch and bound, the best incumbent.
  std::optional<long long> value;
  std::optional<SignFunction> certificate;
  long long nodes_explored = 0;
};

namespace detail {

// Enumeration over all 2^n sign functions. Index bit (n-1-v) set means f(v) = +1,
// so ascending index order is lexicographic order over (f(0), ..., f(n-1))
// with -1 < +1.
struct Enumerator {
  int n = 0;
  int k = 1;
  std::vector<std::uint64_t> member;  // constraint sets in index-bit space
  std::vector<int> set_size;
  std::vector<std::uint64_t> closed;  // closed neighborhoods, for minimality
  std::vector<int> check_order;       // constraints tried first by ascending set size

  Enumerator(const Graph& g, int k_, Mode mode) : n(g.order()), k(k_) {
    auto bit = [&](Vertex v) { return std::uint64_t{1} << (n - 1 - v); };
    member.resize(static_cast<std::size_t>(n));
    closed.resize(static_cast<std::size_t>(n));
    set_size.resize(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) {
      std::uint64_t open = 0;
      for (Vertex u : g.neighbors(v)) open |= bit(u);
      closed[v] = open | bit(v);
      member[v] = mode == Mode::closed ? closed[v] : open;
      set_size[v] = std::popcount(member[v]);
      check_order.push_back(v);
    }
    std::stable_sort(check_order.begin(), check_order.end(),
                     [&](int a, int b) { return set_size[a] < set_size[b]; });
  }

  int sum(std::uint64_t plus, Vertex v) const { return 2 * std::popcount(plus & member[v]) - set_size[v]; }

  bool feasible(std::uint64_t plus) const {
    for (int v : check_order)
      if (sum(plus, v) < k) return false;
    return true;
  }

  // Assumes feasible(plus) and closed mode.
  bool minimal(std::uint64_t plus) const {
    std::uint64_t tight = 0;
    for (Vertex v = 0; v < n; ++v) {
      int s = sum(plus, v);
      if (s == k || s == k + 1) tight |= std::uint64_t{1} << (n - 1 - v);
    }
    for (Vertex v = 0; v < n; ++v) {
      std::uint64_t b = std::uint64_t{1} << (n - 1 - v);
      if ((plus & b) && !(closed[v] & tight)) return false;
    }
    return true;
  }

  SignFunction decode(std::uint64_t plus) const {
    std::vector<int> vals(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) vals[v] = (plus >> (n - 1 - v)) & 1 ? 1 : -1;
    return SignFunction(std::move(vals));
  }
};

struct RangeBest {
  bool found = false;
  long long weight = 0;
  std::uint64_t index = 0;
};

// Splits [0, 2^n) into contiguous chunks; each worker keeps its first best, and
// the merge prefers the better weight, then the smaller index. The result is
// independent of the number of workers.
template <typename Scan>
RangeBest parallel_scan(int n, int threads, bool maximize, Scan scan) {
  const std::uint64_t total = std::uint64_t{1} << n;
  std::uint64_t workers = static_cast<std::uint64_t>(std::max(1, threads));
  if (total < 4096) workers = 1;
  std::vector<RangeBest> parts(workers);
  auto run = [&](std::uint64_t w) {
    std::uint64_t lo = total / workers * w;
    std::uint64_t hi = (w + 1 == workers) ? total : total / workers * (w + 1);
    parts[w] = scan(lo, hi);
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (std::uint64_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  RangeBest best;
  for (const auto& p : parts) {
    if (!p.found) continue;
    bool better = !best.found || (maximize ? p.weight > best.weight : p.weight < best.weight) ||
                  (p.weight == best.weight && p.index < best.index);
    if (better) best = p;
  }
  return best;
}

inline bool degree_admissible(const Graph& g, int k, Mode mode) {
  if (g.order() == 0) return true;
  return mode == Mode::closed ? g.min_degree() >= k - 1 : g.min_degree() >= k;
}

constexpr int kEnumerationHardLimit = 62;

}  // namespace detail

/// Minimum-weight feasible sign function by exhaustive enumeration. The
/// certificate is the lexicographically first optimum (-1 < +1, vertex 0 first).
inline SolveResult brute_force_sigma(const Graph& g, int k, Mode mode, const SolverConfig& cfg = {}) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  SolveResult res;
  const int n = g.order();
  if (n > cfg.max_brute_n || n > detail::kEnumerationHardLimit) {
    res.status = SolveStatus::cap_exceeded;
    return res;
  }
  detail::Enumerator en(g, k, mode);
  auto best = detail::parallel_scan(n, cfg.threads, false, [&](std::uint64_t lo, std::uint64_t hi) {
    detail::RangeBest b;
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      long long w = 2LL * std::popcount(idx) - n;
      if (b.found && w >= b.weight) continue;
      if (en.feasible(idx)) b = {true, w, idx};
    }
    return b;
  });
  res.nodes_explored = static_cast<long long>(std::uint64_t{1} << n);
  if (!best.found) return res;
  res.status = SolveStatus::optimal;
  res.value = best.weight;
  res.certificate = en.decode(best.index);
  return res;
}

/// Maximum weight over minimal signed k-dominating functions (closed mode),
/// by filtered enumeration.
inline SolveResult brute_force_upper(const Graph& g, int k, const SolverConfig& cfg = {}) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  SolveResult res;
  const int n = g.order();
  if (n > cfg.max_brute_n || n > detail::kEnumerationHardLimit) {
    res.status = SolveStatus::cap_exceeded;
    return res;
  }
  detail::Enumerator en(g, k, Mode::closed);
  auto best = detail::parallel_scan(n, cfg.threads, true, [&](std::uint64_t lo, std::uint64_t hi) {
    detail::RangeBest b;
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      long long w = 2LL * std::popcount(idx) - n;
      if (b.found && w <= b.weight) continue;
      if (en.feasible(idx) && en.minimal(idx)) b = {true, w, idx};
    }
    return b;
  });
  res.nodes_explored = static_cast<long long>(std::uint64_t{1} << n);
  if (!best.found) return res;
  res.status = SolveStatus::optimal;
  res.value = best.weight;
  res.certificate = en.decode(best.index);
  return res;
}

namespace detail {

// Depth-first branch and bound over partial sign assignments.
//
// Each vertex u owns one constraint over its member set (N[u] or N(u)). For
// every constraint we track the sum of decided members and the number of
// undecided ones; sum + undecided is the largest value still reachable. The
// effective threshold is k, raised to k+1 when the member-set size and k
// differ in parity (the sum always has the parity of the set size).
class BranchAndBound {
 public:
  BranchAndBound(const Graph& g, int k, Mode mode, long long budget)
      : n_(g.order()), budget_(budget) {
    members_.resize(static_cast<std::size_t>(n_));
    for (Vertex v = 0; v < n_; ++v) members_[v] = neighborhood(g, v, neighborhood_of(mode));
    thr_.resize(static_cast<std::size_t>(n_));
    sum_.assign(static_cast<std::size_t>(n_), 0);
    undecided_.resize(static_cast<std::size_t>(n_));
    total_threshold_ = 0;
    for (Vertex v = 0; v < n_; ++v) {
      int size = static_cast<int>(members_[v].size());
      thr_[v] = k + ((size - k) % 2 != 0 ? 1 : 0);
      undecided_[v] = size;
      total_threshold_ += thr_[v];
    }
    val_.assign(static_cast<std::size_t>(n_), 0);
    // Each vertex's coefficient in sum_u f(members(u)) is |members(v)| by symmetry.
    by_coefficient_.resize(static_cast<std::size_t>(n_));
    for (Vertex v = 0; v < n_; ++v) by_coefficient_[v] = v;
    std::stable_sort(by_coefficient_.begin(), by_coefficient_.end(),
                     [&](Vertex a, Vertex b) { return members_[a].size() > members_[b].size(); });
    branch_order_.resize(static_cast<std::size_t>(n_));
    for (Vertex v = 0; v < n_; ++v) branch_order_[v] = v;
    std::stable_sort(branch_order_.begin(), branch_order_.end(),
                     [&](Vertex a, Vertex b) { return g.degree(a) < g.degree(b); });
    remaining_ = n_;
  }

  SolveResult run(const std::vector<Vertex>& seed, long long floor_bound) {
    SolveResult res;
    floor_bound_ = floor_bound;
    for (Vertex v = 0; v < n_; ++v)
      if (thr_[v] > static_cast<int>(members_[v].size())) {
        res.status = SolveStatus::infeasible;
        return res;
      }
    incumbent_weight_ = n_;
    incumbent_ = std::vector<int>(static_cast<std::size_t>(n_), 1);

    bool ok = true;
    for (Vertex v : seed)
      if (val_[v] == 0 && !assign(v, 1)) ok = false;
    if (ok) ok = propagate();
    if (ok) search();

    res.nodes_explored = nodes_;
    res.value = incumbent_weight_;
    res.certificate = SignFunction(incumbent_);
    res.status = aborted_ ? SolveStatus::cap_exceeded : SolveStatus::optimal;
    return res;
  }

 private:
  // Returns false on a violated constraint. Undone by unassign in LIFO order.
  bool assign(Vertex v, int s) {
    val_[v] = s;
    trail_.push_back(v);
    weight_ += s;
    --remaining_;
    coeff_sum_ += s * static_cast<long long>(members_[v].size());
    bool ok = true;
    for (Vertex u : members_[v]) {
      sum_[u] += s;
      --undecided_[u];
      if (s < 0) {
        int reach = sum_[u] + undecided_[u];
        if (reach < thr_[u]) ok = false;
        else if (reach - 2 < thr_[u] && undecided_[u] > 0) queue_.push_back(u);
      }
    }
    return ok;
  }

  void unassign_to(std::size_t mark) {
    while (trail_.size() > mark) {
      Vertex v = trail_.back();
      trail_.pop_back();
      int s = val_[v];
      for (Vertex u : members_[v]) {
        sum_[u] -= s;
        ++undecided_[u];
      }
      weight_ -= s;
      ++remaining_;
      coeff_sum_ -= s * static_cast<long long>(members_[v].size());
      val_[v] = 0;
    }
  }

  // A constraint with no room for another -1 forces its undecided members to +1.
  bool propagate() {
    while (!queue_.empty()) {
      Vertex u = queue_.back();
      queue_.pop_back();
      if (sum_[u] + undecided_[u] - 2 >= thr_[u]) continue;
      for (Vertex w : members_[u])
        if (val_[w] == 0 && !assign(w, 1)) {
          queue_.clear();
          return false;
        }
    }
    return true;
  }

  // Summing every constraint gives sum_v |members(v)| f(v) >= sum_u thr(u).
  // Starting the undecided vertices at -1, the fewest flips to +1 that reach
  // the right-hand side take the largest coefficients first.
  long long optimistic_weight() const {
    long long need = total_threshold_ - coeff_sum_;
    long long lb = weight_ - remaining_;
    for (Vertex v : by_coefficient_) {
      if (val_[v] != 0) continue;
      need += static_cast<long long>(members_[v].size());
    }
    for (Vertex v : by_coefficient_) {
      if (need <= 0) break;
      if (val_[v] != 0) continue;
      need -= 2 * static_cast<long long>(members_[v].size());
      lb += 2;
    }
    if (need > 0) return std::numeric_limits<long long>::max();
    // Every complete assignment has weight congruent to n mod 2.
    if (((lb - n_) % 2 + 2) % 2 != 0) ++lb;
    return lb;
  }

  void search() {
    if (aborted_ || incumbent_weight_ <= floor_bound_) return;
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    if (optimistic_weight() >= incumbent_weight_) return;

    Vertex pick = -1;
    for (Vertex v : branch_order_)
      if (val_[v] == 0) {
        pick = v;
        break;
      }
    if (pick < 0) {
      incumbent_weight_ = weight_;
      for (Vertex v = 0; v < n_; ++v) incumbent_[v] = val_[v];
      return;
    }
    for (int s : {-1, 1}) {
      std::size_t mark = trail_.size();
      bool ok = assign(pick, s) && propagate();
      if (ok) search();
      queue_.clear();
      unassign_to(mark);
      if (aborted_) return;
    }
  }

  int n_;
  long long budget_;
  std::vector<std::vector<Vertex>> members_;
  std::vector<int> thr_, sum_, undecided_, val_;
  std::vector<Vertex> by_coefficient_, branch_order_, trail_, queue_;
  std::vector<int> incumbent_;
  long long incumbent_weight_ = 0;
  long long weight_ = 0;
  long long coeff_sum_ = 0;
  long long total_threshold_ = 0;
  long long floor_bound_ = std::numeric_limits<long long>::min();
  int remaining_ = 0;
  long long nodes_ = 0;
  bool aborted_ = false;
};

}  // namespace detail

/// Exact minimum by branch and bound with forced-vertex seeding, unit
/// propagation and a degree-weighted completion bound. Agrees in value with
/// brute_force_sigma; the certificate may differ.
inline SolveResult bnb_sigma(const Graph& g, int k, Mode mode, const SolverConfig& cfg = {}) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (!detail::degree_admissible(g, k, mode)) return {};
  if (g.order() == 0) return {SolveStatus::optimal, 0, SignFunction{}, 1};
  long long floor_bound = effective_bound(profile_of(g, k), mode);
  detail::BranchAndBound bb(g, k, mode, cfg.node_budget);
  return bb.run(forced_plus_vertices(g, k, mode), floor_bound);
}

namespace detail {

// Smallest s such that some s-subset's coverage masks OR to all of V.
inline int min_cover(const std::vector<std::uint64_t>& cover, int n) {
  const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  if (n == 0) return 0;
  for (int s = 1; s <= n; ++s) {
    // Gosper's hack over s-subsets of n.
    std::uint64_t set = (std::uint64_t{1} << s) - 1;
    const std::uint64_t limit = std::uint64_t{1} << n;
    while (set < limit) {
      std::uint64_t covered = 0;
      for (std::uint64_t rest = set; rest; rest &= rest - 1) covered |= cover[std::countr_zero(rest)];
      if (covered == full) return s;
      std::uint64_t c = set & (~set + 1);
      std::uint64_t r = set + c;
      set = (((r ^ set) >> 2) / c) | r;
    }
  }
  return n;
}

}  // namespace detail

/// Domination number by subset enumeration in increasing size.
inline int gamma(const Graph& g, const SolverConfig& cfg = {}) {
  if (g.order() > cfg.max_subset_n || g.order() > detail::kEnumerationHardLimit)
    throw CapExceeded("graph too large for subset enumeration");
  std::vector<std::uint64_t> cover(static_cast<std::size_t>(g.order()));
  for (Vertex v = 0; v < g.order(); ++v) cover[v] = g.closed_mask(v);
  return detail::min_cover(cover, g.order());
}

/// Total domination number; throws on isolated vertices (no total dominating set).
inline int gamma_t(const Graph& g, const SolverConfig& cfg = {}) {
  if (g.order() > cfg.max_subset_n || g.order() > detail::kEnumerationHardLimit)
    throw CapExceeded("graph too large for subset enumeration");
  if (g.order() > 0 && g.min_degree() < 1) throw GraphError("graph with an isolated vertex has no total dominating set");
  std::vector<std::uint64_t> cover(static_cast<std::size_t>(g.order()));
  for (Vertex v = 0; v < g.order(); ++v) cover[v] = g.open_mask(v);
  return detail::min_cover(cover, g.order());
}

/// First 1-in-3 satisfying assignment in lexicographic order over
/// (x_1, ..., x_n) with FALSE < TRUE, or nullopt.
inline std::optional<std::vector<bool>> one_in_three_sat(const ThreeSatFormula& f, const SolverConfig& cfg = {}) {
  const int n = f.num_vars();
  if (n > cfg.max_sat_vars || n > detail::kEnumerationHardLimit) throw CapExceeded("too many variables to enumerate");
  std::vector<std::uint64_t> clause_masks;
  for (const auto& c : f.clauses()) {
    std::uint64_t m = 0;
    for (int x : c) m |= std::uint64_t{1} << (n - x);
    clause_masks.push_back(m);
  }
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    bool ok = true;
    for (auto m : clause_masks)
      if (std::popcount(idx & m) != 1) {
        ok = false;
        break;
      }
    if (!ok) continue;
    std::vector<bool> a(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) a[j - 1] = (idx >> (n - j)) & 1;
    return a;
  }
  return std::nullopt;
}

}  // namespace sgd
