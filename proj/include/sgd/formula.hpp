#pragma once

#include <array>
#include <sstream>
#include <string>
#include <vector>

#include "sgd/graph.hpp"

namespace sgd {

/// A 1-in-3 SAT instance: every clause holds exactly three distinct positive
/// literals. Variables are numbered 1..num_vars.
class ThreeSatFormula {
 public:
  using Clause = std::array<int, 3>;

  ThreeSatFormula(int num_vars, std::vector<Clause> clauses) : num_vars_(num_vars), clauses_(std::move(clauses)) {
    if (num_vars < 1) throw std::invalid_argument("formula needs at least one variable");
    for (std::size_t i = 0; i < clauses_.size(); ++i) {
      const auto& c = clauses_[i];
      for (int x : c)
        if (x < 1 || x > num_vars)
          throw std::invalid_argument("clause " + std::to_string(i + 1) + " references variable outside [1.." +
                                      std::to_string(num_vars) + "]");
      if (c[0] == c[1] || c[0] == c[2] || c[1] == c[2])
        throw std::invalid_argument("clause " + std::to_string(i + 1) + " repeats a variable");
    }
  }

  int num_vars() const noexcept { return num_vars_; }
  int num_clauses() const noexcept { return static_cast<int>(clauses_.size()); }
  const std::vector<Clause>& clauses() const noexcept { return clauses_; }

  /// assignment[j-1] is the value of x_j.
  bool satisfied_one_in_three(const std::vector<bool>& assignment) const {
    if (assignment.size() != static_cast<std::size_t>(num_vars_)) return false;
    for (const auto& c : clauses_) {
      int t = 0;
      for (int x : c) t += assignment[x - 1] ? 1 : 0;
      if (t != 1) return false;
    }
    return true;
  }

 private:
  int num_vars_;
  std::vector<Clause> clauses_;
};

/// DIMACS-style input: "p cnf <n> <m>" followed by m lines "a b c 0".
/// Negative literals are rejected.
inline ThreeSatFormula parse_cnf(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  long long n = -1, m = -1;
  std::vector<ThreeSatFormula::Clause> clauses;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::is_comment_or_blank(line)) continue;
    auto tok = detail::split_ws(line);
    if (tok[0] == "p") {
      if (n >= 0) throw FormatError(lineno, "duplicate header");
      if (tok.size() != 4 || tok[1] != "cnf") throw FormatError(lineno, "malformed header, expected 'p cnf <n> <m>'");
      n = detail::parse_count(tok[2]);
      m = detail::parse_count(tok[3]);
      if (n < 1 || m < 0) throw FormatError(lineno, "malformed header counts");
      continue;
    }
    if (n < 0) throw FormatError(lineno, "clause before header");
    if (tok.size() != 4 || tok[3] != "0") throw FormatError(lineno, "clause must be three literals followed by 0");
    ThreeSatFormula::Clause c{};
    for (int i = 0; i < 3; ++i) {
      long long lit;
      if (!detail::parse_int(tok[i], lit)) throw FormatError(lineno, "malformed literal '" + tok[i] + "'");
      if (lit < 0) throw FormatError(lineno, "negative literal " + tok[i] + " (only positive literals allowed)");
      if (lit < 1 || lit > n) throw FormatError(lineno, "variable " + tok[i] + " out of range");
      c[i] = static_cast<int>(lit);
    }
    if (c[0] == c[1] || c[0] == c[2] || c[1] == c[2]) throw FormatError(lineno, "clause repeats a variable");
    clauses.push_back(c);
  }
  if (n < 0) throw FormatError(lineno, "missing header");
  if (static_cast<long long>(clauses.size()) != m)
    throw FormatError(lineno, "header declares " + std::to_string(m) + " clauses, found " + std::to_string(clauses.size()));
  return ThreeSatFormula(static_cast<int>(n), std::move(clauses));
}

inline ThreeSatFormula parse_cnf(const std::string& text) {
  std::istringstream in(text);
  return parse_cnf(in);
}

inline std::string emit_cnf(const ThreeSatFormula& f) {
  std::ostringstream out;
  out << "p cnf " << f.num_vars() << ' ' << f.num_clauses() << '\n';
  for (const auto& c : f.clauses()) out << c[0] << ' ' << c[1] << ' ' << c[2] << " 0\n";
  return out.str();
}

}  // namespace sgd
