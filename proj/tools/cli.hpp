#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sgd/sgd.hpp"

namespace sgd::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2, kCap = 3 };

/// Options shared by every subcommand.
struct RunConfig {
  std::optional<int> k;
  std::string mode;
  std::string format = "text";
  std::string output;
  std::optional<int> max_brute_n;
  std::optional<long long> node_budget;
  std::optional<int> threads;

  SolverConfig solver() const {
    SolverConfig c = SolverConfig::from_env();
    if (max_brute_n) c.max_brute_n = *max_brute_n;
    if (node_budget) c.node_budget = *node_budget;
    if (threads) c.threads = *threads;
    return c;
  }
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw UsageError("cannot write '" + path + "'");
}

inline Mode require_mode(const RunConfig& rc) {
  if (rc.mode.empty()) throw UsageError("--mode {closed,total} is required");
  auto m = parse_mode(rc.mode);
  if (!m) throw UsageError("--mode must be 'closed' or 'total'");
  return *m;
}

inline int require_k(const RunConfig& rc) {
  int k = rc.k.value_or(1);
  if (k < 1) throw UsageError("--k must be positive");
  return k;
}

inline std::string parameter_name(Mode mode) { return mode == Mode::closed ? "sigma_ks" : "sigma_tks"; }

inline std::string signs(const SignFunction& f) {
  std::string s;
  for (Vertex v = 0; v < f.size(); ++v) {
    if (v) s += ' ';
    s += f[v] > 0 ? "+1" : "-1";
  }
  return s;
}

/// Every structured record carries the same top-level fields.
inline nlohmann::json record(const std::string& command) {
  nlohmann::json j;
  j["command"] = command;
  for (const char* f : {"parameter", "k", "mode", "value", "status", "certificate", "nodes_explored", "bound_num",
                        "bound_den", "threshold_a", "threshold_b"})
    j[f] = nullptr;
  j["details"] = nlohmann::json::object();
  return j;
}

inline nlohmann::json cert_json(const SignFunction& f) { return f.values(); }

inline std::string bound_text(const BoundValue& b) {
  return b.is_integer() ? std::to_string(b.num()) : b.to_string();
}

inline std::optional<BoundValue> parse_rational(const std::string& s) {
  auto slash = s.find('/');
  long long num, den = 1;
  if (!sgd::detail::parse_int(s.substr(0, slash), num)) return std::nullopt;
  if (slash != std::string::npos && !sgd::detail::parse_int(s.substr(slash + 1), den)) return std::nullopt;
  if (den == 0) return std::nullopt;
  return BoundValue(num, den);
}

/// Text output, or the structured record when --format json.
class Emitter {
 public:
  Emitter(const RunConfig& rc, std::ostream& out) : rc_(rc), out_(out) {}

  void finish(const std::string& text, const nlohmann::json& j) {
    std::string body = rc_.format == "json" ? j.dump(2) + "\n" : text;
    if (rc_.output.empty())
      out_ << body;
    else
      write_file(rc_.output, body);
  }

 private:
  const RunConfig& rc_;
  std::ostream& out_;
};

inline int status_exit(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return kOk;
    case SolveStatus::infeasible: return kFailed;
    case SolveStatus::cap_exceeded: return kCap;
  }
  return kFailed;
}

// ---------------------------------------------------------------------------

inline int cmd_solve(const RunConfig& rc, const std::string& graph_path, const std::string& param,
                     const std::string& algo, std::ostream& out) {
  Graph g = parse_graph(read_file(graph_path));
  const int k = require_k(rc);
  const SolverConfig cfg = rc.solver();
  SolveResult r;
  std::string name;
  Mode mode = Mode::closed;
  if (param == "upper") {
    if (!rc.mode.empty() && require_mode(rc) != Mode::closed) throw UsageError("upper parameter is closed mode only");
    if (algo == "bnb") throw UsageError("upper parameter supports only --algo brute");
    r = brute_force_upper(g, k, cfg);
    name = "upper_ks";
  } else {
    mode = require_mode(rc);
    r = (algo == "brute") ? brute_force_sigma(g, k, mode, cfg) : bnb_sigma(g, k, mode, cfg);
    name = parameter_name(mode);
  }

  std::ostringstream text;
  if (r.value)
    text << name << " = " << *r.value << (r.status == SolveStatus::cap_exceeded ? " (incumbent)" : "") << '\n';
  else
    text << name << " = none\n";
  if (r.certificate) text << "certificate: " << signs(*r.certificate) << '\n';
  text << "status: " << to_string(r.status) << '\n';
  text << "nodes_explored: " << r.nodes_explored << '\n';

  auto j = record("solve");
  j["parameter"] = name;
  j["k"] = k;
  j["mode"] = std::string(to_string(mode));
  if (r.value) j["value"] = *r.value;
  j["status"] = std::string(to_string(r.status));
  if (r.certificate) j["certificate"] = cert_json(*r.certificate);
  j["nodes_explored"] = r.nodes_explored;
  j["details"]["algorithm"] = param == "upper" ? "brute" : (algo == "brute" ? "brute" : "bnb");
  Emitter(rc, out).finish(text.str(), j);
  return status_exit(r.status);
}

inline int cmd_verify(const RunConfig& rc, const std::string& graph_path, const std::string& cert_path, bool minimal,
                      std::ostream& out) {
  Graph g = parse_graph(read_file(graph_path));
  Certificate c = parse_certificate(read_file(cert_path));
  if (rc.k && *rc.k != c.k) throw UsageError("--k disagrees with the certificate header");
  if (!rc.mode.empty() && require_mode(rc) != c.mode) throw UsageError("--mode disagrees with the certificate header");
  if (c.f.size() != g.order()) throw UsageError("certificate order does not match the graph");
  if (minimal && c.mode != Mode::closed) throw UsageError("minimality is defined for closed mode only");

  auto rep = verify(g, c.k, c.mode, c.f);
  std::ostringstream text;
  text << "feasible: " << (rep.feasible ? "yes" : "no") << '\n';
  text << "weight: " << c.f.weight() << '\n';
  text << "min_slack: " << rep.min_slack << '\n';
  text << "violations:";
  for (Vertex v : rep.violations) text << ' ' << v + 1 << "(sum " << rep.per_vertex_sum[v] << ")";
  text << '\n';

  auto j = record("verify");
  j["parameter"] = parameter_name(c.mode);
  j["k"] = c.k;
  j["mode"] = std::string(to_string(c.mode));
  j["value"] = c.f.weight();
  j["certificate"] = cert_json(c.f);
  std::vector<int> viol;
  for (Vertex v : rep.violations) viol.push_back(v + 1);
  j["details"]["violations"] = viol;
  j["details"]["min_slack"] = rep.min_slack;
  j["details"]["per_vertex_sum"] = rep.per_vertex_sum;

  bool ok = rep.feasible;
  std::string status = rep.feasible ? "feasible" : "infeasible";
  if (minimal && rep.feasible) {
    auto m = is_minimal_skdf(g, c.k, c.f);
    text << "minimal: " << (m.minimal ? "yes" : "no") << '\n';
    if (m.offending) text << "no_witness: " << *m.offending + 1 << '\n';
    for (auto [v, w] : m.witness) text << "witness: " << v + 1 << " -> " << w + 1 << '\n';
    j["details"]["minimal"] = m.minimal;
    if (m.offending) j["details"]["no_witness"] = *m.offending + 1;
    if (!m.minimal) {
      ok = false;
      status = "not_minimal";
    }
  }
  j["status"] = status;
  Emitter(rc, out).finish(text.str(), j);
  return ok ? kOk : kFailed;
}

inline int cmd_bound(const RunConfig& rc, const std::string& graph_path, std::optional<long long> n,
                     std::optional<long long> delta, std::optional<long long> Delta, const std::string& c_text,
                     std::ostream& out) {
  const int k = require_k(rc);
  const Mode mode = require_mode(rc);
  DegreeProfile p;
  if (!graph_path.empty()) {
    if (n || delta || Delta) throw UsageError("give either a graph or --n/--delta/--Delta, not both");
    p = profile_of(parse_graph(read_file(graph_path)), k);
  } else {
    if (!n || !delta || !Delta) throw UsageError("profile needs --n, --delta and --Delta");
    p = {*n, *delta, *Delta, k};
  }
  RawBound raw = lower_bound_raw(p, mode);
  BoundValue b = raw.value();
  long long eff = effective_bound(p, mode);

  std::ostringstream text;
  text << "bound = " << bound_text(b) << " (" << raw.num << "/" << raw.den << ")\n";
  text << "effective = " << eff << '\n';
  auto j = record("bound");
  j["parameter"] = parameter_name(mode);
  j["k"] = k;
  j["mode"] = std::string(to_string(mode));
  j["value"] = eff;
  j["status"] = "bound";
  j["bound_num"] = b.num();
  j["bound_den"] = b.den();
  j["details"]["n"] = p.n;
  j["details"]["delta"] = p.delta;
  j["details"]["Delta"] = p.Delta;
  if (p.delta >= k) {
    auto nn = nonneg_check(p);
    text << "nonneg_condition: " << (nn.condition ? "yes" : "no") << '\n';
    j["details"]["nonneg_condition"] = nn.condition;
  }
  if (!c_text.empty()) {
    auto c = parse_rational(c_text);
    if (!c) throw UsageError("--c must be a rational 'p' or 'p/q'");
    bool pass = threshold_check(p, *c, mode);
    text << "threshold(c=" << c->to_string() << "): " << (pass ? "pass" : "fail") << '\n';
    j["details"]["threshold_c"] = c->to_string();
    j["details"]["threshold_pass"] = pass;
  }
  Emitter(rc, out).finish(text.str(), j);
  return kOk;
}

inline int cmd_gen_extremal(const RunConfig& rc, int delta, int Delta, std::optional<int> t, std::ostream& out) {
  const int k = require_k(rc);
  const Mode mode = require_mode(rc);
  if (rc.output.empty()) throw UsageError("gen extremal needs -o <prefix>");
  ExtremalSpec spec{k, delta, Delta, t.value_or(smallest_admissible_t(Delta)), mode};
  auto inst = build_extremal(spec);

  std::ostringstream report;
  report << "a: " << inst.sizes.a << '\n'
         << "b: " << inst.sizes.b << '\n'
         << "t: " << spec.t << '\n'
         << "P: " << inst.P.size() << '\n'
         << "Q: " << inst.Q.size() << '\n'
         << "bound: " << inst.bound.to_string() << '\n'
         << "weight: " << inst.certificate.weight() << '\n';
  write_file(rc.output + ".graph", emit_graph(inst.graph));
  write_file(rc.output + ".cert", emit_certificate({k, mode, inst.certificate}));
  write_file(rc.output + ".report", report.str());

  auto j = record("gen extremal");
  j["parameter"] = parameter_name(mode);
  j["k"] = k;
  j["mode"] = std::string(to_string(mode));
  j["value"] = inst.certificate.weight();
  j["status"] = "generated";
  j["certificate"] = cert_json(inst.certificate);
  j["bound_num"] = inst.bound.num();
  j["bound_den"] = inst.bound.den();
  j["details"] = {{"a", inst.sizes.a}, {"b", inst.sizes.b}, {"t", spec.t}, {"P", inst.P.size()}, {"Q", inst.Q.size()}};
  if (rc.format == "json")
    out << j.dump(2) << '\n';
  else
    out << report.str();
  return kOk;
}

inline int cmd_gen_onefactor(const RunConfig& rc, int n, std::ostream& out) {
  auto factors = one_factorization(n);
  std::ostringstream text;
  nlohmann::json list = nlohmann::json::array();
  for (std::size_t i = 0; i < factors.size(); ++i) {
    text << "m " << i + 1 << ':';
    nlohmann::json pairs = nlohmann::json::array();
    for (auto [u, v] : factors[i].pairs()) {
      text << ' ' << u + 1 << '-' << v + 1;
      pairs.push_back({u + 1, v + 1});
    }
    text << '\n';
    list.push_back(pairs);
  }
  auto j = record("gen onefactor");
  j["status"] = "generated";
  j["details"]["n"] = n;
  j["details"]["matchings"] = list;
  Emitter(rc, out).finish(text.str(), j);
  return kOk;
}

inline int cmd_reduce(const RunConfig& rc, const std::string& from, const std::string& input, std::ostream& out) {
  const int k = require_k(rc);
  if (rc.output.empty()) throw UsageError("reduce needs -o <prefix>");
  ReductionArtifact art;
  if (from == "1in3")
    art = reduce_1in3(parse_cnf(read_file(input)), k);
  else if (from == "mtds")
    art = reduce_mtds(parse_graph(read_file(input)), k);
  else
    art = reduce_mds(parse_graph(read_file(input)), k);

  write_file(rc.output + ".graph", emit_graph(art.graph));
  write_file(rc.output + ".prov", emit_provenance(art));

  std::ostringstream text;
  text << "vertices: " << art.graph.order() << '\n';
  auto j = record("reduce");
  j["k"] = k;
  j["mode"] = std::string(to_string(art.mode()));
  j["status"] = "generated";
  j["details"]["from"] = from;
  j["details"]["vertices"] = art.graph.order();
  if (art.kind == ReductionKind::one_in_three) {
    text << "threshold: " << art.threshold_value << '\n';
    j["parameter"] = "upper_ks";
    j["value"] = art.threshold_value;
  } else {
    text << "T: " << art.T << '\n';
    text << "threshold: r -> " << art.threshold_a << "r + " << art.threshold_b << '\n';
    j["parameter"] = parameter_name(art.mode());
    j["threshold_a"] = art.threshold_a;
    j["threshold_b"] = art.threshold_b;
    j["details"]["T"] = art.T;
  }
  if (rc.format == "json")
    out << j.dump(2) << '\n';
  else
    out << text.str();
  return kOk;
}

// A fast subset of the acceptance checks, for smoke-testing an installation.
inline int cmd_xcheck(const RunConfig& rc, std::ostream& out) {
  const SolverConfig cfg = rc.solver();
  std::vector<std::pair<std::string, bool>> results;

  {
    bool ok = true;
    for (int k = 1; k <= 3; ++k)
      for (int n = k; n <= 9; ++n) {
        ok &= brute_force_sigma(complete_graph(n), k, Mode::closed, cfg).value == k + 1 - indicator(n, k);
        if (n >= k + 1)
          ok &= brute_force_sigma(complete_graph(n), k, Mode::total, cfg).value == k + 1 + indicator(n, k);
      }
    results.emplace_back("complete-graph closed forms", ok);
  }
  {
    bool ok = true;
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 40; ++trial) {
      const int n = 4 + trial % 9;
      std::vector<Edge> e;
      for (int v = 1; v < n; ++v) e.emplace_back(std::uniform_int_distribution<int>(0, v - 1)(rng), v);
      std::set<Edge> have(e.begin(), e.end());
      std::bernoulli_distribution coin(0.3);
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
          if (!have.count({u, v}) && coin(rng)) e.emplace_back(u, v);
      Graph g = Graph::from_edges(n, e);
      for (int k = 1; k <= 2; ++k)
        for (Mode mode : {Mode::closed, Mode::total}) {
          auto a = brute_force_sigma(g, k, mode, cfg);
          auto b = bnb_sigma(g, k, mode, cfg);
          ok &= a.status == b.status && a.value == b.value;
          if (a.value && g.min_degree() >= (mode == Mode::closed ? k - 1 : k))
            ok &= BoundValue(*a.value) >= lower_bound(profile_of(g, k), mode);
        }
    }
    results.emplace_back("branch and bound vs brute force, bound soundness", ok);
  }
  {
    bool ok = true;
    for (int k = 1; k <= 2; ++k)
      for (Mode mode : {Mode::closed, Mode::total})
        for (int d = (mode == Mode::closed ? k + 1 : k + 2); d <= 5; ++d)
          for (int D = d; D <= 5; ++D) {
            auto inst = build_extremal({k, d, D, smallest_admissible_t(D), mode});
            ok &= verify(inst.graph, k, mode, inst.certificate).feasible &&
                  BoundValue(inst.certificate.weight()) == inst.bound;
          }
    results.emplace_back("extremal sharpness", ok);
  }
  {
    bool ok = true;
    for (int n = 2; n <= 20; n += 2) {
      std::set<Edge> all;
      for (const auto& m : one_factorization(n)) {
        ok &= m.is_perfect_on(n);
        for (auto e : m.pairs()) ok &= all.insert(e).second;
      }
      ok &= static_cast<int>(all.size()) == n * (n - 1) / 2;
    }
    results.emplace_back("1-factorization", ok);
  }
  {
    bool ok = true;
    for (const Graph& g : {path_graph(3), path_graph(4), cycle_graph(4)}) {
      auto t = reduce_mtds(g, 1);
      ok &= brute_force_sigma(t.graph, 1, Mode::total, cfg).value == t.map_threshold(gamma_t(g, cfg));
      auto c = reduce_mds(g, 1);
      if (c.graph.order() <= cfg.max_brute_n)
        ok &= brute_force_sigma(c.graph, 1, Mode::closed, cfg).value == c.map_threshold(gamma(g, cfg));
    }
    results.emplace_back("set reduction identities", ok);
  }
  {
    auto art = reduce_1in3(ThreeSatFormula(3, {{1, 2, 3}}), 1);
    auto r = brute_force_upper(art.graph, 1, cfg);
    auto lifted = lift_assignment(art, *one_in_three_sat(*art.formula, cfg));
    bool ok = r.value && *r.value >= art.threshold_value && lifted.weight() == art.threshold_value &&
              is_minimal_skdf(art.graph, 1, lifted).minimal;
    results.emplace_back("1-in-3 SAT reduction", ok);
  }

  bool all = true;
  std::ostringstream text;
  auto j = record("xcheck");
  for (const auto& [name, ok] : results) {
    text << (ok ? "PASS " : "FAIL ") << name << '\n';
    j["details"][name] = ok;
    all &= ok;
  }
  j["status"] = all ? "pass" : "fail";
  Emitter(rc, out).finish(text.str(), j);
  return all ? kOk : kFailed;
}

}  // namespace detail

/// Entry point. argv[0] is the program name.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Signed (total) k-domination toolkit", "sgd"};
  app.require_subcommand(1);
  RunConfig rc;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--k", rc.k, "Domination requirement k (default 1)");
    sub->add_option("--mode", rc.mode, "closed or total")->check(CLI::IsMember({"closed", "total"}));
    sub->add_option("--format", rc.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("-o,--output", rc.output, "Output path (or prefix for generators)");
    sub->add_option("--max-brute-n", rc.max_brute_n, "Largest order for exhaustive enumeration")
        ->check(CLI::PositiveNumber);
    sub->add_option("--node-budget", rc.node_budget, "Branch-and-bound node budget")->check(CLI::PositiveNumber);
    sub->add_option("--threads", rc.threads, "Worker threads for enumeration")->check(CLI::PositiveNumber);
  };

  std::string graph_path, cert_path, param = "sigma", algo = "auto", from, input, c_text;
  bool minimal = false;
  std::optional<long long> n, delta, Delta;
  int gen_delta = 0, gen_Delta = 0, factor_n = 0;
  std::optional<int> gen_t;

  auto* solve = app.add_subcommand("solve", "Compute sigma_kS, sigma_tkS or the upper signed k-domination number");
  add_common(solve);
  solve->add_option("--param", param, "sigma or upper")->check(CLI::IsMember({"sigma", "upper"}));
  solve->add_option("--algo", algo, "brute or bnb")->check(CLI::IsMember({"auto", "brute", "bnb"}));
  solve->add_option("graph", graph_path, "Graph file")->required();

  auto* ver = app.add_subcommand("verify", "Check a certificate against a graph");
  add_common(ver);
  ver->add_option("--cert", cert_path, "Certificate file")->required();
  ver->add_flag("--minimal", minimal, "Also run the minimality check");
  ver->add_option("graph", graph_path, "Graph file")->required();

  auto* bound = app.add_subcommand("bound", "Evaluate the degree-based lower bound");
  add_common(bound);
  bound->add_option("--n", n, "Order");
  bound->add_option("--delta", delta, "Minimum degree");
  bound->add_option("--Delta", Delta, "Maximum degree");
  bound->add_option("--c", c_text, "Also run the c*n threshold check for rational c");
  bound->add_option("graph", graph_path, "Graph file (instead of an explicit profile)");

  auto* gen = app.add_subcommand("gen", "Generate extremal graphs or 1-factorizations");
  gen->require_subcommand(1);
  auto* ext = gen->add_subcommand("extremal", "Extremal graph with its optimal certificate");
  add_common(ext);
  ext->add_option("--delta", gen_delta, "Minimum degree")->required();
  ext->add_option("--Delta", gen_Delta, "Maximum degree")->required();
  ext->add_option("--t", gen_t, "Number of blocks (even, > Delta); default smallest");
  auto* fac = gen->add_subcommand("onefactor", "1-factorization of K_n");
  add_common(fac);
  fac->add_option("--n", factor_n, "Even order")->required();

  auto* red = app.add_subcommand("reduce", "Build a hardness-reduction instance");
  add_common(red);
  red->add_option("--from", from, "mtds, mds or 1in3")->required()->check(CLI::IsMember({"mtds", "mds", "1in3"}));
  red->add_option("input", input, "Graph file, or CNF file for 1in3")->required();

  auto* xcheck = app.add_subcommand("xcheck", "Run a quick subset of the acceptance checks");
  add_common(xcheck);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*solve) return detail::cmd_solve(rc, graph_path, param, algo, out);
    if (*ver) return detail::cmd_verify(rc, graph_path, cert_path, minimal, out);
    if (*bound) return detail::cmd_bound(rc, graph_path, n, delta, Delta, c_text, out);
    if (*ext) return detail::cmd_gen_extremal(rc, gen_delta, gen_Delta, gen_t, out);
    if (*fac) return detail::cmd_gen_onefactor(rc, factor_n, out);
    if (*red) return detail::cmd_reduce(rc, from, input, out);
    if (*xcheck) return detail::cmd_xcheck(rc, out);
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kCap;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace sgd::cli
