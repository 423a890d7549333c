#include "hlpg/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <json.hpp>
#include <memory>
#include <ostream>
#include <random>
#include <sstream>

#include "hlpg/bench.hpp"
#include "hlpg/game.hpp"
#include "hlpg/strategy.hpp"

namespace hlpg {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::vector<std::string> approaches;
  std::string stats, strategy_out, strategy_dot, arena_out, pt_out, semantics = "pruned";
  std::size_t node_cap = 10'000'000;
  unsigned parallel = 1;
  bool dump_symmetries = false, dump_reps = false, validate = false;
  std::size_t check_orbits = 0;
  std::uint64_t seed = 1;
};

void add_common(CLI::App& cmd, Options& o) {
  cmd.add_option("--approach", o.approaches, "explicit, membership or canonical (repeatable)")
      ->check(CLI::IsMember({"explicit", "membership", "canonical"}));
  cmd.add_option("--stats", o.stats, "append one JSON record per approach to this file");
  cmd.add_option("--strategy-out", o.strategy_out, "write the strategy net as text");
  cmd.add_option("--strategy-dot", o.strategy_dot, "write the strategy net as DOT");
  cmd.add_option("--arena-out", o.arena_out, "write the game arena as DOT");
  cmd.add_option("--pt-out", o.pt_out, "write the expanded P/T game as DOT");
  cmd.add_option("--node-cap", o.node_cap, "abort with exit 4 beyond this many arena nodes");
  cmd.add_option("--parallel", o.parallel, "worker threads for arena construction")->check(CLI::PositiveNumber);
  cmd.add_option("--semantics", o.semantics, "decision-set semantics")
      ->check(CLI::IsMember({"pruned", "unrestricted"}));
  cmd.add_flag("--dump-symmetries", o.dump_symmetries, "print the symmetry group in cycle notation");
  cmd.add_flag("--dump-reps", o.dump_reps, "print every arena node");
  cmd.add_flag("--validate", o.validate, "check the translated strategy; exit 1 if it is invalid");
  cmd.add_option("--check-orbits", o.check_orbits, "sample this many (node, symmetry) pairs and check lookup");
  cmd.add_option("--seed", o.seed, "seed for --check-orbits");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

// Random arena nodes mapped by random symmetries must land on the same node (reduced builders)
// or at least inside the arena (explicit builder).
std::size_t check_orbits(const GameGraph& gg, const std::vector<Symmetry>& group, std::size_t samples,
                         std::uint64_t seed, std::ostream& out) {
  const DecisionGame& dg = gg.decisions();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_node(0, gg.arena().num_nodes() - 1);
  std::uniform_int_distribution<std::size_t> pick_sym(0, group.size() - 1);
  std::size_t bad = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    int v = pick_node(rng);
    const Symmetry& s = group[pick_sym(rng)];
    DecisionSet d = dg.apply(gg.anchor(v), lift(dg.pt(), s));
    bool ok;
    try {
      int w = gg.resolve(d).first;
      ok = gg.approach() == Approach::Explicit || w == v;
    } catch (const std::out_of_range&) {
      ok = false;
    }
    if (!ok) {
      ++bad;
      out << "orbit check failed at node " << v << " under " << cycle_notation(*dg.pt().hl, s) << '\n';
    }
  }
  out << "orbit check: " << samples - bad << "/" << samples << " ok\n";
  return bad;
}

// Runs every requested approach on one game; returns the exit code.
int analyze(const std::string& instance, std::shared_ptr<const SymmetricGame> g, const Options& o, std::ostream& out,
            bool bench_lines) {
  auto t_start = Clock::now();
  PTGame pt = expand(g);
  if (!o.pt_out.empty()) write_file(o.pt_out, pt_to_dot(pt));
  std::vector<Symmetry> group;
  if (o.dump_symmetries || o.check_orbits) group = enumerate_symmetries(*g);
  if (o.dump_symmetries)
    for (const Symmetry& s : group) out << cycle_notation(*g, s) << '\n';
  DecisionGame dg(pt, o.semantics == "pruned" ? Semantics::pruned() : Semantics::unrestricted());
  double setup_ms = ms_since(t_start);

  std::vector<std::string> approaches = o.approaches;
  if (approaches.empty()) approaches.push_back("canonical");
  int code = kOk;
  bool wrote_strategy = false;
  for (std::size_t ai = 0; ai < approaches.size(); ++ai) {
    Approach ap = parse_approach(approaches[ai]);
    auto t0 = Clock::now();
    auto gg = GameGraph::build(dg, {ap, o.node_cap, o.parallel});
    double build_ms = ms_since(t0);
    t0 = Clock::now();
    Solution sol = solve_buchi(gg->arena());
    double solve_ms = ms_since(t0);
    double translate_ms = 0;
    std::unique_ptr<StrategyNet> net;
    if (sol.realizable) {
      t0 = Clock::now();
      net = std::make_unique<StrategyNet>(translate(unroll(*gg, sol)));
      translate_ms = ms_since(t0);
    }
    double total_ms = setup_ms + build_ms + solve_ms + translate_ms;

    const Arena& a = gg->arena();
    if (o.dump_reps)
      for (int v = 0; v < a.num_nodes(); ++v)
        out << "#" << v << " [" << to_string(a.flags[v]) << "]\n" << gg->render_node(v);
    if (o.check_orbits && check_orbits(*gg, group, o.check_orbits, o.seed, out)) code = kCheckFailed;

    const char* verdict = sol.realizable ? "REALIZABLE" : "UNREALIZABLE";
    if (bench_lines)
      out << instance << ' ' << approaches[ai] << ' ' << verdict << " nodes=" << a.num_nodes()
          << " edges=" << a.num_edges() << " symmetries=" << gg->symmetries() << '\n';
    else if (approaches.size() > 1)
      out << approaches[ai] << ": " << verdict << '\n';
    else
      out << verdict << '\n';

    if (!o.stats.empty()) {
      nlohmann::ordered_json rec;
      rec["instance"] = instance;
      rec["approach"] = approaches[ai];
      rec["realizable"] = sol.realizable;
      rec["nodes"] = a.num_nodes();
      rec["edges"] = a.num_edges();
      rec["accepting"] = a.num_accepting();
      rec["symmetries"] = gg->symmetries();
      rec["build_ms"] = build_ms;
      rec["solve_ms"] = solve_ms;
      rec["translate_ms"] = translate_ms;
      rec["total_ms"] = total_ms;
      std::ofstream f(o.stats, std::ios::app);
      if (!f) throw UsageError("cannot write " + o.stats);
      f << rec.dump() << '\n';
    }
    if (ai == 0 && !o.arena_out.empty()) write_file(o.arena_out, gg->to_dot());
    if (net && !wrote_strategy) {
      wrote_strategy = true;
      if (!o.strategy_out.empty()) write_file(o.strategy_out, strategy_text(*net, pt));
      if (!o.strategy_dot.empty()) write_file(o.strategy_dot, strategy_dot(*net, pt));
    }
    if (net && o.validate) {
      ValidationReport r = validate_strategy(*net, pt);
      out << "strategy " << (r.ok() ? "valid" : "INVALID") << ": " << net->num_places() << " places, "
          << net->num_transitions() << " transitions, " << r.markings << " markings\n";
      for (const std::string& v : r.violations) out << "  " << v << '\n';
      if (!r.ok()) code = kCheckFailed;
    }
  }
  return code;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Synthesis for symmetric high-level Petri games"};
  app.name("hlpg");
  app.require_subcommand(1);

  Options solve_opt;
  std::string input;
  CLI::App* solve = app.add_subcommand("solve", "solve a game given in .hlpg format");
  solve->add_option("file", input, "input game")->required();
  add_common(*solve, solve_opt);

  Options bench_opt;
  BenchSpec spec;
  std::string emit;
  CLI::App* bench = app.add_subcommand("bench", "generate and solve a benchmark instance");
  bench->add_option("family", spec.family, "cs, dw or cm")->required()->check(CLI::IsMember({"cs", "dw", "cm"}));
  bench->add_option("--n", spec.n, "size parameter of cs and dw");
  bench->add_option("--m", spec.m, "machines of cm");
  bench->add_option("--o", spec.o, "orders of cm");
  bench->add_option("--emit", emit, "write the generated game in .hlpg format");
  add_common(*bench, bench_opt);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*solve) {
      std::string text = read_file(input);
      auto g = std::make_shared<SymmetricGame>(parse_game(text));
      return analyze(g->name, g, solve_opt, out, false);
    }
    std::string text;
    try {
      text = bench_source(spec);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (!emit.empty()) write_file(emit, text);
    auto g = std::make_shared<SymmetricGame>(parse_game(text));
    if (!emit.empty() && bench_opt.approaches.empty()) return kOk;
    return analyze(spec.instance(), g, bench_opt, out, true);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ModelError& e) {
    err << "model error: " << e.what() << '\n';
    return kModel;
  } catch (const ClassViolation& e) {
    err << "class violation: " << e.what() << '\n';
    return kModel;
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << '\n';
    return kCap;
  }
}

}  // namespace hlpg
