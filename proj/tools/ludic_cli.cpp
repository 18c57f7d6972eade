// ludic: check law suites, export trees, inspect run spaces, play games.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ludic/ludic.hpp"

using namespace ludic;

namespace {

constexpr std::uint64_t kDefaultSeed = 20261018;

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw InputError(out + ": cannot write");
  f << text;
}

// ---------------------------------------------------------------- check

struct CheckOpts {
  std::vector<std::string> specs;
  std::string suite = "all";
  std::size_t depth = 6;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
  bool timings = false;
};

Report counterexample_suite(std::size_t depth) {
  Report rep;
  rep.suite = "counterexamples";
  for (const std::string& name : counterexample_names()) {
    auto t0 = std::chrono::steady_clock::now();
    Scenario s = counterexample(name);
    auto found = s.verify(depth);
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    bool all = std::all_of(found.begin(), found.end(), [](const Finding& f) { return f.ok(); });
    for (const Finding& f : found) rep.add(name, f);
    rep.add(name, all ? Check::pass(depth) : Check::fail("a finding differs from its expected verdict", depth), ms);
  }
  return rep;
}

Report metric_of(const Game& g) {
  Report rep;
  rep.suite = "metric:" + g.name;
  UltraSpace x = run_space(g);
  rep.add("run space valid", validate(x));
  rep.add("run space is SeqSpa", is_seqspa(x) ? Check::pass() : Check::fail("two runs at distance 0"));
  rep.add("ball roundtrip", ball_roundtrip(x));
  rep.add("krom space valid", validate(krom_space(g)));
  return rep;
}

Report topo_of(const Game& g, std::size_t depth) {
  Report rep = game_laws(g, depth);
  rep.suite = "topo:" + g.name;
  return rep;
}

std::vector<Report> run_check(const CheckOpts& o) {
  static const std::vector<std::string> suites{"laws", "counterexamples", "metric", "topo", "all"};
  if (std::find(suites.begin(), suites.end(), o.suite) == suites.end())
    throw InputError("unknown suite '" + o.suite + "'");
  auto want = [&](const char* s) { return o.suite == "all" || o.suite == s; };
  std::vector<Report> reps;
  std::vector<Game> games;
  for (const std::string& p : o.specs) games.push_back(load_game(p));

  if (want("laws")) {
    if (games.empty())
      for (const char* n : {"empty", "terminal", "generating", "cogenerating"}) reps.push_back(game_laws(canonical(n), o.depth));
    for (const Game& g : games) reps.push_back(game_laws(g, o.depth));
  }
  if (want("counterexamples")) reps.push_back(counterexample_suite(o.depth));
  if (want("metric"))
    for (const Game& g : games) reps.push_back(metric_of(g));
  if (want("topo"))
    for (const Game& g : games) reps.push_back(topo_of(g, std::min<std::size_t>(o.depth, 4)));
  // Seeded property criteria run when no spec narrows the check.
  if (games.empty())
    for (const Criterion& c : criteria())
      if (want(c.suite)) {
        auto t0 = std::chrono::steady_clock::now();
        Report r = run_criterion(c, o.seed);
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        if (!r.lines.empty()) r.lines.back().millis = ms;
        reps.push_back(std::move(r));
      }
  return reps;
}

int cmd_check(const CheckOpts& o) {
  std::vector<Report> reps = run_check(o);
  std::string text;
  bool ok = true;
  for (const Report& r : reps) {
    text += r.to_text(o.timings) + "\n";
    ok = ok && r.ok();
  }
  emit(text, o.out);
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------- viz

int cmd_viz(const std::string& spec, std::size_t depth, const std::string& format, const std::string& out) {
  Game g = load_game(spec);
  if (format == "graph") emit(to_dot(g, depth), out);
  else if (format == "text") emit(to_tree_text(g, depth), out);
  else throw InputError("unknown format '" + format + "'");
  return 0;
}

// ---------------------------------------------------------------- metric

int cmd_metric(const std::string& spec, const std::string& action) {
  Game g = load_game(spec);
  if (action == "runspace") {
    std::cout << to_text(run_space(g));
    return 0;
  }
  if (action == "krom") {
    std::cout << to_text(krom_space(g));
    return 0;
  }
  if (action == "ball-roundtrip") {
    Check c = ball_roundtrip(run_space(g));
    std::cout << "ball-roundtrip " << (c.yes() ? "pass" : "fail");
    if (!c.witness.empty()) std::cout << " :: " << c.witness;
    std::cout << "\n";
    return c.yes() ? 0 : 1;
  }
  throw InputError("unknown metric action '" + action + "'");
}

// ---------------------------------------------------------------- play

struct PlayOpts {
  std::string spec;
  std::string side = "alice";
  std::string opponent = "repeat";
  std::size_t innings = 3;
  std::string script;
  std::string out;
};

// "repeat": copy the last move when legal, else the first legal move. "first": first legal move.
Move opponent_move(const std::string& name, const Moment& t, const std::vector<Move>& legal) {
  if (legal.empty()) throw InputError("no legal move at " + str(t));
  if (name == "repeat" && !t.empty() && std::find(legal.begin(), legal.end(), t.back()) != legal.end())
    return t.back();
  return legal.front();
}

std::string opponent_kind(std::string name) {
  for (const char* suffix : {"-alice", "-bob"}) {
    std::string s = suffix;
    if (name.size() > s.size() && name.compare(name.size() - s.size(), s.size(), s) == 0)
      name.resize(name.size() - s.size());
  }
  if (name != "repeat" && name != "first") throw InputError("unknown opponent strategy '" + name + "'");
  return name;
}

int cmd_play(const PlayOpts& o) {
  Game g = load_game(o.spec);
  if (!g.rooted) throw InputError("cannot play the empty game");
  if (o.side != "alice" && o.side != "bob") throw InputError("side must be alice or bob");
  Player me = o.side == "alice" ? Player::Alice : Player::Bob;
  std::string opp = opponent_kind(o.opponent);
  std::ifstream script;
  if (!o.script.empty()) {
    script.open(o.script);
    if (!script) throw InputError(o.script + ": cannot open");
  }
  std::istream& in = o.script.empty() ? std::cin : script;
  bool prompt = o.script.empty();

  PlayRecord rec;
  bool aborted = false;
  while (rec.moment.size() < 2 * o.innings) {
    Player p = turn(rec.moment);
    auto legal = g.children(rec.moment);
    Move x;
    if (p == me) {
      std::string opts;
      for (Move m : legal) opts += (opts.empty() ? "" : " ") + m.str();
      bool got = false;
      while (!got) {
        if (prompt) std::cerr << "inning " << rec.moment.size() / 2 << " legal: " << opts << "\n> " << std::flush;
        std::string line;
        if (!std::getline(in, line)) break;
        line.erase(0, line.find_first_not_of(" \t\r"));
        line.erase(line.find_last_not_of(" \t\r") + 1);
        for (Move m : legal)
          if (m.str() == line) {
            x = m;
            got = true;
          }
        if (!got) std::cerr << "illegal move '" << line << "'; legal: " << opts << "\n";
      }
      if (!got) {
        aborted = true;
        break;
      }
    } else {
      x = opponent_move(opp, rec.moment, legal);
    }
    rec.log.push_back({rec.moment.size() / 2, p, x, p == me ? "driver" : "strategy"});
    rec.moment.push_back(x);
  }
  std::string text = transcript(rec);
  if (aborted) {
    text += "aborted at end of input\n";
  } else if (g.regular() && !rec.moment.empty()) {
    bool a = false, b = false;
    for (const Run& r : runs_through(g, rec.moment)) (g.alice_wins(r) ? a : b) = true;
    if (a != b) text += std::string("winner ") + (a ? "alice" : "bob") + "\n";
    else text += "winner undecided\n";
  }
  emit(text, o.out);
  return aborted ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ludic: games, chronological maps and their laws"};
  app.require_subcommand(1);
  std::size_t cap = 0;
  app.add_option("--cap", cap, "moment enumeration cap (overrides LUDIC_CAP)");

  CheckOpts co;
  auto* check = app.add_subcommand("check", "run law suites");
  check->add_option("specs", co.specs, "spec files or builtin names");
  check->add_option("--suite", co.suite, "laws, counterexamples, metric, topo or all");
  check->add_option("--depth", co.depth, "truncation depth");
  check->add_option("--seed", co.seed, "seed for randomized suites");
  check->add_option("--out", co.out, "report file");
  check->add_flag("--timings", co.timings, "append timings to report lines");
  check->add_option("--cap", cap, "moment enumeration cap");

  std::string vspec, vformat = "graph", vout;
  std::size_t vdepth = 3;
  auto* viz = app.add_subcommand("viz", "export the truncated tree");
  viz->add_option("spec", vspec)->required();
  viz->add_option("--depth", vdepth);
  viz->add_option("--format", vformat, "graph (dot) or text");
  viz->add_option("--out", vout);
  viz->add_option("--cap", cap);

  PlayOpts po;
  auto* playc = app.add_subcommand("play", "play against a fixed strategy");
  playc->add_option("spec", po.spec)->required();
  playc->add_option("--side", po.side, "alice or bob");
  playc->add_option("--opponent", po.opponent, "repeat, first (optional -alice/-bob suffix)");
  playc->add_option("--innings", po.innings);
  playc->add_option("--script", po.script, "read moves from a file");
  playc->add_option("--out", po.out, "transcript file");

  std::string mspec, maction;
  auto* metric = app.add_subcommand("metric", "run space, Krom space, ball roundtrip");
  metric->add_option("spec", mspec)->required();
  metric->add_option("action", maction, "runspace, krom or ball-roundtrip")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    if (cap > 0) enumeration_cap() = cap;
    if (*check) return cmd_check(co);
    if (*viz) return cmd_viz(vspec, vdepth, vformat, vout);
    if (*playc) return cmd_play(po);
    if (*metric) return cmd_metric(mspec, maction);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 3;
  } catch (const Unsupported& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return 4;
  } catch (const IntegrityError& e) {
    std::cerr << "integrity: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
