#pragma once
// Counterexample scenarios, with countable families cut down to K components.

#include "ludic/combinators.hpp"

namespace ludic {

struct Finding {
  std::string label;
  Verdict expected;
  Check got;
  bool ok() const { return got.verdict == expected; }
};

struct Scenario {
  std::string name;
  std::size_t K = 0;
  std::map<std::string, Game> games;
  std::map<std::string, ChronMap> maps;
  std::function<std::vector<Finding>(std::size_t depth)> verify;
};

// Game of the run images of f, all runs Bob's.
inline Game image_game(const ChronMap& f, const Game& g1, std::string name) {
  std::map<Run, bool> runs;
  for (const Run& r : all_runs(g1)) runs.emplace(run_image(f, r), false);
  return game_of_runs(std::move(name), runs);
}

inline Check expect_eq(const std::string& what, long long got, long long want) {
  std::string w = what + "=" + std::to_string(got);
  return got == want ? Check{Verdict::True, w, 0} : Check::fail(w + ", expected " + std::to_string(want));
}

namespace gallery {

inline Run stars_then(std::size_t n, std::string_view x) {
  return Run(Moment(n, Move("*")), {Move(std::string(x))});
}

// T_n = {*^k : k<n} u {*^n x^k : x in {0,1}}.
inline Game family_T(std::size_t n) {
  return finite_game("T" + std::to_string(n), {{stars_then(n, "0"), false}, {stars_then(n, "1"), false}});
}

// Q with the all-star run kept.
inline Game stars_Q(std::size_t K) {
  std::vector<std::pair<Run, bool>> rs{{Run::constant({}, Move("*")), false}};
  for (std::size_t n = 0; n <= K; ++n) rs.push_back({stars_then(n, "0"), false});
  return finite_game("Q", rs);
}

inline Scenario quotient_composite(std::size_t K) {
  if (K < 2) throw InputError("quotient_composite needs K >= 2");
  std::vector<Game> parts;
  for (std::size_t n = 0; n < K; ++n) parts.push_back(family_T(n));
  Game T = coproduct(parts);
  T.name = "T";
  ChronMap q = make_map("q", [](const Moment& t) {
    Moment y;
    if (t.empty()) return y;
    std::size_t n = untag_move(t[0]).first;
    Moment u = untag(t);
    std::size_t stars = u.size() > n ? n + (u[n].token() == "1" ? 1 : 0) : u.size();
    y.assign(stars, Move("*"));
    y.resize(u.size(), Move("0"));
    return y;
  });
  Game Q = image_game(q, T, "Q");
  Game Qt = stars_Q(K);
  Game TT = coproduct({T, T});
  ChronMap qq = coproduct_map({q, q});
  Game QQ = coproduct({Qt, Qt});
  ChronMap c = make_map("c", [](const Moment& t) {
    Moment y;
    for (Move x : t) {
      auto [k, m] = untag_move(x);
      y.push_back(m.token() == "*" ? Move("*") : Move(std::to_string(k)));
    }
    return y;
  });
  Game C = image_game(c, QQ, "C");
  ChronMap e = compose(c, qq);
  e.name = "e";
  Game E = image_game(e, TT, "e[T+T]");
  Scenario s;
  s.name = "quotient_composite";
  s.K = K;
  s.games = {{"T", T}, {"Q", Q}, {"T+T", TT}, {"Q+Q", QQ}, {"C", C}, {"E", E}};
  s.maps = {{"q", q}, {"c", c}, {"e", e}};
  s.verify = [=](std::size_t depth) {
    std::vector<Finding> out;
    out.push_back({"is_quotient(q)", Verdict::True, is_quotient(q, T, Q, depth)});
    out.push_back({"is_quotient(c)", Verdict::True, is_quotient(c, QQ, C, depth)});
    Check ce = is_quotient(e, TT, E, depth);
    out.push_back({"is_quotient(e)", Verdict::False, ce});
    std::string want = "<*@0.1> <*@1.1>";
    out.push_back({"e witness t0_1 t1_1", Verdict::True,
                   ce.witness == want ? Check{Verdict::True, ce.witness, 1}
                                      : Check::fail("witness " + ce.witness + ", expected " + want)});
    return out;
  };
  return s;
}

inline Scenario strict_quotient_gap() {
  auto Tk = [](std::size_t k) {
    std::string x = std::to_string(k);
    return finite_game("T" + x, {{Run::constant({}, Move("*")), false}, {Run({Move("*")}, {Move(x)}), false}});
  };
  Game T = coproduct({Tk(0), Tk(1)});
  T.name = "T";
  Game C = finite_game("C", {{Run::constant({}, Move("*")), false},
                             {Run({Move("*")}, {Move("0")}), false},
                             {Run({Move("*")}, {Move("1")}), false}});
  ChronMap c = relabel("c", [](Move x) { return untag_move(x).second; });
  Run S = Run({Move("*", "0")}, {Move("0", "0")});
  Run S1 = Run({Move("*", "1")}, {Move("1", "1")});
  Run R = Run({Move("*")}, {Move("0")});
  Run R1 = Run({Move("*")}, {Move("1")});
  Scenario s;
  s.name = "strict_quotient_gap";
  s.K = 2;
  s.games = {{"T", T}, {"C", C}};
  s.maps = {{"c", c}};
  s.verify = [=](std::size_t depth) {
    std::vector<Finding> out;
    out.push_back({"is_quotient(c)", Verdict::True, is_quotient(c, T, C, depth)});
    out.push_back({"is_strict_quotient(c)", Verdict::False, is_strict_quotient(c, T, C)});
    out.push_back({"delta(S,S')", Verdict::True, expect_eq("delta(S,S')", static_cast<long long>(delta(S, S1)), 0)});
    out.push_back({"delta(R,R')", Verdict::True, expect_eq("delta(R,R')", static_cast<long long>(delta(R, R1)), 1)});
    return out;
  };
  return s;
}

inline Scenario mono_noninjective() {
  Game T = finite_game("T", {{Run::constant({}, Move("0")), true}, {Run::constant({}, Move("1")), false}});
  Game T2 = finite_game("T'", {{Run({Move("0")}, {Move("0")}), true}, {Run({Move("0")}, {Move("1")}), false}});
  ChronMap f = make_map("f", [](const Moment& t) {
    Moment y;
    if (t.empty()) return y;
    y.push_back(Move("0"));
    y.insert(y.end(), t.begin(), t.end() - 1);
    return y;
  });
  // Cogenerating target: k^n goes to 1^k 0^(n-k).
  std::size_t K = 8;
  std::vector<std::pair<Run, bool>> rs;
  for (std::size_t k = 0; k < K; ++k) rs.push_back({Run::constant({}, Move(std::to_string(k))), false});
  Game T1 = finite_game("T1", rs);
  Game cog = with_payoff(cogenerating_game(), [](const Run&) { return true; }, "cogenerating");
  ChronMap g = make_map("g", [](const Moment& t) {
    Moment y;
    if (t.empty()) return y;
    std::size_t k = std::stoul(t[0].token());
    std::size_t ones = std::min(k, t.size());
    y.assign(ones, Move("1"));
    y.resize(t.size(), Move("0"));
    return y;
  });
  Scenario s;
  s.name = "mono_noninjective";
  s.K = K;
  s.games = {{"T", T}, {"T'", T2}, {"T1", T1}, {"cogenerating", cog}};
  s.maps = {{"f", f}, {"g", g}};
  s.verify = [=](std::size_t depth) {
    std::vector<Finding> out;
    std::size_t d = std::min(depth, K - 1);
    out.push_back({"mono(f)", Verdict::True, mono_check(f, T)});
    out.push_back({"injective(f)", Verdict::False, injective_at(f, T, depth)});
    out.push_back({"surjective(g)", Verdict::True, surjective_at(g, T1, cog, d)});
    out.push_back({"run_surjective(g)", Verdict::False, run_surjective(g, T1, cog)});
    return out;
  };
  return s;
}

inline Scenario preimage_unpruned() {
  Game T = finite_game("T", {{Run::constant({}, Move("0")), true}, {Run::constant({}, Move("1")), true}});
  Game T2 = finite_game("T'", {{Run({Move("0")}, {Move("0")}), true}, {Run({Move("0")}, {Move("1")}), true}});
  Game T3 = finite_game("T''", {{Run({Move("0")}, {Move("1")}), true}});
  ChronMap f = make_map("f", [](const Moment& t) {
    Moment y;
    if (t.empty()) return y;
    y.push_back(Move("0"));
    y.insert(y.end(), t.begin(), t.end() - 1);
    return y;
  });
  Scenario s;
  s.name = "preimage_unpruned";
  s.K = 1;
  s.games = {{"T", T}, {"T'", T2}, {"T''", T3}};
  s.maps = {{"f", f}};
  s.verify = [=](std::size_t depth) {
    std::vector<Finding> out;
    auto pt = preimage_tree(f, T, T3, depth);
    out.push_back({"preimage pruned", Verdict::False,
                   pt.pruned ? Check::pass(depth) : Check::fail(pt.witness ? str(*pt.witness) : "?", depth)});
    std::string w = pt.witness ? str(*pt.witness) : "";
    out.push_back({"witness <0>", Verdict::True,
                   w == "<0>" ? Check{Verdict::True, w, 1} : Check::fail("witness " + w + ", expected <0>")});
    return out;
  };
  return s;
}

// Pullback of the strict-gap quotient along X -> C with N = 1.
inline Scenario descent_failure() {
  Scenario gap = strict_quotient_gap();
  const Game& T = gap.games.at("T");
  const Game& C = gap.games.at("C");
  const ChronMap& c = gap.maps.at("c");
  std::size_t N = 1;
  Game X = finite_game("X", {{stars_then(N, "0"), false}, {stars_then(N, "1"), false}});
  Run R0 = Run({Move("*")}, {Move("0")}), R1 = Run({Move("*")}, {Move("1")});
  ChronMap f = make_map("f", [R0, R1, N](const Moment& t) {
    return t.size() > N && t[N].token() == "0" ? R0.take(t.size()) : R1.take(t.size());
  });
  Span P = pullback(c, T, f, X);
  Scenario s;
  s.name = "descent_failure";
  s.K = 2;
  s.games = {{"T", T}, {"C", C}, {"X", X}, {"P", P.game}};
  s.maps = {{"c", c}, {"f", f}, {"p1", P.p1}, {"p2", P.p2}};
  s.verify = [=](std::size_t depth) {
    std::vector<Finding> out;
    out.push_back({"is_quotient(c)", Verdict::True, is_quotient(c, T, C, depth)});
    out.push_back({"is_quotient(p2)", Verdict::False, is_quotient(P.p2, P.game, X, depth)});
    return out;
  };
  return s;
}

}  // namespace gallery

inline const std::vector<std::string>& counterexample_names() {
  static const std::vector<std::string> names{"quotient_composite", "strict_quotient_gap", "mono_noninjective",
                                              "preimage_unpruned", "descent_failure"};
  return names;
}

inline Scenario counterexample(std::string_view name, std::size_t K = 4) {
  if (name == "quotient_composite") return gallery::quotient_composite(K);
  if (name == "strict_quotient_gap") return gallery::strict_quotient_gap();
  if (name == "mono_noninjective") return gallery::mono_noninjective();
  if (name == "preimage_unpruned") return gallery::preimage_unpruned();
  if (name == "descent_failure") return gallery::descent_failure();
  throw InputError("unknown counterexample '" + std::string(name) + "'");
}

}  // namespace ludic
