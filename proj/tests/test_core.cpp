#include <doctest.h>

#include <regex>

#include "ludic/core.hpp"

using namespace ludic;

namespace {

// Binary strings of length <= d matching 1*0*, counted by regex over all strings.
std::size_t brute_cogenerating_nodes(std::size_t d) {
  std::regex re("1*0*");
  std::size_t n = 0;
  for (std::size_t len = 0; len <= d; ++len)
    for (std::size_t bits = 0; bits < (std::size_t{1} << len); ++bits) {
      std::string s;
      for (std::size_t i = 0; i < len; ++i) s += (bits >> i & 1) ? '1' : '0';
      if (std::regex_match(s, re)) ++n;
    }
  return n;
}

}  // namespace

TEST_CASE("moves intern and order") {
  CHECK(Move("0") == Move("0"));
  CHECK(Move("0") != Move("0", "q"));
  CHECK(Move("0", "q").str() == "0@q");
  CHECK(Move("0") < Move("1"));
  Move t = Move::tuple({Move("a"), Move("b")});
  CHECK(t.str() == "(a,b)");
  CHECK(t.arity() == 2);
  CHECK(t.part(1) == Move("b"));
}

TEST_CASE("runs normalize") {
  Run a(moves({"0", "1"}), moves({"1"}));
  CHECK(a == Run(moves({"0"}), moves({"1"})));
  CHECK(a.stem() == 2);
  CHECK(Run({}, moves({"0", "0"})) == Run({}, moves({"0"})));
  CHECK(Run(moves({"1"}), moves({"0", "1"})) == Run({}, moves({"1", "0"})));
  CHECK(a.take(4) == moves({"0", "1", "1", "1"}));
  CHECK(a.str() == "0 (1)^w");
  CHECK_THROWS_AS(Run(moves({"0"}), {}), InputError);
}

TEST_CASE("delta is the first disagreement") {
  Run z({}, moves({"0"})), o({}, moves({"1"})), zz1(moves({"0", "0"}), moves({"1"}));
  CHECK(delta(z, o) == 0);
  CHECK(delta(z, zz1) == 2);
  CHECK(delta(z, z) == kInf);
  CHECK(delta(Run({}, moves({"0", "1"})), Run({}, moves({"0", "1", "0", "1", "0", "0"}))) == 5);
}

TEST_CASE("canonical games") {
  Game e = canonical("empty");
  CHECK_FALSE(e.rooted);
  CHECK(all_runs(e).empty());
  Game t = canonical("terminal"), g = canonical("generating");
  CHECK(all_runs(t).size() == 1);
  CHECK(t.alice_wins(all_runs(t)[0]));
  CHECK_FALSE(g.alice_wins(all_runs(g)[0]));
  CHECK(truncate(t, 5).size() == 6);
  CHECK_THROWS_AS(canonical("nope"), InputError);
}

TEST_CASE("cogenerating node counts match brute force") {
  Game c = canonical("cogenerating");
  for (std::size_t d = 0; d <= 7; ++d) CHECK(truncate(c, d).size() == brute_cogenerating_nodes(d));
  CHECK(brute_cogenerating_nodes(3) == 10);
  CHECK(level(c, 4).size() == 5);
  CHECK(find_dead_end(c, 6) == std::nullopt);
}

TEST_CASE("finite games from runs") {
  Run r0({}, moves({"0"})), r1(moves({"1"}), moves({"0"}));
  Game g = finite_game("g", {{r0, true}, {r1, false}});
  CHECK(g.rooted);
  CHECK(g.regular());
  CHECK(g.children({}).size() == 2);
  CHECK(evaluate(g, r0));
  CHECK_FALSE(evaluate(g, r1));
  CHECK(winner(g, r1) == Player::Bob);
  CHECK(run_in(g, r0));
  CHECK_FALSE(run_in(g, Run({}, moves({"1"}))));
  CHECK(runs_through(g, moves({"1"})).size() == 1);
}

TEST_CASE("truncation respects the cap") {
  Game c = canonical("cogenerating");
  CHECK_THROWS_AS(truncate(c, 10, 20), ResourceError);
  CHECK_NOTHROW(truncate(c, 4, 20));
}

TEST_CASE("levels round trip") {
  Game c = canonical("cogenerating");
  LevelSystem ls = to_levels(c, 4);
  CHECK(levels_surjectivity_gap(ls) == std::nullopt);
  Game back = from_levels(ls);
  CHECK(truncate(back, 4).size() == truncate(c, 4).size());
}

TEST_CASE("moment helpers") {
  Moment t = moves({"1", "1", "0"});
  CHECK(trunc(t, 2) == moves({"1", "1"}));
  CHECK(is_prefix(moves({"1"}), t));
  CHECK_FALSE(is_prefix(moves({"0"}), t));
  CHECK(turn(t) == Player::Bob);
  CHECK(str(t) == "<1,1,0>");
}

TEST_CASE("stabilize keeps runs") {
  Game c = canonical("cogenerating");
  Game s = stabilize(c, 3);
  CHECK(all_runs(s).size() >= 4);
  for (const Run& r : all_runs(s)) CHECK(run_in(c, r));
}
