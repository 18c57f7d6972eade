#include <doctest.h>

#include "ludic/random.hpp"
#include "ludic/strategy.hpp"

using namespace ludic;

namespace {

Game two_runs(bool a0, bool a1) {
  return finite_game("two", {{Run({}, moves({"0"})), a0}, {Run({}, moves({"1"})), a1}});
}

// Some strategy in the full enumeration wins.
bool brute_wins(const Game& g, Player p) {
  for (const StrategySubgame& s : enumerate_strategies(g, p))
    if (is_winning(g, s).yes()) return true;
  return false;
}

}  // namespace

TEST_CASE("strategy counts on a two-run game") {
  Game g = two_runs(true, false);
  CHECK(enumerate_strategies(g, Player::Alice).size() == 2);
  CHECK(enumerate_strategies(g, Player::Bob).size() == 1);
  CHECK(has_winning_strategy(g, Player::Alice));
  CHECK_FALSE(has_winning_strategy(g, Player::Bob));
  CHECK_FALSE(has_winning_strategy(two_runs(false, false), Player::Alice));
  CHECK(has_winning_strategy(two_runs(false, false), Player::Bob));
}

TEST_CASE("backward induction agrees with exhaustive search") {
  Rng rng(7);
  GameShape sh{2, 3, 2, 1};
  for (int i = 0; i < 25; ++i) {
    Game g = random_game(rng, sh);
    bool a = has_winning_strategy(g, Player::Alice), b = has_winning_strategy(g, Player::Bob);
    CHECK(a != b);
    CHECK(a == brute_wins(g, Player::Alice));
    CHECK(b == brute_wins(g, Player::Bob));
    if (auto s = solve_finite(g, Player::Alice)) {
      CHECK(validate(g, *s, 6).yes());
      CHECK(is_winning(g, *s).yes());
    }
  }
}

TEST_CASE("subgame and mapping forms convert") {
  Game g = two_runs(true, false);
  auto s = solve_finite(g, Player::Alice);
  REQUIRE(s);
  StrategyMapping m = to_mapping(*s);
  CHECK(m.choose({}) == Move("0"));
  StrategySubgame back = to_subgame(g, m);
  CHECK(truncate(back.tree, 4).size() == truncate(s->tree, 4).size());
  CHECK(validate(g, m, 4).yes());
}

TEST_CASE("invalid strategies are caught") {
  Game g = two_runs(true, false);
  StrategyMapping both{Player::Bob, [](const Moment&) { return std::optional<Move>(Move("9")); }};
  CHECK(validate(g, both, 4).no());
}

TEST_CASE("play follows strategies and drivers") {
  Game g = two_runs(true, false);
  auto s = solve_finite(g, Player::Alice);
  REQUIRE(s);
  Driver first = [](const Moment&, const std::vector<Move>& legal) { return legal.front(); };
  PlayRecord rec = play(g, to_mapping(*s), std::nullopt, first, 3);
  CHECK(rec.moment == moves({"0", "0", "0", "0", "0", "0"}));
  CHECK(rec.log.size() == 6);
  CHECK(rec.log[1].source == "driver");
  CHECK(play(g, std::nullopt, std::nullopt, first, 0).log.empty());
  Driver bad = [](const Moment&, const std::vector<Move>&) { return Move("7"); };
  CHECK_THROWS_AS(play(g, std::nullopt, std::nullopt, bad, 1), InputError);
}

TEST_CASE("identity transport keeps winning strategies") {
  Rng rng(11);
  for (int i = 0; i < 10; ++i) {
    Game g = random_game(rng, GameShape{2, 2, 2, 1});
    auto s = solve_finite(g, Player::Alice);
    if (!s) continue;
    Transported t = transport(identity_map(), g, g, *s, 6);
    CHECK(is_winning(g, t.strategy).yes());
    StrategySubgame p = pullback_strategy(identity_map(), g, g, *s, 6);
    CHECK(is_winning(g, p).yes());
  }
}

TEST_CASE("transport refuses the wrong morphism kind") {
  Game a = two_runs(true, false), b = two_runs(false, false);
  auto s = solve_finite(a, Player::Alice);
  REQUIRE(s);
  CHECK_THROWS_AS(transport(identity_map(), a, b, *s, 4), InputError);
}
