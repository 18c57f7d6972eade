#include <doctest.h>

#include "ludic/random.hpp"

using namespace ludic;

namespace {

Game two_runs(bool a0, bool a1) {
  return finite_game("two", {{Run({}, moves({"0"})), a0}, {Run({}, moves({"1"})), a1}});
}

std::size_t alice_runs(const Game& g) {
  std::size_t n = 0;
  for (const Run& r : all_runs(g)) n += g.alice_wins(r);
  return n;
}

// Strings over {a, b} of length <= n accepted by the predicate.
template <class P>
std::size_t count_strings(std::size_t n, P ok) {
  std::size_t c = 0;
  for (std::size_t len = 0; len <= n; ++len)
    for (std::size_t bits = 0; bits < (std::size_t{1} << len); ++bits) {
      std::string s;
      for (std::size_t i = 0; i < len; ++i) s += (bits >> i & 1) ? 'b' : 'a';
      c += ok(s);
    }
  return c;
}

}  // namespace

TEST_CASE("products and coproducts count runs and payoffs") {
  Rng rng(3);
  for (int i = 0; i < 12; ++i) {
    Game g = random_game(rng, GameShape{2, 2, 2, 2}, "g");
    Game h = random_game(rng, GameShape{2, 2, 2, 1}, "h");
    std::size_t ng = all_runs(g).size(), nh = all_runs(h).size();
    std::size_t ag = alice_runs(g), ah = alice_runs(h);
    Game pa = product({g, h}, Mode::A), pb = product({g, h}, Mode::B);
    CHECK(all_runs(pa).size() == ng * nh);
    CHECK(alice_runs(pa) == ag * ah);
    CHECK(alice_runs(pb) == ng * nh - (ng - ag) * (nh - ah));
    Game s = coproduct({g, h});
    CHECK(all_runs(s).size() == ng + nh);
    CHECK(alice_runs(s) == ag + ah);
  }
}

TEST_CASE("empty and nullary (co)products") {
  Game e = canonical("empty"), t = canonical("terminal");
  CHECK_FALSE(product({t, e}).rooted);
  CHECK(product({}).rooted);
  CHECK(all_runs(product({})).size() == 1);
  CHECK_FALSE(coproduct({}).rooted);
  CHECK(all_runs(coproduct({e, t})).size() == 1);
}

TEST_CASE("projections and injections") {
  Game g = two_runs(true, false), h = canonical("terminal");
  Game p = product({g, h});
  for (const Run& r : all_runs(p)) {
    CHECK(run_in(g, run_image(projection(0), r)));
    CHECK(run_in(h, run_image(projection(1), r)));
  }
  Game s = coproduct({g, h});
  for (const Run& r : all_runs(g)) CHECK(run_in(s, run_image(injection(0), r)));
  ChronMap back = copair({identity_map(), relabel("to0", [](Move) { return Move("0"); })});
  for (const Run& r : all_runs(s)) CHECK(run_in(g, run_image(back, r)));
}

TEST_CASE("equalizer keeps exactly the agreeing runs") {
  Game g = two_runs(true, false);
  ChronMap id = identity_map();
  ChronMap to0 = relabel("to0", [](Move) { return Move("0"); });
  Equalizer e = equalizer(id, to0, g);
  auto rs = all_runs(e.game);
  REQUIRE(rs.size() == 1);
  CHECK(rs[0] == Run({}, moves({"0"})));
  CHECK(e.game.alice_wins(rs[0]));
  CHECK(all_runs(equalizer(id, id, g).game).size() == 2);
}

TEST_CASE("pullback over terminal is the product") {
  Game g = two_runs(true, false), h = two_runs(false, true);
  ChronMap bang = relabel("!", [](Move) { return star(); });
  Span s = pullback(bang, g, bang, h);
  CHECK(all_runs(s.game).size() == 4);
}

TEST_CASE("coequalizer of two points of a two-run game") {
  Game t = canonical("terminal"), g = two_runs(true, false);
  ChronMap f = run_to_morphism(Run({}, moves({"0"}))), h = run_to_morphism(Run({}, moves({"1"})));
  Coequalizer a = coequalizer(f, h, t, g, Mode::A), b = coequalizer(f, h, t, g, Mode::B);
  CHECK(all_runs(a.game).size() == 1);
  CHECK(alice_runs(a.game) == 1);
  CHECK(alice_runs(b.game) == 0);
  CHECK(agree_at(compose(a.q, f), compose(a.q, h), t, 6));
}

TEST_CASE("D_B tree matches the quit rule") {
  Game d = d_b(canonical("terminal"));
  // 'b' is quit: only at even positions, and then forever.
  auto ok = [](const std::string& s) {
    auto q = s.find('b');
    if (q == std::string::npos) return true;
    return q % 2 == 0 && s.find('a', q) == std::string::npos;
  };
  for (std::size_t n = 0; n <= 6; ++n) CHECK(truncate(d, n).size() == count_strings(n, ok));
  for (const Run& r : all_runs(stabilize(d, 4)))
    CHECK(d.alice_wins(r) == !has_quit(r.take(r.stem())));
}

TEST_CASE("weak classifier tree matches the pad rule") {
  Game w = weak_classifier(canonical("terminal"));
  auto ok = [](const std::string& s) {
    auto p = s.find('b');
    return p == std::string::npos || s.find('a', p) == std::string::npos;
  };
  for (std::size_t n = 0; n <= 6; ++n) CHECK(truncate(w, n).size() == count_strings(n, ok));
  Game wg = weak_classifier(canonical("generating"));
  CHECK_FALSE(wg.alice_wins(Run({}, moves({"*"}))));
  CHECK(wg.alice_wins(Run::constant(moves({"*"}), pad_move())));
}

TEST_CASE("exponential runs are the maps, Alice's are the A-morphisms") {
  Rng rng(5);
  for (int i = 0; i < 6; ++i) {
    Game g1 = random_game(rng, GameShape{2, 1, 2, 1}, "g1");
    Game g2 = random_game(rng, GameShape{2, 2, 2, 1}, "g2");
    Exponential x = exponential(g1, g2);
    std::size_t H = x.horizon();
    auto maps = enumerate_maps(g1, g2, H);
    std::size_t a = 0;
    for (const ChronMap& f : maps) a += a_morphism(f, g1, g2).yes();
    CHECK(all_runs(x.game()).size() == maps.size());
    CHECK(alice_runs(x.game()) == a);
  }
  CHECK(all_runs(exponential(two_runs(true, false), two_runs(true, false)).game()).size() == 4);
  CHECK_THROWS_AS(exponential(canonical("empty"), canonical("terminal")), Unsupported);
}

TEST_CASE("factorizations compose back to the map") {
  Game g1 = finite_game("g1", {{Run({}, moves({"0"})), true}, {Run({}, moves({"1"})), false},
                               {Run(moves({"2"}), moves({"0"})), true}});
  Game g2 = two_runs(true, false);
  ChronMap f = relabel("f", [](Move x) { return x == Move("2") ? Move("0") : x; });
  for (FactorSystem s : {FactorSystem::epi_regmono, FactorSystem::Estar_M, FactorSystem::E_Mstar,
                         FactorSystem::strongepi_mono}) {
    CAPTURE(system_str(s));
    Factorization fz = factorize(f, g1, g2, s);
    CHECK(agree_at(compose(fz.m, fz.e), f, g1, 6));
    CHECK(in_E(fz.e, g1, fz.mid, s, 6).yes());
    CHECK(in_M(fz.m, fz.mid, g2, s, 6).yes());
  }
  CHECK(parse_system(system_str(FactorSystem::E_Mstar)) == FactorSystem::E_Mstar);
}
