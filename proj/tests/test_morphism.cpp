#include <doctest.h>

#include "ludic/gallery.hpp"

using namespace ludic;

namespace {

// Chronological maps T1(d) -> T2(d), counted as a product over children of sums over image children.
std::size_t brute_map_count(const Game& g1, const Game& g2, const Moment& t, const Moment& y, std::size_t d) {
  if (t.size() == d) return 1;
  std::size_t prod = 1;
  for (Move x : g1.children(t)) {
    std::size_t sum = 0;
    for (Move z : g2.children(y)) sum += brute_map_count(g1, g2, extend(t, x), extend(y, z), d);
    prod *= sum;
  }
  return prod;
}

Game two_runs(bool a0, bool a1) {
  return finite_game("two", {{Run({}, moves({"0"})), a0}, {Run({}, moves({"1"})), a1}});
}

}  // namespace

TEST_CASE("map enumeration matches the product-sum count") {
  Game c = canonical("cogenerating"), t = canonical("terminal");
  Game two = two_runs(true, false);
  for (std::size_t d = 1; d <= 3; ++d) {
    CHECK(enumerate_maps(c, c, d).size() == brute_map_count(c, c, {}, {}, d));
    CHECK(enumerate_maps(two, c, d).size() == brute_map_count(two, c, {}, {}, d));
    CHECK(enumerate_maps(c, t, d).size() == 1);
  }
  CHECK(brute_map_count(c, c, {}, {}, 2) == 15);
  CHECK(enumerate_maps(canonical("empty"), c, 3).size() == 1);
  CHECK(enumerate_maps(c, canonical("empty"), 3).empty());
}

TEST_CASE("enumerated maps are chronological") {
  Game c = canonical("cogenerating");
  for (const ChronMap& f : enumerate_maps(c, c, 3)) CHECK(check_chronological(f, c, c, 3).yes());
}

TEST_CASE("relabel acts on runs") {
  ChronMap f = relabel("flip", [](Move x) { return x == Move("0") ? Move("1") : Move("0"); });
  Run r(moves({"0"}), moves({"1"}));
  CHECK(run_image(f, r) == Run(moves({"1"}), moves({"0"})));
  CHECK(f(moves({"0", "0"})) == moves({"1", "1"}));
  ChronMap ff = compose(f, f);
  CHECK(run_image(ff, r) == r);
}

TEST_CASE("A and B morphism checks") {
  Game a = two_runs(true, false), b = two_runs(false, true);
  ChronMap id = identity_map();
  ChronMap flip = relabel("flip", [](Move x) { return x == Move("0") ? Move("1") : Move("0"); });
  CHECK(a_morphism(id, a, a).yes());
  CHECK(b_morphism(id, a, a).yes());
  CHECK(a_morphism(flip, a, b).yes());
  CHECK(b_morphism(flip, a, b).yes());
  CHECK(a_morphism(id, a, b).no());
  CHECK(b_morphism(id, a, b).no());
  CHECK_FALSE(a_morphism(id, a, b).witness.empty());
}

TEST_CASE("profile of the collapse to terminal") {
  Game a = two_runs(true, true);
  ChronMap f = relabel("collapse", [](Move) { return star(); });
  Profile p = profile(f, a, canonical("terminal"), 4);
  CHECK(p.is_A.yes());
  CHECK(p.mono.no());
  CHECK(p.injective.no());
  CHECK(p.epi.yes());
  CHECK(p.run_surjective.yes());
  CHECK(p.locally_surjective.yes());
  CHECK_THROWS_AS(profile(f, a, canonical("terminal"), 0), InputError);
}

TEST_CASE("non-chronological map is rejected") {
  Game c = canonical("cogenerating");
  ChronMap bad = make_map("bad", [](const Moment& t) { return Moment(t.size() + 1, Move("0")); });
  CHECK(check_chronological(bad, c, c, 3).no());
  CHECK_THROWS_AS(profile(bad, c, c, 3), IntegrityError);
}

TEST_CASE("separating map splits two maps") {
  Game t = canonical("terminal"), c = canonical("cogenerating");
  ChronMap f = run_to_morphism(Run({}, moves({"1"})));
  ChronMap g = run_to_morphism(Run(moves({"1", "1"}), moves({"0"})));
  Separation s = separating_map(f, g, t, 5);
  REQUIRE(s.verdict.yes());
  REQUIRE(s.at);
  CHECK(s.at->size() == 3);
  CHECK_FALSE(agree_at(compose(*s.h, f), compose(*s.h, g), t, 5));
  CHECK(check_chronological(*s.h, c, c, 5).yes());
  Separation none = separating_map(f, f, t, 5);
  CHECK(none.verdict.verdict == Verdict::Undecided);
}

TEST_CASE("gallery scenarios reproduce") {
  for (const std::string& name : counterexample_names()) {
    CAPTURE(name);
    Scenario s = counterexample(name);
    for (const Finding& f : s.verify(6)) {
      CAPTURE(f.label);
      CHECK(f.ok());
    }
  }
  CHECK_THROWS_AS(counterexample("nope"), InputError);
}

TEST_CASE("non-injective mono misses the all-ones run") {
  Scenario s = counterexample("mono_noninjective");
  Check rs = run_surjective(s.maps.at("g"), s.games.at("T1"), s.games.at("cogenerating"));
  CHECK(rs.no());
  CHECK(rs.witness.find("(1)^w") != std::string::npos);
  Profile p = profile(s.maps.at("f"), s.games.at("T"), s.games.at("T'"), 6);
  CHECK(p.mono.yes());
  CHECK(p.injective.no());
}
