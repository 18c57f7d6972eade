#include <doctest.h>

#include "ludic/random.hpp"
#include "ludic/topo.hpp"

using namespace ludic;

namespace {

// Families of subsets accepted as topologies.
std::size_t count_topologies(std::size_t n) {
  std::vector<std::string> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back(std::string(1, static_cast<char>('a' + i)));
  Mask full = (Mask{1} << n) - 1;
  std::vector<Mask> middle;
  for (Mask m = 1; m < full; ++m) middle.push_back(m);
  std::size_t count = 0;
  for (std::size_t s = 0; s < (std::size_t{1} << middle.size()); ++s) {
    std::vector<Mask> opens{0, full};
    for (std::size_t i = 0; i < middle.size(); ++i)
      if (s >> i & 1) opens.push_back(middle[i]);
    try {
      fin_space(pts, opens);
      ++count;
    } catch (const InputError&) {
    }
  }
  return count;
}

// Decreasing chains of nonempty opens of length <= n.
std::size_t count_chains(const FinSpace& x, Mask top, std::size_t n) {
  if (n == 0) return 1;
  std::size_t c = 1;
  for (Mask u : x.all_opens())
    if (u && (u & ~top) == 0) c += count_chains(x, u, n - 1);
  return c;
}

// Every subset of X lies in some member.
bool omega_by_subsets(const FinSpace& x, const std::vector<Mask>& fam) {
  for (Mask s = 0; s <= x.full(); ++s) {
    bool in = false;
    for (Mask u : fam) in = in || (s & ~u) == 0;
    if (!in) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("topology counts on 1, 2, 3 points") {
  CHECK(count_topologies(1) == 1);
  CHECK(count_topologies(2) == 4);
  CHECK(count_topologies(3) == 29);
}

TEST_CASE("sierpinski space") {
  FinSpace s = sierpinski();
  CHECK(s.is_open(1));
  CHECK_FALSE(s.is_open(2));
  CHECK(neighbourhood(s, 1) == 3);
  CHECK(in_closure(s, 1, 1));
  CHECK_FALSE(in_closure(s, 0, 2));
  CHECK(s.set_str(3) == "{a,b}");
  CHECK_THROWS_AS(fin_space({"a", "a"}, {0, 3}), InputError);
}

TEST_CASE("BM trees are chains of shrinking opens") {
  FinSpace s = sierpinski();
  Game g = bm_game(s);
  for (std::size_t n = 0; n <= 5; ++n) CHECK(truncate(g, n).size() == count_chains(s, s.full(), n));
  CHECK(truncate(g, 2).size() == 6);
  FinSpace d = discrete_space({"a", "b"});
  Game gd = bm_game(d);
  for (std::size_t n = 0; n <= 4; ++n) CHECK(truncate(gd, n).size() == count_chains(d, d.full(), n));
  for (const Run& r : all_runs(stabilize(g, 3))) CHECK_FALSE(g.alice_wins(r));
  CHECK_FALSE(bm_game(fin_space({}, {0})).rooted);
}

TEST_CASE("cover predicates match brute force") {
  FinSpace d = discrete_space({"a", "b"});
  std::vector<Mask> all = d.all_opens();
  for (std::size_t s = 0; s < (std::size_t{1} << all.size()); ++s) {
    std::vector<Mask> fam;
    for (std::size_t i = 0; i < all.size(); ++i)
      if (s >> i & 1) fam.push_back(all[i]);
    CHECK(cover_predicates(d, fam).omega == omega_by_subsets(d, fam));
    bool every_full = std::all_of(fam.begin(), fam.end(), [&](Mask u) { return u == d.full(); });
    CHECK(cover_predicates(d, {}, fam).gamma == (!fam.empty() && every_full));
  }
  CHECK_THROWS_AS(cover_predicates(sierpinski(), {2}), InputError);
}

TEST_CASE("continuity and openness") {
  FinSpace s = sierpinski(), d = discrete_space({"a", "b"});
  FinMap id{{0, 1}}, swap{{1, 0}}, to_a{{0, 0}};
  CHECK(is_continuous(id, s, s).yes());
  CHECK(is_continuous(swap, s, s).no());
  CHECK(is_continuous(id, d, s).yes());
  CHECK(is_continuous(id, s, d).no());
  CHECK(is_open_map(id, s, d).yes());
  CHECK(is_open_map(id, d, s).no());
  CHECK(is_open_map(to_a, s, s).yes());
  CHECK(compose(swap, swap).at == id.at);
  CHECK_THROWS_AS(is_continuous(FinMap{{0}}, s, s), InputError);
}

TEST_CASE("rational level sets") {
  CHECK(in_interval(rat(1, 3), 1));
  CHECK_FALSE(in_interval(rat(1, 2), 1));
  CHECK(in_interval(rat(-1, 3), 1));
  CHECK(rat(2, -4) == rat(-1, 2));
  CHECK(rat_str(rat(6, 3)) == "2");
  RationalFn f{rat(0), rat(1, 2)};
  CHECK(level_set(f, 0) == 3);
  CHECK(level_set(f, 1) == 1);
  CHECK_THROWS_AS(rat(1, 0), InputError);
  CHECK_THROWS_AS(make_family({{rat(1), rat(1)}}, 2), InputError);
}

TEST_CASE("theta and eta squares commute for continuous maps") {
  FinSpace s = sierpinski();
  std::vector<RationalFn> fy{{rat(0), rat(0)}, {rat(0), rat(1, 2)}, {rat(0), rat(3)}};
  for (const char* v : {"theta", "eta", "theta_gamma", "eta_gamma"}) {
    CAPTURE(v);
    Transform t = transform_variant(v);
    CHECK(naturality_check(t, FinMap{{0, 1}}, s, s, fy, 4).yes());
    CHECK(naturality_check(t, FinMap{{0, 0}}, s, s, fy, 4).yes());
  }
  CHECK_THROWS_AS(theta_eta(s, {{rat(0), rat(0)}, {rat(1), rat(0)}}, theta()), InputError);
}

TEST_CASE("covering games of small spaces") {
  FinSpace d = discrete_space({"a", "b"});
  Game g = covering_game(d, Target::Omega);
  CHECK(g.children({}).size() == 8);
  Game t = tightness_game(sierpinski(), 1, Target::Omega);
  CHECK(t.rooted);
  CHECK(selection_game(SelectionSpec{SelectionSpec::covering, d, 0, Target::Gamma}).rooted);
  CHECK_THROWS_AS(selection_game(SelectionSpec{SelectionSpec::tightness, d, 5, Target::Omega}), InputError);
}

TEST_CASE("BM embedding of random finite games") {
  Rng rng(29);
  for (int i = 0; i < 8; ++i) {
    Game g = random_game(rng, GameShape{2, 2, 2, 1});
    UniversalityReport r = verify_universality(g, 5);
    CAPTURE(r.shrinkage.witness);
    CHECK(r.ok());
  }
}

TEST_CASE("BM naturality: exact preimage payoff holds, identity into generating breaks") {
  Game t = canonical("terminal"), gen = canonical("generating");
  CHECK(bm_naturality(identity_map(), t, t, 4).yes());
  CHECK(bm_naturality(identity_map(), gen, gen, 4).yes());
  Check broken = bm_naturality(identity_map(), t, gen, 4);
  CHECK(broken.no());
  CHECK(broken.witness.find("(*)^w") != std::string::npos);
}
