#include <doctest.h>

#include "ludic/metric.hpp"
#include "ludic/random.hpp"

using namespace ludic;

namespace {

// Ultrametric from random nested clusters: code(i,j) is the depth where i and j split.
UltraSpace nested(Rng& rng, std::size_t n, std::size_t levels) {
  std::vector<std::vector<std::size_t>> path(n);
  for (auto& p : path)
    for (std::size_t k = 0; k < levels; ++k) p.push_back(rng.below(2));
  std::vector<std::string> labels;
  std::vector<std::vector<Code>> code(n, std::vector<Code>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("p" + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      std::size_t k = 0;
      while (k < levels && path[i][k] == path[j][k]) ++k;
      code[i][j] = k;  // k == levels: same cluster at every level, split last
    }
  }
  return make_space(labels, code);
}

std::size_t brute_lipschitz(const UltraSpace& x, const UltraSpace& y) {
  std::size_t count = 0, total = 1;
  for (std::size_t i = 0; i < x.size(); ++i) total *= y.size();
  for (std::size_t m = 0; m < total; ++m) {
    std::vector<std::size_t> h;
    for (std::size_t i = 0, v = m; i < x.size(); ++i, v /= y.size()) h.push_back(v % y.size());
    bool ok = true;
    for (std::size_t a = 0; a < x.size(); ++a)
      for (std::size_t b = 0; b < x.size(); ++b) ok = ok && y.at(h[a], h[b]) >= x.at(a, b);
    count += ok;
  }
  return count;
}

}  // namespace

TEST_CASE("run space of terminal is one point") {
  UltraSpace x = run_space(canonical("terminal"));
  CHECK(x.size() == 1);
  CHECK(to_text(x) == "points 1\n(*)^w [A]\n\n");
}

TEST_CASE("krom space keeps Bob's runs") {
  CHECK(krom_space(canonical("generating")).size() == 1);
  CHECK(krom_space(canonical("terminal")).size() == 0);
  CHECK(krom_space(canonical("cogenerating")).size() == 0);
}

TEST_CASE("three-point space round trips through balls") {
  UltraSpace x = make_space({"a", "b", "c"}, {{kInf, 1, 0}, {1, kInf, 0}, {0, 0, kInf}});
  CHECK(validate(x).yes());
  CHECK(is_seqspa(x));
  CHECK(ball_roundtrip(x).yes());
  CHECK(ball(x, 0, 0) == std::vector<std::size_t>{0, 1});
  CHECK(ball(x, 0, 1) == std::vector<std::size_t>{0});
}

TEST_CASE("random ultrametrics round trip") {
  Rng rng(17);
  for (int i = 0; i < 20; ++i) {
    UltraSpace x = nested(rng, 2 + rng.below(5), 3);
    CHECK(validate(x).yes());
    if (!is_seqspa(x)) continue;
    CHECK(ball_roundtrip(x).yes());
    UltraSpace back = run_space(ball_game(x));
    CHECK(back.size() == x.size());
  }
}

TEST_CASE("invalid codes are rejected") {
  UltraSpace bad = make_space({"a", "b", "c"}, {{kInf, 2, 0}, {2, kInf, 1}, {0, 1, kInf}});
  CHECK(validate(bad).no());
  CHECK(validate(make_space({"a", "b"}, {{kInf, 0}, {1, kInf}})).no());
  CHECK_THROWS_AS(make_space({"a"}, {{kInf, 0}}), InputError);
}

TEST_CASE("hom space counts Lipschitz maps") {
  Rng rng(23);
  for (int i = 0; i < 10; ++i) {
    UltraSpace x = nested(rng, 2 + rng.below(2), 2), y = nested(rng, 2 + rng.below(3), 2);
    CHECK(hom_space(x, y).maps.size() == brute_lipschitz(x, y));
  }
  UltraSpace two = make_space({"a", "b"}, {{kInf, 0}, {0, kInf}});
  CHECK(hom_space(two, two).maps.size() == 4);
  CHECK(validate(hom_space(two, two).space).yes());
  CHECK_THROWS_AS(hom_space(two, two, 3), ResourceError);
}

TEST_CASE("classifier gadget") {
  for (std::size_t n = 2; n <= 5; ++n) {
    ClassifierGadget g = classifier_gadget(n);
    CHECK(validate(g.space).yes());
    CHECK(is_lipschitz(g.space, g.space, g.chi));
    CHECK(g.space.labels.back() == "xbar");
  }
  CHECK_THROWS_AS(classifier_gadget(1), InputError);
}

TEST_CASE("games without a run basis are unsupported") {
  Game g = from_levels(to_levels(canonical("cogenerating"), 3));
  CHECK_THROWS_AS(run_space(g), Unsupported);
}

TEST_CASE("chronological maps from run maps") {
  Game g = finite_game("g", {{Run({}, moves({"0"})), true}, {Run({}, moves({"1"})), false}});
  auto ok = chronological_from_runs(g, g, {1, 0});
  REQUIRE(ok);
  CHECK(run_image(*ok, Run({}, moves({"0"}))) == Run({}, moves({"1"})));
  Game h = finite_game("h", {{Run({}, moves({"0"})), true}, {Run(moves({"0"}), moves({"1"})), false}});
  CHECK(chronological_from_runs(g, h, {0, 1}));
  CHECK_FALSE(chronological_from_runs(h, g, {0, 1}));
}
