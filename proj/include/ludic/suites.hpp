#pragma once
// Property suites shared by the command line tool and the acceptance test.
// Each criterion returns a report; a criterion passes when no line fails.

#include "ludic/io.hpp"
#include "ludic/random.hpp"

namespace ludic {

namespace suite_detail {

inline Check all_of(const std::string& what, std::size_t ok, std::size_t total, const std::string& first_bad) {
  std::string w = std::to_string(ok) + "/" + std::to_string(total) + " " + what;
  if (ok == total) return {Verdict::True, w, 0};
  return Check::fail(w + "; first failure: " + first_bad);
}

struct Tally {
  std::size_t ok = 0, total = 0;
  std::string first;
  void add(bool good, const std::string& why) {
    ++total;
    if (good) ++ok;
    else if (first.empty()) first = why;
  }
  void add(const Check& c, const std::string& where) { add(c.yes(), where + ": " + c.witness); }
  Check check(const std::string& what) const { return all_of(what, ok, total, first); }
};

inline GameShape shape(std::size_t branching, std::size_t depth, std::size_t cycle = 2) {
  GameShape s;
  s.branching = branching;
  s.depth = depth;
  s.alphabet = std::max<std::size_t>(branching, 2);
  s.max_cycle = cycle;
  return s;
}

// Payoff on g forcing images of Alice-won runs of `from` under f to be Alice-won
// (or, for Kind::B, images of Bob-won runs to be Bob-won); other runs random.
inline Game force_codomain(Rng& rng, const ChronMap& f, const Game& from, const Game& g, Kind kind) {
  auto bits = std::make_shared<std::map<Run, bool>>();
  for (const Run& r : all_runs(g)) bits->emplace(r, rng.coin());
  for (const Run& r : all_runs(from)) {
    Run y = run_image(f, r);
    bool a = from.alice_wins(r);
    if (kind == Kind::A && a) bits->at(y) = true;
    if (kind == Kind::B && !a) bits->at(y) = false;
  }
  return with_payoff(g, [bits](const Run& r) { return bits->at(r); }, g.name);
}

inline std::string moment_sig(const Game& g, const Moment& t, std::size_t depth) {
  if (t.size() == depth) return "()";
  std::vector<std::string> ks;
  for (Move x : g.children(t)) ks.push_back(moment_sig(g, extend(t, x), depth));
  std::sort(ks.begin(), ks.end());
  std::string s = "(";
  for (auto& k : ks) s += k;
  return s + ")";
}

// Unlabelled tree shape of T(depth): equal iff the truncations are isomorphic.
inline std::string tree_shape(const Game& g, std::size_t depth) {
  return g.rooted ? moment_sig(g, {}, depth) : "empty";
}

}  // namespace suite_detail

// ---------------------------------------------------------------- laws on a single game

inline Report game_laws(const Game& g, std::size_t depth) {
  Report rep;
  rep.suite = "laws:" + g.name;
  if (!g.rooted) {
    rep.add("empty game", Check::pass());
    return rep;
  }
  Truncation tr = truncate(g, depth);
  Check pruned = Check::pass(depth);
  for (const Moment& t : tr.moments)
    if (g.children(t).empty()) {
      pruned = Check::fail(str(t) + " has no children", t.size());
      break;
    }
  rep.add("pruned", pruned);
  Check surj = Check::pass(depth);
  for (std::size_t n = 0; n < depth; ++n)
    for (const Moment& t : tr.level(n))
      if (g.children(t).empty()) surj = Check::fail("level " + std::to_string(n) + " not hit from " + str(t), n);
  rep.add("level surjectivity", surj);
  if (!g.regular()) {
    rep.add("run basis", Check::undecided("no run basis", depth));
    return rep;
  }
  Check complete = Check::pass(depth);
  for (const Moment& t : tr.moments) {
    auto rs = g.basis(t);
    if (rs.empty()) {
      complete = Check::fail(str(t) + " lies on no basis run", t.size());
      break;
    }
    for (const Run& r : rs)
      if (!r.through(t) || !run_in(g, r)) {
        complete = Check::fail("basis run " + r.str() + " at " + str(t) + " leaves the tree", t.size());
        break;
      }
    if (!complete.yes()) break;
  }
  rep.add("regular completeness", complete);
  auto runs = runs_through(g, {});
  Check ultra = Check::pass();
  for (const Run& a : runs)
    for (const Run& b : runs)
      for (const Run& c : runs)
        if (delta(a, c) < std::min(delta(a, b), delta(b, c)) && ultra.yes())
          ultra = Check::fail("strong triangle fails on " + a.str() + " " + b.str() + " " + c.str());
  rep.add("delta ultrametric", ultra);
  Check nf = Check::pass();
  for (const Run& r : runs) {
    Moment unrolled = r.take(r.stem() + 2 * r.cycle().size());
    Moment cyc(unrolled.end() - static_cast<std::ptrdiff_t>(r.cycle().size()), unrolled.end());
    Run again(Moment(unrolled.begin(), unrolled.end() - static_cast<std::ptrdiff_t>(cyc.size())), cyc);
    if (!(again == r)) nf = Check::fail(r.str() + " normalizes to " + again.str());
  }
  rep.add("normal form", nf);
  return rep;
}

// ---------------------------------------------------------------- criteria

// 1. Chronology of random maps and composition closure of A/B-morphisms.
inline Report criterion1(std::uint64_t seed) {
  using namespace suite_detail;
  Rng rng(seed);
  Report rep;
  rep.suite = "chronology";
  Tally chron, closure, unit;
  for (std::size_t i = 0; i < 200; ++i) {
    auto pick_shape = [&] {
      std::size_t d = 1 + rng.below(6);
      std::size_t b = d <= 3 ? 3 : 2;
      if (d == 6) b = 1 + rng.below(2);
      return shape(b, d);
    };
    Game g1 = random_game(rng, pick_shape(), "G1");
    Game g2 = random_game(rng, pick_shape(), "G2");
    Game g3 = random_game(rng, pick_shape(), "G3");
    ChronMap f = random_map(rng, g1, g2, "f");
    ChronMap h = random_map(rng, g2, g3, "h");
    Kind kind = i % 2 ? Kind::A : Kind::B;
    g2 = random_payoff_for(rng, h, g2, g3, kind);
    g1 = random_payoff_for(rng, f, g1, g2, kind);
    std::string at = "instance " + std::to_string(i);
    chron.add(check_chronological(f, g1, g2, 6), at + " f");
    ChronMap hf = compose(h, f);
    chron.add(check_chronological(hf, g1, g3, 6), at + " h.f");
    auto is = [&](const ChronMap& m, const Game& a, const Game& b) {
      return kind == Kind::A ? a_morphism(m, a, b) : b_morphism(m, a, b);
    };
    Check parts = is(f, g1, g2), parts2 = is(h, g2, g3);
    if (!parts.yes() || !parts2.yes()) {
      closure.add(false, at + ": generated legs are not morphisms");
      continue;
    }
    closure.add(is(hf, g1, g3), at + (kind == Kind::A ? " A" : " B"));
    unit.add(agree_at(compose(identity_map(), f), f, g1, 6) && agree_at(compose(f, identity_map()), f, g1, 6),
             at + ": identity law");
  }
  rep.add("length and truncation preserved (depth 6)", chron.check("maps"));
  rep.add("A/B-morphisms closed under composition", closure.check("composites"));
  rep.add("identity laws", unit.check("maps"));
  return rep;
}

// 2. Mono and epi witnesses.
inline Report criterion2(std::uint64_t) {
  Report rep;
  rep.suite = "mono-epi";
  Scenario s = counterexample("mono_noninjective");
  for (const Finding& f : s.verify(6)) rep.add(s.name, f);
  Check rs = run_surjective(s.maps.at("g"), s.games.at("T1"), s.games.at("cogenerating"));
  rep.add("missed run is 1^w", rs.witness.find("(1)^w") != std::string::npos
                                   ? Check{Verdict::True, rs.witness, 0}
                                   : Check::fail("witness " + rs.witness));
  Profile p = profile(s.maps.at("f"), s.games.at("T"), s.games.at("T'"), 6);
  rep.add("profile mono", p.mono);
  rep.add("profile not injective", p.injective.no() ? Check{Verdict::True, p.injective.witness, 0}
                                                    : Check::fail("injective verdict " + p.injective.str()));
  return rep;
}

// 3. Preimages of pruned subtrees along locally surjective maps.
inline Report criterion3(std::uint64_t seed) {
  using namespace suite_detail;
  Report rep;
  rep.suite = "preimage";
  Scenario s = counterexample("preimage_unpruned");
  for (const Finding& f : s.verify(6)) rep.add(s.name, f);
  Rng rng(seed);
  Tally t;
  for (std::size_t i = 0; i < 50; ++i) {
    Game base = random_game(rng, shape(3, 1 + rng.below(3)), "B");
    Lift l = copy_lift(rng, base, Kind::AB);
    Embedding sub = random_embedding(rng, base);
    std::string at = "instance " + std::to_string(i);
    Check ls = locally_surjective(l.f, l.cover, base, 6);
    if (!ls.yes()) {
      t.add(ls, at + " not locally surjective");
      continue;
    }
    auto pt = preimage_tree(l.f, l.cover, sub.sub, 6);
    t.add(pt.pruned, at + ": unpruned at " + (pt.witness ? str(*pt.witness) : std::string("?")));
  }
  rep.add("preimages of pruned subtrees are pruned", t.check("locally surjective maps"));
  return rep;
}

// 4. Strategy transport along locally surjective morphisms.
inline Report criterion4(std::uint64_t seed) {
  using namespace suite_detail;
  Rng rng(seed);
  Report rep;
  rep.suite = "transport";
  Tally image, pre;
  for (std::size_t i = 0; i < 20; ++i) {
    Game g2 = random_game(rng, shape(3, 1 + rng.below(3)), "G2");
    Kind kind = std::vector<Kind>{Kind::A, Kind::B, Kind::AB}[i % 3];
    Lift l = copy_lift(rng, g2, kind);
    const Game& g1 = l.cover;
    std::size_t depth = std::max(*g1.horizon, *g2.horizon) + 2;
    std::string at = "instance " + std::to_string(i);
    bool A = kind != Kind::B, B = kind != Kind::A;
    for (Player p : {Player::Alice, Player::Bob}) {
      bool image_ok = p == Player::Alice ? A : B;
      bool pull_ok = p == Player::Alice ? B : A;
      if (image_ok)
        if (auto s = solve_finite(g1, p)) {
          Transported tr = transport(l.f, g1, g2, *s, depth);
          image.add(is_winning(g2, tr.strategy), at + " " + player_str(p));
        }
      if (pull_ok)
        if (auto s2 = solve_finite(g2, p)) {
          StrategySubgame back = pullback_strategy(l.f, g1, g2, *s2, depth);
          pre.add(is_winning(g1, back), at + " " + player_str(p));
        }
    }
  }
  rep.add("image transport keeps winning strategies", image.check("transports"));
  rep.add("preimage transport keeps winning strategies", pre.check("transports"));
  return rep;
}

// 5. Universal properties by exhaustive mediator enumeration.
inline Report criterion5(std::uint64_t seed) {
  using namespace suite_detail;
  Rng rng(seed);
  Report rep;
  rep.suite = "universal";
  const std::size_t D = 3;
  auto small = [&](const char* name) { return random_game(rng, shape(2, 1 + rng.below(2), 1), name); };
  Tally prod, coprod, eq, coeq;
  for (std::size_t i = 0; i < 6; ++i) {
    std::string at = "instance " + std::to_string(i);
    {  // product
      Game a = small("A"), b = small("B"), x = small("X");
      ChronMap f1 = random_map(rng, x, a, "f1"), f2 = random_map(rng, x, b, "f2");
      Game P = product({a, b});
      auto ms = enumerate_maps(x, P, D, [&](const Moment& t, const Moment& img) {
        return project(img, 0) == f1.apply(t) && project(img, 1) == f2.apply(t);
      });
      bool pair_ok = ms.size() == 1 && agree_at(ms[0], pair_map({f1, f2}), x, D);
      prod.add(pair_ok, at + ": " + std::to_string(ms.size()) + " mediators");
    }
    {  // coproduct
      Game a = small("A"), b = small("B"), x = small("X");
      ChronMap f1 = random_map(rng, a, x, "f1"), f2 = random_map(rng, b, x, "f2");
      Game S = coproduct({a, b});
      std::vector<ChronMap> fs{f1, f2};
      auto ms = enumerate_maps(S, x, D, [&](const Moment& t, const Moment& img) {
        if (t.empty()) return img.empty();
        return img == fs[untag_move(t[0]).first].apply(untag(t));
      });
      bool ok = ms.size() == 1 && agree_at(ms[0], copair(fs), S, D);
      coprod.add(ok, at + ": " + std::to_string(ms.size()) + " mediators");
    }
    {  // equalizer: g agrees with f on a random set of runs
      Game x = small("X"), y = small("Y");
      ChronMap f = random_map(rng, x, y, "f");
      auto rx = all_runs(x), ry = all_runs(y);
      std::optional<ChronMap> g;
      for (int attempt = 0; attempt < 20 && !g; ++attempt) {
        std::vector<std::size_t> h;
        for (const Run& r : rx) {
          Run fr = run_image(f, r);
          std::size_t k = static_cast<std::size_t>(std::find(ry.begin(), ry.end(), fr) - ry.begin());
          h.push_back(rng.coin() ? k : rng.below(ry.size()));
        }
        g = chronological_from_runs(x, y, h);
      }
      if (!g) g = f;
      g->name = "g";
      Equalizer E = equalizer(f, *g, x);
      if (!E.game.rooted) {
        eq.add(true, at);
        continue;
      }
      Game z = small("Z");
      ChronMap k = random_map(rng, z, E.game, "k");
      ChronMap h = compose(E.inclusion, k);
      auto ms = enumerate_maps(z, E.game, D, [&](const Moment& t, const Moment& img) {
        return E.inclusion.apply(img) == h.apply(t);
      });
      bool ok = ms.size() == 1 && agree_at(compose(f, h), compose(*g, h), z, D);
      eq.add(ok, at + ": " + std::to_string(ms.size()) + " mediators");
    }
    {  // coequalizer: h = k.q must factor uniquely through q
      Game x = small("X"), y = small("Y"), z = small("Z");
      ChronMap f = random_map(rng, x, y, "f"), g = random_map(rng, x, y, "g");
      Coequalizer C = coequalizer(f, g, x, y);
      ChronMap k = random_map(rng, C.game, z, "k");
      ChronMap h = compose(k, C.q);
      MomentMap<Moment> need;
      bool consistent = true;
      for (const Moment& t : truncate(y, D).moments) {
        auto [it, fresh] = need.emplace(C.q.apply(t), h.apply(t));
        if (!fresh && it->second != h.apply(t)) consistent = false;
      }
      auto ms = enumerate_maps(C.game, z, D, [&](const Moment& u, const Moment& img) {
        auto it = need.find(u);
        return it != need.end() && it->second == img;
      });
      bool ok = consistent && ms.size() == 1 && agree_at(compose(C.q, f), compose(C.q, g), x, D);
      coeq.add(ok, at + ": " + std::to_string(ms.size()) + " mediators");
    }
  }
  rep.add("product", prod.check("unique mediators"));
  rep.add("coproduct", coprod.check("unique mediators"));
  rep.add("equalizer", eq.check("unique mediators"));
  rep.add("coequalizer", coeq.check("unique mediators"));
  return rep;
}

// 6. Quotient gallery.
inline Report criterion6(std::uint64_t) {
  Report rep;
  rep.suite = "quotients";
  for (const char* name : {"quotient_composite", "strict_quotient_gap", "descent_failure"}) {
    Scenario s = counterexample(name, 4);
    for (const Finding& f : s.verify(6)) rep.add(s.name, f);
  }
  return rep;
}

// Middle objects of the four systems on the shifted two-run map, as "run:winner" lists.
inline std::vector<std::pair<std::string, std::string>> middle_payoffs() {
  Game T = finite_game("T", {{Run::constant({}, Move("0")), true}, {Run::constant({}, Move("1")), true}});
  Game T2 = finite_game("T'", {{Run({Move("0")}, {Move("0")}), true}, {Run({Move("0")}, {Move("1")}), false}});
  ChronMap f = make_map("f", [](const Moment& t) {
    Moment y;
    if (t.empty()) return y;
    y.push_back(Move("0"));
    y.insert(y.end(), t.begin(), t.end() - 1);
    return y;
  });
  std::vector<std::pair<std::string, std::string>> out;
  for (FactorSystem s : {FactorSystem::epi_regmono, FactorSystem::Estar_M, FactorSystem::E_Mstar,
                         FactorSystem::strongepi_mono}) {
    Factorization fz = factorize(f, T, T2, s);
    std::string sig;
    for (const Run& r : all_runs(fz.mid)) sig += r.str() + (fz.mid.alice_wins(r) ? ":A " : ":B ");
    out.push_back({system_str(s), sig});
  }
  return out;
}

// 7. Factorization systems and unique diagonals.
inline Report criterion7(std::uint64_t seed) {
  using namespace suite_detail;
  Rng rng(seed);
  Report rep;
  rep.suite = "factorization";
  const std::size_t D = 4;
  Tally fact, diag;
  const FactorSystem systems[] = {FactorSystem::epi_regmono, FactorSystem::Estar_M, FactorSystem::E_Mstar,
                                  FactorSystem::strongepi_mono};
  for (std::size_t i = 0; i < 50; ++i) {
    FactorSystem sys = systems[i % 4];
    std::string at = "square " + std::to_string(i) + " " + system_str(sys);
    Game a = random_game(rng, shape(2, 1 + rng.below(2), 1), "A");
    Game d1 = random_game(rng, shape(2, 1 + rng.below(2), 1), "D1");
    Game d = random_game(rng, shape(2, 1 + rng.below(2), 1), "D");
    ChronMap f1 = random_map(rng, a, d1, "f1"), h = random_map(rng, d1, d, "h");
    ChronMap hf = compose(h, f1);
    Factorization F1 = factorize(f1, a, d1, sys), F2 = factorize(hf, a, d, sys);
    bool good = agree_at(compose(F1.m, F1.e), f1, a, D + 2) && agree_at(compose(F2.m, F2.e), hf, a, D + 2);
    Check ce = in_E(F1.e, a, F1.mid, sys, D), cm = in_M(F2.m, F2.mid, d, sys, D);
    fact.add(good && ce.yes() && cm.yes(),
             at + (good ? "" : ": m.e differs from f") + (ce.yes() ? "" : ": e not in E " + ce.witness) +
                 (cm.yes() ? "" : ": m not in M " + cm.witness));
    // Square e1 | h.m1 against e2 | m2; the diagonal B1 -> B2 must be unique.
    MomentMap<Moment> need;
    bool consistent = true;
    for (const Moment& t : truncate(a, D).moments) {
      auto [it, fresh] = need.emplace(F1.e.apply(t), F2.e.apply(t));
      if (!fresh && it->second != F2.e.apply(t)) consistent = false;
    }
    ChronMap hm1 = compose(h, F1.m);
    auto ms = enumerate_maps(F1.mid, F2.mid, D, [&](const Moment& u, const Moment& img) {
      auto it = need.find(u);
      return it != need.end() && it->second == img && F2.m.apply(img) == hm1.apply(u);
    });
    diag.add(consistent && ms.size() == 1, at + ": " + std::to_string(ms.size()) + " diagonals");
  }
  rep.add("factorizations lie in (E, M)", fact.check("factorizations"));
  rep.add("unique diagonals", diag.check("squares"));
  auto mids = middle_payoffs();
  Check distinct = Check::pass();
  for (std::size_t i = 0; i < mids.size(); ++i)
    for (std::size_t j = i + 1; j < mids.size(); ++j)
      if (mids[i].second == mids[j].second && distinct.yes())
        distinct = Check::fail(mids[i].first + " and " + mids[j].first + " share the middle " + mids[i].second);
  if (distinct.yes()) {
    std::string w;
    for (auto& [n, s] : mids) w += n + "=[" + s.substr(0, s.size() - 1) + "] ";
    distinct.witness = w.substr(0, w.size() - 1);
  }
  rep.add("four middle objects pairwise distinct", distinct);
  return rep;
}

// 8. Pushouts of embeddings are embeddings.
inline Report criterion8(std::uint64_t seed) {
  using namespace suite_detail;
  Rng rng(seed);
  Report rep;
  rep.suite = "coregular";
  Tally t;
  for (std::size_t i = 0; i < 30; ++i) {
    Mode mode = i % 2 ? Mode::B : Mode::A;
    std::string at = std::string("instance ") + std::to_string(i) + (mode == Mode::A ? " A" : " B");
    Game x = random_game(rng, shape(2, 1 + rng.below(3), 2), "X");
    Embedding e = random_embedding(rng, x);
    Game y = random_game(rng, shape(2, 1 + rng.below(3), 2), "Y");
    ChronMap g = random_map(rng, e.sub, y, "g");
    y = force_codomain(rng, g, e.sub, y, mode == Mode::A ? Kind::A : Kind::B);
    Cospan P = pushout(e.m, x, g, y, e.sub, mode);
    Check inj = injective_at(P.j2, y, 5);
    Check am = a_morphism(P.j2, y, P.game), bm = b_morphism(P.j2, y, P.game);
    Check ch = check_chronological(P.j2, y, P.game, 5);
    t.add(inj.yes() && am.yes() && bm.yes() && ch.yes(),
          at + ": inj " + inj.str() + ", A " + am.str() + ", B " + bm.str() + ", chron " + ch.str());
  }
  rep.add("pushout legs of embeddings are embeddings (depth 5)", t.check("pushouts"));
  return rep;
}

inline UltraSpace random_ultra(Rng& rng, std::size_t n) {
  std::vector<std::string> words;
  while (words.size() < n) {
    std::string w;
    std::size_t len = 1 + rng.below(4);
    for (std::size_t i = 0; i < len; ++i) w += static_cast<char>('0' + rng.below(2));
    if (std::find(words.begin(), words.end(), w) == words.end()) words.push_back(w);
  }
  std::vector<std::vector<Code>> code(n, std::vector<Code>(n, kInf));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) {
        Code k = 0;
        while (k < words[i].size() && k < words[j].size() && words[i][k] == words[j][k]) ++k;
        code[i][j] = k;
      }
  std::vector<std::string> labels;
  for (auto& w : words) labels.push_back("p" + w);
  return make_space(labels, code);
}

// 9. Run spaces, ball round trips and the nonexpansion criterion.
inline Report criterion9(std::uint64_t seed) {
  using namespace suite_detail;
  Rng rng(seed);
  Report rep;
  rep.suite = "metric";
  Tally tri, round, crit;
  for (std::size_t i = 0; i < 30; ++i) {
    std::string at = "game " + std::to_string(i);
    Game g = random_game(rng, shape(3, 1 + rng.below(3)), "G");
    UltraSpace x = run_space(g);
    tri.add(validate(x), at);
    round.add(is_seqspa(x) ? ball_roundtrip(x) : Check::fail("not a SeqSpa instance"), at + " run space");
    UltraSpace u = random_ultra(rng, 2 + rng.below(5));
    round.add(is_seqspa(u) ? ball_roundtrip(u) : Check::fail("not a SeqSpa instance"), at + " random space");
  }
  for (std::size_t i = 0; i < 6; ++i) {
    Game g1 = random_game(rng, shape(2, 1 + rng.below(2), 1), "G1");
    Game g2 = random_game(rng, shape(2, 1 + rng.below(2), 1), "G2");
    auto r1 = all_runs(g1), r2 = all_runs(g2);
    std::size_t H = split_depth(r1);
    std::vector<std::size_t> h(r1.size(), 0);
    std::function<void(std::size_t)> go = [&](std::size_t k) {
      if (k == r1.size()) {
        auto ms = enumerate_maps(g1, g2, H, [&](const Moment& t, const Moment& img) {
          for (std::size_t j = 0; j < r1.size(); ++j)
            if (r1[j].through(t) && img != r2[h[j]].take(t.size())) return false;
          return true;
        });
        bool brute = !ms.empty();
        bool crit_says = chronological_from_runs(g1, g2, h).has_value();
        std::string hs;
        for (std::size_t v : h) hs += std::to_string(v);
        crit.add(brute == crit_says, "pair " + std::to_string(i) + " run map " + hs);
        return;
      }
      for (std::size_t v = 0; v < r2.size(); ++v) {
        h[k] = v;
        go(k + 1);
      }
    };
    go(0);
  }
  rep.add("run space codes satisfy the strong triangle", tri.check("games"));
  rep.add("ball game round trip is a code isometry", round.check("spaces"));
  rep.add("nonexpansion matches chronological map existence", crit.check("run maps"));
  return rep;
}

// 10. Banach-Mazur universality and naturality.
inline Report criterion10(std::uint64_t seed) {
  using namespace suite_detail;
  Rng rng(seed);
  Report rep;
  rep.suite = "banach-mazur";
  Tally chron, inj, win, shrink;
  for (std::size_t i = 0; i < 20; ++i) {
    std::string at = "game " + std::to_string(i);
    Game g = random_game(rng, shape(3, 1 + rng.below(3)), "G");
    UniversalityReport u = verify_universality(g, 5);
    chron.add(u.chronological, at);
    inj.add(u.injective, at);
    win.add(u.winners, at);
    shrink.add(u.shrinkage, at);
  }
  rep.add("eta chronological", chron.check("games"));
  rep.add("eta injective", inj.check("games"));
  rep.add("eta preserves winners", win.check("games"));
  rep.add("nested opens shrink", shrink.check("games"));
  Tally nat, exact;
  for (std::size_t i = 0; i < 10; ++i) {
    Game base = random_game(rng, shape(2, 1 + rng.below(2), 1), "G'");
    Lift l = copy_lift(rng, base, Kind::B, 1, 3);
    Check ls = locally_surjective(l.f, l.cover, base, 5), bm = b_morphism(l.f, l.cover, base);
    if (!ls.yes() || !bm.yes()) {
      nat.add(false, "map " + std::to_string(i) + " is not a locally surjective B-morphism");
      continue;
    }
    nat.add(bm_naturality(l.f, l.cover, base, 5), "map " + std::to_string(i));
    Lift le = copy_lift(rng, base, Kind::AB, 1, 3);
    exact.add(bm_naturality(le.f, le.cover, base, 5), "map " + std::to_string(i));
  }
  rep.add("naturality on locally surjective B-morphisms (depth 5)", nat.check("maps"));
  Check minimal = bm_naturality(identity_map(), terminal_game(), generating_game(), 3);
  rep.add("terminal -> generating identity breaks the square",
          minimal.no() ? Check{Verdict::True, minimal.witness, minimal.depth}
                       : Check::fail("the square commutes"));
  rep.add("naturality when payoffs are exact preimages (depth 5)", exact.check("maps"));
  return rep;
}

// 11. Exponentials.
inline Report criterion11(std::uint64_t seed) {
  using namespace suite_detail;
  Rng rng(seed);
  Report rep;
  rep.suite = "exponential";
  Tally iso, tri, law;
  for (std::size_t i = 0; i < 5; ++i) {
    Game g = random_game(rng, shape(2, 1 + rng.below(2), 1), "G");
    Exponential E = exponential(generating_game(), g);
    iso.add(tree_shape(E.game(), 3) == tree_shape(g, 3), "game " + std::to_string(i));
  }
  for (std::size_t i = 0; i < 4; ++i) {
    Game g0 = random_game(rng, shape(2, 1, 1), "G0");
    Game g1 = random_game(rng, shape(2, 1, 1), "G1");
    Game g2 = random_game(rng, shape(2, 1 + rng.below(2), 1), "G2");
    Exponential E = exponential(g1, g2);
    Game dom = product({g0, g1});
    std::size_t n = 0;
    for (const ChronMap& h : enumerate_maps(dom, g2, 2)) {
      ChronMap lhs = compose(E.ev(), product_map({E.curry(h), identity_map()}));
      tri.add(agree_at(lhs, h, dom, 2), "instance " + std::to_string(i) + " map " + std::to_string(n++));
    }
  }
  std::size_t tried = 0;
  for (std::size_t i = 0; law.total < 12 && tried < 60; ++tried) {
    Game g1 = random_game(rng, shape(2, 1 + rng.below(2), 1), "G1");
    Game g2 = random_game(rng, shape(2, 1 + rng.below(2), 1), "G2");
    bool any_a = false;
    for (const Run& r : all_runs(g1)) any_a = any_a || g1.alice_wins(r);
    if (!any_a) continue;
    std::optional<Exponential> E;
    try {
      E.emplace(g1, g2, 20000);
    } catch (const ResourceError&) {
      continue;
    }
    // Strategy existence in G2 by scanning every strategy; in the exponential by backward induction.
    auto scan = [](const Game& g, Player p) {
      for (const StrategySubgame& s : enumerate_strategies(g, p))
        if (is_winning(g, s).yes()) return true;
      return false;
    };
    bool a2 = scan(g2, Player::Alice), b2 = scan(g2, Player::Bob);
    bool ae = has_winning_strategy(E->game(), Player::Alice), be = has_winning_strategy(E->game(), Player::Bob);
    std::string at = "pair " + std::to_string(i++);
    law.add(ae == a2, at + ": Alice wins exp " + std::to_string(ae) + " but G2 " + std::to_string(a2));
    if (b2) law.add(be, at + ": Bob wins G2 but not exp");
  }
  rep.add("exp(generating, G) has the shape of G (depth 3)", iso.check("games"));
  rep.add("ev after curry returns the map", tri.check("maps"));
  rep.add("strategy transfer", law.check("checks"));
  return rep;
}

// 12. Weak classifier and the classifier gadget.
inline Report criterion12(std::uint64_t seed) {
  using namespace suite_detail;
  Rng rng(seed);
  Report rep;
  rep.suite = "classifier";
  const std::size_t D = 4;
  Tally sq;
  for (std::size_t i = 0; i < 20; ++i) {
    std::string at = "pair " + std::to_string(i);
    Game x = random_game(rng, shape(2, 1 + rng.below(3), 1), "X");
    Embedding e = random_embedding(rng, x);
    Game g = random_game(rng, shape(2, 1 + rng.below(3), 1), "G");
    ChronMap f = random_map(rng, e.sub, g, "f");
    g = force_codomain(rng, f, e.sub, g, Kind::A);
    Game bot = weak_classifier(g);
    ChronMap chi = classify_partial(e.m, e.sub, f);
    std::string bad;
    Check ch = check_chronological(chi, x, bot, D);
    if (!ch.yes()) bad = "chi not chronological: " + ch.witness;
    for (const Moment& s : truncate(e.sub, D).moments)
      if (bad.empty() && chi.apply(e.m.apply(s)) != f.apply(s)) bad = "square fails at " + str(s);
    // Pullback: a moment of X lands in G exactly when it comes from S, and then over f.
    for (const Moment& t : truncate(x, D).moments) {
      if (!bad.empty()) break;
      Moment y = chi.apply(t);
      bool in_g = !has_pad(y);
      bool in_s = contains(e.sub, t);
      if (in_g != in_s) bad = "pullback fails at " + str(t);
      else if (in_s && f.apply(t) != y) bad = "pullback leg differs at " + str(t);
    }
    Check am = a_morphism(chi, x, bot);
    if (bad.empty() && !am.yes()) bad = "chi not an A-morphism: " + am.witness;
    sq.add(bad.empty(), at + ": " + bad);
  }
  rep.add("classify_partial squares are pullbacks (depth 4)", sq.check("pairs"));
  ClassifierGadget cg = classifier_gadget(4);
  bool lip = is_lipschitz(cg.space, cg.space, cg.chi) && is_lipschitz(cg.space, cg.space, cg.chi2);
  bool distinct = cg.chi != cg.chi2;
  auto f1 = fiber(cg.chi, cg.bar), f2 = fiber(cg.chi2, cg.bar);
  bool same = f1 == f2 && f1 == std::vector<std::size_t>{cg.bar};
  rep.add("gadget maps are 1-Lipschitz", lip ? Check::pass() : Check::fail("a gadget map expands a distance"));
  rep.add("gadget maps are distinct", distinct ? Check::pass() : Check::fail("chi equals chi'"));
  rep.add("gadget preimages of xbar agree and are {xbar}",
          same ? Check::pass() : Check::fail("fibers of xbar differ"));
  return rep;
}

// Every subset of X in some member.
inline bool omega_brute(const FinSpace& x, const std::vector<Mask>& fam) {
  for (Mask F = 0; F <= x.full(); ++F) {
    bool inside = false;
    for (Mask u : fam)
      if ((F & ~u) == 0) inside = true;
    if (!inside) return false;
  }
  return true;
}

// Every infinite subselection of prefix + cycle^w is an omega-cover: such a
// selection repeats a nonempty set of cycle slots and any finite set of others.
inline bool gamma_brute(const FinSpace& x, const std::vector<Mask>& prefix, const std::vector<Mask>& cycle) {
  std::vector<Mask> all = prefix;
  all.insert(all.end(), cycle.begin(), cycle.end());
  for (std::size_t S = 1; S < (std::size_t{1} << cycle.size()); ++S)
    for (std::size_t P = 0; P < (std::size_t{1} << all.size()); ++P) {
      std::vector<Mask> fam;
      for (std::size_t i = 0; i < cycle.size(); ++i)
        if (S >> i & 1) fam.push_back(cycle[i]);
      for (std::size_t i = 0; i < all.size(); ++i)
        if (P >> i & 1) fam.push_back(all[i]);
      if (!omega_brute(x, fam)) return false;
    }
  return true;
}

// All topologies on n points, n <= 3, plus some on 4.
inline std::vector<FinSpace> small_spaces(Rng& rng) {
  std::vector<FinSpace> out;
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<std::string> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back(std::string(1, static_cast<char>('a' + i)));
    Mask full = (Mask{1} << n) - 1;
    std::vector<Mask> middle;
    for (Mask m = 1; m < full; ++m) middle.push_back(m);
    std::size_t tries = n <= 3 ? (std::size_t{1} << middle.size()) : 40;
    for (std::size_t s = 0; s < tries; ++s) {
      std::size_t pick = n <= 3 ? s : rng.below(std::size_t{1} << middle.size());
      std::vector<Mask> opens{0, full};
      for (std::size_t i = 0; i < middle.size(); ++i)
        if (pick >> i & 1) opens.push_back(middle[i]);
      try {
        out.push_back(fin_space(pts, opens));
      } catch (const InputError&) {
      }
    }
  }
  return out;
}

// 13. Topological games.
inline Report criterion13(std::uint64_t seed) {
  using namespace suite_detail;
  Rng rng(seed);
  Report rep;
  rep.suite = "topology";
  Tally omega, gamma;
  for (const FinSpace& x : small_spaces(rng)) {
    auto opens = x.all_opens();
    std::size_t fams = std::min<std::size_t>(std::size_t{1} << opens.size(), 256);
    for (std::size_t s = 0; s < fams; ++s) {
      std::size_t pick = opens.size() <= 8 ? s : rng.below(std::size_t{1} << std::min<std::size_t>(opens.size(), 30));
      std::vector<Mask> fam;
      for (std::size_t i = 0; i < opens.size(); ++i)
        if (pick >> i & 1) fam.push_back(opens[i]);
      omega.add(is_omega_cover(x, fam) == omega_brute(x, fam), x.set_str(x.full()) + " family " + std::to_string(pick));
    }
    for (std::size_t s = 0; s < 24; ++s) {
      std::vector<Mask> pre, cyc;
      for (std::size_t i = rng.below(3); i > 0; --i) pre.push_back(rng.pick(opens));
      for (std::size_t i = 1 + rng.below(3); i > 0; --i) cyc.push_back(rng.pick(opens));
      auto cp = cover_predicates(x, pre, cyc);
      gamma.add(cp.gamma == gamma_brute(x, pre, cyc) && cp.omega == omega_brute(x, [&] {
                  auto a = pre;
                  a.insert(a.end(), cyc.begin(), cyc.end());
                  return a;
                }()),
                "selection " + std::to_string(s) + " on " + x.set_str(x.full()));
    }
  }
  rep.add("omega-cover predicate matches brute force", omega.check("families"));
  rep.add("gamma-cover predicate matches brute force", gamma.check("selections"));

  FinSpace X = discrete_space({"p", "q"});
  FinSpace S = sierpinski();
  FinSpace Y = discrete_space({"u", "v", "w"});
  std::vector<RationalFn> FX{{rat(0), rat(0)}, {rat(1, 2), rat(0)}, {rat(1), rat(1, 3)}};
  std::vector<RationalFn> FS{{rat(0), rat(0)}, {rat(0), rat(1, 2)}, {rat(0), rat(2)}};
  std::vector<RationalFn> FY{{rat(0), rat(0), rat(0)}, {rat(1, 2), rat(1), rat(0)}, {rat(0), rat(1, 3), rat(-1, 2)}};
  Tally chron;
  for (const Transform& tr : {theta(), eta(), theta(Target::Gamma), eta(Target::Gamma)})
    for (auto& [sp, fs, nm] : std::vector<std::tuple<FinSpace, std::vector<RationalFn>, std::string>>{
             {X, FX, "X"}, {S, FS, "Sierpinski"}, {Y, FY, "Y"}}) {
      TransformMap T = theta_eta(sp, fs, tr);
      chron.add(check_chronological(T.map, T.tight, T.cover, 3), tr.name + " on " + nm);
    }
  rep.add("theta/eta chronological (depth 3)", chron.check("transforms"));
  Tally nat;
  std::vector<FinMap> maps{{{0, 2}}, {{1, 1}}, {{2, 0}}};
  for (const FinMap& f : maps) {
    nat.add(naturality_check(theta(), f, X, Y, FY, 3), "theta square");
    nat.add(naturality_check(theta(Target::Gamma), f, X, Y, FY, 3), "theta_gamma square");
  }
  rep.add("theta naturality (depth 3)", nat.check("squares"));
  Transform bad{"theta_mutated", [](std::size_t n) { return n == 1 ? std::size_t{1} : std::size_t{0}; },
                Target::Omega};
  // A mutation is invisible on squares whose pulled-back values sit in I_0 and I_1 alike.
  std::size_t flagged = 0;
  std::string where;
  for (std::size_t i = 0; i < maps.size(); ++i)
    if (naturality_check(theta(), bad, maps[i], X, Y, FY, 3).no()) {
      ++flagged;
      where += (where.empty() ? "map " : ", map ") + std::to_string(i);
    }
  rep.add("mutated transform caught",
          flagged ? Check{Verdict::True, std::to_string(flagged) + "/" + std::to_string(maps.size()) +
                                             " squares flag it (" + where + ")", 0}
                  : Check::fail("no square detects the mutation"));
  return rep;
}

struct Criterion {
  int id;
  const char* title;
  const char* suite;
  Report (*run)(std::uint64_t);
};

inline const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {1, "chronology and composition laws", "laws", criterion1},
      {2, "mono and epi characterizations", "counterexamples", criterion2},
      {3, "preimage pruning", "laws", criterion3},
      {4, "strategy transport", "laws", criterion4},
      {5, "(co)limit universal properties", "laws", criterion5},
      {6, "quotient gallery", "counterexamples", criterion6},
      {7, "factorization systems", "laws", criterion7},
      {8, "coregularity", "laws", criterion8},
      {9, "metric equivalence", "metric", criterion9},
      {10, "Banach-Mazur universality", "topo", criterion10},
      {11, "exponentials", "laws", criterion11},
      {12, "weak classifier", "laws", criterion12},
      {13, "topological games", "topo", criterion13},
  };
  return list;
}

inline Report run_criterion(const Criterion& c, std::uint64_t seed) {
  Report r;
  try {
    r = c.run(seed);
  } catch (const std::exception& e) {
    r.add("exception", Check::fail(e.what()));
  }
  r.suite = std::to_string(c.id) + " " + c.title;
  return r;
}

}  // namespace ludic
