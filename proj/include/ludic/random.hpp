#pragma once
// Seeded generators for property tests: small regular games, chronological
// maps between them, copy lifts and embeddings.

#include <random>

#include "ludic/combinators.hpp"

namespace ludic {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  // Uniform on [0, n); plain modulo keeps streams identical across standard libraries.
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(gen_() % n); }
  bool coin(unsigned percent = 50) { return below(100) < percent; }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    if (v.empty()) throw InputError("pick from an empty list");
    return v[below(v.size())];
  }

 private:
  std::mt19937_64 gen_;
};

struct GameShape {
  std::size_t branching = 3;  // max children per moment in the prefix tree
  std::size_t depth = 3;      // prefix tree depth (stabilization depth)
  std::size_t alphabet = 3;
  std::size_t max_cycle = 2;
};

// Random prefix tree of the given depth, each leaf continued by a short cycle.
inline Game random_game(Rng& rng, const GameShape& shape, std::string name = "G") {
  std::vector<std::pair<Run, bool>> runs;
  std::function<void(Moment&)> go = [&](Moment& t) {
    if (t.size() == shape.depth) {
      Moment c;
      std::size_t len = 1 + rng.below(shape.max_cycle);
      for (std::size_t i = 0; i < len; ++i) c.push_back(Move(std::to_string(rng.below(shape.alphabet))));
      runs.push_back({Run(t, c), rng.coin()});
      return;
    }
    std::size_t k = 1 + rng.below(std::min(shape.branching, shape.alphabet));
    std::vector<std::size_t> toks(shape.alphabet);
    std::iota(toks.begin(), toks.end(), 0);
    for (std::size_t i = 0; i < k; ++i) std::swap(toks[i], toks[i + rng.below(toks.size() - i)]);
    std::sort(toks.begin(), toks.begin() + static_cast<std::ptrdiff_t>(k));
    for (std::size_t i = 0; i < k; ++i) {
      t.push_back(Move(std::to_string(toks[i])));
      go(t);
      t.pop_back();
    }
  };
  Moment root;
  go(root);
  return finite_game(std::move(name), runs);
}

// Depth past which distinct runs of a finite game have split.
inline std::size_t split_depth(const std::vector<Run>& runs) {
  Code m = 0;
  for (std::size_t i = 0; i < runs.size(); ++i)
    for (std::size_t j = i + 1; j < runs.size(); ++j) m = std::max(m, delta(runs[i], runs[j]));
  return static_cast<std::size_t>(m) + 1;
}

// Chronological map given by a random tree walk down to the split depth and a
// random image run for each domain run past it.
inline ChronMap random_map(Rng& rng, const Game& g1, const Game& g2, std::string name = "f") {
  if (!g1.rooted) return make_map(name, [](const Moment& t) { return t; });
  if (!g2.rooted) throw InputError("no map into the empty game from " + g1.name);
  auto runs = all_runs(g1);
  std::size_t H = split_depth(runs);
  auto table = std::make_shared<MomentMap<Moment>>();
  auto tr = truncate(g1, H);
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const Moment& t = tr.moments[i];
    if (i == 0) {
      (*table)[t] = {};
      continue;
    }
    Moment up = table->at(tr.moments[static_cast<std::size_t>(tr.parent[i])]);
    up.push_back(rng.pick(g2.children(up)));
    (*table)[t] = up;
  }
  auto img = std::make_shared<std::map<Run, Run>>();
  for (const Run& r : runs) img->emplace(r, rng.pick(g2.basis(table->at(r.take(H)))));
  ChronMap f = make_map(std::move(name), [table, img, H](const Moment& t) {
    if (t.size() <= H) {
      auto it = table->find(t);
      if (it == table->end()) throw InputError(str(t) + " outside the domain");
      return it->second;
    }
    for (auto& [r, y] : *img)
      if (r.through(t)) return y.take(t.size());
    throw InputError(str(t) + " lies on no run");
  });
  f.tail_rule = [img](const Run& r) -> std::optional<Run> {
    auto it = img->find(r);
    if (it == img->end()) return std::nullopt;
    return it->second;
  };
  return f;
}

enum class Kind { A, B, AB, any };

// Payoff on g1 making f a morphism of the given kind, free bits chosen at random.
inline Game random_payoff_for(Rng& rng, const ChronMap& f, const Game& g1, const Game& g2, Kind kind) {
  auto bits = std::make_shared<std::map<Run, bool>>();
  for (const Run& r : all_runs(g1)) {
    bool target = evaluate(g2, run_image(f, r));
    bool v = rng.coin();
    if (kind == Kind::AB) v = target;
    else if (kind == Kind::A && !target) v = false;
    else if (kind == Kind::B && target) v = true;
    bits->emplace(r, v);
  }
  return with_payoff(g1, [bits](const Run& r) { return bits->at(r); }, g1.name);
}

// ---------------------------------------------------------------- copy lifts

inline Move mark(Move x) { return x.with_tag("c"); }
inline Move unmark(Move x) { return x.tag() == "c" ? x.with_tag("") : x; }

struct Lift {
  Game cover;
  ChronMap f;  // cover -> base, forgets the marks
};

// Every base run, with every marking pattern on the chosen positions. The
// forgetful map is locally surjective; payoffs follow `kind`.
inline Lift copy_lift(Rng& rng, const Game& base, Kind kind, std::size_t positions = 2, std::size_t span = 4) {
  std::vector<std::size_t> P;
  for (std::size_t i = 0; i < positions; ++i) P.push_back(rng.below(span));
  std::sort(P.begin(), P.end());
  P.erase(std::unique(P.begin(), P.end()), P.end());
  std::size_t top = P.empty() ? 0 : P.back() + 1;
  std::vector<std::pair<Run, bool>> runs;
  for (const Run& s : all_runs(base)) {
    std::size_t L = std::max(top, s.stem());
    for (std::size_t pat = 0; pat < (std::size_t{1} << P.size()); ++pat) {
      Moment pre = s.take(L);
      for (std::size_t k = 0; k < P.size(); ++k)
        if (pat >> k & 1) pre[P[k]] = mark(pre[P[k]]);
      Moment c;
      for (std::size_t i = 0; i < s.cycle().size(); ++i) c.push_back(s.at(L + i));
      bool a = base.alice_wins(s);
      bool v = pat == 0 ? a : rng.coin();
      if (kind == Kind::AB) v = a;
      else if (kind == Kind::A && !a) v = false;
      else if (kind == Kind::B && a) v = true;
      runs.push_back({Run(pre, c), v});
    }
  }
  Lift out;
  out.cover = finite_game(base.name + "~", runs);
  out.f = relabel("forget", unmark);
  return out;
}

// ---------------------------------------------------------------- embeddings

struct Embedding {
  Game sub;
  ChronMap m;  // sub -> host, the inclusion
};

// A random nonempty set of runs of g with their payoffs.
inline Embedding random_embedding(Rng& rng, const Game& g) {
  auto runs = all_runs(g);
  std::vector<std::pair<Run, bool>> keep;
  for (const Run& r : runs)
    if (rng.coin(60)) keep.push_back({r, g.alice_wins(r)});
  if (keep.empty()) {
    const Run& r = rng.pick(runs);
    keep.push_back({r, g.alice_wins(r)});
  }
  Embedding out;
  out.sub = finite_game(g.name + "'", keep);
  out.m = relabel("incl", [](Move x) { return x; });
  return out;
}

}  // namespace ludic
