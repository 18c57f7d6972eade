#pragma once
// Chronological maps and the morphism classes built on them.

#include "ludic/core.hpp"

namespace ludic {

using ApplyFn = std::function<Moment(const Moment&)>;

struct ChronMap {
  std::string name;
  ApplyFn apply;
  // Exact image of a run when the map knows it; otherwise run_image probes.
  std::function<std::optional<Run>(const Run&)> tail_rule;
  std::size_t lag = 8;

  struct Cache {
    std::mutex mu;
    std::unordered_map<Run, Run, RunHash> runs;
  };
  std::shared_ptr<Cache> cache = std::make_shared<Cache>();

  Moment operator()(const Moment& t) const { return apply(t); }
};

inline ChronMap make_map(std::string name, ApplyFn apply) {
  ChronMap f;
  f.name = std::move(name);
  f.apply = std::move(apply);
  return f;
}

inline ChronMap identity_map(std::string name = "id") {
  return make_map(std::move(name), [](const Moment& t) { return t; });
}

// g after f.
inline ChronMap compose(const ChronMap& g, const ChronMap& f) {
  ChronMap h = make_map(g.name + "." + f.name, [g, f](const Moment& t) { return g.apply(f.apply(t)); });
  h.lag = std::max(f.lag, g.lag);
  return h;
}

// Move-wise relabeling: apply(t) = <mu(t_0), ..., mu(t_n)>.
inline ChronMap relabel(std::string name, std::function<Move(Move)> mu) {
  ChronMap f = make_map(std::move(name), [mu](const Moment& t) {
    Moment out;
    out.reserve(t.size());
    for (Move x : t) out.push_back(mu(x));
    return out;
  });
  f.tail_rule = [mu](const Run& r) -> std::optional<Run> {
    Moment p, c;
    for (Move x : r.prefix()) p.push_back(mu(x));
    for (Move x : r.cycle()) c.push_back(mu(x));
    return Run(p, c);
  };
  return f;
}

// ---------------------------------------------------------------- run images

namespace detail {

inline std::optional<Run> fit_periodic(const Moment& y, std::size_t s_max, std::size_t q_max) {
  std::size_t n = y.size();
  for (std::size_t q = 1; q <= q_max; ++q) {
    if (n < 2 * q) break;
    // Smallest start s after which y is q-periodic on the window.
    std::size_t s = n - q;
    while (s > 0 && y[s - 1] == y[s - 1 + q]) --s;
    if (s <= s_max && n - s >= 3 * q) {
      Moment p(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(s));
      Moment c(y.begin() + static_cast<std::ptrdiff_t>(s),
               y.begin() + static_cast<std::ptrdiff_t>(s + q));
      return Run(p, c);
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline Run run_image(const ChronMap& f, const Run& r) {
  if (f.cache) {
    std::lock_guard<std::mutex> l(f.cache->mu);
    auto it = f.cache->runs.find(r);
    if (it != f.cache->runs.end()) return it->second;
  }
  std::size_t lam = std::max<std::size_t>(f.lag, 1);
  std::size_t c = r.cycle().size();
  std::size_t s_max = r.prefix().size() + lam * c + lam;
  std::size_t q_max = lam * c;
  std::size_t probe = s_max + 3 * q_max + 1;
  Run out;
  if (f.tail_rule) {
    auto e = f.tail_rule(r);
    if (!e) throw IntegrityError(f.name + ": no tail rule for " + r.str());
    out = *e;
    probe = r.stem() + 2 * lam;
  } else {
    Moment y = f.apply(r.take(probe));
    auto fit = detail::fit_periodic(y, s_max, q_max);
    if (!fit)
      throw IntegrityError(f.name + ": image of " + r.str() + " not periodic within probe depth " +
                           std::to_string(probe));
    out = *fit;
    probe *= 2;
  }
  Moment y = f.apply(r.take(probe));
  if (y.size() != probe)
    throw IntegrityError(f.name + " does not preserve length at depth " + std::to_string(probe));
  for (std::size_t i = 0; i < probe; ++i)
    if (y[i] != out.at(i))
      throw IntegrityError(f.name + ": image of " + r.str() + " disagrees with its tail at probe depth " +
                           std::to_string(i + 1));
  if (f.cache) {
    std::lock_guard<std::mutex> l(f.cache->mu);
    f.cache->runs.emplace(r, out);
  }
  return out;
}

// ---------------------------------------------------------------- chronology

inline Check check_chronological(const ChronMap& f, const Game& g1, const Game& g2, std::size_t depth) {
  auto tr = truncate(g1, depth);
  MomentMap<Moment> img;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const Moment& t = tr.moments[i];
    Moment y = f.apply(t);
    if (y.size() != t.size())
      return Check::fail("length changes at " + str(t) + " -> " + str(y), t.size());
    if (i > 0) {
      const Moment& up = img.at(tr.moments[static_cast<std::size_t>(tr.parent[i])]);
      if (!is_prefix(up, y))
        return Check::fail("truncation broken at " + str(t) + " -> " + str(y), t.size());
    }
    if (!contains(g2, y))
      return Check::fail("image " + str(y) + " of " + str(t) + " leaves " + g2.name, t.size());
    img.emplace(t, std::move(y));
  }
  return Check::pass(depth);
}

// ---------------------------------------------------------------- profile

struct Profile {
  Check is_A, is_B, mono, injective, epi, run_surjective, locally_surjective, embedding;
};

inline Check a_morphism(const ChronMap& f, const Game& g1, const Game& g2) {
  if (!g1.regular()) return Check::undecided(g1.name + " has no run basis");
  for (const Run& r : all_runs(g1))
    if (g1.alice_wins(r) && !evaluate(g2, run_image(f, r)))
      return Check::fail("Alice-won run " + r.str() + " maps to Bob-won " + run_image(f, r).str());
  return Check::pass();
}

inline Check b_morphism(const ChronMap& f, const Game& g1, const Game& g2) {
  if (!g1.regular()) return Check::undecided(g1.name + " has no run basis");
  for (const Run& r : all_runs(g1))
    if (!g1.alice_wins(r) && evaluate(g2, run_image(f, r)))
      return Check::fail("Bob-won run " + r.str() + " maps to Alice-won " + run_image(f, r).str());
  return Check::pass();
}

inline Check mono_check(const ChronMap& f, const Game& g1) {
  if (!g1.regular()) return Check::undecided(g1.name + " has no run basis");
  std::map<Run, Run> seen;
  for (const Run& r : all_runs(g1)) {
    Run y = run_image(f, r);
    auto [it, fresh] = seen.emplace(y, r);
    if (!fresh) return Check::fail(it->second.str() + " and " + r.str() + " both map to " + y.str());
  }
  return Check::pass();
}

inline Check injective_at(const ChronMap& f, const Game& g1, std::size_t depth) {
  auto tr = truncate(g1, depth);
  MomentMap<Moment> seen;
  for (const Moment& t : tr.moments) {
    auto [it, fresh] = seen.emplace(f.apply(t), t);
    if (!fresh) return Check::fail(str(it->second) + " and " + str(t) + " collide", t.size());
  }
  return Check::pass(depth);
}

inline Check surjective_at(const ChronMap& f, const Game& g1, const Game& g2, std::size_t depth) {
  auto t1 = truncate(g1, depth);
  MomentSet hit;
  for (const Moment& t : t1.moments) hit.insert(f.apply(t));
  for (const Moment& s : truncate(g2, depth).moments)
    if (!hit.count(s)) return Check::fail("missed " + str(s), s.size());
  return Check::pass(depth);
}

inline Check run_surjective(const ChronMap& f, const Game& g1, const Game& g2) {
  if (!g1.regular() || !g2.regular()) return Check::undecided("run basis missing");
  std::set<Run> img;
  for (const Run& r : all_runs(g1)) img.insert(run_image(f, r));
  for (const Run& s : all_runs(g2))
    if (!img.count(s)) return Check::fail("run " + s.str() + " has no preimage");
  return Check::pass();
}

// First (t, y) with y a child of f(t) that no child of t reaches.
inline Check locally_surjective(const ChronMap& f, const Game& g1, const Game& g2, std::size_t depth) {
  if (!g1.rooted) return Check::pass(depth);
  auto tr = truncate(g1, depth > 0 ? depth - 1 : 0);
  for (const Moment& t : tr.moments) {
    Moment ft = f.apply(t);
    std::set<Move> reached;
    for (Move x : g1.children(t)) reached.insert(f.apply(extend(t, x)).back());
    for (Move y : g2.children(ft))
      if (!reached.count(y))
        return Check::fail("at " + str(t) + " the move " + y.str() + " after " + str(ft) + " has no lift",
                           t.size() + 1);
  }
  return Check::pass(depth);
}

inline Profile profile(const ChronMap& f, const Game& g1, const Game& g2, std::size_t depth) {
  if (depth == 0) throw InputError("profile depth must be at least 1");
  Check chron = check_chronological(f, g1, g2, depth);
  if (!chron.yes()) throw IntegrityError(f.name + " is not chronological: " + chron.witness);
  Profile p;
  p.is_A = a_morphism(f, g1, g2);
  p.is_B = b_morphism(f, g1, g2);
  p.mono = mono_check(f, g1);
  p.injective = injective_at(f, g1, depth);
  p.epi = surjective_at(f, g1, g2, depth);
  p.run_surjective = run_surjective(f, g1, g2);
  p.locally_surjective = locally_surjective(f, g1, g2, depth);
  if (!p.injective.yes()) p.embedding = p.injective;
  else if (!p.is_A.yes()) p.embedding = p.is_A;
  else p.embedding = p.is_B;
  return p;
}

// Section through t of a locally surjective f: s -> t along f(t), lifted greedily after.
inline ChronMap section(const ChronMap& f, const Game& g1, const Moment& t) {
  Moment ft = f.apply(t);
  return make_map("section" + str(t), [f, g1, t, ft](const Moment& s) {
    std::size_t k = 0;
    while (k < s.size() && k < t.size() && s[k] == ft[k]) ++k;
    Moment u = trunc(t, k);
    for (std::size_t i = k; i < s.size(); ++i) {
      Moment target = trunc(s, i + 1);
      bool found = false;
      for (Move x : g1.children(u)) {
        Moment v = extend(u, x);
        if (f.apply(v) == target) {
          u = std::move(v);
          found = true;
          break;
        }
      }
      if (!found) throw InputError("no lift of " + str(target) + " over " + str(u));
    }
    return u;
  });
}

// ---------------------------------------------------------------- images and preimages

// f[sub] as a lazy subgame of g2.
inline Game image_subgame(const ChronMap& f, const Game& sub, const Game& g2) {
  if (!sub.rooted) {
    Game e = empty_game();
    e.name = "image";
    return e;
  }
  // Preimages of s in sub, memoized by guided descent.
  struct Pre {
    ChronMap f;
    Game sub;
    std::mutex mu;
    MomentMap<std::vector<Moment>> memo;
    std::vector<Moment> operator()(const Moment& s) {
      if (s.empty()) return {Moment{}};
      {
        std::lock_guard<std::mutex> l(mu);
        auto it = memo.find(s);
        if (it != memo.end()) return it->second;
      }
      std::vector<Moment> out;
      for (const Moment& t : (*this)(trunc(s, s.size() - 1)))
        for (Move x : sub.children(t)) {
          Moment u = extend(t, x);
          if (f.apply(u) == s) out.push_back(std::move(u));
        }
      std::lock_guard<std::mutex> l(mu);
      memo.emplace(s, out);
      return out;
    }
  };
  auto holder = std::make_shared<Pre>();
  holder->f = f;
  holder->sub = sub;

  Game g;
  g.name = "image(" + f.name + ")";
  g.alice_wins = g2.alice_wins;
  g.children = [holder, f, sub](const Moment& s) {
    std::vector<Move> out;
    for (const Moment& t : (*holder)(s))
      for (Move x : sub.children(t)) {
        Move y = f.apply(extend(t, x)).back();
        if (std::find(out.begin(), out.end(), y) == out.end()) out.push_back(y);
      }
    std::sort(out.begin(), out.end());
    return out;
  };
  if (sub.basis) {
    g.basis = [holder, f, sub](const Moment& s) {
      std::set<Run> out;
      for (const Moment& t : (*holder)(s))
        for (const Run& r : sub.basis(t)) out.insert(run_image(f, r));
      return std::vector<Run>(out.begin(), out.end());
    };
  }
  return memoize(g);
}

struct PreimageTree {
  Truncation tree;
  bool pruned = true;
  std::optional<Moment> witness;  // childless moment below depth
};

// f^-1(target) materialized to depth.
inline PreimageTree preimage_tree(const ChronMap& f, const Game& g1, const Game& target, std::size_t depth) {
  PreimageTree out;
  Game cand;
  cand.name = "preimage";
  cand.rooted = g1.rooted && target.rooted;
  cand.children = [f, g1, target](const Moment& t) {
    std::vector<Move> ch;
    for (Move x : g1.children(t))
      if (contains(target, f.apply(extend(t, x)))) ch.push_back(x);
    return ch;
  };
  out.tree = truncate(cand, depth);
  for (const Moment& t : out.tree.moments)
    if (t.size() < depth && cand.children(t).empty()) {
      out.pruned = false;
      out.witness = t;
      break;
    }
  return out;
}

// Pruned preimage subgame of g1; exact when g1 has a run basis.
inline Game preimage_game(const ChronMap& f, const Game& g1, const Game& target) {
  Game cand = g1;
  cand.name = g1.name + "|pre";
  cand.rooted = g1.rooted && target.rooted;
  cand.legal = nullptr;
  cand.children = [f, g1, target](const Moment& t) {
    std::vector<Move> ch;
    for (Move x : g1.children(t))
      if (contains(target, f.apply(extend(t, x)))) ch.push_back(x);
    return ch;
  };
  if (!g1.basis) throw Unsupported("preimage pruning needs a run basis on " + g1.name);
  auto b1 = g1.basis;
  cand.basis = [b1, f, target](const Moment& t) {
    std::vector<Run> out;
    for (const Run& r : b1(t))
      if (run_in(target, run_image(f, r))) out.push_back(r);
    return out;
  };
  auto ba = cand.basis;
  return prune(cand, [ba](const Moment& t) { return !ba(t).empty(); });
}

// ---------------------------------------------------------------- quotients

namespace detail {

struct UnionFind {
  std::vector<std::size_t> p;
  explicit UnionFind(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  std::size_t find(std::size_t x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a), b = find(b);
    if (a != b) p[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace detail

// Chain condition at every level up to N, with runs grouped by image.
inline Check is_quotient(const ChronMap& f, const Game& g1, const Game& g2, std::size_t N) {
  Check surj = surjective_at(f, g1, g2, N);
  if (!surj.yes()) throw InputError(f.name + " is not surjective at depth " + std::to_string(N) + ": " + surj.witness);
  if (!g1.regular()) return Check::undecided(g1.name + " has no run basis", N);
  auto runs = all_runs(g1);
  std::map<Run, std::vector<std::size_t>> by_image;
  for (std::size_t i = 0; i < runs.size(); ++i) by_image[run_image(f, runs[i])].push_back(i);
  for (std::size_t n = 1; n <= N; ++n) {
    auto lv = level(g1, n);
    std::sort(lv.begin(), lv.end(), moment_less);
    MomentMap<std::size_t> idx;
    for (std::size_t i = 0; i < lv.size(); ++i) idx.emplace(lv[i], i);
    detail::UnionFind uf(lv.size());
    for (auto& [img, members] : by_image)
      for (std::size_t k = 1; k < members.size(); ++k)
        uf.unite(idx.at(runs[members[0]].take(n)), idx.at(runs[members[k]].take(n)));
    std::map<Moment, std::vector<std::size_t>> fibers;
    for (std::size_t i = 0; i < lv.size(); ++i) fibers[f.apply(lv[i])].push_back(i);
    for (auto& [y, fib] : fibers)
      for (std::size_t k = 1; k < fib.size(); ++k)
        if (uf.find(fib[k]) != uf.find(fib[0]))
          return Check::fail(str(lv[fib[0]]) + " " + str(lv[fib[k]]), n);
  }
  return Check::pass(N);
}

// Linking chain R_0..R_{2k+1} for t, s of equal image, or empty if none.
inline std::vector<Run> quotient_chain(const ChronMap& f, const Game& g1, const Moment& t, const Moment& s) {
  auto runs = all_runs(g1);
  std::size_t n = t.size();
  std::vector<Run> imgs;
  for (const Run& r : runs) imgs.push_back(run_image(f, r));
  // BFS over runs; edges: same image (odd step) or same n-prefix (even step).
  std::vector<std::ptrdiff_t> prev(runs.size(), -1);
  std::vector<bool> seen(runs.size(), false);
  std::vector<std::size_t> q;
  for (std::size_t i = 0; i < runs.size(); ++i)
    if (runs[i].through(t)) {
      seen[i] = true;
      q.push_back(i);
    }
  for (std::size_t h = 0; h < q.size(); ++h) {
    std::size_t i = q[h];
    if (runs[i].through(s)) {
      std::vector<Run> chain;
      for (std::ptrdiff_t k = static_cast<std::ptrdiff_t>(i); k >= 0; k = prev[static_cast<std::size_t>(k)])
        chain.push_back(runs[static_cast<std::size_t>(k)]);
      std::reverse(chain.begin(), chain.end());
      return chain;
    }
    for (std::size_t j = 0; j < runs.size(); ++j)
      if (!seen[j] && (imgs[j] == imgs[i] || runs[j].take(n) == runs[i].take(n))) {
        seen[j] = true;
        prev[j] = static_cast<std::ptrdiff_t>(i);
        q.push_back(j);
      }
  }
  return {};
}

inline Check is_strict_quotient(const ChronMap& f, const Game& g1, const Game& g2) {
  Check rs = run_surjective(f, g1, g2);
  if (!rs.yes()) return rs;
  std::map<Run, std::vector<Run>> fiber;
  for (const Run& r : all_runs(g1)) fiber[run_image(f, r)].push_back(r);
  auto targets = all_runs(g2);
  for (std::size_t i = 0; i < targets.size(); ++i)
    for (std::size_t j = i + 1; j < targets.size(); ++j) {
      Code want = delta(targets[i], targets[j]);
      bool ok = false;
      for (const Run& a : fiber[targets[i]]) {
        for (const Run& b : fiber[targets[j]])
          if (delta(a, b) == want) {
            ok = true;
            break;
          }
        if (ok) break;
      }
      if (!ok) {
        Code best = 0;
        for (const Run& a : fiber[targets[i]])
          for (const Run& b : fiber[targets[j]]) best = std::max(best, delta(a, b));
        return Check::fail(targets[i].str() + " " + targets[j].str() + " delta " + code_str(want) +
                           " but preimages reach only " + code_str(best));
      }
    }
  return Check::pass();
}

// ---------------------------------------------------------------- generator and cogenerator

inline ChronMap run_to_morphism(const Run& r) {
  ChronMap f = make_map("unfold " + r.str(), [r](const Moment& t) { return r.take(t.size()); });
  f.tail_rule = [r](const Run&) -> std::optional<Run> { return r; };
  return f;
}

struct Separation {
  Check verdict;
  std::optional<Moment> at;
  std::optional<ChronMap> h;  // into cogenerating
};

// h with h.f != h.g, split on the first disagreement s of f and g over dom.
inline Separation separating_map(const ChronMap& f, const ChronMap& g, const Game& dom, std::size_t depth) {
  Separation out;
  auto tr = truncate(dom, depth);
  for (const Moment& t : tr.moments)
    if (f.apply(t) != g.apply(t)) {
      out.at = t;
      break;
    }
  if (!out.at) {
    out.verdict = Check::undecided("no disagreement up to depth " + std::to_string(depth), depth);
    return out;
  }
  Moment fs = f.apply(*out.at);
  std::size_t n = fs.size();
  Move one("1"), zero("0");
  ChronMap h = make_map("separate" + str(*out.at), [fs, n, one, zero](const Moment& u) {
    if (u.size() >= n && trunc(u, n) == fs) {
      Moment y(n - 1, one);
      y.resize(u.size(), zero);
      return y;
    }
    return Moment(u.size(), one);
  });
  out.h = h;
  out.verdict = Check::pass(n);
  return out;
}

// ---------------------------------------------------------------- table maps and enumeration

// Map given on T1(depth); beyond it each step follows the first child in g2.
inline ChronMap table_map(std::string name, std::shared_ptr<const MomentMap<Moment>> table, std::size_t depth,
                          const Game& g2) {
  return make_map(std::move(name), [table, depth, g2](const Moment& t) {
    if (t.size() <= depth) {
      auto it = table->find(t);
      if (it == table->end()) throw InputError("moment " + str(t) + " outside the map table");
      return it->second;
    }
    Moment y = table->at(trunc(t, depth));
    while (y.size() < t.size()) {
      auto ch = g2.children(y);
      if (ch.empty()) throw InputError("codomain dead end at " + str(y));
      y.push_back(ch.front());
    }
    return y;
  });
}

using NodeConstraint = std::function<bool(const Moment& t, const Moment& image)>;

// All chronological maps T1(depth) -> T2(depth) accepted by the constraint.
inline std::vector<ChronMap> enumerate_maps(const Game& g1, const Game& g2, std::size_t depth,
                                            NodeConstraint ok = nullptr, std::size_t cap = 0) {
  if (cap == 0) cap = enumeration_cap().load();
  std::vector<ChronMap> out;
  if (!g1.rooted) {
    out.push_back(make_map("empty", [](const Moment& t) { return t; }));
    return out;
  }
  if (!g2.rooted) return out;
  auto tr = truncate(g1, depth);
  MomentMap<Moment> cur;
  std::size_t nodes = 0;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (++nodes > cap * 10) throw ResourceError("map enumeration exceeded cap");
    if (i == tr.size()) {
      if (out.size() >= cap) throw ResourceError("more than " + std::to_string(cap) + " maps");
      auto table = std::make_shared<const MomentMap<Moment>>(cur);
      out.push_back(table_map("m" + std::to_string(out.size()), table, depth, g2));
      return;
    }
    const Moment& t = tr.moments[i];
    if (i == 0) {
      if (ok && !ok(t, {})) return;
      cur[t] = {};
      go(1);
      cur.erase(t);
      return;
    }
    const Moment& up = cur.at(tr.moments[static_cast<std::size_t>(tr.parent[i])]);
    for (Move y : g2.children(up)) {
      Moment img = extend(up, y);
      if (ok && !ok(t, img)) continue;
      cur[t] = std::move(img);
      go(i + 1);
      cur.erase(t);
    }
  };
  go(0);
  return out;
}

// Two maps agree on T1(depth).
inline bool agree_at(const ChronMap& f, const ChronMap& g, const Game& g1, std::size_t depth) {
  for (const Moment& t : truncate(g1, depth).moments)
    if (f.apply(t) != g.apply(t)) return false;
  return true;
}

inline std::optional<Moment> disagreement(const ChronMap& f, const ChronMap& g, const Game& g1,
                                          std::size_t depth) {
  for (const Moment& t : truncate(g1, depth).moments)
    if (f.apply(t) != g.apply(t)) return t;
  return std::nullopt;
}

}  // namespace ludic
