#pragma once
// Finite spaces and their games: Banach-Mazur, covering, tightness, the
// functor actions, the theta/eta transforms and the Banach-Mazur embedding.

#include <bit>
#include <cstdint>

#include "ludic/metric.hpp"

namespace ludic {

using Mask = std::uint64_t;

struct FinSpace {
  std::vector<std::string> points;
  std::vector<Mask> opens;  // sorted by (size, bits)
  bool discrete = false;    // every subset open; opens left empty

  std::size_t size() const { return points.size(); }
  Mask full() const { return points.size() == 64 ? ~Mask{0} : (Mask{1} << points.size()) - 1; }
  bool is_open(Mask m) const {
    if (discrete) return (m & ~full()) == 0;
    return std::binary_search(opens.begin(), opens.end(), m, [](Mask a, Mask b) {
      int pa = std::popcount(a), pb = std::popcount(b);
      return pa != pb ? pa < pb : a < b;
    });
  }
  std::vector<Mask> all_opens() const {
    if (!discrete) return opens;
    std::vector<Mask> out;
    for (Mask m = 0; m <= full(); ++m) out.push_back(m);
    return out;
  }
  std::string set_str(Mask m) const {
    std::string s = "{";
    bool first = true;
    for (std::size_t i = 0; i < size(); ++i)
      if (m >> i & 1) {
        s += (first ? "" : ",") + points[i];
        first = false;
      }
    return s + "}";
  }
  Move point_move(std::size_t i) const { return Move(points.at(i)); }
  Move set_move(Mask m) const {
    std::vector<Move> parts;
    for (std::size_t i = 0; i < size(); ++i)
      if (m >> i & 1) parts.push_back(point_move(i));
    return Move::make(set_str(m), "", parts);
  }
  std::size_t index(const std::string& label) const {
    auto it = std::find(points.begin(), points.end(), label);
    if (it == points.end()) throw InputError("unknown point '" + label + "'");
    return static_cast<std::size_t>(it - points.begin());
  }
  Mask mask_of(Move m) const {
    Mask out = 0;
    for (Move p : m.parts()) out |= Mask{1} << index(p.token());
    return out;
  }
  // Family of opens as one move.
  Move family_move(std::vector<Mask> fam) const {
    std::sort(fam.begin(), fam.end());
    fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
    std::string tok = "[";
    std::vector<Move> parts;
    for (std::size_t i = 0; i < fam.size(); ++i) {
      tok += (i ? "|" : "") + set_str(fam[i]);
      parts.push_back(set_move(fam[i]));
    }
    return Move::make(tok + "]", "", parts);
  }
  std::vector<Mask> family_of(Move m) const {
    std::vector<Mask> out;
    for (Move p : m.parts()) out.push_back(mask_of(p));
    return out;
  }
};

inline void check_labels(const std::vector<std::string>& points) {
  if (points.size() > 64) throw Unsupported("finite spaces are limited to 64 points");
  std::set<std::string> seen;
  for (const std::string& p : points) {
    if (p.empty() || p.find_first_of(",{}[]|<>@() ") != std::string::npos)
      throw InputError("bad point label '" + p + "'");
    if (!seen.insert(p).second) throw InputError("duplicate point '" + p + "'");
  }
}

inline FinSpace fin_space(std::vector<std::string> points, std::vector<Mask> opens) {
  check_labels(points);
  FinSpace x;
  x.points = std::move(points);
  for (Mask m : opens)
    if (m & ~x.full()) throw InputError("open set mentions a point outside the space");
  std::set<Mask> set(opens.begin(), opens.end());
  if (!set.count(0)) throw InputError("the empty set is not open");
  if (!set.count(x.full())) throw InputError("the whole space is not open");
  for (Mask a : set)
    for (Mask b : set) {
      if (!set.count(a | b)) throw InputError("missing union " + x.set_str(a | b));
      if (!set.count(a & b)) throw InputError("missing intersection " + x.set_str(a & b));
    }
  x.opens.assign(set.begin(), set.end());
  std::sort(x.opens.begin(), x.opens.end(), [](Mask a, Mask b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  return x;
}

inline FinSpace discrete_space(std::vector<std::string> points) {
  check_labels(points);
  FinSpace x;
  x.points = std::move(points);
  x.discrete = true;
  if (x.size() <= 12) {
    std::vector<Mask> all;
    for (Mask m = 0; m <= x.full(); ++m) all.push_back(m);
    return fin_space(x.points, all);
  }
  return x;
}

inline FinSpace sierpinski() { return fin_space({"a", "b"}, {0, 1, 3}); }

// Smallest open containing point i.
inline Mask neighbourhood(const FinSpace& x, std::size_t i) {
  if (x.discrete) return Mask{1} << i;
  Mask m = x.full();
  for (Mask u : x.opens)
    if (u >> i & 1) m &= u;
  return m;
}

inline bool in_closure(const FinSpace& x, std::size_t i, Mask a) { return (neighbourhood(x, i) & a) != 0; }

// ---------------------------------------------------------------- maps

struct FinMap {
  std::vector<std::size_t> at;
};

inline Mask image(const FinMap& f, Mask u) {
  Mask out = 0;
  for (std::size_t i = 0; i < f.at.size(); ++i)
    if (u >> i & 1) out |= Mask{1} << f.at[i];
  return out;
}

inline Mask preimage(const FinMap& f, Mask v) {
  Mask out = 0;
  for (std::size_t i = 0; i < f.at.size(); ++i)
    if (v >> f.at[i] & 1) out |= Mask{1} << i;
  return out;
}

inline FinMap compose(const FinMap& g, const FinMap& f) {
  FinMap h;
  for (std::size_t i : f.at) h.at.push_back(g.at.at(i));
  return h;
}

inline void check_map(const FinMap& f, const FinSpace& x, const FinSpace& y) {
  if (f.at.size() != x.size()) throw InputError("map is not total on the domain");
  for (std::size_t v : f.at)
    if (v >= y.size()) throw InputError("map leaves the codomain");
}

inline Check is_continuous(const FinMap& f, const FinSpace& x, const FinSpace& y) {
  check_map(f, x, y);
  for (Mask v : y.all_opens())
    if (!x.is_open(preimage(f, v))) return Check::fail("preimage of " + y.set_str(v) + " is not open");
  return Check::pass();
}

inline Check is_open_map(const FinMap& f, const FinSpace& x, const FinSpace& y) {
  check_map(f, x, y);
  for (Mask u : x.all_opens())
    if (!y.is_open(image(f, u))) return Check::fail("image of " + x.set_str(u) + " is not open");
  return Check::pass();
}

// ---------------------------------------------------------------- Banach-Mazur

// Alice and Bob alternate shrinking nonempty opens. Alice wins iff Bob's opens
// have empty intersection, which on a finite lattice never happens.
inline Game bm_game(const FinSpace& x, std::size_t D = 2) {
  if (x.size() == 0) {
    Game e = empty_game();
    e.name = "BM";
    return e;
  }
  Game g;
  g.name = "BM";
  g.children = [x](const Moment& t) {
    Mask top = t.empty() ? x.full() : x.mask_of(t.back());
    std::vector<Move> out;
    if (x.discrete) {
      for (Mask m = top; m; m = (m - 1) & top) out.push_back(x.set_move(m));
      std::reverse(out.begin(), out.end());
      return out;
    }
    for (Mask u : x.opens)
      if (u && (u & ~top) == 0) out.push_back(x.set_move(u));
    return out;
  };
  g.legal = [x](const Moment& t, Move m) {
    if (m.parts().empty() && m.token() != "{}") return false;
    Mask u;
    try {
      u = x.mask_of(m);
    } catch (const InputError&) {
      return false;
    }
    if (!u || !x.is_open(u) || m != x.set_move(u)) return false;
    Mask top = t.empty() ? x.full() : x.mask_of(t.back());
    return (u & ~top) == 0;
  };
  g.alice_wins = [x](const Run& r) {
    Mask meet = x.full();
    for (Move m : r.cycle()) meet &= x.mask_of(m);
    return meet == 0;
  };
  Game self = g;
  g.basis = [self, D](const Moment& t) { return periodic_basis(self, t, std::max(t.size(), D), 1); };
  return memoize(g);
}

// ---------------------------------------------------------------- covers

inline bool is_omega_cover(const FinSpace& x, const std::vector<Mask>& family) {
  return std::find(family.begin(), family.end(), x.full()) != family.end();
}

// Every infinite selection of the periodic tail is an omega-cover.
inline bool is_gamma_cover(const FinSpace& x, const std::vector<Mask>& cycle) {
  return !cycle.empty() && std::all_of(cycle.begin(), cycle.end(), [&](Mask u) { return u == x.full(); });
}

struct CoverVerdict {
  bool omega = false;
  bool gamma = false;
};

inline CoverVerdict cover_predicates(const FinSpace& x, const std::vector<Mask>& prefix, const std::vector<Mask>& cycle) {
  for (Mask u : prefix)
    if (!x.is_open(u)) throw InputError(x.set_str(u) + " is not open");
  for (Mask u : cycle)
    if (!x.is_open(u)) throw InputError(x.set_str(u) + " is not open");
  std::vector<Mask> all = prefix;
  all.insert(all.end(), cycle.begin(), cycle.end());
  return {is_omega_cover(x, all), is_gamma_cover(x, cycle)};
}

inline CoverVerdict cover_predicates(const FinSpace& x, const std::vector<Mask>& family) {
  return cover_predicates(x, family, {});
}

// ---------------------------------------------------------------- selection games

enum class Target { Omega, Gamma };

inline const char* target_str(Target t) { return t == Target::Omega ? "Omega" : "Gamma"; }

// Bob's picks in the periodic tail of a run.
inline std::vector<Move> tail_picks(const Run& r) {
  std::vector<Move> out;
  std::size_t start = r.prefix().size();
  std::size_t L = r.cycle().size() * 2;
  for (std::size_t i = start; i < start + L; ++i)
    if (i % 2 == 1) out.push_back(r.at(i));
  return out;
}

// Alice offers an omega-cover, Bob picks a member.
inline Game covering_game(const FinSpace& x, Target target, std::size_t D = 2, std::size_t cycle = 2) {
  std::vector<Mask> others;
  for (Mask u : x.all_opens())
    if (u != x.full()) others.push_back(u);
  if (others.size() > 16) throw ResourceError("too many opens for covering game moves");
  std::vector<Move> covers;
  for (Mask s = 0; s < (Mask{1} << others.size()); ++s) {
    std::vector<Mask> fam{x.full()};
    for (std::size_t i = 0; i < others.size(); ++i)
      if (s >> i & 1) fam.push_back(others[i]);
    covers.push_back(x.family_move(fam));
  }
  Game g;
  g.name = std::string("Cover") + target_str(target);
  g.children = [x, covers](const Moment& t) {
    if (turn(t) == Player::Alice) return covers;
    std::vector<Move> out;
    for (Move p : t.back().parts()) out.push_back(p);
    return out;
  };
  g.legal = [x](const Moment& t, Move m) {
    try {
      if (turn(t) == Player::Alice) {
        auto fam = x.family_of(m);
        for (Mask u : fam)
          if (!x.is_open(u)) return false;
        return is_omega_cover(x, fam) && m == x.family_move(fam);
      }
      auto fam = x.family_of(t.back());
      Mask u = x.mask_of(m);
      return std::find(fam.begin(), fam.end(), u) != fam.end() && m == x.set_move(u);
    } catch (const InputError&) {
      return false;
    }
  };
  g.alice_wins = [x, target](const Run& r) {
    std::vector<Mask> picks;
    for (Move m : tail_picks(r)) picks.push_back(x.mask_of(m));
    return target == Target::Omega ? !is_omega_cover(x, picks) : !is_gamma_cover(x, picks);
  };
  Game self = g;
  g.basis = [self, D, cycle](const Moment& t) {
    return periodic_basis(self, t, std::max(t.size() + t.size() % 2, D), cycle, 2);
  };
  return memoize(g);
}

// Alice offers a set with x in its closure, Bob picks a member.
inline Game tightness_game(const FinSpace& x, std::size_t point, Target target, std::size_t D = 2,
                           std::size_t cycle = 2) {
  if (x.size() > 16) throw ResourceError("too many points for tightness game moves");
  std::vector<Move> sets;
  for (Mask a = 1; a <= x.full(); ++a)
    if (in_closure(x, point, a)) sets.push_back(x.set_move(a));
  Game g;
  g.name = std::string("Tight") + target_str(target);
  g.children = [sets](const Moment& t) {
    if (turn(t) == Player::Alice) return sets;
    return t.back().parts();
  };
  g.legal = [x, point](const Moment& t, Move m) {
    try {
      if (turn(t) == Player::Alice) {
        Mask a = x.mask_of(m);
        return a && in_closure(x, point, a) && m == x.set_move(a);
      }
      Mask a = x.mask_of(t.back());
      std::size_t i = x.index(m.token());
      return (a >> i & 1) && m == x.point_move(i);
    } catch (const InputError&) {
      return false;
    }
  };
  g.alice_wins = [x, point, target](const Run& r) {
    Mask picks = 0;
    for (Move m : tail_picks(r)) picks |= Mask{1} << x.index(m.token());
    if (target == Target::Omega) return !in_closure(x, point, picks);
    return (picks & ~neighbourhood(x, point)) != 0;
  };
  Game self = g;
  g.basis = [self, D, cycle](const Moment& t) {
    return periodic_basis(self, t, std::max(t.size() + t.size() % 2, D), cycle, 2);
  };
  return memoize(g);
}

struct SelectionSpec {
  enum Kind { covering, tightness } kind = covering;
  FinSpace space;
  std::size_t point = 0;
  Target target = Target::Omega;
};

inline Game selection_game(const SelectionSpec& s) {
  if (s.kind == SelectionSpec::covering) return covering_game(s.space, s.target);
  if (s.point >= s.space.size()) throw InputError("base point outside the space");
  return tightness_game(s.space, s.point, s.target);
}

// ---------------------------------------------------------------- functor actions

enum class Functor { cover, tight, bm };

// cover: Cover(Y) -> Cover(X) by preimages; tight and bm: forward images.
inline ChronMap functor_action(Functor kind, const FinMap& f, const FinSpace& x, const FinSpace& y) {
  if (kind == Functor::bm) {
    Check c = is_open_map(f, x, y);
    if (!c.yes()) throw InputError("BM needs an open map: " + c.witness);
    return relabel("BM(f)", [f, x, y](Move m) { return y.set_move(image(f, x.mask_of(m))); });
  }
  Check c = is_continuous(f, x, y);
  if (!c.yes()) throw InputError("map is not continuous: " + c.witness);
  if (kind == Functor::cover) {
    return make_map("Cover(f)", [f, x, y](const Moment& t) {
      Moment out;
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (i % 2 == 0) {
          std::vector<Mask> fam;
          for (Mask v : y.family_of(t[i])) fam.push_back(preimage(f, v));
          out.push_back(x.family_move(fam));
        } else {
          out.push_back(x.set_move(preimage(f, y.mask_of(t[i]))));
        }
      }
      return out;
    });
  }
  return make_map("Tight(f)", [f, x, y](const Moment& t) {
    Moment out;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i % 2 == 0) out.push_back(y.set_move(image(f, x.mask_of(t[i]))));
      else out.push_back(y.point_move(f.at[x.index(t[i].token())]));
    }
    return out;
  });
}

// ---------------------------------------------------------------- sampled function spaces

struct Rat {
  long long num = 0, den = 1;
};

inline Rat rat(long long n, long long d = 1) {
  if (d == 0) throw InputError("zero denominator");
  if (d < 0) n = -n, d = -d;
  long long g = std::gcd(n < 0 ? -n : n, d);
  if (g == 0) g = 1;
  return {n / g, d / g};
}

inline bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }

inline std::string rat_str(const Rat& r) {
  return r.den == 1 ? std::to_string(r.num) : std::to_string(r.num) + "/" + std::to_string(r.den);
}

// |r| < 1/(k+1)
inline bool in_interval(const Rat& r, std::size_t k) {
  long long a = r.num < 0 ? -r.num : r.num;
  return static_cast<__int128>(a) * static_cast<__int128>(k + 1) < static_cast<__int128>(r.den);
}

using RationalFn = std::vector<Rat>;

inline std::string fn_str(const RationalFn& f) {
  std::string s = "<";
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + rat_str(f[i]);
  return s + ">";
}

inline bool is_zero(const RationalFn& f) {
  return std::all_of(f.begin(), f.end(), [](const Rat& r) { return r.num == 0; });
}

inline Mask level_set(const RationalFn& f, std::size_t k) {
  Mask m = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (in_interval(f[i], k)) m |= Mask{1} << i;
  return m;
}

inline RationalFn pull(const RationalFn& phi, const FinMap& f) {
  RationalFn out;
  for (std::size_t i : f.at) out.push_back(phi.at(i));
  return out;
}

// Sampled (C_p(X), 0): the finite family with the discrete pointwise topology.
struct Family {
  std::vector<RationalFn> fns;  // deduplicated, zero first
  FinSpace space;
  std::size_t zero = 0;

  std::size_t find(const RationalFn& f) const {
    for (std::size_t i = 0; i < fns.size(); ++i)
      if (fns[i] == f) return i;
    throw InputError("function " + fn_str(f) + " outside the sampled family");
  }
};

inline Family make_family(std::vector<RationalFn> fns, std::size_t dim) {
  std::vector<RationalFn> uniq;
  for (auto& f : fns) {
    if (f.size() != dim) throw InputError("function " + fn_str(f) + " has the wrong arity");
    if (std::find(uniq.begin(), uniq.end(), f) == uniq.end()) uniq.push_back(f);
  }
  auto z = std::find_if(uniq.begin(), uniq.end(), is_zero);
  if (z == uniq.end()) throw InputError("family lacks the zero function");
  std::rotate(uniq.begin(), z, z + 1);
  Family fam;
  fam.fns = uniq;
  std::vector<std::string> labels;
  for (auto& f : uniq) labels.push_back("f" + std::to_string(labels.size()));
  fam.space = discrete_space(labels);
  fam.zero = 0;
  return fam;
}

inline Family pull_family(const Family& fam, const FinMap& f, std::size_t dim) {
  std::vector<RationalFn> out;
  for (auto& phi : fam.fns) out.push_back(pull(phi, f));
  return make_family(out, dim);
}

struct Transform {
  std::string name;
  std::function<std::size_t(std::size_t inning)> interval;
  Target target = Target::Omega;
};

inline Transform theta(Target t = Target::Omega) {
  return {t == Target::Omega ? "theta" : "theta_gamma", [](std::size_t) { return std::size_t{0}; }, t};
}

inline Transform eta(Target t = Target::Omega) {
  return {t == Target::Omega ? "eta" : "eta_gamma", [](std::size_t n) { return n; }, t};
}

inline Transform transform_variant(std::string_view v) {
  if (v == "theta") return theta();
  if (v == "eta") return eta();
  if (v == "theta_gamma") return theta(Target::Gamma);
  if (v == "eta_gamma") return eta(Target::Gamma);
  throw InputError("unknown transform '" + std::string(v) + "'");
}

struct TransformMap {
  Game tight, cover;
  Family family;
  ChronMap map;
};

// Tight(sampled C_p X) -> Cover(X): A -> U_k(A), phi -> phi^-1(I_k).
inline TransformMap theta_eta(const FinSpace& x, const std::vector<RationalFn>& fns, const Transform& tr) {
  TransformMap out;
  out.family = make_family(fns, x.size());
  std::size_t settle = 0;
  for (auto& f : out.family.fns)
    for (auto& r : f)
      if (r.num != 0) settle = std::max<std::size_t>(settle, static_cast<std::size_t>(r.den / std::max(1LL, r.num < 0 ? -r.num : r.num)) + 1);
  for (auto& f : out.family.fns)
    for (std::size_t k = 0; k <= settle + 1; ++k)
      if (!x.is_open(level_set(f, k)))
        throw InputError("preimage of I_" + std::to_string(k) + " under " + fn_str(f) + " is not open");
  out.tight = tightness_game(out.family.space, out.family.zero, tr.target);
  out.cover = covering_game(x, tr.target);
  Family fam = out.family;
  out.map = make_map(tr.name, [x, fam, tr](const Moment& t) {
    Moment y;
    for (std::size_t i = 0; i < t.size(); ++i) {
      std::size_t k = tr.interval(i / 2);
      if (i % 2 == 0) {
        std::vector<Mask> u;
        for (Move p : t[i].parts()) u.push_back(level_set(fam.fns[fam.space.index(p.token())], k));
        y.push_back(x.family_move(u));
      } else {
        y.push_back(x.set_move(level_set(fam.fns[fam.space.index(t[i].token())], k)));
      }
    }
    return y;
  });
  out.map.lag = std::max<std::size_t>(8, 2 * settle + 8);
  return out;
}

// Tight(C_p f) on sampled families: A -> A.f, phi -> phi.f
inline ChronMap tight_cp(const Family& fy, const Family& fx, const FinMap& f) {
  return make_map("Tight(Cp f)", [fy, fx, f](const Moment& t) {
    Moment out;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i % 2 == 0) {
        Mask a = 0;
        for (Move p : t[i].parts()) a |= Mask{1} << fx.find(pull(fy.fns[fy.space.index(p.token())], f));
        out.push_back(fx.space.set_move(a));
      } else {
        out.push_back(fx.space.point_move(fx.find(pull(fy.fns[fy.space.index(t[i].token())], f))));
      }
    }
    return out;
  });
}

// theta_X . Tight(C_p f) = Cover(f) . theta_Y on moments up to depth.
inline Check naturality_check(const Transform& tx, const Transform& ty, const FinMap& f, const FinSpace& x,
                              const FinSpace& y, const std::vector<RationalFn>& fy_fns, std::size_t depth) {
  TransformMap TY = theta_eta(y, fy_fns, ty);
  Family fx = pull_family(TY.family, f, x.size());
  TransformMap TX = theta_eta(x, fx.fns, tx);
  ChronMap left = compose(TX.map, tight_cp(TY.family, TX.family, f));
  ChronMap right = compose(functor_action(Functor::cover, f, x, y), TY.map);
  if (auto t = disagreement(left, right, TY.tight, depth))
    return Check::fail("square differs at " + str(*t) + ": " + str(left.apply(*t)) + " vs " + str(right.apply(*t)),
                       t->size());
  return Check::pass(depth);
}

inline Check naturality_check(const Transform& t, const FinMap& f, const FinSpace& x, const FinSpace& y,
                              const std::vector<RationalFn>& fy_fns, std::size_t depth) {
  return naturality_check(t, t, f, x, y, fy_fns, depth);
}

// ---------------------------------------------------------------- Banach-Mazur universality

// Basic opens [s] of the Krom space of D_B(g), played as refinements: a move
// extends the current moment s by one D_B move, or keeps [s] ("=").
inline Move stay_move() { return Move("=", "K"); }

inline Move refine_move(Move x) { return x.with_tag(x.tag().empty() ? "K" : "K." + x.tag()); }

inline std::optional<Move> unrefine(Move m) {
  const std::string& t = m.tag();
  if (m == stay_move()) return std::nullopt;
  if (t == "K") return m.with_tag("");
  if (t.rfind("K.", 0) == 0) return m.with_tag(t.substr(2));
  throw InputError(m.str() + " is not a basic-open move");
}

inline Moment open_of(const Moment& t) {
  Moment s;
  for (Move m : t)
    if (auto x = unrefine(m)) s.push_back(*x);
  return s;
}

struct BMEmbedding {
  Game source, db, target;
  ChronMap eta;
  std::size_t sample_depth = 0;
  std::vector<Run> krom;  // sampled Bob-won runs of D_B(g)
};

inline BMEmbedding bm_embedding(const Game& g, std::size_t sample_depth = 0) {
  if (!g.regular()) throw Unsupported("bm_embedding needs a run basis on " + g.name);
  BMEmbedding out;
  out.source = g;
  out.db = d_b(g);
  if (sample_depth == 0) sample_depth = (g.horizon ? *g.horizon : 2) + 2;
  out.sample_depth = sample_depth;
  // Quit runs need one more Alice turn past the sample depth.
  Game stab = stabilize(out.db, sample_depth + 2);
  for (const Run& r : all_runs(stab))
    if (!stab.alice_wins(r)) out.krom.push_back(r);
  Game db = out.db;
  Game t;
  t.name = "BM(K" + g.name + ")";
  t.rooted = db.rooted;
  t.children = [db](const Moment& u) {
    std::vector<Move> ch{stay_move()};
    for (Move x : db.children(open_of(u))) ch.push_back(refine_move(x));
    return ch;
  };
  t.legal = [db](const Moment& u, Move m) {
    try {
      Moment s = open_of(u);
      if (!contains(db, s)) return false;
      auto x = unrefine(m);
      return !x || contains(db, extend(s, *x));
    } catch (const InputError&) {
      return false;
    }
  };
  // Bob's opens shrink to a point iff the cycle refines; the point is in the
  // Krom space iff Bob wins it in D_B(g).
  t.alice_wins = [db](const Run& r) {
    bool refines = std::any_of(r.cycle().begin(), r.cycle().end(), [](Move m) { return m != stay_move(); });
    if (!refines) return false;
    Moment p = open_of(r.prefix()), c = open_of(r.cycle());
    return db.alice_wins(Run(p, c));
  };
  t.basis = [db](const Moment& u) {
    Moment s = open_of(u);
    std::vector<Run> rs{Run(u, {stay_move()})};
    for (const Run& r : db.basis(s)) {
      Moment c;
      std::size_t from = s.size();
      std::size_t P = std::max(from, r.prefix().size());
      Moment pre = u;
      for (std::size_t i = from; i < P; ++i) pre.push_back(refine_move(r.at(i)));
      for (std::size_t i = 0; i < r.cycle().size(); ++i) c.push_back(refine_move(r.at(P + i)));
      rs.push_back(Run(pre, c));
    }
    return rs;
  };
  out.target = memoize(t);
  out.eta = relabel("eta_" + g.name, refine_move);
  return out;
}

// Sampled Krom points through s.
inline std::vector<Run> basic_open(const BMEmbedding& e, const Moment& s) {
  std::vector<Run> out;
  for (const Run& r : e.krom)
    if (r.through(s)) out.push_back(r);
  return out;
}

struct UniversalityReport {
  Check chronological, injective, winners, shrinkage;
  bool ok() const { return chronological.yes() && injective.yes() && winners.yes() && shrinkage.yes(); }
};

inline UniversalityReport verify_universality(const Game& g, std::size_t depth) {
  BMEmbedding e = bm_embedding(g);
  UniversalityReport rep;
  rep.chronological = check_chronological(e.eta, g, e.target, depth);
  rep.injective = injective_at(e.eta, g, depth);
  rep.winners = Check::pass(depth);
  rep.shrinkage = Check::pass(e.sample_depth + 1);
  for (const Run& r : all_runs(g)) {
    Run img = run_image(e.eta, r);
    if (evaluate(e.target, img) != evaluate(g, r)) {
      rep.winners = Check::fail("winner of " + r.str() + " changes under eta");
      break;
    }
  }
  for (const Run& r : all_runs(g)) {
    for (std::size_t n = 0; n <= e.sample_depth; ++n)
      if (basic_open(e, r.take(n)).empty()) {
        rep.shrinkage = Check::fail("[" + str(r.take(n)) + "] is empty in the sample", n);
        break;
      }
    if (!rep.shrinkage.yes()) break;
    // Past the last split from another sample point the open is {r} or empty.
    Code split = 0;
    for (const Run& s : e.krom)
      if (s != r) split = std::max(split, delta(r, s));
    std::size_t n = std::max<std::size_t>(e.sample_depth + 1, static_cast<std::size_t>(split) + 1);
    auto last = basic_open(e, r.take(n));
    bool good = g.alice_wins(r) ? last.empty() : (last.size() == 1 && last[0] == r);
    if (!good) {
      rep.shrinkage = Check::fail("open around " + r.str() + " holds " + std::to_string(last.size()) +
                                  " sample points at depth " + std::to_string(n), n);
      break;
    }
    rep.shrinkage.depth = std::max(rep.shrinkage.depth, n);
  }
  return rep;
}

// BM(K~f)[eta_G(t)] against eta_G'(f(t)) as sampled point sets, moment by moment.
inline Check bm_naturality(const ChronMap& f, const Game& g, const Game& g2, std::size_t depth) {
  std::size_t L = std::max({g.horizon.value_or(2), g2.horizon.value_or(2), depth}) + 2;
  BMEmbedding e1 = bm_embedding(g, L), e2 = bm_embedding(g2, L);
  ChronMap dbf = d_b_map(f);
  auto tr = truncate(g, depth);
  for (const Moment& t : tr.moments)
    for (std::size_t k = 1; k <= t.size(); ++k) {
      std::set<Run> lhs, rhs;
      for (const Run& r : basic_open(e1, trunc(t, k))) lhs.insert(run_image(dbf, r));
      for (const Run& r : basic_open(e2, f.apply(trunc(t, k)))) rhs.insert(r);
      if (lhs != rhs) {
        std::string miss;
        for (const Run& r : rhs)
          if (!lhs.count(r)) {
            miss = r.str();
            break;
          }
        return Check::fail("at " + str(trunc(t, k)) + " the image open misses " +
                               (miss.empty() ? std::string("nothing but has extra points") : miss),
                           k);
      }
    }
  return Check::pass(depth);
}

}  // namespace ludic
