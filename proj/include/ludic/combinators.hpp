#pragma once
// Limits, colimits, D_B, factorizations, exponentials and weak classifiers.

#include "ludic/strategy.hpp"

namespace ludic {

// ---------------------------------------------------------------- helpers

inline Run map_run(const Run& r, const std::function<Move(Move)>& mu) {
  Moment p, c;
  for (Move x : r.prefix()) p.push_back(mu(x));
  for (Move x : r.cycle()) c.push_back(mu(x));
  return Run(p, c);
}

// Pointwise tuple of several runs.
inline Run zip_runs(const std::vector<Run>& rs) {
  std::size_t P = 0, L = 1;
  for (const Run& r : rs) {
    P = std::max(P, r.prefix().size());
    L = std::lcm(L, r.cycle().size());
  }
  auto at = [&](std::size_t i) {
    std::vector<Move> parts;
    for (const Run& r : rs) parts.push_back(r.at(i));
    return Move::tuple(parts);
  };
  Moment p, c;
  for (std::size_t i = 0; i < P; ++i) p.push_back(at(i));
  for (std::size_t i = 0; i < L; ++i) c.push_back(at(P + i));
  return Run(p, c);
}

inline Moment zip_moments(const std::vector<Moment>& ts) {
  Moment out;
  if (ts.empty()) return out;
  for (std::size_t i = 0; i < ts[0].size(); ++i) {
    std::vector<Move> parts;
    for (const Moment& t : ts) parts.push_back(t.at(i));
    out.push_back(Move::tuple(parts));
  }
  return out;
}

inline Moment project(const Moment& t, std::size_t i) {
  Moment out;
  out.reserve(t.size());
  for (Move x : t) out.push_back(x.part(i));
  return out;
}

inline Run project(const Run& r, std::size_t i) {
  return map_run(r, [i](Move x) { return x.part(i); });
}

inline Move tag_move(Move m, std::size_t j) {
  std::string t = std::to_string(j);
  if (!m.tag().empty()) t += "." + m.tag();
  return m.with_tag(t);
}

inline std::pair<std::size_t, Move> untag_move(Move m) {
  const std::string& t = m.tag();
  auto dot = t.find('.');
  std::string head = t.substr(0, dot);
  if (head.empty() || head.find_first_not_of("0123456789") != std::string::npos)
    throw InputError("move " + m.str() + " carries no component tag");
  std::size_t j = std::stoul(head);
  return {j, m.with_tag(dot == std::string::npos ? "" : t.substr(dot + 1))};
}

inline Moment untag(const Moment& t) {
  Moment out;
  for (Move x : t) out.push_back(untag_move(x).second);
  return out;
}

// Finite game from explicit run bits.
inline Game game_of_runs(std::string name, const std::map<Run, bool>& runs) {
  std::vector<std::pair<Run, bool>> v(runs.begin(), runs.end());
  return finite_game(std::move(name), std::move(v));
}

// ---------------------------------------------------------------- products

enum class Mode { A, B };

inline Game product(const std::vector<Game>& gs, Mode mode = Mode::A) {
  if (gs.empty()) return terminal_game();
  for (const Game& g : gs)
    if (!g.rooted) {
      Game e = empty_game();
      e.name = "product";
      return e;
    }
  Game p;
  p.name = "product(";
  for (std::size_t i = 0; i < gs.size(); ++i) p.name += (i ? "," : "") + gs[i].name;
  p.name += ")";
  auto split = [](const Moment& t, std::size_t n) {
    std::vector<Moment> out(n);
    for (Move x : t)
      for (std::size_t i = 0; i < n; ++i) out[i].push_back(x.part(i));
    return out;
  };
  p.children = [gs, split](const Moment& t) {
    auto parts = split(t, gs.size());
    std::vector<std::vector<Move>> ch;
    for (std::size_t i = 0; i < gs.size(); ++i) ch.push_back(gs[i].children(parts[i]));
    std::vector<Move> out;
    std::vector<Move> cur(gs.size());
    std::function<void(std::size_t)> go = [&](std::size_t i) {
      if (i == gs.size()) {
        out.push_back(Move::tuple(cur));
        return;
      }
      for (Move x : ch[i]) {
        cur[i] = x;
        go(i + 1);
      }
    };
    go(0);
    return out;
  };
  p.legal = [gs, split](const Moment& t, Move x) {
    if (x.arity() != gs.size()) return false;
    auto parts = split(t, gs.size());
    for (std::size_t i = 0; i < gs.size(); ++i)
      if (!contains(gs[i], extend(parts[i], x.part(i)))) return false;
    return true;
  };
  p.alice_wins = [gs, mode](const Run& r) {
    if (mode == Mode::A) {
      for (std::size_t i = 0; i < gs.size(); ++i)
        if (!gs[i].alice_wins(project(r, i))) return false;
      return true;
    }
    for (std::size_t i = 0; i < gs.size(); ++i)
      if (gs[i].alice_wins(project(r, i))) return true;
    return false;
  };
  bool regular = std::all_of(gs.begin(), gs.end(), [](const Game& g) { return g.regular(); });
  if (regular) {
    p.basis = [gs, split](const Moment& t) {
      auto parts = split(t, gs.size());
      std::vector<std::vector<Run>> bs;
      for (std::size_t i = 0; i < gs.size(); ++i) bs.push_back(gs[i].basis(parts[i]));
      std::vector<Run> out;
      std::vector<Run> cur(gs.size());
      std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == gs.size()) {
          out.push_back(zip_runs(cur));
          return;
        }
        for (const Run& r : bs[i]) {
          cur[i] = r;
          go(i + 1);
        }
      };
      go(0);
      return out;
    };
  }
  bool horizons = std::all_of(gs.begin(), gs.end(), [](const Game& g) { return g.horizon.has_value(); });
  if (horizons) {
    std::size_t h = 0;
    for (const Game& g : gs) h = std::max(h, *g.horizon);
    p.horizon = h;
  }
  return memoize(p);
}

inline ChronMap projection(std::size_t i) {
  return relabel("pi" + std::to_string(i), [i](Move x) { return x.part(i); });
}

// Mediating map into a product.
inline ChronMap pair_map(const std::vector<ChronMap>& fs) {
  ChronMap h = make_map("<pair>", [fs](const Moment& t) {
    std::vector<Moment> ys;
    for (const ChronMap& f : fs) ys.push_back(f.apply(t));
    return zip_moments(ys);
  });
  for (const ChronMap& f : fs) h.lag = std::max(h.lag, f.lag);
  return h;
}

inline ChronMap product_map(const std::vector<ChronMap>& fs) {
  std::vector<ChronMap> legs;
  for (std::size_t i = 0; i < fs.size(); ++i) legs.push_back(compose(fs[i], projection(i)));
  return pair_map(legs);
}

// ---------------------------------------------------------------- coproducts

inline Game coproduct(const std::vector<Game>& gs) {
  std::vector<std::size_t> live;
  for (std::size_t j = 0; j < gs.size(); ++j)
    if (gs[j].rooted) live.push_back(j);
  if (live.empty()) {
    Game e = empty_game();
    e.name = "coproduct()";
    return e;
  }
  Game c;
  c.name = "coproduct(";
  for (std::size_t i = 0; i < gs.size(); ++i) c.name += (i ? "," : "") + gs[i].name;
  c.name += ")";
  auto tag_all = [](const std::vector<Move>& xs, std::size_t j) {
    std::vector<Move> out;
    for (Move x : xs) out.push_back(tag_move(x, j));
    return out;
  };
  c.children = [gs, live, tag_all](const Moment& t) {
    if (t.empty()) {
      std::vector<Move> out;
      for (std::size_t j : live) {
        auto ch = tag_all(gs[j].children({}), j);
        out.insert(out.end(), ch.begin(), ch.end());
      }
      return out;
    }
    std::size_t j = untag_move(t[0]).first;
    return tag_all(gs[j].children(untag(t)), j);
  };
  c.legal = [gs](const Moment& t, Move x) {
    if (x.tag().empty()) return false;
    auto [j, y] = untag_move(x);
    if (j >= gs.size() || !gs[j].rooted) return false;
    if (!t.empty() && untag_move(t[0]).first != j) return false;
    for (Move m : t)
      if (untag_move(m).first != j) return false;
    return contains(gs[j], extend(untag(t), y));
  };
  c.alice_wins = [gs](const Run& r) {
    std::size_t j = untag_move(r.at(0)).first;
    return gs[j].alice_wins(map_run(r, [](Move x) { return untag_move(x).second; }));
  };
  bool regular = std::all_of(gs.begin(), gs.end(), [](const Game& g) { return g.regular(); });
  if (regular) {
    c.basis = [gs, live](const Moment& t) {
      std::vector<Run> out;
      auto add = [&](std::size_t j, const Moment& u) {
        for (const Run& r : gs[j].basis(u)) out.push_back(map_run(r, [j](Move x) { return tag_move(x, j); }));
      };
      if (t.empty()) {
        for (std::size_t j : live) add(j, {});
      } else {
        add(untag_move(t[0]).first, untag(t));
      }
      return out;
    };
  }
  bool horizons = std::all_of(gs.begin(), gs.end(), [](const Game& g) { return g.horizon.has_value(); });
  if (horizons) {
    std::size_t h = 1;
    for (const Game& g : gs) h = std::max(h, *g.horizon);
    c.horizon = h;
  }
  return memoize(c);
}

inline ChronMap injection(std::size_t j) {
  return relabel("i" + std::to_string(j), [j](Move x) { return tag_move(x, j); });
}

// Mediating map out of a coproduct.
inline ChronMap copair(const std::vector<ChronMap>& fs) {
  ChronMap h = make_map("[copair]", [fs](const Moment& t) {
    if (t.empty()) return Moment{};
    std::size_t j = untag_move(t[0]).first;
    return fs.at(j).apply(untag(t));
  });
  for (const ChronMap& f : fs) h.lag = std::max(h.lag, f.lag);
  return h;
}

inline ChronMap coproduct_map(const std::vector<ChronMap>& fs) {
  std::vector<ChronMap> legs;
  for (std::size_t j = 0; j < fs.size(); ++j) legs.push_back(compose(injection(j), fs[j]));
  return copair(legs);
}

// ---------------------------------------------------------------- equalizers and pullbacks

struct Equalizer {
  Game game;
  ChronMap inclusion;
};

inline Equalizer equalizer(const ChronMap& f, const ChronMap& g, const Game& dom) {
  std::map<Run, bool> keep;
  for (const Run& r : all_runs(dom))
    if (run_image(f, r) == run_image(g, r)) keep.emplace(r, dom.alice_wins(r));
  return {game_of_runs("eq(" + f.name + "," + g.name + ")", keep), identity_map("incl")};
}

struct Span {
  Game game;
  ChronMap p1, p2;
};

// Equalizer of f.pi1 and g.pi2 inside the product.
inline Span pullback(const ChronMap& f, const Game& g1, const ChronMap& g, const Game& g2) {
  Game prod = product({g1, g2}, Mode::A);
  Equalizer e = equalizer(compose(f, projection(0)), compose(g, projection(1)), prod);
  e.game.name = "pullback(" + f.name + "," + g.name + ")";
  return {e.game, projection(0), projection(1)};
}

// ---------------------------------------------------------------- level quotients

// Quotient of a finite game by the level-wise equivalence generated by run pairs:
// R|n ~ S|n for each seed (R, S). Beyond the horizon classes follow run classes.
class LevelQuotient {
 public:
  LevelQuotient(const Game& g, const std::vector<std::pair<Run, Run>>& seeds) : g_(g) {
    if (!g.rooted) return;
    if (!g.horizon || !g.basis) throw Unsupported("quotients need a finite game, got " + g.name);
    N0_ = *g.horizon;
    runs_ = all_runs(g);
    std::map<Run, std::size_t> index;
    for (std::size_t i = 0; i < runs_.size(); ++i) index.emplace(runs_[i], i);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (auto& [a, b] : seeds) {
      auto ia = index.find(a), ib = index.find(b);
      if (ia == index.end() || ib == index.end())
        throw IntegrityError("seed run outside " + g.name + ": " + (ia == index.end() ? a : b).str());
      pairs.emplace_back(ia->second, ib->second);
    }
    detail::UnionFind ruf(runs_.size());
    for (auto [a, b] : pairs) ruf.unite(a, b);
    run_class_.resize(runs_.size());
    std::map<std::size_t, std::size_t> ids;
    for (std::size_t i = 0; i < runs_.size(); ++i) {
      auto [it, fresh] = ids.emplace(ruf.find(i), classes_.size());
      if (fresh) classes_.emplace_back();
      run_class_[i] = it->second;
      classes_[it->second].push_back(i);
    }
    auto tr = truncate(g, N0_);
    reps_.resize(N0_ + 1);
    for (std::size_t n = 0; n <= N0_; ++n) {
      auto lv = tr.level(n);
      std::sort(lv.begin(), lv.end(), moment_less);
      MomentMap<std::size_t> idx;
      for (std::size_t i = 0; i < lv.size(); ++i) idx.emplace(lv[i], i);
      detail::UnionFind uf(lv.size());
      for (auto [a, b] : pairs) uf.unite(idx.at(runs_[a].take(n)), idx.at(runs_[b].take(n)));
      for (std::size_t i = 0; i < lv.size(); ++i) reps_[n].emplace(lv[i], lv[uf.find(i)]);
    }
    for (std::size_t i = 0; i < runs_.size(); ++i) at_horizon_.emplace(runs_[i].take(N0_), i);
  }

  const Game& game() const { return g_; }
  std::size_t settle() const { return N0_; }
  const std::vector<Run>& runs() const { return runs_; }
  std::size_t class_of_run(std::size_t i) const { return run_class_.at(i); }
  const std::vector<std::size_t>& class_members(std::size_t c) const { return classes_.at(c); }
  std::size_t class_count() const { return classes_.size(); }

  // Lexicographically minimal member of [t], for |t| <= settle().
  const Moment& rep(const Moment& t) const { return reps_.at(t.size()).at(t); }

  std::size_t run_of(const Moment& t) const {
    auto it = at_horizon_.find(trunc(t, N0_));
    if (it == at_horizon_.end()) throw InputError(str(t) + " is not a moment of " + g_.name);
    return it->second;
  }

  // Class move at position k (1-based) of a moment of length >= k.
  Move label(const Moment& t, std::size_t k) const {
    if (k <= N0_) return Move("[" + str(rep(trunc(t, k))) + "]");
    std::size_t c = run_class_.at(run_of(t));
    std::set<std::string> seen;
    std::vector<Move> xs;
    for (std::size_t i : classes_[c]) {
      Move x = runs_[i].at(k - 1);
      if (seen.insert(x.str()).second) xs.push_back(x);
    }
    std::sort(xs.begin(), xs.end());
    std::string tok = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) tok += (i ? "|" : "") + xs[i].str();
    return Move::make(tok + "]", "", xs);
  }

  Moment apply(const Moment& t) const {
    Moment out;
    for (std::size_t k = 1; k <= t.size(); ++k) out.push_back(label(t, k));
    return out;
  }

  Run image(std::size_t run_index) const {
    const Run& r = runs_.at(run_index);
    std::size_t L = 1;
    for (std::size_t i : classes_[run_class_[run_index]]) L = std::lcm(L, runs_[i].cycle().size());
    Moment full = apply(r.take(N0_ + L));
    Moment p(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(N0_));
    Moment c(full.begin() + static_cast<std::ptrdiff_t>(N0_), full.end());
    return Run(p, c);
  }

  // Some t with apply(t) = u.
  Moment lift(const Moment& u) const {
    if (u.size() <= N0_) {
      for (const Moment& t : level(g_, u.size()))
        if (apply(t) == u) return t;
      throw InputError(str(u) + " is not a class moment");
    }
    Moment head = lift(trunc(u, N0_));
    // Any run of the class through head continues the classes.
    for (std::size_t i = 0; i < runs_.size(); ++i)
      if (runs_[i].through(head)) {
        Moment t = runs_[i].take(u.size());
        if (apply(t) == u) return t;
      }
    throw InputError(str(u) + " is not a class moment");
  }

  ChronMap map(std::string name) const {
    auto self = std::make_shared<LevelQuotient>(*this);
    ChronMap q = make_map(std::move(name), [self](const Moment& t) { return self->apply(t); });
    q.tail_rule = [self](const Run& r) -> std::optional<Run> {
      for (std::size_t i = 0; i < self->runs_.size(); ++i)
        if (self->runs_[i] == r) return self->image(i);
      return std::nullopt;
    };
    return q;
  }

 private:
  Game g_;
  std::size_t N0_ = 0;
  std::vector<Run> runs_;
  std::vector<std::size_t> run_class_;
  std::vector<std::vector<std::size_t>> classes_;
  std::vector<MomentMap<Moment>> reps_;
  MomentMap<std::size_t> at_horizon_;
};

// ---------------------------------------------------------------- coequalizers and pushouts

struct Coequalizer {
  Game game;
  ChronMap q;
  std::shared_ptr<LevelQuotient> classes;
};

inline Coequalizer coequalizer(const ChronMap& f, const ChronMap& g, const Game& dom, const Game& cod,
                               Mode mode = Mode::A) {
  std::vector<std::pair<Run, Run>> seeds;
  for (const Run& r : all_runs(dom)) seeds.emplace_back(run_image(f, r), run_image(g, r));
  Coequalizer out;
  if (!cod.rooted) {
    out.game = empty_game();
    out.q = identity_map("q");
    return out;
  }
  out.classes = std::make_shared<LevelQuotient>(cod, seeds);
  const LevelQuotient& lq = *out.classes;
  std::map<Run, bool> runs;
  for (std::size_t c = 0; c < lq.class_count(); ++c) {
    bool any_a = false, all_a = true;
    for (std::size_t i : lq.class_members(c)) {
      bool a = cod.alice_wins(lq.runs()[i]);
      any_a = any_a || a;
      all_a = all_a && a;
    }
    runs.emplace(lq.image(lq.class_members(c).front()), mode == Mode::A ? any_a : all_a);
  }
  out.game = game_of_runs("coeq(" + f.name + "," + g.name + ")", runs);
  out.q = lq.map("q");
  return out;
}

struct Cospan {
  Game game;
  ChronMap j1, j2;
  Coequalizer coeq;
};

inline Cospan pushout(const ChronMap& f, const Game& g1, const ChronMap& g, const Game& g2, const Game& dom,
                      Mode mode = Mode::A) {
  Game sum = coproduct({g1, g2});
  Coequalizer ce = coequalizer(compose(injection(0), f), compose(injection(1), g), dom, sum, mode);
  ce.game.name = "pushout(" + f.name + "," + g.name + ")";
  return {ce.game, compose(ce.q, injection(0)), compose(ce.q, injection(1)), ce};
}

// ---------------------------------------------------------------- D_B

inline Move quit_move() { return Move("0", "q"); }

inline bool has_quit(const Moment& t) {
  return std::find(t.begin(), t.end(), quit_move()) != t.end();
}

// Alice may quit at any of her turns; quitting hands the run to Bob.
inline Game d_b(const Game& g, std::size_t D = 2) {
  Move quit = quit_move();
  Game out;
  out.name = "DB(" + g.name + ")";
  out.children = [g, quit](const Moment& t) {
    if (has_quit(t)) return std::vector<Move>{quit};
    std::vector<Move> ch = g.rooted ? g.children(t) : std::vector<Move>{};
    if (turn(t) == Player::Alice) ch.push_back(quit);
    return ch;
  };
  out.legal = [g, quit](const Moment& t, Move x) {
    auto it = std::find(t.begin(), t.end(), quit);
    if (it != t.end()) {
      if (turn_at(static_cast<std::size_t>(it - t.begin())) != Player::Alice) return false;
      if (!std::all_of(it, t.end(), [quit](Move m) { return m == quit; })) return false;
      if (!contains(g, Moment(t.begin(), it))) return false;
      return x == quit;
    }
    if (x == quit) return turn(t) == Player::Alice && contains(g, t);
    return g.rooted && contains(g, extend(t, x));
  };
  out.alice_wins = [g, quit](const Run& r) {
    for (Move x : r.prefix())
      if (x == quit) return false;
    for (Move x : r.cycle())
      if (x == quit) return false;
    return g.alice_wins(r);
  };
  if (g.regular()) {
    out.basis = [g, quit, D](const Moment& t) {
      std::vector<Run> rs;
      auto it = std::find(t.begin(), t.end(), quit);
      if (it != t.end()) {
        rs.push_back(Run::constant(Moment(t.begin(), it), quit));
        return rs;
      }
      if (g.rooted) rs = g.basis(t);
      std::size_t L = std::max(t.size(), D);
      std::function<void(Moment&)> go = [&](Moment& u) {
        if (turn(u) == Player::Alice) rs.push_back(Run::constant(u, quit));
        if (u.size() >= L) return;
        for (Move x : g.children(u)) {
          u.push_back(x);
          go(u);
          u.pop_back();
        }
      };
      Moment u = t;
      if (g.rooted) go(u);
      else if (t.empty()) rs.push_back(Run::constant({}, quit));
      std::sort(rs.begin(), rs.end());
      rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
      return rs;
    };
  }
  return memoize(out);
}

// D_B on morphisms: the quit tail is carried along.
inline ChronMap d_b_map(const ChronMap& f) {
  Move quit = quit_move();
  ChronMap h = make_map("DB(" + f.name + ")", [f, quit](const Moment& t) {
    auto it = std::find(t.begin(), t.end(), quit);
    Moment y = f.apply(Moment(t.begin(), it));
    y.resize(t.size(), quit);
    return y;
  });
  h.lag = f.lag;
  return h;
}

// ---------------------------------------------------------------- factorizations

enum class FactorSystem { epi_regmono, Estar_M, E_Mstar, strongepi_mono };

inline const char* system_str(FactorSystem s) {
  switch (s) {
    case FactorSystem::epi_regmono: return "epi_regmono";
    case FactorSystem::Estar_M: return "Estar_M";
    case FactorSystem::E_Mstar: return "E_Mstar";
    default: return "strongepi_mono";
  }
}

inline FactorSystem parse_system(std::string_view s) {
  if (s == "epi_regmono") return FactorSystem::epi_regmono;
  if (s == "Estar_M") return FactorSystem::Estar_M;
  if (s == "E_Mstar") return FactorSystem::E_Mstar;
  if (s == "strongepi_mono") return FactorSystem::strongepi_mono;
  throw InputError("unknown factorization system '" + std::string(s) + "'");
}

struct Factorization {
  Game mid;
  ChronMap e, m;
};

// f = m.e with the middle payoff chosen by the system:
// epi_regmono and E_Mstar take preimages along m, the other two take images along e.
inline Factorization factorize(const ChronMap& f, const Game& g1, const Game& g2, FactorSystem sys) {
  if (!g1.regular()) throw Unsupported("factorization needs a run basis on " + g1.name);
  bool image_payoff = sys == FactorSystem::Estar_M || sys == FactorSystem::strongepi_mono;
  bool quotient_tree = sys == FactorSystem::E_Mstar || sys == FactorSystem::strongepi_mono;
  auto runs = all_runs(g1);
  Factorization out;
  if (!quotient_tree) {
    std::map<Run, bool> mid;
    for (const Run& r : runs) {
      Run y = run_image(f, r);
      bool a = g1.alice_wins(r);
      auto [it, fresh] = mid.emplace(y, image_payoff ? a : evaluate(g2, y));
      if (!fresh && image_payoff) it->second = it->second || a;
    }
    out.mid = game_of_runs("image(" + f.name + ")", mid);
    out.e = f;
    out.e.name = "e";
    out.m = identity_map("m");
    return out;
  }
  std::map<Run, std::vector<Run>> fibers;
  for (const Run& r : runs) fibers[run_image(f, r)].push_back(r);
  std::vector<std::pair<Run, Run>> seeds;
  for (auto& [y, fib] : fibers)
    for (std::size_t k = 1; k < fib.size(); ++k) seeds.emplace_back(fib[0], fib[k]);
  auto lq = std::make_shared<LevelQuotient>(g1, seeds);
  std::map<Run, bool> mid;
  for (std::size_t c = 0; c < lq->class_count(); ++c) {
    const auto& members = lq->class_members(c);
    bool a = false;
    if (image_payoff) {
      for (std::size_t i : members) a = a || g1.alice_wins(lq->runs()[i]);
    } else {
      a = evaluate(g2, run_image(f, lq->runs()[members.front()]));
    }
    mid.emplace(lq->image(members.front()), a);
  }
  out.mid = game_of_runs("quotient(" + f.name + ")", mid);
  out.e = lq->map("e");
  out.m = make_map("m", [lq, f](const Moment& u) { return f.apply(lq->lift(u)); });
  out.m.lag = std::max<std::size_t>(f.lag, lq->settle() + 8);
  return out;
}

// Membership of a morphism (between the given games) in the classes of a system.
inline Check in_E(const ChronMap& e, const Game& a, const Game& b, FactorSystem sys, std::size_t depth) {
  bool strong = sys == FactorSystem::E_Mstar || sys == FactorSystem::strongepi_mono;
  bool final_payoff = sys == FactorSystem::Estar_M || sys == FactorSystem::strongepi_mono;
  Check c = strong ? is_quotient(e, a, b, depth) : surjective_at(e, a, b, depth);
  if (!c.yes()) return c;
  if (!final_payoff) return Check::pass(depth);
  std::set<Run> img;
  for (const Run& r : all_runs(a))
    if (a.alice_wins(r)) img.insert(run_image(e, r));
  for (const Run& s : all_runs(b))
    if (b.alice_wins(s) != static_cast<bool>(img.count(s)))
      return Check::fail("payoff of " + s.str() + " is not the image payoff");
  return Check::pass(depth);
}

inline Check in_M(const ChronMap& m, const Game& a, const Game& b, FactorSystem sys, std::size_t depth) {
  bool runs_only = sys == FactorSystem::E_Mstar || sys == FactorSystem::strongepi_mono;
  bool initial = sys == FactorSystem::epi_regmono || sys == FactorSystem::E_Mstar;
  Check c = runs_only ? mono_check(m, a) : injective_at(m, a, depth);
  if (!c.yes()) return c;
  if (!initial) return Check::pass(depth);
  for (const Run& r : all_runs(a))
    if (a.alice_wins(r) != evaluate(b, run_image(m, r)))
      return Check::fail("payoff of " + r.str() + " is not the preimage payoff");
  return Check::pass(depth);
}

// ---------------------------------------------------------------- exponentials

// Alice and Bob build a chronological map T1 -> T2 level by level; move k is the
// tuple of last moves of f_k over the sorted level T1(k+1).
class Exponential {
 public:
  Exponential(const Game& g1, const Game& g2, std::size_t cap = 0) : g1_(g1), g2_(g2) {
    if (cap == 0) cap = enumeration_cap().load();
    if (!g1.rooted || !g2.rooted) throw Unsupported("exponential of an empty game");
    if (!g1.horizon || !g2.horizon || !g1.basis || !g2.basis)
      throw Unsupported("exponentials need finite games");
    H1_ = *g1.horizon;
    H_ = std::max({*g1.horizon, *g2.horizon, std::size_t{1}});
    runs1_ = all_runs(g1);
    auto tr = truncate(g1, H_);
    for (std::size_t n = 0; n <= H_; ++n) {
      auto lv = tr.level(n);
      std::sort(lv.begin(), lv.end(), moment_less);
      MomentMap<std::size_t> idx;
      for (std::size_t i = 0; i < lv.size(); ++i) idx.emplace(lv[i], i);
      levels_.push_back(std::move(lv));
      index_.push_back(std::move(idx));
    }
    build(cap);
  }

  const Game& game() const { return game_; }
  std::size_t horizon() const { return H_; }

  // Sorted T1(n).
  std::vector<Moment> level1(std::size_t n) const {
    if (n <= H_) return levels_[n];
    std::vector<Moment> out;
    for (const Run& r : runs1_) out.push_back(r.take(n));
    return out;
  }

  std::size_t index1(const Moment& t) const {
    if (t.size() <= H_) {
      auto it = index_[t.size()].find(t);
      if (it == index_[t.size()].end()) throw InputError(str(t) + " is not a moment of " + g1_.name);
      return it->second;
    }
    for (std::size_t i = 0; i < runs1_.size(); ++i)
      if (runs1_[i].through(t)) return i;
    throw InputError(str(t) + " is not a moment of " + g1_.name);
  }

  // f_n(t) for a moment <f_0..f_n> and t in T1(n+1).
  Moment eval(const Moment& phi, const Moment& t) const {
    Moment y;
    for (std::size_t k = 0; k < t.size(); ++k) y.push_back(phi.at(k).part(index1(trunc(t, k + 1))));
    return y;
  }

  ChronMap ev() const {
    auto self = std::make_shared<Exponential>(*this);
    ChronMap f = make_map("ev", [self](const Moment& u) { return self->eval(project(u, 0), project(u, 1)); });
    f.lag = H_ + 8;
    return f;
  }

  // Curried form of h : G x G1 -> G2.
  ChronMap curry(const ChronMap& h) const {
    auto self = std::make_shared<Exponential>(*this);
    ChronMap c = make_map("curry(" + h.name + ")", [self, h](const Moment& t) {
      Moment out;
      for (std::size_t k = 1; k <= t.size(); ++k) {
        Moment tk = trunc(t, k);
        std::vector<Move> parts;
        for (const Moment& s : self->level1(k)) parts.push_back(h.apply(zip_moments({tk, s})).back());
        out.push_back(level_move(parts));
      }
      return out;
    });
    c.lag = std::max(h.lag, H_ + 8);
    return c;
  }

  static Move level_move(const std::vector<Move>& ys) {
    std::string tok = "{";
    for (std::size_t i = 0; i < ys.size(); ++i) tok += (i ? "," : "") + ys[i].str();
    return Move::make(tok + "}", "", ys);
  }

 private:
  void build(std::size_t cap) {
    std::map<Run, bool> runs;
    std::size_t visited = 0;
    // images[i] = f_k(levels_[k+1][i]) for the current prefix.
    std::function<void(Moment&, std::vector<Moment>&)> go = [&](Moment& phi, std::vector<Moment>& images) {
      if (++visited > cap)
        throw ResourceError("exponential exceeds cap " + std::to_string(cap) + " moments (level " +
                            std::to_string(phi.size()) + ")");
      std::size_t k = phi.size();
      if (k == H_) {
        runs.emplace(finish(phi, images), payoff(images));
        return;
      }
      const auto& next = levels_[k + 1];
      std::vector<std::vector<Move>> options;
      double blowup = 1;
      for (const Moment& t : next) {
        const Moment& up = images[index_[k].at(trunc(t, k))];
        options.push_back(g2_.children(up));
        blowup *= static_cast<double>(options.back().size());
      }
      if (blowup > static_cast<double>(cap))
        throw ResourceError("exponential level " + std::to_string(k + 1) + " has about " +
                            std::to_string(static_cast<unsigned long long>(blowup)) + " level maps, cap " +
                            std::to_string(cap));
      std::vector<Move> choice(next.size());
      std::function<void(std::size_t)> pick = [&](std::size_t i) {
        if (i == next.size()) {
          std::vector<Moment> imgs;
          for (std::size_t j = 0; j < next.size(); ++j)
            imgs.push_back(extend(images[index_[k].at(trunc(next[j], k))], choice[j]));
          phi.push_back(level_move(choice));
          go(phi, imgs);
          phi.pop_back();
          return;
        }
        for (Move y : options[i]) {
          choice[i] = y;
          pick(i + 1);
        }
      };
      pick(0);
    };
    Moment phi;
    std::vector<Moment> images{Moment{}};
    go(phi, images);
    game_ = game_of_runs("exp(" + g1_.name + "," + g2_.name + ")", runs);
  }

  // Image run of each domain run once the level map reaches the horizon.
  std::vector<Run> limits(const std::vector<Moment>& images) const {
    std::vector<Run> out;
    for (const Run& r : runs1_) {
      const Moment& y = images[index_[H_].at(r.take(H_))];
      auto rs = g2_.basis(y);
      if (rs.size() != 1) throw IntegrityError("image " + str(y) + " is not settled at the horizon");
      out.push_back(rs.front());
    }
    return out;
  }

  Run finish(const Moment& phi, const std::vector<Moment>& images) const {
    auto lim = limits(images);
    std::size_t L = 1;
    for (const Run& s : lim) L = std::lcm(L, s.cycle().size());
    Moment c;
    for (std::size_t j = 0; j < L; ++j) {
      std::vector<Move> parts;
      for (const Run& s : lim) parts.push_back(s.at(H_ + j));
      c.push_back(level_move(parts));
    }
    return Run(phi, c);
  }

  bool payoff(const std::vector<Moment>& images) const {
    auto lim = limits(images);
    for (std::size_t i = 0; i < runs1_.size(); ++i)
      if (g1_.alice_wins(runs1_[i]) && !g2_.alice_wins(lim[i])) return false;
    return true;
  }

  Game g1_, g2_, game_;
  std::size_t H1_ = 0, H_ = 0;
  std::vector<Run> runs1_;
  std::vector<std::vector<Moment>> levels_;
  std::vector<MomentMap<std::size_t>> index_;
};

inline Exponential exponential(const Game& g1, const Game& g2, std::size_t cap = 0) {
  return Exponential(g1, g2, cap);
}

// ---------------------------------------------------------------- weak classifiers

inline Move pad_move() { return Move("*", "bot"); }

inline bool has_pad(const Moment& t) { return std::find(t.begin(), t.end(), pad_move()) != t.end(); }

// T_bot: every moment may be padded with *_T forever; padded runs are Alice's.
inline Game weak_classifier(const Game& g, std::size_t D = 2) {
  Move pad = pad_move();
  Game out;
  out.name = "bot(" + g.name + ")";
  out.children = [g, pad](const Moment& t) {
    if (has_pad(t)) return std::vector<Move>{pad};
    std::vector<Move> ch = g.rooted ? g.children(t) : std::vector<Move>{};
    ch.push_back(pad);
    return ch;
  };
  out.legal = [g, pad](const Moment& t, Move x) {
    auto it = std::find(t.begin(), t.end(), pad);
    if (it != t.end()) {
      if (!std::all_of(it, t.end(), [pad](Move m) { return m == pad; })) return false;
      return x == pad && contains(g, Moment(t.begin(), it));
    }
    if (x == pad) return t.empty() || contains(g, t);
    return g.rooted && contains(g, extend(t, x));
  };
  out.alice_wins = [g, pad](const Run& r) {
    for (Move x : r.cycle())
      if (x == pad) return true;
    return g.alice_wins(r);
  };
  if (g.regular()) {
    out.basis = [g, pad, D](const Moment& t) {
      std::vector<Run> rs;
      auto it = std::find(t.begin(), t.end(), pad);
      if (it != t.end()) {
        rs.push_back(Run::constant(Moment(t.begin(), it), pad));
        return rs;
      }
      if (g.rooted) rs = g.basis(t);
      std::size_t L = std::max(t.size(), D);
      std::function<void(Moment&)> go = [&](Moment& u) {
        rs.push_back(Run::constant(u, pad));
        if (u.size() >= L) return;
        for (Move x : g.children(u)) {
          u.push_back(x);
          go(u);
          u.pop_back();
        }
      };
      Moment u = t;
      if (g.rooted) go(u);
      else if (t.empty()) rs.push_back(Run::constant({}, pad));
      std::sort(rs.begin(), rs.end());
      rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
      return rs;
    };
  }
  return memoize(out);
}

// f_bot(s) = f(m^-1(s|n_s)) followed by pads, n_s the longest prefix of s in m[S].
inline ChronMap classify_partial(const ChronMap& m, const Game& S, const ChronMap& f) {
  Move pad = pad_move();
  ChronMap h = make_map("bot(" + f.name + ")", [m, S, f, pad](const Moment& s) {
    Moment src;  // m^-1 of the longest prefix in m[S]
    std::size_t n = 0;
    while (n < s.size()) {
      bool found = false;
      for (Move x : S.children(src)) {
        Moment u = extend(src, x);
        if (m.apply(u).back() == s[n]) {
          src = std::move(u);
          found = true;
          break;
        }
      }
      if (!found) break;
      ++n;
    }
    Moment y = f.apply(src);
    y.resize(s.size(), pad);
    return y;
  });
  h.lag = std::max(m.lag, f.lag);
  return h;
}

// ---------------------------------------------------------------- extensivity

// Canonical comparison sum_j (G x G_j) -> G x sum_j G_j.
inline ChronMap extensivity_canonical() {
  return relabel("dist", [](Move x) {
    auto [j, inner] = untag_move(x);
    return Move::tuple({inner.part(0), tag_move(inner.part(1), j)});
  });
}

}  // namespace ludic
