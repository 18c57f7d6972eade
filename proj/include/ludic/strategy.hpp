#pragma once
// Strategies as subgames and as mappings; play and transport.

#include "ludic/morphism.hpp"

namespace ludic {

struct StrategySubgame {
  Player player = Player::Alice;
  Game tree;
};

struct StrategyMapping {
  Player player = Player::Alice;
  std::function<std::optional<Move>(const Moment&)> choose;
};

// Conditions (a)-(d) on all moments of s up to depth.
inline Check validate(const Game& g, const StrategySubgame& s, std::size_t depth) {
  if (!g.rooted) return Check::fail("host game is empty");
  if (!s.tree.rooted) return Check::fail("strategy is empty");
  auto tr = truncate(s.tree, depth);
  for (const Moment& t : tr.moments) {
    if (t.size() >= depth) continue;
    auto mine = s.tree.children(t);
    auto host = g.children(t);
    for (Move x : mine)
      if (std::find(host.begin(), host.end(), x) == host.end())
        return Check::fail("move " + x.str() + " at " + str(t) + " is not legal", t.size());
    if (turn(t) == s.player) {
      if (mine.size() != 1)
        return Check::fail(std::to_string(mine.size()) + " choices at " + str(t), t.size());
    } else {
      for (Move x : host)
        if (std::find(mine.begin(), mine.end(), x) == mine.end())
          return Check::fail("reply " + x.str() + " at " + str(t) + " is not served", t.size());
    }
  }
  return Check::pass(depth);
}

// Reachable player moments must have a legal choice; S_gamma is the reachable set.
inline Check validate(const Game& g, const StrategyMapping& s, std::size_t depth) {
  if (!g.rooted) return Check::fail("host game is empty");
  std::vector<Moment> frontier{Moment{}};
  while (!frontier.empty()) {
    std::vector<Moment> next;
    for (const Moment& t : frontier) {
      if (t.size() >= depth) continue;
      auto host = g.children(t);
      if (turn(t) == s.player) {
        auto x = s.choose(t);
        if (!x) return Check::fail("no choice at " + str(t), t.size());
        if (std::find(host.begin(), host.end(), *x) == host.end())
          return Check::fail("illegal choice " + x->str() + " at " + str(t), t.size());
        next.push_back(extend(t, *x));
      } else {
        for (Move x : host) next.push_back(extend(t, x));
      }
    }
    frontier = std::move(next);
  }
  return Check::pass(depth);
}

inline StrategySubgame to_subgame(const Game& g, const StrategyMapping& s) {
  Game t;
  t.name = g.name + "/" + player_str(s.player) + "-strategy";
  t.alice_wins = g.alice_wins;
  t.horizon = g.horizon;
  Player p = s.player;
  auto choose = s.choose;
  auto host = g.children;
  t.children = [p, choose, host](const Moment& m) {
    if (turn(m) == p) {
      auto x = choose(m);
      if (!x) return std::vector<Move>{};
      return std::vector<Move>{*x};
    }
    return host(m);
  };
  if (g.basis) {
    auto hb = g.basis;
    Game probe = t;
    t.basis = [hb, probe](const Moment& m) {
      std::vector<Run> out;
      for (const Run& r : hb(m))
        if (run_in(probe, r)) out.push_back(r);
      return out;
    };
  }
  return {p, memoize(t)};
}

inline StrategyMapping to_mapping(const StrategySubgame& s) {
  Game tree = s.tree;
  return {s.player, [tree](const Moment& t) -> std::optional<Move> {
            auto ch = tree.children(t);
            if (ch.empty()) return std::nullopt;
            return ch.front();
          }};
}

inline StrategySubgame convert(const Game& g, const StrategyMapping& s, std::size_t depth) {
  Check v = validate(g, s, depth);
  if (!v.yes()) throw InputError("invalid strategy: " + v.witness);
  return to_subgame(g, s);
}

inline StrategyMapping convert(const Game& g, const StrategySubgame& s, std::size_t depth) {
  Check v = validate(g, s, depth);
  if (!v.yes()) throw InputError("invalid strategy: " + v.witness);
  return to_mapping(s);
}

// Host runs inside the strategy subtree.
inline std::vector<Run> strategy_runs(const Game& g, const StrategySubgame& s) {
  std::vector<Run> out;
  for (const Run& r : all_runs(g))
    if (run_in(s.tree, r)) out.push_back(r);
  return out;
}

inline Check is_winning(const Game& g, const StrategySubgame& s) {
  if (!g.regular()) return Check::undecided(g.name + " has no run basis");
  for (const Run& r : strategy_runs(g, s)) {
    bool a = g.alice_wins(r);
    if (s.player == Player::Alice && !a) return Check::fail("run " + r.str() + " is won by Bob");
    if (s.player == Player::Bob && a) return Check::fail("run " + r.str() + " is won by Alice");
  }
  return Check::pass();
}

// ---------------------------------------------------------------- play

struct PlayEntry {
  std::size_t inning;
  Player player;
  Move move;
  std::string source;  // "strategy" or "driver"
};

struct PlayRecord {
  Moment moment;
  std::vector<PlayEntry> log;
};

using Driver = std::function<Move(const Moment&, const std::vector<Move>& legal)>;

inline PlayRecord play(const Game& g, const std::optional<StrategyMapping>& alice,
                       const std::optional<StrategyMapping>& bob, const Driver& driver, std::size_t innings) {
  PlayRecord rec;
  if (!g.rooted) throw InputError("cannot play the empty game");
  while (rec.moment.size() < 2 * innings) {
    Player p = turn(rec.moment);
    auto legal = g.children(rec.moment);
    const auto& strat = p == Player::Alice ? alice : bob;
    Move x;
    std::string source;
    if (strat) {
      auto c = strat->choose(rec.moment);
      if (!c) throw InputError(std::string(player_str(p)) + " strategy has no move at " + str(rec.moment));
      x = *c;
      source = "strategy";
    } else {
      if (!driver) throw InputError(std::string("no strategy or driver for ") + player_str(p));
      x = driver(rec.moment, legal);
      source = "driver";
    }
    if (std::find(legal.begin(), legal.end(), x) == legal.end()) {
      std::string opts;
      for (Move m : legal) opts += (opts.empty() ? "" : " ") + m.str();
      throw InputError("illegal move " + x.str() + " at " + str(rec.moment) + "; legal: " + opts);
    }
    rec.log.push_back({rec.moment.size() / 2, p, x, source});
    rec.moment.push_back(x);
  }
  return rec;
}

// ---------------------------------------------------------------- transport

// Local surjectivity restricted to moments where `at` is to move.
inline Check locally_surjective_on(const ChronMap& f, const Game& g1, const Game& g2, std::size_t depth,
                                   Player at) {
  auto tr = truncate(g1, depth > 0 ? depth - 1 : 0);
  for (const Moment& t : tr.moments) {
    if (turn(t) != at) continue;
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

struct Transported {
  Game image;              // f[T_s] with payoff from the codomain
  Check image_is_strategy; // uniqueness can fail where f merges moments
  StrategySubgame strategy;
};

// Image transport: A-morphism for Alice, B-morphism for Bob.
inline Transported transport(const ChronMap& f, const Game& g1, const Game& g2, const StrategySubgame& s,
                             std::size_t depth) {
  Check kind = s.player == Player::Alice ? a_morphism(f, g1, g2) : b_morphism(f, g1, g2);
  if (kind.no()) throw InputError(f.name + " has the wrong morphism kind: " + kind.witness);
  Check ls = locally_surjective_on(f, g1, g2, depth, other(s.player));
  if (!ls.yes()) throw InputError(f.name + " is not locally surjective: " + ls.witness);
  Transported out;
  out.image = image_subgame(f, s.tree, g2);
  StrategySubgame img{s.player, out.image};
  out.image_is_strategy = validate(g2, img, depth);
  // Keep one choice where the image offers several.
  Game sub = out.image;
  sub.name = g2.name + "/transported";
  Game image = out.image;
  Player p = s.player;
  sub.children = [image, p](const Moment& t) {
    auto ch = image.children(t);
    if (turn(t) == p && ch.size() > 1) ch.resize(1);
    return ch;
  };
  if (g2.basis) {
    auto hb = g2.basis;
    Game probe = sub;
    sub.basis = [hb, probe](const Moment& m) {
      std::vector<Run> rs;
      for (const Run& r : hb(m))
        if (run_in(probe, r)) rs.push_back(r);
      return rs;
    };
  }
  out.strategy = {p, memoize(sub)};
  Check v = validate(g2, out.strategy, depth);
  if (!v.yes()) throw IntegrityError("transported strategy is invalid: " + v.witness);
  return out;
}

// Preimage transport: for Alice along a B-morphism, for Bob along an A-morphism.
inline StrategySubgame pullback_strategy(const ChronMap& f, const Game& g, const Game& g2,
                                         const StrategySubgame& s2, std::size_t depth) {
  Check kind = s2.player == Player::Alice ? b_morphism(f, g, g2) : a_morphism(f, g, g2);
  if (kind.no()) throw InputError(f.name + " has the wrong morphism kind: " + kind.witness);
  Check ls = locally_surjective(f, g, g2, depth);
  if (!ls.yes()) throw InputError(f.name + " is not locally surjective: " + ls.witness);
  Game target = s2.tree;
  Player p = s2.player;
  auto host = g.children;
  StrategyMapping m{p, [f, target, host](const Moment& t) -> std::optional<Move> {
                      for (Move x : host(t))
                        if (contains(target, f.apply(extend(t, x)))) return x;
                      return std::nullopt;
                    }};
  StrategySubgame out = to_subgame(g, m);
  out.tree.name = g.name + "/pulled";
  Check v = validate(g, out, depth);
  if (!v.yes()) throw IntegrityError("pulled back strategy is invalid: " + v.witness);
  return out;
}

// ---------------------------------------------------------------- finite solving

// Winning strategy for p in a game with a finite horizon, by backward induction.
inline std::optional<StrategySubgame> solve_finite(const Game& g, Player p) {
  if (!g.rooted) return std::nullopt;
  if (!g.horizon || !g.basis) throw Unsupported("solving needs a finite horizon and a run basis");
  std::size_t H = *g.horizon;
  auto win = std::make_shared<MomentMap<bool>>();
  std::function<bool(const Moment&)> value = [&](const Moment& t) -> bool {
    auto it = win->find(t);
    if (it != win->end()) return it->second;
    bool v;
    if (t.size() >= H) {
      auto rs = g.basis(t);
      if (rs.size() != 1) throw IntegrityError("moment " + str(t) + " beyond the horizon has several runs");
      v = g.alice_wins(rs.front()) == (p == Player::Alice);
    } else {
      auto ch = g.children(t);
      if (turn(t) == p) {
        v = false;
        for (Move x : ch)
          if (value(extend(t, x))) v = true;
      } else {
        v = true;
        for (Move x : ch)
          if (!value(extend(t, x))) v = false;
      }
    }
    win->emplace(t, v);
    return v;
  };
  if (!value({})) return std::nullopt;
  truncate(g, H);  // cap check
  for (const Moment& t : truncate(g, H).moments) value(t);
  auto host = g.children;
  StrategyMapping m{p, [win, host, H](const Moment& t) -> std::optional<Move> {
                      auto ch = host(t);
                      if (t.size() >= H) return ch.empty() ? std::nullopt : std::optional<Move>(ch.front());
                      for (Move x : ch) {
                        auto it = win->find(extend(t, x));
                        if (it != win->end() && it->second) return x;
                      }
                      return std::nullopt;
                    }};
  return to_subgame(g, m);
}

// Every strategy for p, as choice tables up to the horizon; for tiny games.
inline std::vector<StrategySubgame> enumerate_strategies(const Game& g, Player p, std::size_t cap = 4096) {
  if (!g.horizon) throw Unsupported("strategy enumeration needs a finite horizon");
  std::size_t H = *g.horizon;
  std::vector<StrategySubgame> out;
  auto host = g.children;
  std::function<void(std::vector<Moment>, MomentMap<Move>&)> go = [&](std::vector<Moment> todo,
                                                                     MomentMap<Move>& table) {
    if (out.size() >= cap) throw ResourceError("more than " + std::to_string(cap) + " strategies");
    if (todo.empty()) {
      auto tab = std::make_shared<const MomentMap<Move>>(table);
      out.push_back(to_subgame(g, StrategyMapping{p, [tab, host](const Moment& t) -> std::optional<Move> {
                                                     auto it = tab->find(t);
                                                     if (it != tab->end()) return it->second;
                                                     auto ch = host(t);
                                                     if (ch.empty()) return std::nullopt;
                                                     return ch.front();
                                                   }}));
      return;
    }
    Moment t = todo.back();
    todo.pop_back();
    if (t.size() >= H) {
      go(std::move(todo), table);
      return;
    }
    if (turn(t) == p) {
      for (Move x : host(t)) {
        table[t] = x;
        auto next = todo;
        next.push_back(extend(t, x));
        go(std::move(next), table);
        table.erase(t);
      }
    } else {
      for (Move x : host(t)) todo.push_back(extend(t, x));
      go(std::move(todo), table);
    }
  };
  MomentMap<Move> table;
  go({Moment{}}, table);
  return out;
}

inline bool has_winning_strategy(const Game& g, Player p) { return solve_finite(g, p).has_value(); }

}  // namespace ludic
