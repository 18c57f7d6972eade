#pragma once
// Moments, runs, lazy game trees and the regular fragment.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace ludic {

// ---------------------------------------------------------------- errors

struct Error : std::runtime_error {
  int exit_code;
  Error(const std::string& what, int code) : std::runtime_error(what), exit_code(code) {}
};
struct InputError : Error {
  explicit InputError(const std::string& w) : Error(w, 2) {}
};
struct ResourceError : Error {
  explicit ResourceError(const std::string& w) : Error(w, 3) {}
};
struct Unsupported : Error {
  explicit Unsupported(const std::string& w) : Error(w, 4) {}
};
// A law the implementation relies on was observed broken.
struct IntegrityError : Error {
  explicit IntegrityError(const std::string& w) : Error(w, 1) {}
};

// ---------------------------------------------------------------- codes

// Distance codes: d = 1/(code+1), code kInf <=> d = 0.
using Code = std::uint64_t;
inline constexpr Code kInf = std::numeric_limits<Code>::max();

inline std::string code_str(Code c) { return c == kInf ? "inf" : std::to_string(c); }

enum class Verdict { False, True, Undecided };

inline const char* verdict_str(Verdict v) {
  switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    default: return "undecided";
  }
}

struct Check {
  Verdict verdict = Verdict::True;
  std::string witness;
  std::size_t depth = 0;

  bool yes() const { return verdict == Verdict::True; }
  bool no() const { return verdict == Verdict::False; }
  std::string str() const {
    std::string s = verdict_str(verdict);
    return witness.empty() ? s : s + " (" + witness + ")";
  }
  static Check pass(std::size_t depth = 0) { return {Verdict::True, {}, depth}; }
  static Check fail(std::string w, std::size_t depth = 0) { return {Verdict::False, std::move(w), depth}; }
  static Check undecided(std::string w, std::size_t depth = 0) {
    return {Verdict::Undecided, std::move(w), depth};
  }
};

// ---------------------------------------------------------------- enumeration cap

inline std::atomic<std::size_t>& enumeration_cap() {
  static std::atomic<std::size_t> cap = [] {
    if (const char* env = std::getenv("LUDIC_CAP")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && v > 0) return static_cast<std::size_t>(v);
    }
    return std::size_t{100000};
  }();
  return cap;
}

// ---------------------------------------------------------------- moves

namespace detail {

struct MoveRep {
  std::string token;
  std::string tag;
  std::vector<const MoveRep*> parts;
  std::string text;
};

class MoveTable {
 public:
  static MoveTable& instance() {
    static MoveTable t;
    return t;
  }

  const MoveRep* intern(std::string_view token, std::string_view tag,
                        const std::vector<const MoveRep*>& parts) {
    std::string key;
    key.reserve(token.size() + tag.size() + 2 + parts.size() * sizeof(void*));
    key.append(token);
    key.push_back('\x1f');
    key.append(tag);
    key.push_back('\x1f');
    for (auto* p : parts) key.append(reinterpret_cast<const char*>(&p), sizeof(p));
    std::lock_guard<std::mutex> lock(mu_);
    auto it = table_.find(key);
    if (it != table_.end()) return it->second.get();
    auto rep = std::make_unique<MoveRep>();
    rep->token = std::string(token);
    rep->tag = std::string(tag);
    rep->parts = parts;
    rep->text = tag.empty() ? rep->token : rep->token + "@" + rep->tag;
    const MoveRep* out = rep.get();
    table_.emplace(std::move(key), std::move(rep));
    return out;
  }

 private:
  std::mutex mu_;
  std::unordered_map<std::string, std::unique_ptr<MoveRep>> table_;
};

inline int compare_rep(const MoveRep* a, const MoveRep* b) {
  if (a == b) return 0;
  if (!a) return -1;
  if (!b) return 1;
  if (int c = a->token.compare(b->token)) return c < 0 ? -1 : 1;
  if (int c = a->tag.compare(b->tag)) return c < 0 ? -1 : 1;
  std::size_t n = std::min(a->parts.size(), b->parts.size());
  for (std::size_t i = 0; i < n; ++i)
    if (int c = compare_rep(a->parts[i], b->parts[i])) return c;
  if (a->parts.size() != b->parts.size()) return a->parts.size() < b->parts.size() ? -1 : 1;
  return 0;
}

}  // namespace detail

// Interned symbol. Equality is identity of (token, tag, parts).
class Move {
 public:
  Move() = default;
  explicit Move(std::string_view token, std::string_view tag = {})
      : rep_(detail::MoveTable::instance().intern(token, tag, {})) {}

  static Move make(std::string_view token, std::string_view tag, const std::vector<Move>& parts) {
    std::vector<const detail::MoveRep*> ps;
    ps.reserve(parts.size());
    for (const Move& m : parts) ps.push_back(m.rep_);
    Move out;
    out.rep_ = detail::MoveTable::instance().intern(token, tag, ps);
    return out;
  }

  // Tuple move; token lists the components.
  static Move tuple(const std::vector<Move>& parts) {
    std::string tok = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) tok += ",";
      tok += parts[i].str();
    }
    tok += ")";
    return make(tok, "", parts);
  }

  bool null() const { return rep_ == nullptr; }
  const std::string& token() const { return rep_->token; }
  const std::string& tag() const { return rep_->tag; }
  const std::string& str() const {
    static const std::string none = "<null>";
    return rep_ ? rep_->text : none;
  }
  std::size_t arity() const { return rep_->parts.size(); }
  Move part(std::size_t i) const {
    Move m;
    m.rep_ = rep_->parts.at(i);
    return m;
  }
  std::vector<Move> parts() const {
    std::vector<Move> out;
    for (std::size_t i = 0; i < arity(); ++i) out.push_back(part(i));
    return out;
  }
  Move with_tag(std::string_view tag) const { return make(token(), tag, parts()); }

  std::size_t hash() const { return std::hash<const void*>()(rep_); }
  friend bool operator==(Move a, Move b) { return a.rep_ == b.rep_; }
  friend bool operator!=(Move a, Move b) { return a.rep_ != b.rep_; }
  friend bool operator<(Move a, Move b) { return detail::compare_rep(a.rep_, b.rep_) < 0; }

 private:
  const detail::MoveRep* rep_ = nullptr;
};

struct MoveHash {
  std::size_t operator()(Move m) const { return m.hash(); }
};

// ---------------------------------------------------------------- moments

using Moment = std::vector<Move>;

struct MomentHash {
  std::size_t operator()(const Moment& t) const {
    std::size_t h = 0x9e3779b97f4a7c15ull ^ t.size();
    for (Move m : t) h ^= m.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};

template <class V>
using MomentMap = std::unordered_map<Moment, V, MomentHash>;
using MomentSet = std::unordered_set<Moment, MomentHash>;

enum class Player { Alice, Bob };

inline Player turn(const Moment& t) { return t.size() % 2 == 0 ? Player::Alice : Player::Bob; }
inline Player turn_at(std::size_t len) { return len % 2 == 0 ? Player::Alice : Player::Bob; }
inline const char* player_str(Player p) { return p == Player::Alice ? "Alice" : "Bob"; }
inline Player other(Player p) { return p == Player::Alice ? Player::Bob : Player::Alice; }

inline Moment trunc(const Moment& t, std::size_t k) {
  return Moment(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(std::min(k, t.size())));
}
inline Moment extend(Moment t, Move x) {
  t.push_back(x);
  return t;
}
inline bool is_prefix(const Moment& p, const Moment& t) {
  return p.size() <= t.size() && std::equal(p.begin(), p.end(), t.begin());
}

inline std::string str(const Moment& t) {
  std::string s = "<";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += t[i].str();
  }
  return s + ">";
}

inline bool moment_less(const Moment& a, const Moment& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline Moment moves(std::initializer_list<const char*> toks) {
  Moment t;
  for (const char* s : toks) t.emplace_back(s);
  return t;
}

// ---------------------------------------------------------------- runs

// Eventually periodic infinite sequence prefix + cycle^w, kept in normal form:
// primitive cycle, shortest prefix.
class Run {
 public:
  Run() = default;
  Run(Moment prefix, Moment cycle) : prefix_(std::move(prefix)), cycle_(std::move(cycle)) {
    if (cycle_.empty()) throw InputError("run with empty cycle");
    normalize();
  }
  static Run constant(Moment prefix, Move tail) { return Run(std::move(prefix), Moment{tail}); }

  const Moment& prefix() const { return prefix_; }
  const Moment& cycle() const { return cycle_; }
  std::size_t stem() const { return prefix_.size() + cycle_.size(); }
  bool constant_tail() const { return cycle_.size() == 1; }

  Move at(std::size_t i) const {
    return i < prefix_.size() ? prefix_[i] : cycle_[(i - prefix_.size()) % cycle_.size()];
  }
  Moment take(std::size_t n) const {
    Moment out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(at(i));
    return out;
  }
  bool through(const Moment& t) const {
    for (std::size_t i = 0; i < t.size(); ++i)
      if (at(i) != t[i]) return false;
    return true;
  }

  std::string str() const {
    std::string s;
    for (Move m : prefix_) s += m.str() + " ";
    s += "(";
    for (std::size_t i = 0; i < cycle_.size(); ++i) {
      if (i) s += " ";
      s += cycle_[i].str();
    }
    return s + ")^w";
  }

  friend bool operator==(const Run& a, const Run& b) {
    return a.prefix_ == b.prefix_ && a.cycle_ == b.cycle_;
  }
  friend bool operator!=(const Run& a, const Run& b) { return !(a == b); }
  // Orders by the denoted sequence, then by representation.
  friend bool operator<(const Run& a, const Run& b) {
    std::size_t n = std::max(a.prefix_.size(), b.prefix_.size()) +
                    std::lcm(a.cycle_.size(), b.cycle_.size());
    for (std::size_t i = 0; i < n; ++i) {
      Move x = a.at(i), y = b.at(i);
      if (x != y) return x < y;
    }
    return false;
  }

 private:
  void normalize() {
    std::size_t n = cycle_.size();
    for (std::size_t d = 1; d < n; ++d) {
      if (n % d) continue;
      bool ok = true;
      for (std::size_t i = d; i < n && ok; ++i) ok = cycle_[i] == cycle_[i - d];
      if (ok) {
        cycle_.resize(d);
        break;
      }
    }
    while (!prefix_.empty() && prefix_.back() == cycle_.back()) {
      std::rotate(cycle_.rbegin(), cycle_.rbegin() + 1, cycle_.rend());
      prefix_.pop_back();
    }
  }

  Moment prefix_;
  Moment cycle_;
};

struct RunHash {
  std::size_t operator()(const Run& r) const {
    MomentHash h;
    return h(r.prefix()) * 31 + h(r.cycle());
  }
};

// First index of disagreement; kInf iff equal.
inline Code delta(const Run& a, const Run& b) {
  std::size_t n =
      std::max(a.prefix().size(), b.prefix().size()) + std::lcm(a.cycle().size(), b.cycle().size());
  for (std::size_t i = 0; i < n; ++i)
    if (a.at(i) != b.at(i)) return i;
  return kInf;
}

// ---------------------------------------------------------------- games

using ChildrenFn = std::function<std::vector<Move>(const Moment&)>;
using PayoffFn = std::function<bool(const Run&)>;  // true: Alice wins
using BasisFn = std::function<std::vector<Run>(const Moment&)>;
using LegalFn = std::function<bool(const Moment&, Move)>;

// Lazy pruned tree plus payoff oracle. A game with a basis oracle is regular:
// basis(t) lists the runs through t of the executable fragment.
struct Game {
  std::string name;
  bool rooted = true;  // false: the empty game
  ChildrenFn children;
  PayoffFn alice_wins;
  BasisFn basis;
  LegalFn legal;
  // Depth beyond which every moment has exactly one child.
  std::optional<std::size_t> horizon;

  bool regular() const { return !rooted || static_cast<bool>(basis); }
};

inline bool contains(const Game& g, const Moment& t) {
  if (!g.rooted) return false;
  Moment cur;
  cur.reserve(t.size());
  for (Move x : t) {
    bool ok;
    if (g.legal) {
      ok = g.legal(cur, x);
    } else {
      auto ch = g.children(cur);
      ok = std::find(ch.begin(), ch.end(), x) != ch.end();
    }
    if (!ok) return false;
    cur.push_back(x);
  }
  return true;
}

// Depth to which a run is checked against a tree.
inline std::size_t run_check_depth(const Game& g, const Run& r) {
  std::size_t d = r.stem() + 2 * r.cycle().size() + 1;
  if (g.horizon) d = std::max(d, *g.horizon + 2 * r.cycle().size() + 1);
  return d;
}

inline std::optional<std::size_t> first_missing_depth(const Game& g, const Run& r) {
  if (!g.rooted) return 0;
  std::size_t d = run_check_depth(g, r);
  Moment cur;
  for (std::size_t i = 0; i < d; ++i) {
    Move x = r.at(i);
    bool ok;
    if (g.legal) {
      ok = g.legal(cur, x);
    } else {
      auto ch = g.children(cur);
      ok = std::find(ch.begin(), ch.end(), x) != ch.end();
    }
    if (!ok) return i + 1;
    cur.push_back(x);
  }
  return std::nullopt;
}

inline bool run_in(const Game& g, const Run& r) { return !first_missing_depth(g, r).has_value(); }

inline bool evaluate(const Game& g, const Run& r) {
  if (auto d = first_missing_depth(g, r))
    throw InputError("run " + r.str() + " leaves " + g.name + " at depth " + std::to_string(*d));
  return g.alice_wins(r);
}

inline Player winner(const Game& g, const Run& r) {
  return evaluate(g, r) ? Player::Alice : Player::Bob;
}

inline std::vector<Run> runs_through(const Game& g, const Moment& t) {
  if (!g.regular()) throw Unsupported(g.name + " has no run basis");
  if (!contains(g, t)) throw InputError(str(t) + " is not a moment of " + g.name);
  auto rs = g.basis(t);
  std::sort(rs.begin(), rs.end());
  return rs;
}

inline std::vector<Run> all_runs(const Game& g) {
  if (!g.rooted) return {};
  return runs_through(g, {});
}

inline Game empty_game() {
  Game g;
  g.name = "empty";
  g.rooted = false;
  g.children = [](const Moment&) { return std::vector<Move>{}; };
  g.alice_wins = [](const Run&) { return false; };
  g.basis = [](const Moment&) { return std::vector<Run>{}; };
  g.horizon = 0;
  return g;
}

// Thread-safe memo on children and basis.
inline Game memoize(Game g) {
  if (!g.rooted) return g;
  struct Cache {
    std::mutex mu;
    MomentMap<std::vector<Move>> ch;
    MomentMap<std::vector<Run>> ba;
  };
  auto cache = std::make_shared<Cache>();
  auto ch = g.children;
  g.children = [cache, ch](const Moment& t) {
    {
      std::lock_guard<std::mutex> l(cache->mu);
      auto it = cache->ch.find(t);
      if (it != cache->ch.end()) return it->second;
    }
    auto v = ch(t);
    std::lock_guard<std::mutex> l(cache->mu);
    cache->ch.emplace(t, v);
    return v;
  };
  if (g.basis) {
    auto ba = g.basis;
    g.basis = [cache, ba](const Moment& t) {
      {
        std::lock_guard<std::mutex> l(cache->mu);
        auto it = cache->ba.find(t);
        if (it != cache->ba.end()) return it->second;
      }
      auto v = ba(t);
      std::lock_guard<std::mutex> l(cache->mu);
      cache->ba.emplace(t, v);
      return v;
    };
  }
  return g;
}

// ---------------------------------------------------------------- finite games

// Horizon of a finite run set: beyond it no two runs share a moment.
inline std::size_t horizon_of(const std::vector<Run>& runs) {
  std::size_t h = 0;
  for (const Run& r : runs) h = std::max(h, r.prefix().size());
  for (std::size_t i = 0; i < runs.size(); ++i)
    for (std::size_t j = i + 1; j < runs.size(); ++j) {
      Code d = delta(runs[i], runs[j]);
      if (d != kInf) h = std::max<std::size_t>(h, d + 1);
    }
  return h;
}

// Game whose runs are exactly the listed ones; its tree is their prefix set.
inline Game finite_game(std::string name, std::vector<std::pair<Run, bool>> runs) {
  if (runs.empty()) {
    Game e = empty_game();
    e.name = std::move(name);
    return e;
  }
  struct Data {
    std::vector<Run> runs;
    std::vector<bool> bits;
    std::unordered_map<Run, bool, RunHash> payoff;
    std::size_t horizon = 0;
    MomentMap<std::vector<std::size_t>> index;  // moments of length <= horizon
  };
  auto d = std::make_shared<Data>();
  std::sort(runs.begin(), runs.end(), [](auto& a, auto& b) { return a.first < b.first; });
  for (auto& [r, bit] : runs) {
    auto it = d->payoff.find(r);
    if (it != d->payoff.end()) {
      if (it->second != bit) throw InputError("run " + r.str() + " listed with both payoffs");
      continue;
    }
    d->payoff.emplace(r, bit);
    d->runs.push_back(r);
    d->bits.push_back(bit);
  }
  d->horizon = horizon_of(d->runs);
  for (std::size_t i = 0; i < d->runs.size(); ++i)
    for (std::size_t n = 0; n <= d->horizon; ++n) d->index[d->runs[i].take(n)].push_back(i);

  auto through = [d](const Moment& t) -> std::vector<std::size_t> {
    if (t.size() <= d->horizon) {
      auto it = d->index.find(t);
      return it == d->index.end() ? std::vector<std::size_t>{} : it->second;
    }
    auto it = d->index.find(trunc(t, d->horizon));
    if (it == d->index.end()) return {};
    std::vector<std::size_t> out;
    for (std::size_t i : it->second)
      if (d->runs[i].through(t)) out.push_back(i);
    return out;
  };

  Game g;
  g.name = std::move(name);
  g.horizon = d->horizon;
  g.children = [d, through](const Moment& t) {
    std::vector<Move> out;
    for (std::size_t i : through(t)) {
      Move x = d->runs[i].at(t.size());
      if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  g.legal = [d, through](const Moment& t, Move x) {
    for (std::size_t i : through(t))
      if (d->runs[i].at(t.size()) == x) return true;
    return false;
  };
  g.basis = [d, through](const Moment& t) {
    std::vector<Run> out;
    for (std::size_t i : through(t)) out.push_back(d->runs[i]);
    return out;
  };
  g.alice_wins = [d, nm = g.name](const Run& r) {
    auto it = d->payoff.find(r);
    if (it == d->payoff.end()) throw InputError("run " + r.str() + " is not a run of " + nm);
    return it->second;
  };
  return g;
}

// Same tree, new payoff; the basis is kept.
inline Game with_payoff(Game g, PayoffFn p, std::string name = {}) {
  g.alice_wins = std::move(p);
  if (!name.empty()) g.name = std::move(name);
  return g;
}

// ---------------------------------------------------------------- truncation

struct Truncation {
  std::vector<Moment> moments;  // breadth-first, children in oracle order
  std::vector<std::ptrdiff_t> parent;
  std::vector<std::size_t> level_start;  // level_start[n] = first index of length n

  std::size_t size() const { return moments.size(); }
  std::vector<Moment> level(std::size_t n) const {
    if (n + 1 >= level_start.size()) return {};
    return {moments.begin() + static_cast<std::ptrdiff_t>(level_start[n]),
            moments.begin() + static_cast<std::ptrdiff_t>(level_start[n + 1])};
  }
};

inline Truncation truncate(const Game& g, std::size_t n, std::size_t cap = 0) {
  if (cap == 0) cap = enumeration_cap().load();
  Truncation out;
  out.level_start.push_back(0);
  if (!g.rooted) {
    out.level_start.push_back(0);
    return out;
  }
  out.moments.push_back({});
  out.parent.push_back(-1);
  out.level_start.push_back(1);
  for (std::size_t depth = 0; depth < n; ++depth) {
    std::size_t lo = out.level_start[depth], hi = out.level_start[depth + 1];
    for (std::size_t i = lo; i < hi; ++i) {
      Moment t = out.moments[i];
      auto ch = g.children(t);
      if (out.moments.size() + ch.size() > cap)
        throw ResourceError("enumeration cap " + std::to_string(cap) + " exceeded at " + str(t) +
                            " in " + g.name);
      for (Move x : ch) {
        out.moments.push_back(extend(t, x));
        out.parent.push_back(static_cast<std::ptrdiff_t>(i));
      }
    }
    out.level_start.push_back(out.moments.size());
  }
  return out;
}

inline std::vector<Moment> level(const Game& g, std::size_t n) { return truncate(g, n).level(n); }

// Prunedness up to depth: first childless moment if any.
inline std::optional<Moment> find_dead_end(const Game& g, std::size_t depth) {
  auto tr = truncate(g, depth);
  for (std::size_t i = 0; i < tr.size(); ++i)
    if (tr.moments[i].size() < depth && g.children(tr.moments[i]).empty()) return tr.moments[i];
  return std::nullopt;
}

// ---------------------------------------------------------------- level systems

struct LevelSystem {
  std::vector<std::vector<Moment>> levels;  // levels[n]: moments of length n

  std::size_t depth() const { return levels.empty() ? 0 : levels.size() - 1; }
  const std::vector<Moment>& level(std::size_t n) const { return levels.at(n); }
  // The connecting map level(n) -> level(m), m <= n.
  static Moment trunc_map(const Moment& t, std::size_t m) { return trunc(t, m); }
};

inline LevelSystem to_levels(const Game& g, std::size_t n) {
  auto tr = truncate(g, n);
  LevelSystem ls;
  for (std::size_t k = 0; k <= n; ++k) ls.levels.push_back(tr.level(k));
  return ls;
}

// Witness of a non-surjective connecting map, if any.
inline std::optional<Moment> levels_surjectivity_gap(const LevelSystem& ls) {
  for (std::size_t n = 0; n + 1 < ls.levels.size(); ++n) {
    MomentSet hit;
    for (const Moment& t : ls.levels[n + 1]) hit.insert(trunc(t, n));
    for (const Moment& s : ls.levels[n])
      if (!hit.count(s)) return s;
  }
  return std::nullopt;
}

// Tree fragment (depth <= ls.depth()) rebuilt from levels.
inline Game from_levels(const LevelSystem& ls, std::string name = "levels") {
  if (ls.levels.empty() || ls.levels[0].empty()) return empty_game();
  auto kids = std::make_shared<MomentMap<std::vector<Move>>>();
  for (std::size_t n = 1; n < ls.levels.size(); ++n)
    for (const Moment& t : ls.levels[n]) {
      auto& v = (*kids)[trunc(t, n - 1)];
      if (std::find(v.begin(), v.end(), t.back()) == v.end()) v.push_back(t.back());
    }
  Game g;
  g.name = std::move(name);
  g.children = [kids](const Moment& t) {
    auto it = kids->find(t);
    return it == kids->end() ? std::vector<Move>{} : it->second;
  };
  g.alice_wins = [](const Run&) { return false; };
  return g;
}

// ---------------------------------------------------------------- pruning and subgames

// Restricts a candidate tree to extendable moments.
inline Game prune(const Game& candidate, std::function<bool(const Moment&)> extendable) {
  if (!candidate.rooted || !extendable(Moment{})) {
    Game e = empty_game();
    e.name = candidate.name + "/pruned";
    return e;
  }
  Game g = candidate;
  g.name = candidate.name + "/pruned";
  auto ch = candidate.children;
  g.children = [ch, extendable](const Moment& t) {
    std::vector<Move> out;
    for (Move x : ch(t))
      if (extendable(extend(t, x))) out.push_back(x);
    return out;
  };
  if (candidate.legal) {
    auto lg = candidate.legal;
    g.legal = [lg, extendable](const Moment& t, Move x) { return lg(t, x) && extendable(extend(t, x)); };
  }
  if (candidate.basis) {
    auto ba = candidate.basis;
    g.basis = ba;
  }
  return memoize(g);
}

// Subgame given by a children oracle; validated to `depth`, trusted beyond.
inline Game subgame(const Game& host, ChildrenFn sub_children, std::size_t depth,
                    std::string name = {}) {
  Game s;
  s.name = name.empty() ? host.name + "/sub" : std::move(name);
  s.children = std::move(sub_children);
  s.alice_wins = host.alice_wins;
  s.horizon = host.horizon;
  auto tr = truncate(s, depth);
  for (const Moment& t : tr.moments) {
    auto mine = s.children(t);
    if (t.size() < depth && mine.empty())
      throw InputError("subtree is not pruned at " + str(t));
    auto theirs = host.children(t);
    for (Move x : mine)
      if (std::find(theirs.begin(), theirs.end(), x) == theirs.end())
        throw InputError("subtree leaves the host at " + str(extend(t, x)));
  }
  if (host.basis) {
    auto hb = host.basis;
    Game probe = s;
    s.basis = [hb, probe](const Moment& t) {
      std::vector<Run> out;
      for (const Run& r : hb(t))
        if (run_in(probe, r)) out.push_back(r);
      return out;
    };
  }
  return memoize(s);
}

inline Game subgame(const Game& host, const Game& sub, std::size_t depth) {
  return subgame(host, sub.children, depth, sub.name);
}

// Subgame generated by a finite set of host runs (their prefix set).
inline Game subgame_of_runs(const Game& host, const std::vector<Run>& runs, std::string name = {}) {
  std::vector<std::pair<Run, bool>> rb;
  for (const Run& r : runs) rb.emplace_back(r, evaluate(host, r));
  return finite_game(name.empty() ? host.name + "/sub" : std::move(name), std::move(rb));
}

inline Game union_subgames(const Game& host, const std::vector<Game>& parts) {
  std::vector<Run> rs;
  for (const Game& p : parts)
    for (const Run& r : all_runs(p)) rs.push_back(r);
  return subgame_of_runs(host, rs, host.name + "/union");
}

// ---------------------------------------------------------------- periodic basis helper

// Runs through t whose normal form is settled by length L: every extension u
// of t to length L followed by a cycle of length <= max_cycle that keeps
// repeating inside the tree.
inline std::vector<Run> periodic_basis(const Game& g, const Moment& t, std::size_t L,
                                       std::size_t max_cycle, std::size_t step = 1) {
  std::set<Run> found;
  std::size_t budget = enumeration_cap().load();
  std::function<void(Moment&)> ext;
  std::function<void(Moment&, Moment&)> cyc;
  cyc = [&](Moment& u, Moment& c) {
    if (!c.empty() && c.size() % step == 0) {
      Moment probe = u;
      bool ok = true;
      for (int rep = 0; rep < 3 && ok; ++rep)
        for (Move x : c) {
          if (g.legal ? !g.legal(probe, x) : [&] {
                auto ch = g.children(probe);
                return std::find(ch.begin(), ch.end(), x) == ch.end();
              }()) {
            ok = false;
            break;
          }
          probe.push_back(x);
        }
      if (ok) found.insert(Run(u, c));
    }
    if (c.size() >= max_cycle) return;
    Moment cur = u;
    cur.insert(cur.end(), c.begin(), c.end());
    for (Move x : g.children(cur)) {
      if (--budget == 0) throw ResourceError("run basis enumeration exceeded cap at " + str(t));
      c.push_back(x);
      cyc(u, c);
      c.pop_back();
    }
  };
  ext = [&](Moment& u) {
    if (u.size() >= L) {
      Moment c;
      cyc(u, c);
      return;
    }
    for (Move x : g.children(u)) {
      if (--budget == 0) throw ResourceError("run basis enumeration exceeded cap at " + str(t));
      u.push_back(x);
      ext(u);
      u.pop_back();
    }
  };
  Moment u = t;
  ext(u);
  return {found.begin(), found.end()};
}

// Finite game on the runs settled by depth D (prefix length <= D).
inline Game stabilize(const Game& g, std::size_t D) {
  if (!g.rooted) return g;
  if (!g.basis) throw Unsupported(g.name + " has no run basis to stabilize");
  std::set<Run> rs;
  for (const Moment& t : level(g, D))
    for (const Run& r : g.basis(t))
      if (r.prefix().size() <= D) rs.insert(r);
  std::vector<std::pair<Run, bool>> rb;
  for (const Run& r : rs) rb.emplace_back(r, g.alice_wins(r));
  return finite_game(g.name + "|" + std::to_string(D), std::move(rb));
}

// ---------------------------------------------------------------- canonical games

inline Move star() { return Move("*"); }

inline Game terminal_game() {
  return finite_game("terminal", {{Run::constant({}, star()), true}});
}

inline Game generating_game() {
  return finite_game("generating", {{Run::constant({}, star()), false}});
}

// Strings of 1s followed by 0s, all runs won by Alice. The basis holds the runs
// 1^n 0^w with n <= max(|t|, D) together with 1^w.
inline Game cogenerating_game(std::size_t D = 2) {
  Move one("1"), zero("0");
  auto all_ones = [one](const Moment& t) {
    return std::all_of(t.begin(), t.end(), [one](Move m) { return m == one; });
  };
  Game g;
  g.name = "cogenerating";
  g.children = [=](const Moment& t) {
    if (all_ones(t)) return std::vector<Move>{one, zero};
    return std::vector<Move>{zero};
  };
  g.legal = [=](const Moment& t, Move x) {
    if (x == zero) return true;
    return x == one && all_ones(t);
  };
  g.alice_wins = [](const Run&) { return true; };
  g.basis = [=](const Moment& t) {
    std::vector<Run> out;
    if (!all_ones(t)) {
      std::size_t a = 0;
      while (t[a] == one) ++a;
      out.push_back(Run::constant(Moment(a, one), zero));
      return out;
    }
    std::size_t top = std::max(t.size(), D);
    for (std::size_t n = t.size(); n <= top; ++n) out.push_back(Run::constant(Moment(n, one), zero));
    out.push_back(Run::constant({}, one));
    return out;
  };
  return g;
}

inline Game canonical(std::string_view name) {
  if (name == "empty") return empty_game();
  if (name == "terminal") return terminal_game();
  if (name == "generating") return generating_game();
  if (name == "cogenerating") return cogenerating_game();
  throw InputError("unknown canonical game '" + std::string(name) + "'");
}

}  // namespace ludic
