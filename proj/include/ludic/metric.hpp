#pragma once
// Run spaces, ball games, hom spaces and Krom spaces over level codes.
// A code c stands for the distance 1/(c+1); kInf is distance 0.

#include <cmath>

#include "ludic/combinators.hpp"

namespace ludic {

struct UltraSpace {
  std::vector<std::string> labels;
  std::vector<std::vector<Code>> code;
  std::vector<bool> marked;  // payoff subset, empty when absent

  std::size_t size() const { return labels.size(); }
  Code at(std::size_t i, std::size_t j) const { return code[i][j]; }
};

inline UltraSpace make_space(std::vector<std::string> labels, std::vector<std::vector<Code>> code) {
  UltraSpace x{std::move(labels), std::move(code), {}};
  if (x.code.size() != x.labels.size()) throw InputError("code matrix size does not match the point list");
  for (auto& row : x.code)
    if (row.size() != x.labels.size()) throw InputError("code matrix is not square");
  return x;
}

// Symmetry, zero self-distance and the strong triangle.
inline Check validate(const UltraSpace& x) {
  std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (x.at(i, i) != kInf) return Check::fail("code(" + x.labels[i] + "," + x.labels[i] + ") is finite");
    for (std::size_t j = 0; j < n; ++j) {
      if (x.at(i, j) != x.at(j, i)) return Check::fail("asymmetric at " + x.labels[i] + "," + x.labels[j]);
      for (std::size_t k = 0; k < n; ++k)
        if (x.at(i, k) < std::min(x.at(i, j), x.at(j, k)))
          return Check::fail("strong triangle fails at " + x.labels[i] + "," + x.labels[j] + "," + x.labels[k]);
    }
  }
  return Check::pass();
}

// Metric (distinct points at positive distance) and valid; finite spaces are complete.
inline bool is_seqspa(const UltraSpace& x) {
  if (!validate(x).yes()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      if (i != j && x.at(i, j) == kInf) return false;
  return true;
}

inline UltraSpace subspace(const UltraSpace& x, const std::vector<std::size_t>& keep) {
  UltraSpace y;
  for (std::size_t i : keep) {
    y.labels.push_back(x.labels[i]);
    std::vector<Code> row;
    for (std::size_t j : keep) row.push_back(x.at(i, j));
    y.code.push_back(std::move(row));
    if (!x.marked.empty()) y.marked.push_back(x.marked[i]);
  }
  return y;
}

inline UltraSpace run_space(const Game& g) {
  if (g.rooted && !g.regular()) throw Unsupported("run space needs a run basis on " + g.name);
  UltraSpace x;
  auto runs = all_runs(g);
  for (const Run& r : runs) {
    x.labels.push_back(r.str());
    x.marked.push_back(g.alice_wins(r));
    std::vector<Code> row;
    for (const Run& s : runs) row.push_back(delta(r, s));
    x.code.push_back(std::move(row));
  }
  return x;
}

// Bob-won runs.
inline UltraSpace krom_space(const Game& g) {
  UltraSpace x = run_space(g);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x.marked[i]) keep.push_back(i);
  return subspace(x, keep);
}

// Closed ball of radius 1/(k+2) around point i, as sorted indices.
inline std::vector<std::size_t> ball(const UltraSpace& x, std::size_t i, std::size_t k) {
  std::vector<std::size_t> b;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (x.at(i, j) == kInf || x.at(i, j) >= k + 1) b.push_back(j);
  return b;
}

inline Move ball_move(const UltraSpace& x, const std::vector<std::size_t>& b) {
  std::string tok = "{";
  for (std::size_t i = 0; i < b.size(); ++i) tok += (i ? "," : "") + x.labels[b[i]];
  return Move(tok + "}");
}

inline Code max_finite_code(const UltraSpace& x) {
  Code m = 0;
  for (auto& row : x.code)
    for (Code c : row)
      if (c != kInf) m = std::max(m, c);
  return m;
}

// Run of point i: its chain of shrinking balls.
inline Run ball_run(const UltraSpace& x, std::size_t i) {
  std::size_t settle = static_cast<std::size_t>(max_finite_code(x)) + 1;
  Moment p;
  for (std::size_t k = 0; k < settle; ++k) p.push_back(ball_move(x, ball(x, i, k)));
  return Run(p, {ball_move(x, ball(x, i, settle))});
}

// Ball game; with marks, Alice wins the runs centred on marked points.
inline Game ball_game(const UltraSpace& x, std::string name = "ball") {
  if (x.size() == 0) {
    Game e = empty_game();
    e.name = name;
    return e;
  }
  std::map<Run, bool> runs;
  for (std::size_t i = 0; i < x.size(); ++i) runs.emplace(ball_run(x, i), !x.marked.empty() && x.marked[i]);
  return game_of_runs(std::move(name), runs);
}

// Unique point in the intersection of a ball chain.
inline std::optional<std::size_t> counit(const UltraSpace& x, const Run& r) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (ball_run(x, i) == r) return i;
  return std::nullopt;
}

// Counit is a bijective code isometry Run(ball_game(x)) -> x.
inline Check ball_roundtrip(const UltraSpace& x) {
  Game b = ball_game(x);
  auto runs = all_runs(b);
  if (runs.size() != x.size())
    return Check::fail(std::to_string(runs.size()) + " ball runs for " + std::to_string(x.size()) + " points");
  std::vector<std::size_t> pts;
  std::set<std::size_t> seen;
  for (const Run& r : runs) {
    auto p = counit(x, r);
    if (!p) return Check::fail("chain " + r.str() + " has no centre");
    if (!seen.insert(*p).second) return Check::fail("two chains end at " + x.labels[*p]);
    pts.push_back(*p);
  }
  for (std::size_t i = 0; i < runs.size(); ++i)
    for (std::size_t j = 0; j < runs.size(); ++j) {
      Code rc = delta(runs[i], runs[j]), pc = x.at(pts[i], pts[j]);
      if (rc != pc)
        return Check::fail("code(" + x.labels[pts[i]] + "," + x.labels[pts[j]] + ")=" + code_str(pc) +
                           " but run code " + code_str(rc));
    }
  return Check::pass();
}

// code(h(a),h(b)) >= code(a,b).
inline bool is_lipschitz(const UltraSpace& x, const UltraSpace& y, const std::vector<std::size_t>& h) {
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t b = 0; b < x.size(); ++b)
      if (y.at(h[a], h[b]) < x.at(a, b)) return false;
  return true;
}

struct HomSpace {
  UltraSpace space;
  std::vector<std::vector<std::size_t>> maps;
};

inline HomSpace hom_space(const UltraSpace& x, const UltraSpace& y, std::size_t cap = 10000) {
  double total = std::pow(static_cast<double>(y.size()), static_cast<double>(x.size()));
  if (total > static_cast<double>(cap))
    throw ResourceError("hom space has " + std::to_string(static_cast<unsigned long long>(total)) +
                        " candidate maps, cap " + std::to_string(cap));
  HomSpace out;
  std::vector<std::size_t> h(x.size(), 0);
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == x.size()) {
      if (is_lipschitz(x, y, h)) out.maps.push_back(h);
      return;
    }
    for (std::size_t v = 0; v < y.size(); ++v) {
      h[i] = v;
      go(i + 1);
    }
  };
  if (y.size() > 0 || x.size() == 0) go(0);
  for (auto& f : out.maps) {
    std::string l = "[";
    for (std::size_t i = 0; i < f.size(); ++i) l += (i ? "," : "") + y.labels[f[i]];
    out.space.labels.push_back(l + "]");
  }
  for (auto& f : out.maps) {
    std::vector<Code> row;
    for (auto& g : out.maps) {
      Code c = kInf;
      for (std::size_t p = 0; p < x.size(); ++p) c = std::min(c, y.at(f[p], g[p]));
      row.push_back(c);
    }
    out.space.code.push_back(std::move(row));
  }
  return out;
}

// Chronological map inducing the run map h, when h does not shrink codes.
inline std::optional<ChronMap> chronological_from_runs(const Game& g1, const Game& g2,
                                                       const std::vector<std::size_t>& h) {
  auto r1 = all_runs(g1), r2 = all_runs(g2);
  for (std::size_t a = 0; a < r1.size(); ++a)
    for (std::size_t b = 0; b < r1.size(); ++b)
      if (delta(r2[h[a]], r2[h[b]]) < delta(r1[a], r1[b])) return std::nullopt;
  std::vector<Run> img;
  for (std::size_t i : h) img.push_back(r2[i]);
  ChronMap f = make_map("runs", [r1, img](const Moment& t) {
    for (std::size_t i = 0; i < r1.size(); ++i)
      if (r1[i].through(t)) return img[i].take(t.size());
    throw InputError(str(t) + " lies on no run");
  });
  f.tail_rule = [r1, img](const Run& r) -> std::optional<Run> {
    for (std::size_t i = 0; i < r1.size(); ++i)
      if (r1[i] == r) return img[i];
    return std::nullopt;
  };
  return f;
}

struct ClassifierGadget {
  UltraSpace space;        // x_0..x_{n-1}, xbar (last)
  std::size_t bar = 0;
  std::vector<std::size_t> chi, chi2;  // into the space itself
};

inline ClassifierGadget classifier_gadget(std::size_t n) {
  if (n < 2) throw InputError("classifier gadget needs n >= 2");
  ClassifierGadget g;
  for (std::size_t k = 0; k < n; ++k) g.space.labels.push_back("x" + std::to_string(k));
  g.space.labels.push_back("xbar");
  g.bar = n;
  g.space.code.assign(n + 1, std::vector<Code>(n + 1, kInf));
  for (std::size_t k = 0; k < n; ++k) {
    g.space.code[k][n] = g.space.code[n][k] = k;
    for (std::size_t m = 0; m < n; ++m)
      if (m != k) g.space.code[k][m] = std::min(k, m);
  }
  for (std::size_t k = 0; k <= n; ++k) {
    g.chi.push_back(k);
    g.chi2.push_back(k == n ? n : std::min(k + 1, n - 1));
  }
  return g;
}

// Preimage of the value at `point`.
inline std::vector<std::size_t> fiber(const std::vector<std::size_t>& h, std::size_t point) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < h.size(); ++i)
    if (h[i] == h[point]) out.push_back(i);
  return out;
}

inline std::string to_text(const UltraSpace& x) {
  std::ostringstream os;
  os << "points " << x.size() << "\n";
  for (std::size_t i = 0; i < x.size(); ++i) {
    os << x.labels[i];
    if (!x.marked.empty()) os << (x.marked[i] ? " [A]" : " [B]");
    os << "\n";
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) os << (j ? " " : "") << code_str(x.at(i, j));
    os << "\n";
  }
  return os.str();
}

}  // namespace ludic
