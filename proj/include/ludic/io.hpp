#pragma once
// Spec documents, plain-text reports, tree export and play transcripts.

#include <chrono>
#include <fstream>

#include <json.hpp>

#include "ludic/gallery.hpp"
#include "ludic/topo.hpp"

namespace ludic {

using json = nlohmann::json;

// ---------------------------------------------------------------- spec documents

struct SpecDocument {
  std::string version = "1";
  std::string kind;
  json params = json::object();
  std::string source;  // file name or builtin name, for error locations
};

namespace detail {

[[noreturn]] inline void spec_error(const SpecDocument& d, const std::string& where, const std::string& what) {
  throw InputError(d.source + ": " + where + ": " + what);
}

inline const json& need(const SpecDocument& d, const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) spec_error(d, where, std::string("missing field '") + key + "'");
  return obj.at(key);
}

inline std::string text(const SpecDocument& d, const json& v, const std::string& where) {
  if (!v.is_string()) spec_error(d, where, "expected a string");
  return v.get<std::string>();
}

inline std::size_t count(const SpecDocument& d, const json& v, const std::string& where) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    spec_error(d, where, "expected a non-negative integer");
  return v.get<std::size_t>();
}

inline Moment moment_of(const SpecDocument& d, const json& v, const std::string& where) {
  if (!v.is_array()) spec_error(d, where, "expected a list of move tokens");
  Moment t;
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::string tok = text(d, v[i], where + "/" + std::to_string(i));
    if (tok.empty()) spec_error(d, where + "/" + std::to_string(i), "empty move token");
    t.push_back(Move(tok));
  }
  return t;
}

inline Target target_of(const SpecDocument& d, const json& p) {
  if (!p.contains("target")) return Target::Omega;
  std::string t = text(d, p.at("target"), "/params/target");
  if (t == "omega") return Target::Omega;
  if (t == "gamma") return Target::Gamma;
  spec_error(d, "/params/target", "expected omega or gamma");
}

}  // namespace detail

inline SpecDocument parse_document(const std::string& body, const std::string& source) {
  SpecDocument d;
  d.source = source;
  json j;
  try {
    j = json::parse(body);
  } catch (const json::parse_error& e) {
    throw InputError(source + ": byte " + std::to_string(e.byte) + ": malformed JSON");
  }
  if (!j.is_object()) detail::spec_error(d, "/", "expected an object");
  if (j.contains("version")) d.version = detail::text(d, j.at("version"), "/version");
  if (d.version != "1") detail::spec_error(d, "/version", "unsupported version '" + d.version + "'");
  d.kind = detail::text(d, detail::need(d, j, "kind", "/"), "/kind");
  if (j.contains("params")) d.params = j.at("params");
  if (!d.params.is_object()) detail::spec_error(d, "/params", "expected an object");
  return d;
}

inline FinSpace space_of(const SpecDocument& d, const json& p) {
  const json& pts = detail::need(d, p, "points", "/params");
  if (!pts.is_array()) detail::spec_error(d, "/params/points", "expected a list");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < pts.size(); ++i)
    labels.push_back(detail::text(d, pts[i], "/params/points/" + std::to_string(i)));
  try {
    if (p.value("discrete", false)) return discrete_space(labels);
    const json& op = detail::need(d, p, "opens", "/params");
    if (!op.is_array()) detail::spec_error(d, "/params/opens", "expected a list of bitmasks");
    std::vector<Mask> opens;
    for (std::size_t i = 0; i < op.size(); ++i) opens.push_back(detail::count(d, op[i], "/params/opens/" + std::to_string(i)));
    return fin_space(labels, opens);
  } catch (const InputError& e) {
    if (std::string(e.what()).rfind(d.source, 0) == 0) throw;
    detail::spec_error(d, "/params", e.what());
  }
}

// Rational tables: each function is a list of [num, den] pairs or integers.
inline std::vector<RationalFn> functions_of(const SpecDocument& d, const json& p) {
  std::vector<RationalFn> out;
  if (!p.contains("functions")) return out;
  const json& fs = p.at("functions");
  if (!fs.is_array()) detail::spec_error(d, "/params/functions", "expected a list");
  for (std::size_t i = 0; i < fs.size(); ++i) {
    std::string w = "/params/functions/" + std::to_string(i);
    if (!fs[i].is_array()) detail::spec_error(d, w, "expected a list of values");
    RationalFn f;
    for (std::size_t k = 0; k < fs[i].size(); ++k) {
      const json& v = fs[i][k];
      std::string wk = w + "/" + std::to_string(k);
      if (v.is_number_integer()) f.push_back(rat(v.get<long long>()));
      else if (v.is_array() && v.size() == 2 && v[0].is_number_integer() && v[1].is_number_integer()) {
        if (v[1].get<long long>() == 0) detail::spec_error(d, wk, "zero denominator");
        f.push_back(rat(v[0].get<long long>(), v[1].get<long long>()));
      } else {
        detail::spec_error(d, wk, "expected an integer or [num, den]");
      }
    }
    out.push_back(f);
  }
  return out;
}

inline Game custom_regular(const SpecDocument& d) {
  const json& rs = detail::need(d, d.params, "runs", "/params");
  if (!rs.is_array()) detail::spec_error(d, "/params/runs", "expected a list");
  std::vector<std::pair<Run, bool>> runs;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    std::string w = "/params/runs/" + std::to_string(i);
    Moment pre = detail::moment_of(d, detail::need(d, rs[i], "moment", w), w + "/moment");
    Moment tail = detail::moment_of(d, detail::need(d, rs[i], "tail", w), w + "/tail");
    if (tail.empty()) detail::spec_error(d, w + "/tail", "tail must hold at least one move");
    std::string pay = detail::text(d, detail::need(d, rs[i], "payoff", w), w + "/payoff");
    if (pay != "A" && pay != "B") detail::spec_error(d, w + "/payoff", "expected A or B");
    runs.push_back({Run(pre, tail), pay == "A"});
  }
  Game g;
  try {
    g = finite_game(d.params.value("name", std::string("custom")), runs);
  } catch (const InputError& e) {
    detail::spec_error(d, "/params/runs", e.what());
  }
  if (d.params.contains("moments")) {
    const json& ms = d.params.at("moments");
    if (!ms.is_array()) detail::spec_error(d, "/params/moments", "expected a list");
    for (std::size_t i = 0; i < ms.size(); ++i) {
      std::string w = "/params/moments/" + std::to_string(i);
      Moment t = detail::moment_of(d, ms[i], w);
      if (!contains(g, t)) detail::spec_error(d, w, str(t) + " lies on no declared run");
    }
  }
  return g;
}

inline Game game_of(const SpecDocument& d) {
  const json& p = d.params;
  if (d.kind == "canonical") {
    std::string name = detail::text(d, detail::need(d, p, "name", "/params"), "/params/name");
    if (name == "cogenerating" && p.contains("D"))
      return cogenerating_game(detail::count(d, p.at("D"), "/params/D"));
    try {
      return canonical(name);
    } catch (const InputError& e) {
      detail::spec_error(d, "/params/name", e.what());
    }
  }
  if (d.kind == "custom-regular") return custom_regular(d);
  if (d.kind == "bm") return bm_game(space_of(d, p));
  if (d.kind == "covering") return covering_game(space_of(d, p), detail::target_of(d, p));
  if (d.kind == "tightness") {
    FinSpace x = space_of(d, p);
    std::string pt = detail::text(d, detail::need(d, p, "point", "/params"), "/params/point");
    std::size_t i;
    try {
      i = x.index(pt);
    } catch (const InputError& e) {
      detail::spec_error(d, "/params/point", e.what());
    }
    return tightness_game(x, i, detail::target_of(d, p));
  }
  detail::spec_error(d, "/kind", "unknown kind '" + d.kind + "'");
}

// Builtin specs usable in place of a file path.
inline std::optional<std::string> builtin_spec(std::string_view name) {
  static const std::map<std::string, std::string, std::less<>> specs{
      {"empty", R"({"kind":"canonical","params":{"name":"empty"}})"},
      {"terminal", R"({"kind":"canonical","params":{"name":"terminal"}})"},
      {"generating", R"({"kind":"canonical","params":{"name":"generating"}})"},
      {"cogenerating", R"({"kind":"canonical","params":{"name":"cogenerating"}})"},
      {"bm-sierpinski", R"({"kind":"bm","params":{"points":["a","b"],"opens":[0,1,3]}})"},
      {"bm-point", R"({"kind":"bm","params":{"points":["p"],"opens":[0,1]}})"},
      {"covering-discrete2", R"({"kind":"covering","params":{"points":["a","b"],"discrete":true}})"},
      {"tightness-sierpinski", R"({"kind":"tightness","params":{"points":["a","b"],"opens":[0,1,3],"point":"b"}})"},
  };
  auto it = specs.find(name);
  if (it == specs.end()) return std::nullopt;
  return it->second;
}

inline SpecDocument load_document(const std::string& path) {
  if (auto b = builtin_spec(path)) return parse_document(*b, path);
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str(), path);
}

inline Game load_game(const std::string& path) { return game_of(load_document(path)); }

// ---------------------------------------------------------------- reports

struct ReportLine {
  std::string check;
  Verdict verdict = Verdict::True;
  std::string witness;
  std::size_t depth = 0;
  double millis = 0;
};

struct Report {
  std::string suite;
  std::vector<ReportLine> lines;

  void add(std::string check, const Check& c, double millis = 0) {
    lines.push_back({std::move(check), c.verdict, c.witness, c.depth, millis});
  }
  // A finding passes when the verdict matches the expected one.
  void add(const std::string& scope, const Finding& f) {
    std::string w = "expected " + std::string(verdict_str(f.expected)) + ", got " + verdict_str(f.got.verdict);
    if (!f.got.witness.empty()) w += " (" + f.got.witness + ")";
    lines.push_back({scope + "/" + f.label, f.ok() ? Verdict::True : Verdict::False, w, f.got.depth, 0});
  }
  void merge(const Report& r) {
    for (const ReportLine& l : r.lines) lines.push_back(l);
  }
  std::size_t count(Verdict v) const {
    return static_cast<std::size_t>(
        std::count_if(lines.begin(), lines.end(), [v](const ReportLine& l) { return l.verdict == v; }));
  }
  bool ok() const { return count(Verdict::False) == 0; }
  int exit_code() const { return ok() ? 0 : 1; }

  std::string to_text(bool timings = false) const {
    std::ostringstream os;
    os << "suite " << suite << "\n";
    for (const ReportLine& l : lines) {
      const char* tag = l.verdict == Verdict::True ? "pass" : l.verdict == Verdict::False ? "fail" : "undecided";
      os << tag << " " << l.check;
      if (l.verdict == Verdict::Undecided) os << " depth=" << l.depth;
      if (!l.witness.empty()) os << " :: " << l.witness;
      if (timings) os << " [" << static_cast<long long>(l.millis) << " ms]";
      os << "\n";
    }
    os << "total " << lines.size() << " pass " << count(Verdict::True) << " fail " << count(Verdict::False)
       << " undecided " << count(Verdict::Undecided) << "\n";
    return os.str();
  }
};

// Times a check and appends it.
template <class F>
void timed(Report& rep, std::string name, F&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  Check c = fn();
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  rep.add(std::move(name), c, ms);
}

// ---------------------------------------------------------------- tree export

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '"' || c == '\\') o += '\\';
    o += c;
  }
  return o;
}

// Winners of basis runs through a leaf: "A", "B" or "A,B".
inline std::string leaf_marks(const Game& g, const Moment& t) {
  if (!g.regular() || !g.rooted) return "";
  bool a = false, b = false;
  for (const Run& r : runs_through(g, t)) (g.alice_wins(r) ? a : b) = true;
  return std::string(a ? "A" : "") + (a && b ? "," : "") + (b ? "B" : "");
}

}  // namespace detail

// Graphviz digraph of T(depth): Alice-to-move nodes are circles, Bob's are boxes.
inline std::string to_dot(const Game& g, std::size_t depth, std::size_t cap = 0) {
  std::ostringstream os;
  os << "digraph \"" << detail::dot_escape(g.name) << "\" {\n";
  if (!g.rooted) {
    os << "  n0 [shape=plaintext,label=\"empty game\"];\n}\n";
    return os.str();
  }
  Truncation tr = truncate(g, depth, cap);
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const Moment& t = tr.moments[i];
    std::string label = t.empty() ? "root" : t.back().str();
    os << "  n" << i << " [shape=" << (turn(t) == Player::Alice ? "circle" : "box") << ",label=\""
       << detail::dot_escape(label) << "\"";
    if (t.size() == depth) {
      std::string m = detail::leaf_marks(g, t);
      if (!m.empty()) os << ",xlabel=\"" << m << "\"";
    }
    os << "];\n";
  }
  for (std::size_t i = 1; i < tr.size(); ++i) os << "  n" << tr.parent[i] << " -> n" << i << ";\n";
  os << "}\n";
  return os.str();
}

// Indented listing of T(depth).
inline std::string to_tree_text(const Game& g, std::size_t depth, std::size_t cap = 0) {
  std::ostringstream os;
  os << g.name << "\n";
  if (!g.rooted) return os.str() + "(empty game)\n";
  Truncation tr = truncate(g, depth, cap);
  std::vector<std::vector<std::size_t>> kids(tr.size());
  for (std::size_t i = 1; i < tr.size(); ++i) kids[static_cast<std::size_t>(tr.parent[i])].push_back(i);
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    const Moment& t = tr.moments[i];
    if (!t.empty()) {
      os << std::string(2 * (t.size() - 1), ' ') << t.back().str();
      if (t.size() == depth) {
        std::string m = detail::leaf_marks(g, t);
        if (!m.empty()) os << "  [" << m << "]";
      }
      os << "\n";
    }
    for (std::size_t k : kids[i]) go(k);
  };
  go(0);
  return os.str();
}

// ---------------------------------------------------------------- transcripts

inline std::string transcript(const PlayRecord& rec) {
  std::ostringstream os;
  for (const PlayEntry& e : rec.log)
    os << e.inning << " " << (e.player == Player::Alice ? "alice" : "bob") << " " << e.move.str() << "\n";
  return os.str();
}

}  // namespace ludic
