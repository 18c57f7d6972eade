#include <doctest.h>

#include "ludic/io.hpp"

using namespace ludic;

namespace {

std::string error_of(const std::string& body) {
  try {
    game_of(parse_document(body, "doc"));
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("builtin specs load") {
  for (const char* n : {"empty", "terminal", "generating", "cogenerating", "bm-sierpinski", "bm-point",
                        "covering-discrete2", "tightness-sierpinski"}) {
    CAPTURE(n);
    CHECK_NOTHROW(load_game(n));
  }
  CHECK_FALSE(load_game("empty").rooted);
  CHECK(truncate(load_game("bm-sierpinski"), 2).size() == 6);
}

TEST_CASE("custom-regular documents") {
  std::string body = R"({"version":"1","kind":"custom-regular","params":{"name":"g","runs":[
    {"moment":["0"],"tail":["1"],"payoff":"A"},{"moment":[],"tail":["1"],"payoff":"B"}]}})";
  Game g = game_of(parse_document(body, "doc"));
  CHECK(g.name == "g");
  auto rs = all_runs(g);
  REQUIRE(rs.size() == 2);
  CHECK(g.alice_wins(Run(moves({"0"}), moves({"1"}))));
  CHECK_FALSE(g.alice_wins(Run({}, moves({"1"}))));
}

TEST_CASE("schema errors carry locations") {
  CHECK(error_of("{") == "doc: byte 2: malformed JSON");
  CHECK(error_of("[]") == "doc: /: expected an object");
  CHECK(error_of(R"({"version":"2","kind":"bm"})") == "doc: /version: unsupported version '2'");
  CHECK(error_of(R"({"params":{}})") == "doc: /: missing field 'kind'");
  CHECK(error_of(R"({"kind":"nope"})") == "doc: /kind: unknown kind 'nope'");
  CHECK(error_of(R"({"kind":"canonical","params":{"name":"nope"}})").rfind("doc: /params/name:", 0) == 0);
  CHECK(error_of(R"({"kind":"custom-regular","params":{"runs":[{"moment":[],"tail":["1"],"payoff":"C"}]}})") ==
        "doc: /params/runs/0/payoff: expected A or B");
  CHECK(error_of(R"({"kind":"custom-regular","params":{"runs":[{"moment":[],"tail":["1"],"payoff":"A"}],
        "moments":[["2"]]}})") == "doc: /params/moments/0: <2> lies on no declared run");
  CHECK(error_of(R"({"kind":"bm","params":{"points":["a","b"],"opens":[0,1,2]}})").rfind("doc: /params:", 0) == 0);
  CHECK(error_of(R"({"kind":"tightness","params":{"points":["a"],"opens":[0,1],"point":"z"}})")
            .rfind("doc: /params/point:", 0) == 0);
  CHECK(error_of(R"({"kind":"covering","params":{"points":["a"],"discrete":true,"target":"x"}})") ==
        "doc: /params/target: expected omega or gamma");
  CHECK_THROWS_AS(load_document("/nonexistent/spec.json"), InputError);
}

TEST_CASE("rational tables parse") {
  SpecDocument d = parse_document(R"({"kind":"bm","params":{"functions":[[0,[1,2]],[[-3,6],4]]}})", "doc");
  auto fs = functions_of(d, d.params);
  REQUIRE(fs.size() == 2);
  CHECK(fs[0][1] == rat(1, 2));
  CHECK(fs[1][0] == rat(-1, 2));
  SpecDocument bad = parse_document(R"({"kind":"bm","params":{"functions":[[[1,0]]]}})", "doc");
  CHECK_THROWS_WITH(functions_of(bad, bad.params), "doc: /params/functions/0/0: zero denominator");
}

TEST_CASE("report text is stable") {
  Report r;
  r.suite = "demo";
  r.add("a", Check::pass());
  r.add("b", Check::fail("why"));
  r.add("c", Check::undecided("open", 4));
  std::string want =
      "suite demo\n"
      "pass a\n"
      "fail b :: why\n"
      "undecided c depth=4 :: open\n"
      "total 3 pass 1 fail 1 undecided 1\n";
  CHECK(r.to_text() == want);
  CHECK(r.to_text() == r.to_text());
  CHECK_FALSE(r.ok());
  CHECK(r.exit_code() == 1);
}

TEST_CASE("dot export") {
  std::string dot = to_dot(canonical("cogenerating"), 3);
  CHECK(dot.find("n9 [") != std::string::npos);
  CHECK(dot.find("n10 [") == std::string::npos);
  CHECK(dot.find("n0 [shape=circle,label=\"root\"]") != std::string::npos);
  CHECK(dot.find("n1 [shape=box") != std::string::npos);
  CHECK(to_dot(canonical("empty"), 3) == "digraph \"empty\" {\n  n0 [shape=plaintext,label=\"empty game\"];\n}\n");
  CHECK_THROWS_AS(to_dot(canonical("cogenerating"), 12, 20), ResourceError);
}

TEST_CASE("transcripts") {
  PlayRecord rec;
  rec.log.push_back({0, Player::Alice, Move("{a,b}"), "driver"});
  rec.log.push_back({0, Player::Bob, Move("{a}"), "strategy"});
  CHECK(transcript(rec) == "0 alice {a,b}\n0 bob {a}\n");
  CHECK(transcript(PlayRecord{}).empty());
}
