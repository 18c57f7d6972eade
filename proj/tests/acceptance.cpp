// One line per acceptance criterion. Tolerance is zero everywhere: every check is exact.

#include <chrono>
#include <cstdio>
#include <map>

#include "ludic/suites.hpp"

namespace {

// Criteria that cannot pass as stated, with the reason printed next to the verdict.
const std::map<int, const char*> kKnownFailures{
    {10, "naturality fails for B-morphisms whose domain payoff is larger than the preimage payoff; "
         "identity terminal -> generating is the smallest case"},
};

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t seed = 20261018;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  int mismatches = 0;
  std::printf("seed %llu tolerance exact\n", static_cast<unsigned long long>(seed));
  for (const ludic::Criterion& c : ludic::criteria()) {
    auto t0 = std::chrono::steady_clock::now();
    ludic::Report r = ludic::run_criterion(c, seed);
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = r.ok();
    auto known = kKnownFailures.find(c.id);
    bool expected = known == kKnownFailures.end();
    std::string detail;
    for (const auto& l : r.lines)
      if (l.verdict != ludic::Verdict::True) {
        detail = l.check + ": " + l.witness;
        break;
      }
    std::printf("criterion %2d %s  %s (%.2f s)", c.id, pass ? "PASS" : "FAIL", c.title, s);
    if (!pass) std::printf("  [%s]", detail.c_str());
    if (!expected) std::printf("  known: %s", known->second);
    std::printf("\n");
    if (pass != expected) ++mismatches;
  }
  for (const ludic::Criterion& c : ludic::criteria()) {
    ludic::Report r = ludic::run_criterion(c, seed);
    std::printf("\n%s", r.to_text().c_str());
  }
  return mismatches == 0 ? 0 : 1;
}
