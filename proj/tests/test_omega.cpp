#include <random>

#include "doctest.h"
#include "omegapow/omega.hpp"
#include "omegapow/pi.hpp"

using namespace omegapow;

namespace {

LanguageOracle p2_oracle() { return {"01", [](std::string_view w) { return p_base_oracle(2, w); }, "P2", {}}; }

// 0^n 1^n, n >= 1: the counter grows without bound along 0^ω.
CounterMachine zn_on() {
  CounterMachine m;
  m.k = 1;
  m.alphabet = "01";
  m.real_time = true;
  const auto s = m.add_state(), a = m.add_state(), b = m.add_state(true);
  auto add = [&](uint32_t x, char c, const char* pat, uint32_t y, int d) {
    Transition t{x, y, c};
    const auto p = pattern(pat);
    t.care = p.care;
    t.pos = p.pos;
    set_delta(t, {d});
    m.add(t);
  };
  add(s, '0', "0", a, 1);
  add(a, '0', "1", a, 1);
  add(a, '1', "1", b, -1);
  add(b, '1', "1", b, -1);
  m.canonicalize();
  return m;
}

}  // namespace

TEST_CASE("factorizations examples") {
  const auto L = p2_oracle();
  auto fs = factorizations("0101", L, 10);
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].cuts == std::vector<size_t>{0, 2, 4});
  CHECK(fs[0].factors("0101") == std::vector<Word>{"01", "01"});
  fs = factorizations("1", L, 10);
  REQUIRE(fs.size() == 1);
  CHECK(fs[0].cuts == std::vector<size_t>{0, 1});
  CHECK(factorizations("00", L, 10).empty());
}

TEST_CASE("factorizations agree with naive enumeration") {
  const LanguageOracle L{"ab",
                         [](std::string_view w) { return w == "a" || w == "ab" || w == "ba" || w == "aba" || w == "b"; },
                         "small",
                         {}};
  for (const auto& w : all_words("ab", 12)) {
    auto a = factorizations(w, L, 1u << 20);
    const auto b = factorizations_naive(w, L);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) REQUIRE(a[i].cuts == b[i].cuts);
  }
  CHECK(factorizations_naive("ababab", L).size() > 3);
  CHECK(factorizations("ababab", L, 3).size() == 3);
}

TEST_CASE("is_omega_power_prefix") {
  const auto L = p2_oracle();
  CHECK(is_omega_power_prefix("00", L));
  CHECK(is_omega_power_prefix("", L));
  const LanguageOracle one{"01", [](std::string_view w) { return w == "1"; }, "one", {}};
  CHECK_FALSE(is_omega_power_prefix("0", one));
  // prefix-closed: every prefix of a witness is a witness
  const LanguageOracle small{"ab", [](std::string_view w) { return w == "ab" || w == "abb" || w == "ba"; }, "small", {}};
  for (const auto& w : all_words("ab", 9)) {
    if (!is_omega_power_prefix(w, small)) continue;
    for (size_t k = 0; k <= w.size(); ++k) REQUIRE(is_omega_power_prefix(w.substr(0, k), small));
  }
}

TEST_CASE("up_membership_regular") {
  const auto p2 = p_base_dfa(2);
  CHECK(up_membership_regular({"", "01"}, p2));
  CHECK_FALSE(up_membership_regular({"1", "0"}, p2));
  CHECK(up_membership_regular({"", "0"}, p_base_dfa(1)));
  for (const auto& u : all_words("01", 6))
    for (const auto& v : all_words("01", 6)) {
      if (v.empty()) continue;
      REQUIRE(up_membership_regular({u, v}, p2) == (v.find('1') != Word::npos));
    }
  // certificates replay through the machine
  const auto m2 = p_base_machine(2);
  for (const auto& u : all_words("01", 4))
    for (const auto& v : all_words("01", 4)) {
      if (v.empty()) continue;
      const auto r = up_membership_regular_certified({u, v}, p2);
      if (r.verdict == Verdict::Yes) {
        REQUIRE(r.certificate);
        REQUIRE(replay_certificate({u, v}, m2, *r.certificate));
      }
    }
}

TEST_CASE("up_membership_bounded verdicts") {
  const auto p1 = p_base_machine(1);
  auto r = up_membership_bounded({"", "0"}, p1, 4, 1000);
  CHECK(r.verdict == Verdict::Yes);
  REQUIRE(r.certificate);
  CHECK(replay_certificate({"", "0"}, p1, *r.certificate));
  r = up_membership_bounded({"", "1"}, p1, 4, 1000);
  CHECK(r.verdict == Verdict::NoBounded);
  CHECK_FALSE(r.certificate);

  const auto z = zn_on();
  r = up_membership_bounded({"", "0"}, z, 8, 100000);
  CHECK(r.verdict == Verdict::Unknown);
  CHECK(r.counter_cap_hit);
  r = up_membership_bounded({"", "01"}, z, 8, 100000);
  CHECK(r.verdict == Verdict::Yes);
  REQUIRE(r.certificate);
  CHECK(replay_certificate({"", "01"}, z, *r.certificate));
  r = up_membership_bounded({"0", "10"}, z, 8, 100000);
  CHECK(r.verdict == Verdict::Yes);
  r = up_membership_bounded({"", "01"}, z, 8, 2);
  CHECK(r.verdict == Verdict::Unknown);
  CHECK(r.node_cap_hit);

  // a forged certificate is refused
  CHECK_FALSE(replay_certificate({"", "01"}, z, LassoCertificate{{}, {"0", "1"}}));
  CHECK_FALSE(replay_certificate({"", "01"}, z, LassoCertificate{{}, {"011"}}));
  CHECK(verdict_name(Verdict::NoBounded) == "no-bounded");
}

TEST_CASE("bounded search agrees with the exact regular procedure") {
  const auto p2 = p_base_dfa(2);
  const auto m2 = p_base_machine(2);
  for (const auto& u : all_words("01", 4))
    for (const auto& v : all_words("01", 4)) {
      if (v.empty()) continue;
      const auto b = up_membership_bounded({u, v}, m2, 2, 100000);
      REQUIRE(b.verdict != Verdict::Unknown);
      REQUIRE((b.verdict == Verdict::Yes) == up_membership_regular({u, v}, p2));
      if (b.certificate) REQUIRE(replay_certificate({u, v}, m2, *b.certificate));
    }
  // the DFA as a machine gives the same answers
  const auto dm = dfa_machine(p2);
  for (const auto& w : all_words("01", 8)) REQUIRE(accepts(dm, w) == p2.accepts(w));
}
