#include <random>

#include "doctest.h"
#include "omegapow/sigma.hpp"

using namespace omegapow;

TEST_CASE("S1 and L") {
  CHECK(accepts(s1_machine(), "0"));
  CHECK(accepts(s1_machine(), "101"));
  CHECK_FALSE(accepts(s1_machine(), "10"));
  for (const auto& w : all_words("01", 10)) {
    REQUIRE(accepts(s1_machine(), w) == s1_oracle(w));
    REQUIRE(accepts(contains_one_machine(), w) == contains_one(w));
  }
}

TEST_CASE("definitional oracle examples") {
  CHECK(defn_oracle(Component::Mu0, "023"));
  CHECK_FALSE(defn_oracle(Component::Mu0, "23"));
  CHECK(defn_oracle(Component::Mu1, "323"));
  CHECK(defn_oracle(Component::Pi0, "2320"));
  CHECK(parse_component("mu2") == Component::Mu2);
  CHECK(parse_component("f") == Component::FShape);
  CHECK_FALSE(parse_component("nope"));
  CHECK(mu_oracle("023"));
}

TEST_CASE("pi1 examples") {
  CHECK(pi1_oracle("130002000", contains_one));
  CHECK_FALSE(pi1_oracle("030002000", contains_one));
  CHECK_FALSE(pi1_oracle("13000200", contains_one));  // |w| = 2
  CHECK_FALSE(pi1_oracle("1300002000", contains_one));  // |v| = 4 even
  const auto b = parse_pi1("130002000");
  REQUIRE(b);
  REQUIRE(b->size() == 1);
  CHECK((*b)[0].a == '1');
  CHECK((*b)[0].v == 3);
  const auto m = pi1_machine(contains_one_machine());
  CHECK(accepts(m, "130002000"));
  CHECK_FALSE(accepts(m, "030002000"));
  CHECK_FALSE(accepts(m, ""));
}

TEST_CASE("component machines match the definitions on all words to length 10") {
  const size_t d = 10;
  CHECK(crosscheck(mu0_machine(), [](std::string_view w) { return defn_oracle(Component::Mu0, w); }, d).mismatches == 0);
  CHECK(crosscheck(mu1_machine(), [](std::string_view w) { return defn_oracle(Component::Mu1, w); }, d).mismatches == 0);
  CHECK(crosscheck(mu2_machine(), [](std::string_view w) { return defn_oracle(Component::Mu2, w); }, d).mismatches == 0);
  CHECK(crosscheck(pi0_machine(), [](std::string_view w) { return defn_oracle(Component::Pi0, w); }, d).mismatches == 0);
  CHECK(crosscheck(pi1_machine(contains_one_machine()), [](std::string_view w) { return pi1_oracle(w, contains_one); }, d)
            .mismatches == 0);
  // π1 over a non-regular L: the S1-shaped prefixes of P2-like words
  const auto s1 = s1_machine();
  CHECK(crosscheck(pi1_machine(s1), [](std::string_view w) { return pi1_oracle(w, s1_oracle); }, 10).mismatches == 0);
}

TEST_CASE("assemble_A and build_sn") {
  const auto a = assemble_A(contains_one_machine());
  CHECK_FALSE(accepts(a, ""));
  CHECK(accepts(a, "023"));
  const auto s3 = build_sn(3);
  CHECK(validate_machine(s3.machine).empty());
  CHECK(s3.machine.k == 1);
  CHECK(s3.machine.real_time);
  CHECK(s3.claimed_class == "Sigma0_3-complete");
  CHECK(crosscheck(s3.machine, [&](std::string_view w) { return sn_oracle(3, s3, w); }, 10).mismatches == 0);
  CHECK_THROWS_AS(build_sn(2), Unsupported);
  CHECK_THROWS_AS(build_sn(9), InputError);
  CHECK(build_sn(1).machine.num_states == s1_machine().num_states);
}

TEST_CASE("build_sn(4) accepts sampled members") {
  const auto s4 = build_sn(4);
  REQUIRE(s4.reduction);
  CHECK(validate_machine(s4.machine).empty());
  CHECK(s4.machine.alphabet == "01");
  const auto& red = *s4.reduction;
  const Runner run(s4.machine);
  size_t n = 0;
  for (const auto& x : enumerate_accepted(*red.subject, 3)) {
    if (x.empty()) continue;
    for (const auto& w : claim2_forward(*red.subject, {x}, {1, 1}, red.marks)) {
      const auto enc = reduction_encode(red, witness_word(w, red.marks));
      REQUIRE(sn_oracle(4, s4, enc));
      REQUIRE(run.accepts(enc));
      ++n;
    }
    if (n >= 5) break;
  }
  CHECK(n > 0);
}

TEST_CASE("lemma16 round trips") {
  const auto f1 = lemma16_backward(0, {"1"});
  const auto r1 = lemma16_forward(f1);
  CHECK(r1.N == 0);
  CHECK(r1.words == std::vector<Word>{"1"});
  CHECK(r1.vertical_ok);

  const auto f2 = lemma16_backward(1, {"0", "1"});
  CHECK(lemma16_forward(f2).words == std::vector<Word>{"0", "1"});
  CHECK(lemma16_forward(f2).N == 1);

  const auto f0 = lemma16_backward(0, {});
  CHECK(f0.size() == 1);
  CHECK(lemma16_forward(f0).words.empty());

  CHECK_THROWS_AS(lemma16_forward({"130002000"}), InputError);
  CHECK_THROWS_AS(lemma16_backward(0, {""}), InputError);

  std::mt19937_64 rng(31);
  for (int it = 0; it < 1000; ++it) {
    const uint64_t N = rng() % 3;
    std::vector<Word> ws(1 + rng() % 3);
    for (auto& w : ws) {
      w.resize(1 + rng() % 3);
      for (auto& c : w) c = "01"[rng() & 1];
    }
    const uint64_t salt = rng();
    const auto fs = lemma16_backward(N, ws, [salt](uint64_t m, uint64_t i) { return "01"[(salt >> ((m * 7 + i) % 64)) & 1]; });
    const auto rep = lemma16_forward(fs);
    REQUIRE(rep.N == N);
    REQUIRE(rep.words == ws);
    REQUIRE(rep.vertical_ok);
    // the extracted letters sit on the odd part of the 2N-th vertical
    const auto col = odd_part(vertical(rep.alpha, 2 * N));
    Word letters;
    for (const auto& w : ws) letters += w;
    REQUIRE(col.substr(0, letters.size()) == letters);
    // every factor lies in A, so the machine accepts it
    for (const auto& f : fs) REQUIRE(a_oracle(f, [](std::string_view) { return true; }));
  }
}

TEST_CASE("claim2_classify") {
  CHECK(claim2_classify({"023", "0023"}, contains_one).kind == AInfinityCase::MuPower);
  const auto k0 = lemma16_backward(1, {"1", "01"});
  CHECK(claim2_classify(k0, contains_one).kind == AInfinityCase::InK0);
  CHECK_THROWS_AS(claim2_classify({}, contains_one), InputError);
  CHECK_THROWS_AS(claim2_classify({"0"}, contains_one), InputError);

  // a μ0 factor in front of a π1 tail
  auto tail = lemma16_backward(1, {"1", "1", "1"});
  std::vector<Word> fs{"023"};
  fs.insert(fs.end(), tail.begin() + 1, tail.end());
  const auto c = claim2_classify(fs, contains_one);
  CHECK(c.kind == AInfinityCase::Shifted);
  CHECK(c.rule == 2);
  CHECK(c.t == "023");
  CHECK(c.consumed == 1);
  Word gamma;
  for (const auto& f : fs) gamma += f;
  CHECK(k_prefix_check(gamma.substr(c.t.size() + c.v.size()), c.N + c.i + 1));
  CHECK(describe(c).starts_with("Shifted case=2"));
}
