#include <random>

#include "doctest.h"
#include "omegapow/pi.hpp"

using namespace omegapow;

namespace {

std::function<bool(std::string_view)> r_viable(std::string_view sigma, Marks mk = {}) {
  auto R = std::make_shared<DFA>(script_r_dfa(sigma, mk));
  return [R](std::string_view w) {
    uint32_t q = R->initial;
    for (char c : w) q = R->next(q, c);
    return q != 3;
  };
}

// Random word of the regular shape with short runs.
Word random_shape(std::mt19937_64& rng, std::string_view sigma, size_t blocks, uint64_t run) {
  Word w;
  for (size_t b = 0; b < blocks; ++b) {
    w.append(1 + rng() % run, '0');
    w += sigma[rng() % sigma.size()];
    w += '1';
    w.append(1 + rng() % (6 * run), '0');
    w += '2';
  }
  w.append(rng() % (6 * run), '0');
  return w;
}

}  // namespace

TEST_CASE("base machines") {
  CHECK(accepts(p_base_machine(1), "0"));
  CHECK_FALSE(accepts(p_base_machine(1), "00"));
  for (const auto& w : all_words("01", 8)) {
    REQUIRE(accepts(p_base_machine(2), w) == p_base_oracle(2, w));
    REQUIRE(p_base_dfa(2).accepts(w) == p_base_oracle(2, w));
    REQUIRE(p_base_dfa(1).accepts(w) == p_base_oracle(1, w));
  }
  CHECK(enumerate_accepted(test_machine_a0(), 4) == std::vector<Word>{"ab"});
  for (const auto& w : all_words("abcd", 8)) REQUIRE(accepts(test_machine_a1(), w) == test_machine_a1_oracle(w));
}

TEST_CASE("script_l_oracle examples") {
  const auto a0 = test_machine_a0();
  const auto wit = script_l_oracle(a0, "0a100200b102");
  REQUIRE(wit);
  CHECK(wit->blocks.size() == 2);
  CHECK(witness_word(*wit) == "0a100200b102");
  CHECK(check_witness(a0, *wit).empty());
  CHECK_FALSE(script_l_oracle(a0, "0a12"));
  CHECK_FALSE(script_l_oracle(a0, "a"));
  CHECK_FALSE(script_l_oracle(a0, "0a100200b10"));
}

TEST_CASE("the dynamic programme agrees with naive splitting") {
  for (const auto* subject : {"a0", "a1"}) {
    const auto m = std::string(subject) == "a0" ? test_machine_a0() : test_machine_a1();
    const std::string alpha = m.alphabet + "012";
    for (const auto& w : all_words(alpha, std::string(subject) == "a0" ? 9 : 7))
      REQUIRE(script_l_oracle(m, w).has_value() == script_l_naive(m, w));
  }
}

TEST_CASE("script_l_machine matches the oracle for both bundled subjects") {
  const auto a0 = test_machine_a0();
  const auto m0 = script_l_machine(a0);
  CHECK(validate_machine(m0).empty());
  CHECK(m0.k == 1);
  CHECK(longest_lambda_chain(m0) <= 5);
  auto r = crosscheck(m0, [&](std::string_view w) { return script_l_oracle(a0, w).has_value(); }, 12,
                      r_viable(a0.alphabet));
  CHECK(r.mismatches == 0);
  CHECK(r.accepted == 1);

  const auto a1 = test_machine_a1();
  const auto m1 = script_l_machine(a1);
  CHECK(validate_machine(m1).empty());
  r = crosscheck(m1, [&](std::string_view w) { return script_l_oracle(a1, w).has_value(); }, 11,
                 r_viable(a1.alphabet));
  CHECK(r.mismatches == 0);

  // longer words of the right shape, where the exhaustive depth cannot reach
  std::mt19937_64 rng(21);
  const Runner r0(m0), r1(m1);
  size_t yes = 0;
  for (int it = 0; it < 4000; ++it) {
    const bool first = it % 2 == 0;
    const auto& subject = first ? a0 : a1;
    const auto w = random_shape(rng, subject.alphabet, 1 + rng() % 4, 4);
    const bool o = script_l_oracle(subject, w).has_value();
    yes += o;
    REQUIRE((first ? r0 : r1).accepts(w) == o);
  }
  for (uint64_t N : {1, 2, 5}) {
    for (const auto& w : claim2_forward(a1, {"abcd"}, {N, 2})) {
      const auto word = witness_word(w);
      REQUIRE(r1.accepts(word));
      ++yes;
    }
  }
  CHECK(yes > 0);
}

TEST_CASE("mu_five examples and crosscheck") {
  CHECK(mu_five_oracle("0a10200b102", "ab"));
  CHECK_FALSE(mu_five_oracle("0a1020b10000002", "ab"));
  CHECK_FALSE(mu_five_oracle("0a102", "ab"));
  const auto m = mu_five_machine("ab");
  CHECK(validate_machine(m).empty());
  CHECK(longest_lambda_chain(m) <= 5);
  const auto r = crosscheck(m, [](std::string_view w) { return mu_five_oracle(w, "ab"); }, 12, r_viable("ab"));
  CHECK(r.mismatches == 0);
  std::mt19937_64 rng(22);
  const Runner run(m);
  size_t yes = 0, no = 0;
  for (int it = 0; it < 4000; ++it) {
    const auto w = random_shape(rng, "ab", 2 + rng() % 3, 5);
    const bool o = mu_five_oracle(w, "ab");
    (o ? yes : no)++;
    REQUIRE(run.accepts(w) == o);
  }
  CHECK(yes > 0);
  CHECK(no > 0);
}

TEST_CASE("binary recoding is a prefix code") {
  const auto f = binary_recoding("xyz");
  CHECK(f.image.at('x') == "1");
  CHECK(f.image.at('z') == "001");
  CHECK(decode_binary("1010011", "xyz") == Word{"xyzx"});
  CHECK(decode_binary("0001", "xyz") == std::nullopt);
  CHECK(decode_binary("10", "xyz") == std::nullopt);
}

TEST_CASE("build_pn stages") {
  CHECK(build_pn(1).machine.num_states == 2);
  CHECK_THROWS_AS(build_pn(7), InputError);
  CHECK_THROWS_AS(build_pn(0), InputError);
  const auto p3 = build_pn(3);
  CHECK(p3.machine.alphabet == "01");
  CHECK(p3.machine.k == 1);
  CHECK(p3.machine.real_time);
  CHECK(p3.claimed_class == "Pi0_3-complete");
  CHECK(crosscheck(p3.machine, [&](std::string_view w) { return pn_oracle(3, p3, w); }, 14).mismatches == 0);

  const auto p4 = build_pn(4);
  REQUIRE(p4.reduction);
  CHECK(validate_machine(p4.machine).empty());
  CHECK(p4.machine.k == 1);
  CHECK(p4.machine.real_time);
  CHECK(p4.log.size() >= 8);
  // members built from subject words through the witness map
  const auto& red = *p4.reduction;
  const Runner run(p4.machine);
  size_t members = 0;
  for (const auto& x : enumerate_accepted(*red.subject, 3)) {
    if (x.empty()) continue;
    std::vector<ScriptLWitness> ws;
    for (uint64_t l = 0; l <= 2 && ws.empty(); ++l) {
      try {
        ws = claim2_forward(*red.subject, {x}, {1, l}, red.marks);
      } catch (const FeasibilityError&) {
      }
    }
    for (const auto& w : ws) {
      const auto core = witness_word(w, red.marks);
      const auto enc = reduction_encode(red, core);
      REQUIRE(pn_oracle(4, p4, enc));
      REQUIRE(run.accepts(enc));
      // one pad too few breaks membership on both sides
      const auto bad = reduction_encode(red, core).substr(red.code_alphabet.size() + 1);
      REQUIRE(run.accepts(bad) == pn_oracle(4, p4, bad));
      ++members;
    }
    if (members >= 3) break;
  }
  CHECK(members > 0);
}

TEST_CASE("claim2 witness maps") {
  const auto a0 = test_machine_a0();
  CHECK_THROWS_AS(claim2_forward(a0, {"ab"}, {1, 0}), FeasibilityError);
  try {
    claim2_forward(a0, {"ab"}, {1, 0});
  } catch (const FeasibilityError& e) {
    CHECK(e.index == 0);
  }
  CHECK(claim2_forward(a0, {}, {1, 2}).empty());
  CHECK(claim2_backward(a0, {}).empty());

  const auto ws = claim2_forward(a0, {"ab"}, {1, 2});
  REQUIRE(ws.size() == 1);
  CHECK(script_l_oracle(a0, witness_word(ws[0])));
  CHECK(claim2_backward(a0, ws) == std::vector<Word>{"ab"});
  CHECK(witness_word(ws[0]) + "0" == encode_g({1, 2}, "ab"));

  auto tampered = ws;
  tampered[0].blocks[0].w += 1;
  CHECK_THROWS_AS(claim2_backward(a0, tampered), InputError);

  // the witness words are accepted by the one-counter machine too
  const auto m = script_l_machine(a0);
  CHECK(accepts(m, witness_word(ws[0])));

  const auto a1 = test_machine_a1();
  std::mt19937_64 rng(23);
  for (int it = 0; it < 100; ++it) {
    uint64_t N = 1 + rng() % 25;
    if (N % 6 == 0) ++N;
    const GParams p{N, 2 + rng() % 2};
    const std::vector<Word> fs = rng() % 2 ? std::vector<Word>{"abcd"} : std::vector<Word>{"aabbcd"};
    if (fs[0].size() > 4 && p.l == 3) continue;
    const auto w1 = claim2_forward(a1, fs, p);
    Word whole;
    for (const auto& w : w1) {
      REQUIRE(check_witness(a1, w).empty());
      whole += witness_word(w);
    }
    REQUIRE(whole + "0" == encode_g(p, fs[0]));
    REQUIRE(claim2_backward(a1, w1) == fs);
  }
}

TEST_CASE("stage lines are stable") {
  CHECK(stage_line("P2", p_base_machine(2)) == "P2: alphabet=01 k=0 states=2 transitions=2 real_time=yes");
}
