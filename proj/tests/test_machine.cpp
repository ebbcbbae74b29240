#include <algorithm>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "omegapow/eraser.hpp"
#include "omegapow/pi.hpp"

using namespace omegapow;
using testutil::random_machine;

namespace {

bool has_kind(const std::vector<Violation>& vs, const std::string& kind) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.kind == kind; });
}

}  // namespace

TEST_CASE("validate_machine flags the documented violations") {
  CHECK(validate_machine(p_base_machine(1)).empty());

  CounterMachine m;
  m.k = 1;
  m.alphabet = "a";
  m.add_state(true);
  Transition t{0, 0, 'a'};
  t.care = 1;  // tests zero
  set_delta(t, {-1});
  m.add(t);
  CHECK(has_kind(validate_machine(m), "zero-test"));

  CounterMachine r = p_base_machine(2);
  r.add({0, 1, kEps});
  CHECK(has_kind(validate_machine(r), "real-time"));

  CounterMachine bad = p_base_machine(2);
  bad.add({0, 7, '0'});
  CHECK(has_kind(validate_machine(bad), "state"));
  CounterMachine letter = p_base_machine(2);
  letter.add({0, 1, 'x'});
  CHECK(has_kind(validate_machine(letter), "letter"));
}

TEST_CASE("accepts and enumerate_accepted on the base machines") {
  const auto p2 = p_base_machine(2);
  CHECK(accepts(p2, "001"));
  CHECK_FALSE(accepts(p2, "010"));
  CHECK(enumerate_accepted(p2, 3) == std::vector<Word>{"1", "01", "001"});
  CHECK(enumerate_accepted(p_base_machine(1), 2) == std::vector<Word>{"0"});

  CounterMachine none = p2;
  none.finals.assign(none.num_states, 0);
  CHECK(enumerate_accepted(none, 5).empty());

  CounterMachine eps = p2;
  eps.finals[eps.initial] = 1;
  CHECK(accepts(eps, ""));

  CHECK_FALSE(accepts(l3a_machine('a', "ab"), parse_word("aBSb")));
  CHECK_THROWS_AS(accepts(p2, "2"), InputError);
}

TEST_CASE("enumerate_accepted equals brute force over accepts") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 30; ++it) {
    const auto m = random_machine(rng, 4, 2, "ab", it % 2 == 0, 10);
    std::vector<Word> brute;
    for (const auto& w : all_words("ab", 6))
      if (accepts(m, w)) brute.push_back(w);
    CHECK(enumerate_accepted(m, 6) == brute);
  }
}

TEST_CASE("verdicts do not depend on transition order") {
  std::mt19937_64 rng(12);
  for (int it = 0; it < 25; ++it) {
    const auto m = random_machine(rng, 4, 2, "ab", it % 2 == 1, 12);
    auto shuffled = m;
    std::shuffle(shuffled.transitions.begin(), shuffled.transitions.end(), rng);
    const Runner a(m), b(shuffled);
    for (const auto& w : all_words("ab", 10)) REQUIRE(a.accepts(w) == b.accepts(w));
  }
}

TEST_CASE("accepting runs replay with non-negative counters") {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 25; ++it) {
    const auto m = random_machine(rng, 4, 2, "ab", true, 12);
    const Runner r(m);
    for (const auto& w : all_words("ab", 7)) {
      const auto run = r.find_run(w);
      REQUIRE(run.has_value() == r.accepts(w));
      if (!run) continue;
      Configuration c{m.initial, {}};
      Word read;
      for (uint32_t i : *run) {
        const auto& t = m.transitions[i];
        REQUIRE(t.src == c.state);
        for (int k = 0; k < m.k; ++k) {
          if ((t.care >> k) & 1) REQUIRE(((t.pos >> k) & 1) == (c.counters[k] > 0));
          REQUIRE(int64_t(c.counters[k]) + t.delta(k) >= 0);
          c.counters[k] = uint32_t(int64_t(c.counters[k]) + t.delta(k));
        }
        c.state = t.dst;
        if (!t.is_lambda()) read += t.letter;
      }
      CHECK(read == w);
      CHECK(m.is_final(c.state));
      for (int k = 0; k < m.k; ++k) CHECK(c.counters[k] == 0);
    }
  }
}

TEST_CASE("intersect_regular and union_machines are pointwise") {
  std::mt19937_64 rng(14);
  for (int it = 0; it < 20; ++it) {
    const auto m1 = random_machine(rng, 4, 1, "ab", it % 2 == 0, 9);
    const auto m2 = random_machine(rng, 3, 2, "ab", false, 8);
    const auto d = testutil::random_dfa(rng, 3, "ab");
    const auto I = intersect_regular(m1, d);
    const auto U = union_machines(m1, m2);
    CHECK(validate_machine(I).empty());
    CHECK(validate_machine(U).empty());
    const Runner r1(m1), r2(m2), ri(I), ru(U);
    for (const auto& w : all_words("ab", 8)) {
      REQUIRE(ri.accepts(w) == (r1.accepts(w) && d.accepts(w)));
      REQUIRE(ru.accepts(w) == (r1.accepts(w) || r2.accepts(w)));
    }
  }
}

TEST_CASE("apply_letter_morphism accepts exactly the images") {
  LetterMorphism f{"01", "01", {{'0', "01"}, {'1', "1"}}};
  CHECK(enumerate_accepted(apply_letter_morphism(p_base_machine(1), f), 6) == std::vector<Word>{"01"});

  std::mt19937_64 rng(15);
  const LetterMorphism g{"ab", "xyz", {{'a', "xy"}, {'b', "xyz"}}};
  const LetterMorphism id{"ab", "ab", {{'a', "a"}, {'b', "b"}}};
  for (int it = 0; it < 20; ++it) {
    const auto m = random_machine(rng, 4, 2, "ab", it % 3 == 0, 10);
    const Runner r(m);
    const auto img = apply_letter_morphism(m, g);
    CHECK(validate_machine(img).empty());
    const Runner ri(img);
    for (const auto& w : all_words("xyz", 8)) {
      std::string x;
      REQUIRE(ri.accepts(w) == testutil::in_morphic_image(w, g, [&](std::string_view v) { return r.accepts(v); }, x));
    }
    const auto mid = apply_letter_morphism(m, id);
    const Runner rid(mid);
    for (const auto& w : all_words("ab", 6)) REQUIRE(rid.accepts(w) == r.accepts(w));
  }
}

TEST_CASE("realtime_pad puts six pads after each letter") {
  const CounterMachine ab = [] {
    auto m = test_machine_a0();
    return m;
  }();
  const auto padded = realtime_pad(ab, 'c', 6);
  CHECK(padded.real_time);
  CHECK(accepts(padded, "accccccbcccccc"));
  CHECK_FALSE(accepts(padded, "acccccbcccccc"));

  std::mt19937_64 rng(16);
  for (int it = 0; it < 8; ++it) {
    auto m = random_machine(rng, 5, 1, "ab", true, 12);
    m.lambda_chain_bound = 5;
    const auto p = realtime_pad(m, 'c', 6);
    CHECK(validate_machine(p).empty());
    CHECK(p.real_time);
    const Runner r(m);
    auto oracle = [&](std::string_view w) {
      // letter then exactly six pads
      Word core;
      for (size_t i = 0; i < w.size(); i += 7) {
        if (w[i] == 'c' || i + 7 > w.size() || w.substr(i + 1, 6) != "cccccc") return false;
        core += w[i];
      }
      return r.accepts(core);
    };
    CHECK(crosscheck(p, oracle, 14).mismatches == 0);
  }

  CounterMachine chain;
  chain.alphabet = "a";
  for (int i = 0; i < 9; ++i) chain.add_state(i == 8);
  chain.add({0, 1, 'a'});
  for (uint32_t i = 1; i < 8; ++i) chain.add({i, i + 1, kEps});
  chain.lambda_chain_bound = 7;
  CHECK_THROWS_AS(realtime_pad(chain, 'c', 6), InputError);
  CHECK_THROWS_AS(realtime_pad(p_base_machine(2), '0', 6), InputError);
}

TEST_CASE("trim and widen keep the language") {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 20; ++it) {
    const auto m = random_machine(rng, 6, 1, "ab", it % 2 == 0, 9);
    const auto t = trim(m), w = widen(m, 3);
    CHECK(t.num_states <= m.num_states);
    CHECK(w.k == 3);
    const Runner r(m), rt(t), rw(w);
    for (const auto& x : all_words("ab", 8)) {
      REQUIRE(rt.accepts(x) == r.accepts(x));
      REQUIRE(rw.accepts(x) == r.accepts(x));
    }
  }
}

TEST_CASE("text format round trips, including don't-care patterns and the eraser") {
  std::mt19937_64 rng(18);
  for (int it = 0; it < 20; ++it) {
    auto m = random_machine(rng, 4, 3, std::string{'a', 'b', kEraser}, it % 2 == 0, 10);
    const auto text = serialize(m);
    const auto back = parse_machine(text);
    CHECK(serialize(back) == text);
  }
  const auto m = parse_machine(
      "# comment\n"
      "kcm k=2 alphabet=a,BS real_time=1 accept=final_zero lambda_bound=5\n"
      "state s initial\nstate f final\n"
      "trans s a *0 f 1,0\n"
      "trans f BS 1* f -1,0\n");
  CHECK(m.alphabet == std::string{'a', kEraser});
  CHECK(accepts(m, std::string{'a', kEraser}));
  CHECK_FALSE(accepts(m, "a"));
  CHECK(pattern_text(m.transitions[0], 2) == "*0");
  CHECK(parse_word("aBSb") == std::string{'a', kEraser, 'b'});
  CHECK(parse_word("EPS").empty());
  CHECK(render_word("") == "EPS");

  CHECK_THROWS_AS(parse_machine("state s initial\n"), InputError);
  CHECK_THROWS_AS(parse_machine("kcm k=1 alphabet=a\nstate s initial\ntrans s a 00 s 1\n"), InputError);
  CHECK_THROWS_AS(parse_machine("kcm k=1 alphabet=a\nstate s initial\ntrans s a 0 s 2\n"), InputError);
  CHECK_THROWS_AS(parse_machine("kcm k=1 alphabet=a\nstate s\n"), InputError);
}

TEST_CASE("crosscheck pruning is sound") {
  std::mt19937_64 rng(19);
  for (int it = 0; it < 10; ++it) {
    const auto m = random_machine(rng, 4, 1, "ab", false, 8);
    const Runner r(m);
    auto oracle = [&](std::string_view w) { return r.accepts(w); };
    auto never = [](std::string_view) { return false; };
    const auto full = crosscheck(m, oracle, 9);
    const auto pruned = crosscheck(m, oracle, 9, never);
    CHECK(full.mismatches == 0);
    CHECK(pruned.mismatches == 0);
    CHECK(full.words == pruned.words);
    CHECK(full.accepted == pruned.accepted);
    CHECK(pruned.visited <= full.visited);
  }
  const auto p2 = p_base_machine(2);
  const auto bad = crosscheck(p2, [](std::string_view w) { return w == "1"; }, 3);
  CHECK(bad.mismatches == 2);
}
