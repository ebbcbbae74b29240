#include <random>

#include "doctest.h"
#include "omegapow/codings.hpp"

using namespace omegapow;

TEST_CASE("pair and unpair examples") {
  CHECK(pair({0, 0}) == 0);
  CHECK(pair({3, 0}) == 6);
  CHECK(pair({0, 1}) == 2);
  CHECK(unpair(0) == GridPoint{0, 0});
  CHECK(unpair(5) == GridPoint{2, 0});
  CHECK(unpair(9) == GridPoint{0, 3});
}

TEST_CASE("pairing is a bijection along the snake") {
  for (uint64_t N = 0; N <= 300; ++N)
    for (uint64_t p = 0; p <= 300; ++p) REQUIRE(unpair(pair({N, p})) == GridPoint{N, p});
  for (uint64_t q = 0; q < 1000000; ++q) REQUIRE(pair(unpair(q)) == q);
  // consecutive indices are grid neighbours (the snake never jumps)
  for (uint64_t q = 0; q < 5000; ++q) {
    const auto a = unpair(q), b = unpair(q + 1);
    const auto d = (a.N > b.N ? a.N - b.N : b.N - a.N) + (a.p > b.p ? a.p - b.p : b.p - a.p);
    REQUIRE(d <= 2);
  }
  const GridPoint first[10] = {{0, 0}, {1, 0}, {0, 1}, {0, 2}, {1, 1}, {2, 0}, {3, 0}, {2, 1}, {1, 2}, {0, 3}};
  for (uint64_t q = 0; q < 10; ++q) CHECK(unpair(q) == first[q]);
  CHECK(diag_index(0) == 0);
  CHECK(diag_index(2) == 1);
  CHECK(diag_index(3) == 2);
}

TEST_CASE("valuations_23") {
  CHECK(valuations_23(12).m2 == 2);
  CHECK(valuations_23(12).m3 == 1);
  CHECK(valuations_23(1).m2 == 0);
  CHECK(valuations_23(6).m3 == 1);
  CHECK_THROWS_AS(valuations_23(0), InputError);
  for (uint64_t m = 1; m <= 100000; ++m) {
    const auto v = valuations_23(m);
    uint64_t d = 1;
    for (unsigned i = 0; i < v.m2; ++i) d *= 2;
    for (unsigned i = 0; i < v.m3; ++i) d *= 3;
    REQUIRE(m % d == 0);
    REQUIRE((m / d) % 2 != 0);
    REQUIRE((m / d) % 3 != 0);
  }
}

TEST_CASE("vertical and odd_part") {
  CHECK(vertical("0100110", 0) == "000");
  CHECK(vertical("", 4).empty());
  CHECK(vertical("1", 0) == "1");
  CHECK(odd_part("0101") == "11");
  CHECK(odd_part("").empty());
  CHECK(odd_part("ab") == "b");

  std::mt19937_64 rng(3);
  for (int it = 0; it < 200; ++it) {
    Word w(rng() % 200, '0');
    for (auto& c : w) c = "01"[rng() & 1];
    const uint64_t M = rng() % 12;
    const auto v = vertical(w, M);
    for (uint64_t p = 0; p < v.size(); ++p) REQUIRE(v[p] == w[pair({M, p})]);
    if (pair({M, v.size()}) < w.size()) FAIL("vertical stopped early");
  }
}

TEST_CASE("c_map") {
  std::map<std::pair<uint64_t, uint64_t>, char> x{{{0, 0}, '1'}, {{0, 1}, '0'}, {{1, 0}, '0'}};
  const auto out = c_map(x, 3);
  CHECK(out[0] == '0');  // (0,0): second coordinate even
  CHECK(out[1] == '0');  // (1,0): first coordinate odd
  CHECK(out[2] == '0');  // (0,1): 1 - x(0,0)
  x[{0, 0}] = '0';
  CHECK(c_map(x, 3)[2] == '1');
  CHECK_THROWS_AS(c_map({}, 3), InputError);
}

TEST_CASE("encode_g examples") {
  CHECK(encode_g({1, 0}, "ab") == "0a1020b1" + Word(6, '0') + "2" + Word(6, '0'));
  CHECK(encode_g({1, 1}, "a") == "0a1" + Word(6, '0') + "2" + Word(6, '0'));
  CHECK_THROWS_AS(encode_g({6, 0}, "a"), InputError);
  CHECK(g_block({1, 0}, 1) == 6);
  CHECK(g_block({5, 2}, 0) == 180);
}

TEST_CASE("decode_g inverts encode_g") {
  CHECK(decode_g("00") == std::nullopt);
  CHECK(decode_g("") == std::nullopt);
  auto d = decode_g(encode_g({1, 0}, "ab"));
  REQUIRE(d);
  CHECK(d->p == GParams{1, 0});
  CHECK(d->sigma == "ab");
  d = decode_g(encode_g({5, 2}, "aba"));
  REQUIRE(d);
  CHECK(d->p == GParams{5, 2});
  CHECK(d->sigma == "aba");

  for (uint64_t N = 1; N <= 25; ++N) {
    if (N % 6 == 0) continue;
    for (uint64_t l = 0; l <= 3; ++l)
      for (size_t len = 1; len <= 3; ++len)
        for (const auto& s : all_words("ab", len)) {
          if (s.size() != len) continue;
          const auto e = decode_g(encode_g({N, l}, s));
          REQUIRE(e);
          REQUIRE(e->p == GParams{N, l});
          REQUIRE(e->sigma == s);
        }
  }
  // a block cut short, a wrong ratio, a missing tail
  const auto good = encode_g({1, 0}, "ab");
  CHECK(decode_g(good.substr(0, good.size() - 1)) == std::nullopt);
  CHECK(decode_g("0a1020b10000020000000") == std::nullopt);
  CHECK(decode_g("0a102") == std::nullopt);
  // custom marks
  const Marks mk{'x', 'y', 'z'};
  const auto e = decode_g(encode_g({2, 1}, "ab", mk), mk);
  REQUIRE(e);
  CHECK(e->sigma == "ab");
  CHECK(fresh_marks("01").zero != '0');
}

TEST_CASE("phi examples and round trips") {
  CHECK(phi_forward({0, {"", "1", "01"}}) == "101");
  CHECK(phi_forward({0, {""}}).empty());
  CHECK_THROWS_AS(phi_forward({0, {"", "11"}}), InputError);
  std::mt19937_64 rng(5);
  for (uint64_t l = 0; l <= 2; ++l)
    for (int it = 0; it < 10000; ++it) {
      DiagonalPrefix d{l, {}};
      const size_t nb = 1 + rng() % 6;
      for (size_t i = 0; i < nb; ++i) {
        Word s(block_length(l, block_index(l, i)), '0');
        for (auto& c : s) c = "01"[rng() & 1];
        d.blocks.push_back(s);
      }
      const auto a = phi_forward(d);
      REQUIRE(phi_inverse(a, l) == d);
      REQUIRE(k_prefix_check(k_word(d), l));
    }
}

TEST_CASE("k_prefix_check") {
  CHECK(k_prefix_check("2302", 0));
  CHECK_FALSE(k_prefix_check("3", 0));
  CHECK(k_prefix_check("", 0));
  CHECK(k_prefix_check("3", 1));
  CHECK_FALSE(k_prefix_check("2", 1));
  CHECK_FALSE(k_prefix_check("2303", 0));
  CHECK(k_prefix_check("230201", 0));
}
