#pragma once
// Pairing along snake diagonals, verticals, the 2/3-valuations, the block
// coding g_{N,l}, and the separator sets K_l with their maps φ_l.

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "omegapow/machine.hpp"

namespace omegapow {

struct GridPoint {
  uint64_t N = 0, p = 0;
  friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

uint64_t triangle(uint64_t s);
/// max{ q : q(q+1)/2 <= n }
uint64_t diag_index(uint64_t n);
uint64_t pair(GridPoint g);
GridPoint unpair(uint64_t q);

struct Valuations {
  unsigned m2 = 0, m3 = 0;
};
Valuations valuations_23(uint64_t m);

Word vertical(std::string_view alpha_prefix, uint64_t M);
Word odd_part(std::string_view w);
/// x(m, n) as a finite map; bits are '0'/'1'. Throws InputError on a missing entry.
Word c_map(const std::map<std::pair<uint64_t, uint64_t>, char>& x, size_t out_len);

/// The letters 𝟎 𝟏 𝟐 (𝟑) used as separators; they serialize as 0 1 2 3 by default.
struct Marks {
  char zero = '0', one = '1', two = '2';
};
/// First mark triple disjoint from sigma.
Marks fresh_marks(std::string_view sigma);

struct GParams {
  uint64_t N = 1, l = 0;
  friend bool operator==(const GParams&, const GParams&) = default;
};
uint64_t g_block(GParams p, uint64_t i);
Word encode_g(GParams p, std::string_view sigma_prefix, Marks mk = {});
struct GDecoded {
  GParams p;
  Word sigma;
};
/// nullopt is NotInRange.
std::optional<GDecoded> decode_g(std::string_view w, Marks mk = {});

/// Blocks s_m of an element of K_l. For l = 0 blocks start at s_0 with |s_m| = m;
/// for l >= 1 they start at s_1 with |s_m| = 2(l-1) + 2 + m.
struct DiagonalPrefix {
  uint64_t l = 0;
  std::vector<Word> blocks;
  friend bool operator==(const DiagonalPrefix&, const DiagonalPrefix&) = default;
};
uint64_t block_index(uint64_t l, size_t i);
uint64_t block_length(uint64_t l, uint64_t m);
Word phi_forward(const DiagonalPrefix& d);
DiagonalPrefix phi_inverse(std::string_view alpha, uint64_t l);
/// The K_l word itself: separators interleaved with the blocks.
Word k_word(const DiagonalPrefix& d);
bool k_prefix_check(std::string_view w, uint64_t l);

}  // namespace omegapow
