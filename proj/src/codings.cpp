#include "omegapow/codings.hpp"

#include <algorithm>
#include <cmath>

namespace omegapow {

uint64_t triangle(uint64_t s) { return s * (s + 1) / 2; }

uint64_t diag_index(uint64_t n) {
  auto q = static_cast<uint64_t>((std::sqrt(8.0L * n + 1) - 1) / 2);
  while (triangle(q) > n) --q;
  while (triangle(q + 1) <= n) ++q;
  return q;
}

uint64_t pair(GridPoint g) {
  const uint64_t s = g.N + g.p;
  return triangle(s) + (s % 2 == 0 ? g.N : g.p);
}

GridPoint unpair(uint64_t q) {
  const uint64_t m = diag_index(q), off = q - triangle(m);
  if (m % 2 == 0) return {off, m - off};
  return {m - off, off};
}

Valuations valuations_23(uint64_t m) {
  if (m == 0) throw InputError("valuations_23: m must be positive");
  Valuations v;
  while (m % 2 == 0) m /= 2, ++v.m2;
  while (m % 3 == 0) m /= 3, ++v.m3;
  return v;
}

Word vertical(std::string_view alpha_prefix, uint64_t M) {
  Word out;
  for (uint64_t p = 0;; ++p) {
    const uint64_t i = pair({M, p});
    if (i >= alpha_prefix.size()) break;
    out.push_back(alpha_prefix[i]);
  }
  return out;
}

Word odd_part(std::string_view w) {
  Word out;
  for (size_t i = 1; i < w.size(); i += 2) out.push_back(w[i]);
  return out;
}

Word c_map(const std::map<std::pair<uint64_t, uint64_t>, char>& x, size_t out_len) {
  Word out;
  for (uint64_t q = 0; q < out_len; ++q) {
    const auto g = unpair(q);
    if (g.N % 2 == 1 || g.p % 2 == 0) {
      out.push_back('0');
      continue;
    }
    auto it = x.find({g.N / 2, (g.p - 1) / 2});
    if (it == x.end())
      throw InputError("c_map: x(" + std::to_string(g.N / 2) + "," + std::to_string((g.p - 1) / 2) + ") undefined");
    out.push_back(it->second == '1' ? '0' : '1');
  }
  return out;
}

Marks fresh_marks(std::string_view sigma) {
  for (std::string_view cand : {"012", "xyz", "XYZ", "uvw", "UVW"}) {
    if (std::none_of(cand.begin(), cand.end(), [&](char c) { return sigma.find(c) != std::string_view::npos; }))
      return {cand[0], cand[1], cand[2]};
  }
  throw InputError("fresh_marks: no free separator letters");
}

uint64_t g_block(GParams p, uint64_t i) {
  uint64_t b = p.N;
  for (uint64_t e = 0; e < p.l + i; ++e) b *= 6;
  return b;
}

Word encode_g(GParams p, std::string_view sigma_prefix, Marks mk) {
  if (p.N == 0 || p.N % 6 == 0) throw InputError("encode_g: need N >= 1 with 6 not dividing N");
  Word out(1, mk.zero);
  for (size_t i = 0; i < sigma_prefix.size(); ++i) {
    const char a = sigma_prefix[i];
    if (a == mk.zero || a == mk.one || a == mk.two) throw InputError("encode_g: letter collides with a separator");
    const uint64_t b = g_block(p, i);
    out.push_back(a);
    out.push_back(mk.one);
    out.append(b, mk.zero);
    out.push_back(mk.two);
    out.append(b, mk.zero);
  }
  return out;
}

std::optional<GDecoded> decode_g(std::string_view w, Marks mk) {
  if (w.empty() || w[0] != mk.zero) return std::nullopt;
  auto is_mark = [&](char c) { return c == mk.zero || c == mk.one || c == mk.two; };
  GDecoded d;
  size_t i = 1;
  uint64_t expect = 0;
  auto run = [&](size_t& at) {
    uint64_t r = 0;
    while (at < w.size() && w[at] == mk.zero) ++at, ++r;
    return r;
  };
  while (i < w.size()) {
    if (is_mark(w[i])) return std::nullopt;
    const char a = w[i++];
    if (i >= w.size() || w[i] != mk.one) return std::nullopt;
    ++i;
    const uint64_t b1 = run(i);
    if (i >= w.size() || w[i] != mk.two) return std::nullopt;
    ++i;
    const uint64_t b2 = run(i);
    if (b1 != b2 || b1 == 0) return std::nullopt;
    if (d.sigma.empty()) {
      uint64_t n = b1, l = 0;
      while (n % 6 == 0) n /= 6, ++l;
      d.p = {n, l};
      expect = b1;
    } else if (b1 != expect) {
      return std::nullopt;
    }
    d.sigma.push_back(a);
    expect *= 6;
  }
  // the parameters of the empty prefix are not determined
  if (d.sigma.empty()) return std::nullopt;
  return d;
}

uint64_t block_index(uint64_t l, size_t i) { return l == 0 ? i : i + 1; }

uint64_t block_length(uint64_t l, uint64_t m) { return l == 0 ? m : 2 * (l - 1) + 2 + m; }

Word phi_forward(const DiagonalPrefix& d) {
  Word out;
  for (size_t i = 0; i < d.blocks.size(); ++i) {
    const uint64_t m = block_index(d.l, i);
    const Word& s = d.blocks[i];
    if (s.size() != block_length(d.l, m))
      throw InputError("phi: block s_" + std::to_string(m) + " has length " + std::to_string(s.size()));
    for (char c : s)
      if (c != '0' && c != '1') throw InputError("phi: blocks are binary");
    // odd-indexed blocks go in reversed
    if (m % 2 == 1) out.append(s.rbegin(), s.rend());
    else out += s;
  }
  return out;
}

DiagonalPrefix phi_inverse(std::string_view alpha, uint64_t l) {
  DiagonalPrefix d{l, {}};
  size_t at = 0;
  for (size_t i = 0; at < alpha.size() || (l == 0 && i == 0); ++i) {
    const uint64_t m = block_index(l, i), len = block_length(l, m);
    if (at + len > alpha.size()) throw InputError("phi inverse: length is not a sum of block lengths");
    Word s(alpha.substr(at, len));
    for (char c : s)
      if (c != '0' && c != '1') throw InputError("phi inverse: word is not binary");
    if (m % 2 == 1) std::reverse(s.begin(), s.end());
    d.blocks.push_back(s);
    at += len;
  }
  return d;
}

Word k_word(const DiagonalPrefix& d) {
  Word out;
  for (size_t i = 0; i < d.blocks.size(); ++i) {
    const uint64_t m = block_index(d.l, i);
    out.push_back(m % 2 == 0 ? '2' : '3');
    out += d.blocks[i];
  }
  return out;
}

bool k_prefix_check(std::string_view w, uint64_t l) {
  // separator before s_m is 2 for even m, 3 for odd m
  size_t at = 0;
  for (uint64_t m = (l == 0 ? 0 : 1); at < w.size(); ++m) {
    if (w[at] != (m % 2 == 0 ? '2' : '3')) return false;
    ++at;
    const uint64_t len = block_length(l, m);
    for (uint64_t j = 0; j < len && at < w.size(); ++j, ++at)
      if (w[at] != '0' && w[at] != '1') return false;
  }
  return true;
}

}  // namespace omegapow
