#include "omegapow/pi.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <unordered_map>

#include "omegapow/eraser.hpp"

namespace omegapow {

namespace {

Transition tr(uint32_t src, char letter, const char* pat, uint32_t dst, int delta) {
  Transition t{src, dst, letter};
  const auto p = pattern(pat);
  t.care = p.care;
  t.pos = p.pos;
  if (delta != 0) set_delta(t, {delta});
  return t;
}

void check_subject(const CounterMachine& s, const char* who) {
  if (s.k != 2) throw InputError(std::string(who) + ": subject must have exactly 2 counters");
  if (!s.real_time || std::any_of(s.transitions.begin(), s.transitions.end(), [](auto& t) { return t.is_lambda(); }))
    throw InputError(std::string(who) + ": subject must be real-time");
  if (s.acceptance != Acceptance::FinalStateAndZero) throw InputError(std::string(who) + ": subject needs FinalStateAndZero");
}

struct Ratio {
  uint64_t num = 1, den = 1;
};

Ratio ratio_of(int l2, int l3) {
  Ratio r;
  (l2 > 0 ? r.num : r.den) *= l2 != 0 ? 2 : 1;
  (l3 > 0 ? r.num : r.den) *= l3 != 0 ? 3 : 1;
  return r;
}

// Does the zero-pattern of t (on counters 0, 1) match the valuations of v?
bool matches_valuations(const Transition& t, uint64_t v) {
  const bool c0 = v % 2 == 0, c1 = v % 3 == 0;
  for (int m = 0; m < 2; ++m) {
    if (!((t.care >> m) & 1)) continue;
    if (bool((t.pos >> m) & 1) != (m == 0 ? c0 : c1)) return false;
  }
  return true;
}

bool coprime6(uint64_t x) { return x % 2 != 0 && x % 3 != 0; }

// 𝟎^{p0} followed by blocks a 𝟏 𝟎^m 𝟐 𝟎^p
struct ShapeBlock {
  char a;
  uint64_t m, p;
};
struct Shape {
  uint64_t p0 = 0;
  std::vector<ShapeBlock> blocks;
};

std::optional<Shape> parse_shape(std::string_view w, std::string_view sigma, Marks mk) {
  for (char c : w)
    if (c != mk.zero && c != mk.one && c != mk.two && sigma.find(c) == std::string_view::npos)
      throw InputError("letter " + render_letter(c) + " outside the alphabet");
  Shape s;
  size_t i = 0;
  auto run = [&] {
    uint64_t r = 0;
    while (i < w.size() && w[i] == mk.zero) ++i, ++r;
    return r;
  };
  s.p0 = run();
  while (i < w.size()) {
    const char a = w[i];
    if (sigma.find(a) == std::string_view::npos) return std::nullopt;
    if (++i >= w.size() || w[i] != mk.one) return std::nullopt;
    ++i;
    const uint64_t m = run();
    if (i >= w.size() || w[i] != mk.two) return std::nullopt;
    ++i;
    s.blocks.push_back({a, m, run()});
  }
  return s;
}

std::vector<std::vector<uint32_t>> by_source(const CounterMachine& m) {
  std::vector<std::vector<uint32_t>> out(m.num_states);
  for (uint32_t i = 0; i < m.transitions.size(); ++i) out[m.transitions[i].src].push_back(i);
  return out;
}

}  // namespace

std::string stage_line(const std::string& step, const CounterMachine& m) {
  return step + ": alphabet=" + render_word(m.alphabet) + " k=" + std::to_string(m.k) +
         " states=" + std::to_string(m.num_states) + " transitions=" + std::to_string(m.transitions.size()) +
         " real_time=" + (m.real_time ? "yes" : "no");
}

// ---------------------------------------------------------------- base machines

CounterMachine p_base_machine(int n) {
  if (n != 1 && n != 2) throw InputError("p_base_machine: n must be 1 or 2");
  CounterMachine m;
  m.alphabet = "01";
  m.real_time = true;
  const uint32_t s = m.add_state(), f = m.add_state(true);
  if (n == 1) {
    m.add({s, f, '0'});
  } else {
    m.add({s, s, '0'});
    m.add({s, f, '1'});
  }
  m.canonicalize();
  return m;
}

bool p_base_oracle(int n, std::string_view w) {
  if (n == 1) return w == "0";
  if (w.empty() || w.back() != '1') return false;
  return std::all_of(w.begin(), w.end() - 1, [](char c) { return c == '0'; });
}

DFA p_base_dfa(int n) {
  if (n != 1 && n != 2) throw InputError("p_base_dfa: n must be 1 or 2");
  DFA d;
  d.alphabet = "01";
  d.num_states = 3;  // 0 start, 1 accept, 2 dead
  d.finals = {0, 1, 0};
  if (n == 1)
    d.delta = {1, 2, 2, 2, 2, 2};
  else
    d.delta = {0, 1, 2, 2, 2, 2};
  return d;
}

CounterMachine test_machine_a0() {
  CounterMachine m;
  m.k = 2;
  m.alphabet = "ab";
  m.real_time = true;
  const uint32_t q0 = m.add_state(), q2 = m.add_state(), q1 = m.add_state(true);
  m.names = {"q0", "q2", "q1"};
  Transition a{q0, q2, 'a'};
  a.care = 3;
  set_delta(a, {1, 0});
  Transition b{q2, q1, 'b'};
  b.care = 3;
  b.pos = 1;
  set_delta(b, {-1, 0});
  m.add(a);
  m.add(b);
  m.canonicalize();
  return m;
}

CounterMachine test_machine_a1() {
  CounterMachine m;
  m.k = 2;
  m.alphabet = "abcd";
  m.real_time = true;
  for (int i = 0; i < 5; ++i) m.add_state(i == 4);
  m.names = {"q0", "a", "b", "c", "d"};
  auto add = [&](uint32_t s, char c, const char* pat, uint32_t d, std::vector<int> delta) {
    Transition t{s, d, c};
    const auto p = pattern(pat);
    t.care = p.care;
    t.pos = p.pos;
    set_delta(t, delta);
    m.add(t);
  };
  add(0, 'a', "00", 1, {1, 0});
  add(1, 'a', "10", 1, {1, 0});
  add(1, 'b', "10", 2, {-1, 0});
  add(2, 'b', "10", 2, {-1, 0});
  add(2, 'c', "00", 3, {0, 1});
  add(3, 'c', "01", 3, {0, 1});
  add(3, 'd', "01", 4, {0, -1});
  add(4, 'd', "01", 4, {0, -1});
  m.canonicalize();
  return m;
}

bool test_machine_a1_oracle(std::string_view w) {
  size_t i = 0, n[4] = {0, 0, 0, 0};
  for (int k = 0; k < 4; ++k)
    while (i < w.size() && w[i] == "abcd"[k]) ++i, ++n[k];
  return i == w.size() && n[0] >= 1 && n[0] == n[1] && n[2] >= 1 && n[2] == n[3];
}

// ---------------------------------------------------------------- 𝓛

Word witness_word(const ScriptLWitness& wit, Marks mk) {
  Word out;
  for (const auto& b : wit.blocks) {
    out.append(b.v, mk.zero);
    out.push_back(b.a);
    out.push_back(mk.one);
    out.append(b.w + b.z, mk.zero);
    out.push_back(mk.two);
    out.append(b.z, mk.zero);
  }
  return out;
}

std::string check_witness(const CounterMachine& subject, const ScriptLWitness& wit) {
  if (wit.blocks.empty()) return "no blocks";
  if (wit.blocks[0].v != 1) return "|v_0| != 1";
  if (wit.blocks[0].from != subject.initial) return "q_0 is not initial";
  for (size_t i = 0; i < wit.blocks.size(); ++i) {
    const auto& b = wit.blocks[i];
    const std::string at = " at block " + std::to_string(i);
    if (b.v == 0 || b.w == 0) return "empty v or w" + at;
    if (i > 0 && b.from != wit.blocks[i - 1].to) return "state sequence broken" + at;
    const auto r = ratio_of(b.l2, b.l3);
    if (b.w * r.den != b.v * r.num) return "|w| != |v|*2^l*3^l'" + at;
    bool found = false;
    for (const auto& t : subject.transitions)
      if (t.src == b.from && t.dst == b.to && t.letter == b.a && t.delta(0) == b.l2 && t.delta(1) == b.l3 &&
          matches_valuations(t, b.v))
        found = true;
    if (!found) return "no matching transition" + at;
  }
  const auto& last = wit.blocks.back();
  if (!subject.is_final(last.to)) return "q_n is not final";
  if (!coprime6(last.w)) return "counters of |w_{n-1}| are not zero";
  return {};
}

std::optional<ScriptLWitness> script_l_oracle(const CounterMachine& subject, std::string_view w, Marks mk) {
  check_subject(subject, "script_l_oracle");
  auto shape = parse_shape(w, subject.alphabet, mk);
  if (!shape || shape->p0 != 1 || shape->blocks.empty()) return std::nullopt;
  const auto& bl = shape->blocks;
  const auto out = by_source(subject);
  // layer i: (q_i, |v_i|) -> (previous key, block data)
  using Key = std::pair<uint32_t, uint64_t>;
  struct Back {
    Key prev;
    ScriptLBlock block;
  };
  std::vector<std::map<Key, Back>> layers(bl.size() + 1);
  layers[0][{subject.initial, 1}] = {};
  std::optional<std::pair<Key, ScriptLBlock>> done;
  for (size_t i = 0; i < bl.size() && !done; ++i) {
    const bool last = i + 1 == bl.size();
    for (const auto& [key, _] : layers[i]) {
      const auto [q, v] = key;
      for (uint32_t ti : out[q]) {
        const auto& t = subject.transitions[ti];
        if (t.letter != bl[i].a || !matches_valuations(t, v)) continue;
        const auto r = ratio_of(t.delta(0), t.delta(1));
        if ((v * r.num) % r.den) continue;
        const uint64_t wl = v * r.num / r.den;
        if (wl < 1 || wl > bl[i].m) continue;
        const uint64_t z = bl[i].m - wl;
        ScriptLBlock b{v, wl, z, t.letter, q, t.dst, t.delta(0), t.delta(1)};
        if (last) {
          if (bl[i].p == z && subject.is_final(t.dst) && coprime6(wl)) {
            done = {{key, b}};
            break;
          }
        } else if (bl[i].p > z) {
          layers[i + 1].try_emplace({t.dst, bl[i].p - z}, Back{key, b});
        }
      }
      if (done) break;
    }
  }
  if (!done) return std::nullopt;
  ScriptLWitness wit;
  wit.blocks.resize(bl.size());
  Key k = done->first;
  wit.blocks.back() = done->second;
  for (size_t i = bl.size() - 1; i > 0; --i) {
    const auto& back = layers[i].at(k);
    wit.blocks[i - 1] = back.block;
    k = back.prev;
  }
  return wit;
}

bool script_l_naive(const CounterMachine& subject, std::string_view w, Marks mk) {
  check_subject(subject, "script_l_naive");
  auto shape = parse_shape(w, subject.alphabet, mk);
  if (!shape || shape->blocks.empty()) return false;
  const auto& bl = shape->blocks;
  // enumerate |w_i| in [1, m_i] and |u_{i+1}| in [0, p_{i+1}], then test the literal conditions
  std::function<bool(size_t, uint32_t, uint64_t)> rec = [&](size_t i, uint32_t q, uint64_t v) -> bool {
    for (uint64_t wl = 1; wl <= bl[i].m; ++wl) {
      const uint64_t z = bl[i].m - wl;
      for (const auto& t : subject.transitions) {
        if (t.src != q || t.letter != bl[i].a || !matches_valuations(t, v)) continue;
        const auto r = ratio_of(t.delta(0), t.delta(1));
        if (wl * r.den != v * r.num) continue;
        if (i + 1 == bl.size()) {
          if (bl[i].p == z && subject.is_final(t.dst) && coprime6(wl)) return true;
          continue;
        }
        for (uint64_t u = 0; u <= bl[i].p; ++u) {
          const uint64_t v2 = bl[i].p - u;
          if (u == z && v2 >= 1 && rec(i + 1, t.dst, v2)) return true;
        }
      }
    }
    return false;
  };
  return shape->p0 == 1 && rec(0, subject.initial, 1);
}

CounterMachine script_l_machine(const CounterMachine& subject, Marks mk) {
  check_subject(subject, "script_l_machine");
  CounterMachine m;
  m.k = 1;
  m.alphabet = subject.alphabet + mk.zero + mk.one + mk.two;
  m.real_time = false;
  m.acceptance = Acceptance::FinalStateAndZero;
  m.lambda_chain_bound = 5;
  const auto out = by_source(subject);

  // The counter holds |v| while v is read, then |v| - (zeros of w weighted by
  // 1/r) while w is read, then |z|, which is matched against u.
  enum Phase : uint64_t { Init, V, A, W, WL, Z, U };
  struct S {
    uint64_t ph = Init, q = 0, ri = 0, j = 0, wm = 0, last = 0, rem = 0, vm = 0;
    uint64_t key() const {
      return ph | q << 4 | ri << 36 | j << 40 | wm << 44 | last << 48 | rem << 50 | vm << 54;
    }
  };
  // ratio index ri = (l+1)*3 + (l'+1); D[ri][t] is the decrement for the t-th zero of a cycle
  std::vector<std::vector<int>> D(9);
  for (int l2 = -1; l2 <= 1; ++l2)
    for (int l3 = -1; l3 <= 1; ++l3) {
      const auto r = ratio_of(l2, l3);
      auto& d = D[(l2 + 1) * 3 + (l3 + 1)];
      for (uint64_t t = 1; t <= r.num; ++t) d.push_back(int(t * r.den / r.num - (t - 1) * r.den / r.num));
    }

  std::unordered_map<uint64_t, uint32_t> ids;
  std::deque<S> todo;
  auto id = [&](const S& s) {
    auto [it, fresh] = ids.emplace(s.key(), m.num_states);
    if (fresh) {
      m.add_state(s.ph == U && s.last && subject.is_final(uint32_t(s.q)));
      todo.push_back(s);
    }
    return it->second;
  };
  m.initial = id(S{});
  while (!todo.empty()) {
    const S s = todo.front();
    todo.pop_front();
    const uint32_t me = ids.at(s.key());
    const uint32_t q = uint32_t(s.q);
    switch (s.ph) {
      case Init:
        m.add(tr(me, mk.zero, "0", id(S{V, subject.initial, 0, 0, 0, 0, 0, 1}), 1));
        break;
      case V:
        m.add(tr(me, mk.zero, "*", id(S{V, q, 0, 0, 0, 0, 0, (s.vm + 1) % 6}), 1));
        for (uint32_t ti : out[q]) {
          const auto& t = subject.transitions[ti];
          // vm is |v| mod 6, which fixes both valuations' positivity
          const uint64_t probe = s.vm == 0 ? 6 : s.vm;
          if (!matches_valuations(t, probe)) continue;
          const uint64_t ri = uint64_t((t.delta(0) + 1) * 3 + (t.delta(1) + 1));
          m.add(tr(me, t.letter, "*", id(S{A, t.dst, ri, 0, 0, 0, 0, 0}), 0));
          if (subject.is_final(t.dst)) m.add(tr(me, t.letter, "*", id(S{A, t.dst, ri, 0, 0, 1, 0, 0}), 0));
        }
        break;
      case A:
        m.add(tr(me, mk.one, "*", id(S{W, q, s.ri, 0, 0, s.last, 0, 0}), 0));
        break;
      case W: {
        const auto& d = D[s.ri];
        const uint64_t nj = (s.j + 1) % d.size(), nwm = s.last ? (s.wm + 1) % 6 : 0;
        const int dj = d[s.j];
        const S next{W, q, s.ri, nj, nwm, s.last, 0, 0};
        if (dj == 0) m.add(tr(me, mk.zero, "1", id(next), 0));
        else if (dj == 1) m.add(tr(me, mk.zero, "1", id(next), -1));
        else m.add(tr(me, mk.zero, "1", id(S{WL, q, s.ri, nj, nwm, s.last, uint64_t(dj - 1), 0}), -1));
        if (s.j == 0 && (!s.last || coprime6(s.wm))) {
          m.add(tr(me, mk.zero, "0", id(S{Z, q, 0, 0, 0, s.last, 0, 0}), 1));
          m.add(tr(me, mk.two, "0", id(S{U, q, 0, 0, 0, s.last, 0, 0}), 0));
        }
        break;
      }
      case WL: {
        const S next = s.rem == 1 ? S{W, q, s.ri, s.j, s.wm, s.last, 0, 0}
                                  : S{WL, q, s.ri, s.j, s.wm, s.last, s.rem - 1, 0};
        m.add(tr(me, kEps, "1", id(next), -1));
        break;
      }
      case Z:
        m.add(tr(me, mk.zero, "*", id(s), 1));
        m.add(tr(me, mk.two, "*", id(S{U, q, 0, 0, 0, s.last, 0, 0}), 0));
        break;
      case U:
        m.add(tr(me, mk.zero, "1", me, -1));
        if (!s.last) m.add(tr(me, mk.zero, "0", id(S{V, q, 0, 0, 0, 0, 0, 1}), 1));
        break;
    }
  }
  m.canonicalize();
  return trim(m);
}

DFA script_r_dfa(std::string_view sigma, Marks mk) {
  // 0: leading zeros / after a block, 1: letter read, 2: inside the w z run, 3: dead
  DFA d;
  d.alphabet = std::string(sigma) + mk.zero + mk.one + mk.two;
  d.num_states = 4;
  d.initial = 0;
  d.finals = {1, 0, 0, 0};
  d.delta.assign(4 * d.alphabet.size(), 3);
  for (size_t c = 0; c < d.alphabet.size(); ++c) {
    const char x = d.alphabet[c];
    const bool letter = sigma.find(x) != std::string_view::npos;
    if (x == mk.zero) d.delta[0 * d.alphabet.size() + c] = 0, d.delta[2 * d.alphabet.size() + c] = 2;
    if (letter) d.delta[0 * d.alphabet.size() + c] = 1;
    if (x == mk.one) d.delta[1 * d.alphabet.size() + c] = 2;
    if (x == mk.two) d.delta[2 * d.alphabet.size() + c] = 0;
  }
  return d;
}

// ---------------------------------------------------------------- μ

bool mu_five_oracle(std::string_view w, std::string_view sigma, Marks mk) {
  auto shape = parse_shape(w, sigma, mk);
  if (!shape || shape->p0 != 1) return false;
  const auto& b = shape->blocks;
  const size_t n = b.size();
  if (n < 2) return false;
  for (const auto& x : b)
    if (x.m < 1) return false;
  return b[n - 2].m != b[n - 2].p || b[n - 1].m != 6 * b[n - 2].m;
}

CounterMachine mu_five_machine(std::string_view sigma, Marks mk) {
  CounterMachine m;
  m.k = 1;
  m.alphabet = std::string(sigma) + mk.zero + mk.one + mk.two;
  m.acceptance = Acceptance::FinalStateAndZero;
  m.lambda_chain_bound = 5;
  std::map<std::string, uint32_t> st;
  auto s = [&](const std::string& name) {
    auto [it, fresh] = st.emplace(name, m.num_states);
    if (fresh) {
      m.add_state(name == "LQ");
      m.names.push_back(name);
    }
    return it->second;
  };
  const char Z0 = mk.zero, Z1 = mk.one, Z2 = mk.two;
  auto add = [&](const std::string& a, char c, const char* pat, const std::string& b, int d) {
    m.add(tr(s(a), c, pat, s(b), d));
  };
  m.initial = s("g0");
  // blocks before n-2, counter unused
  add("g0", Z0, "*", "gB", 0);
  add("g1", Z1, "*", "gP0", 0);
  add("gP0", Z0, "*", "gP", 0);
  add("gP", Z0, "*", "gP", 0);
  add("gP", Z2, "*", "gQ", 0);
  add("gQ", Z0, "*", "gQ", 0);
  for (char a : sigma) {
    add("gB", a, "*", "g1", 0);
    add("gQ", a, "*", "g1", 0);
    for (const char* br : {"A1", "B1", "C1", "D1"}) {
      add("gB", a, "*", br, 0);
      add("gQ", a, "*", br, 0);
    }
  }
  // P > Q: count part of P, skip at least one zero, match Q, stop with zero counter
  add("A1", Z1, "*", "Ainc", 0);
  add("Ainc", Z0, "*", "Ainc", 1);
  add("Ainc", Z0, "*", "Askip", 0);
  add("Askip", Z0, "*", "Askip", 0);
  add("Askip", Z2, "*", "Adec", 0);
  add("Adec", Z0, "1", "Adec", -1);
  // P < Q: count all of P, match it, then at least one more zero
  add("B1", Z1, "*", "Binc0", 0);
  add("Binc0", Z0, "*", "Binc", 1);
  add("Binc", Z0, "*", "Binc", 1);
  add("Binc", Z2, "*", "Bdec", 0);
  add("Bdec", Z0, "1", "Bdec", -1);
  add("Bdec", Z0, "0", "Bext", 0);
  add("Bext", Z0, "*", "Bext", 0);
  for (char a : sigma) {
    add("Adec", a, "0", "L1", 0);
    add("Bext", a, "0", "L1", 0);
  }
  // generic last block
  add("L1", Z1, "*", "LP0", 0);
  add("LP0", Z0, "*", "LP", 0);
  add("LP", Z0, "*", "LP", 0);
  add("LP", Z2, "*", "LQ", 0);
  add("LQ", Z0, "*", "LQ", 0);
  // P' > 6P: six per zero of P (one read, five λ), P' exceeds it
  add("C1", Z1, "*", "Cc0", 0);
  add("Cc0", Z0, "*", "C_1", 1);
  for (int i = 1; i < 6; ++i) add("C_" + std::to_string(i), kEps, "*", "C_" + std::to_string(i + 1), 1);
  add("C_6", Z0, "*", "C_1", 1);
  add("C_6", Z2, "*", "CQ", 0);
  add("CQ", Z0, "*", "CQ", 0);
  for (char a : sigma) add("CQ", a, "*", "CL1", 0);
  add("CL1", Z1, "*", "CP", 0);
  add("CP", Z0, "1", "CP", -1);
  add("CP", Z0, "0", "CX", 0);
  add("CX", Z0, "*", "CX", 0);
  add("CX", Z2, "0", "LQ", 0);
  // P' < 6P: each zero of P adds 0..6, some zero adds at most 5
  auto E = [](int t, int f) { return "E" + std::to_string(t) + "_" + std::to_string(f); };
  add("D1", Z1, "*", "D0", 0);
  add("D0", Z0, "*", E(0, 0), 0);
  add("D0", Z0, "*", E(1, 0), 1);
  for (int f = 0; f < 2; ++f)
    for (int t = 0; t <= 6; ++t) {
      if (t >= 1 && t <= 5) add(E(t, f), kEps, "*", E(t + 1, f), 1);
      const int nf = (f || t < 6) ? 1 : 0;
      add(E(t, f), Z0, "*", E(0, nf), 0);
      add(E(t, f), Z0, "*", E(1, nf), 1);
      if (nf) add(E(t, f), Z2, "*", "DQ", 0);
    }
  add("DQ", Z0, "*", "DQ", 0);
  for (char a : sigma) add("DQ", a, "*", "DL1", 0);
  add("DL1", Z1, "*", "DP0", 0);
  add("DP0", Z0, "1", "DP", -1);
  add("DP", Z0, "1", "DP", -1);
  add("DP", Z2, "0", "LQ", 0);
  m.canonicalize();
  return trim(m);
}

// ---------------------------------------------------------------- reduction

LetterMorphism binary_recoding(std::string_view code_alphabet) {
  LetterMorphism f;
  f.source = std::string(code_alphabet);
  f.target = "01";
  for (size_t j = 0; j < code_alphabet.size(); ++j) f.image[code_alphabet[j]] = Word(j, '0') + '1';
  return f;
}

std::optional<Word> decode_binary(std::string_view w, std::string_view code_alphabet) {
  Word out;
  size_t zeros = 0;
  for (char c : w) {
    if (c == '0') {
      if (++zeros >= code_alphabet.size()) return std::nullopt;
    } else if (c == '1') {
      out.push_back(code_alphabet[zeros]);
      zeros = 0;
    } else {
      return std::nullopt;
    }
  }
  if (zeros) return std::nullopt;
  return out;
}

PipelineArtifact reduce_to_one_counter(const CounterMachine& subject, std::vector<std::string> log) {
  Reduction red;
  red.subject = std::make_shared<const CounterMachine>(subject);
  red.sigma = subject.alphabet;
  red.marks = fresh_marks(red.sigma);
  const std::string used = red.sigma + red.marks.zero + red.marks.one + red.marks.two;
  red.pad = 0;
  for (char c : std::string_view("c#@%&")) {
    if (used.find(c) == std::string::npos) {
      red.pad = c;
      break;
    }
  }
  if (!red.pad) throw InputError("reduce: no free padding letter");
  red.code_alphabet = used + red.pad;

  const auto C = script_l_machine(subject, red.marks);
  log.push_back(stage_line("script_l", C));
  const auto Mu = mu_five_machine(red.sigma, red.marks);
  log.push_back(stage_line("mu_five", Mu));
  const auto B = union_machines(C, Mu);
  log.push_back(stage_line("union", B));
  const auto P = realtime_pad(B, red.pad, 6);
  log.push_back(stage_line("realtime_pad", P));
  auto R = trim(apply_letter_morphism(P, binary_recoding(red.code_alphabet)));
  R.names.clear();
  log.push_back(stage_line("binary_recoding", R));

  PipelineArtifact art{std::move(R), std::move(log), "real-time one-counter, FinalStateAndZero", red, red.code_alphabet, {}};
  return art;
}

bool reduction_oracle(const Reduction& r, std::string_view w) {
  auto y = decode_binary(w, r.code_alphabet);
  if (!y) return false;
  // every letter is followed by exactly six pad letters
  Word core;
  for (size_t i = 0; i < y->size();) {
    if ((*y)[i] == r.pad || i + 7 > y->size()) return false;
    for (size_t j = 1; j <= 6; ++j)
      if ((*y)[i + j] != r.pad) return false;
    core.push_back((*y)[i]);
    i += 7;
  }
  return script_l_oracle(*r.subject, core, r.marks).has_value() || mu_five_oracle(core, r.sigma, r.marks);
}

Word reduction_encode(const Reduction& r, std::string_view core) {
  Word out;
  auto put = [&](char c) {
    const auto j = r.code_alphabet.find(c);
    if (j == std::string::npos) throw InputError("reduction_encode: letter outside the code alphabet");
    out.append(j, '0');
    out.push_back('1');
  };
  for (char c : core) {
    put(c);
    for (int i = 0; i < 6; ++i) put(r.pad);
  }
  return out;
}

static PipelineArtifact build_pn_stage(int n, int cap) {
  if (n < 1) throw InputError("build_pn: n must be positive");
  if (n > cap) throw InputError("build_pn: n above the configured cap");
  if (n <= 2) {
    PipelineArtifact art{p_base_machine(n), {}, "regular (k=0), FinalStateAndZero", std::nullopt, {}, {}};
    art.log.push_back(stage_line("P" + std::to_string(n), art.machine));
    return art;
  }
  if (n == 3) {
    const auto base = p_base_machine(2);
    std::vector<std::string> log{stage_line("P2", base)};
    const auto e = exp_substitute(base);
    log.push_back(stage_line("exp_substitute", e));
    auto r = trim(apply_letter_morphism(e, binary_recoding(e.alphabet)));
    log.push_back(stage_line("binary_recoding", r));
    return {std::move(r), std::move(log), "real-time one-counter, FinalStateAndZero", std::nullopt, e.alphabet, {}};
  }
  auto prev = build_pn_stage(n - 1, cap);
  auto log = prev.log;
  const auto e = exp_substitute(prev.machine);
  log.push_back(stage_line("exp_substitute", e));
  return reduce_to_one_counter(e, std::move(log));
}

bool pn_oracle(int n, const PipelineArtifact& art, std::string_view w) {
  if (n <= 2) return p_base_oracle(n, w);
  if (n == 3) {
    auto y = decode_binary(w, art.code_alphabet);
    return y && in_exp_image(*y, [](std::string_view b) { return p_base_oracle(2, b); });
  }
  if (!art.reduction) throw InputError("pn_oracle: artifact carries no reduction record");
  return reduction_oracle(*art.reduction, w);
}

// ---------------------------------------------------------------- Claim 2 witnesses

std::vector<ScriptLWitness> claim2_forward(const CounterMachine& subject, const std::vector<Word>& factors, GParams p,
                                           Marks mk) {
  check_subject(subject, "claim2_forward");
  if (p.N == 0 || p.N % 6 == 0) throw InputError("claim2_forward: need N >= 1 with 6 not dividing N");
  const Runner run(subject);
  std::vector<ScriptLWitness> out;
  uint64_t gi = 0;  // global block index into encode_g
  for (const auto& f : factors) {
    if (f.empty()) throw InputError("claim2_forward: empty factor");
    for (char c : f)
      if (c == mk.zero || c == mk.one || c == mk.two) throw InputError("claim2_forward: letter collides with a mark");
    auto path = run.find_run(f);
    if (!path) throw InputError("claim2_forward: factor " + render_word(f) + " is not accepted by the subject");
    ScriptLWitness wit;
    uint64_t c0 = 0, c1 = 0;
    for (uint32_t ti : *path) {
      const auto& t = subject.transitions[ti];
      auto pw = [](uint64_t a, uint64_t b) {
        uint64_t x = 1;
        for (uint64_t i = 0; i < a; ++i) x *= 2;
        for (uint64_t i = 0; i < b; ++i) x *= 3;
        return x;
      };
      const uint64_t v = pw(c0, c1);
      c0 += t.delta(0);
      c1 += t.delta(1);
      const uint64_t wl = pw(c0, c1), B = g_block(p, gi);
      if (wl > B)
        throw FeasibilityError("claim2_forward: |w_" + std::to_string(gi) + "| = " + std::to_string(wl) +
                                   " exceeds the block length " + std::to_string(B),
                               gi);
      wit.blocks.push_back({v, wl, B - wl, t.letter, t.src, t.dst, t.delta(0), t.delta(1)});
      ++gi;
    }
    out.push_back(std::move(wit));
  }
  return out;
}

std::vector<Word> claim2_backward(const CounterMachine& subject, const std::vector<ScriptLWitness>& ws, Marks mk) {
  check_subject(subject, "claim2_backward");
  if (ws.empty()) return {};
  Word tiled, letters;
  std::vector<Word> out;
  for (size_t i = 0; i < ws.size(); ++i) {
    if (auto why = check_witness(subject, ws[i]); !why.empty())
      throw InputError("claim2_backward: witness " + std::to_string(i) + ": " + why);
    tiled += witness_word(ws[i], mk);
    Word f;
    for (const auto& b : ws[i].blocks) f.push_back(b.a);
    letters += f;
    out.push_back(std::move(f));
  }
  tiled.push_back(mk.zero);
  auto dec = decode_g(tiled, mk);
  if (!dec || dec->sigma != letters) throw InputError("claim2_backward: witnesses do not tile an encode_g image");
  const Runner run(subject);
  for (const auto& f : out)
    if (!run.accepts(f)) throw InputError("claim2_backward: recovered factor is not accepted");
  return out;
}

PipelineArtifact build_pn(int n, int cap) {
  auto a = build_pn_stage(n, cap);
  a.claimed_class = "Pi0_" + std::to_string(n) + "-complete";
  return a;
}

}  // namespace omegapow
