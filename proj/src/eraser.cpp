#include "omegapow/eraser.hpp"

#include <vector>

namespace omegapow {

Word eval_tilde(std::string_view w) {
  Word out;
  for (char c : w) {
    if (c != kEraser) out.push_back(c);
    else if (!out.empty()) out.pop_back();
  }
  return out;
}

EvalResult eval_approx(std::string_view w) {
  Word out;
  for (char c : w) {
    if (c != kEraser) out.push_back(c);
    else if (out.empty()) return std::nullopt;
    else out.pop_back();
  }
  return out;
}

bool in_l3(std::string_view w) {
  auto r = eval_approx(w);
  return r && r->empty();
}

bool l3_grammar_accepts(std::string_view w) {
  const size_t n = w.size();
  // s[i][j]: S =>* w[i, j)
  std::vector<std::vector<uint8_t>> s(n + 1, std::vector<uint8_t>(n + 1, 0));
  for (size_t i = 0; i <= n; ++i) s[i][i] = 1;
  for (size_t len = 2; len <= n; ++len)
    for (size_t i = 0; i + len <= n; ++i) {
      const size_t j = i + len;
      if (w[i] == kEraser) continue;
      // a S BS S, with a BS S the case of an empty inner S
      for (size_t k = i + 1; k < j && !s[i][j]; ++k)
        if (w[k] == kEraser && s[i + 1][k] && s[k + 1][j]) s[i][j] = 1;
    }
  return s[0][n];
}

CounterMachine l3a_machine(char a, std::string_view sigma_a) {
  if (a == kEraser) throw InputError("l3a_machine: the target letter cannot be the eraser");
  if (sigma_a.find(a) == std::string_view::npos) throw InputError("l3a_machine: letter outside the alphabet");
  CounterMachine m;
  m.k = 1;
  m.alphabet = std::string(sigma_a) + kEraser;
  m.real_time = true;
  m.acceptance = Acceptance::FinalStateAndZero;
  m.names = {};
  // s: depth = counter. t: the top-level a was just read. d: depth = counter + 1.
  const uint32_t s = m.add_state(), t = m.add_state(true), d = m.add_state();
  m.names = {"s", "t", "d"};
  auto add = [&](uint32_t p, char c, const char* pat, uint32_t q, int delta) {
    Transition tr{p, q, c};
    auto pt = pattern(pat);
    tr.care = pt.care;
    tr.pos = pt.pos;
    set_delta(tr, {delta});
    m.add(tr);
  };
  for (char x : sigma_a) {
    if (x == a) add(s, x, "0", t, 0);
    else add(s, x, "0", s, 1);
    add(s, x, "1", s, 1);
    add(t, x, "0", d, 1);
    add(d, x, "*", d, 1);
  }
  add(s, kEraser, "1", s, -1);
  add(t, kEraser, "0", s, 0);
  add(d, kEraser, "1", d, -1);
  add(d, kEraser, "0", s, 0);
  m.canonicalize();
  return m;
}

CounterMachine exp_substitute(const CounterMachine& m) {
  if (m.has_letter(kEraser)) throw InputError("exp_substitute: alphabet already contains the eraser");
  if (m.acceptance != Acceptance::FinalStateAndZero) throw InputError("exp_substitute: needs FinalStateAndZero acceptance");
  if (m.k + 1 > kMaxCounters) throw InputError("exp_substitute: too many counters");
  CounterMachine r;
  r.k = m.k + 1;
  r.alphabet = m.alphabet + kEraser;
  r.real_time = m.real_time;
  r.acceptance = Acceptance::FinalStateAndZero;
  r.lambda_chain_bound = m.lambda_chain_bound;
  const uint8_t extra = uint8_t(1u << m.k);
  // q: clean copy of m's state; q + n: inside an L3 segment, original counters frozen
  const uint32_t n = m.num_states;
  r.num_states = 2 * n;
  r.finals.assign(2 * n, 0);
  for (uint32_t q = 0; q < n; ++q) r.finals[q] = m.finals[q];
  r.initial = m.initial;
  for (const auto& t : m.transitions) {
    for (uint32_t from : {t.src, t.src + n}) {
      Transition s = t;
      s.src = from;
      s.care |= extra;  // extra counter must be zero
      s.pos &= uint8_t(~extra);
      if (t.is_lambda()) s.dst = from == t.src ? t.dst : t.dst + n;
      r.add(s);
    }
  }
  for (uint32_t q = 0; q < n; ++q) {
    for (char x : m.alphabet) {
      r.add(Transition{q, q + n, x, 0, 0, extra, 0});
      r.add(Transition{q + n, q + n, x, 0, 0, extra, 0});
    }
    r.add(Transition{q + n, q + n, kEraser, extra, extra, 0, extra});
  }
  r.canonicalize();
  return trim(r);
}

bool in_exp_image(std::string_view u, const std::function<bool(std::string_view)>& base_member) {
  // Every factor is an L3 word followed by one letter, so the letter sequence is
  // fixed by the factor ends; enumerate split points by DP over (position, base word).
  const size_t n = u.size();
  std::vector<std::vector<Word>> at(n + 1);
  at[0].push_back({});
  for (size_t i = 0; i < n; ++i) {
    if (at[i].empty()) continue;
    for (size_t j = i; j < n; ++j) {
      if (u[j] == kEraser || !in_l3(u.substr(i, j - i))) continue;
      for (const auto& b : at[i]) {
        Word nb = b + u[j];
        bool dup = false;
        for (const auto& x : at[j + 1]) dup = dup || x == nb;
        if (!dup) at[j + 1].push_back(nb);
      }
    }
  }
  for (const auto& b : at[n])
    if (base_member(b)) return true;
  return false;
}

Word remove_letter(std::string_view w, char d) {
  Word out;
  for (char c : w)
    if (c != d) out.push_back(c);
  return out;
}

}  // namespace omegapow
