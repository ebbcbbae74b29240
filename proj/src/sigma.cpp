#include "omegapow/sigma.hpp"

#include <algorithm>

namespace omegapow {

namespace {

bool binary(char c) { return c == '0' || c == '1'; }

// Transition with explicit zero-test masks over k counters.
Transition tm(uint32_t src, char letter, uint32_t dst, uint8_t care = 0, uint8_t pos = 0, uint8_t inc = 0,
              uint8_t dec = 0) {
  return Transition{src, dst, letter, care, pos, inc, dec};
}

CounterMachine four_letter(int k) {
  CounterMachine m;
  m.k = k;
  m.alphabet = kFour;
  m.real_time = true;
  m.acceptance = Acceptance::FinalStateAndZero;
  return m;
}

Word concat(const std::vector<Word>& ws, size_t from, size_t to) {
  Word out;
  for (size_t i = from; i < to; ++i) out += ws[i];
  return out;
}

bool mu12_oracle(std::string_view w, char first, char mid) {
  for (size_t i = 0; i < w.size(); ++i) {
    if (w[i] != first) continue;
    size_t j = i + 1;
    while (j < w.size() && binary(w[j])) ++j;
    if (j >= w.size() || w[j] != mid) continue;
    const size_t v1 = j - i - 1;
    size_t k = j + 1;
    while (k < w.size() && binary(w[k])) ++k;
    if (k >= w.size() || w[k] != first) continue;
    if (k - j - 1 != v1 + 1) return true;
  }
  return false;
}

CounterMachine mu12_machine(char first, char mid) {
  auto m = four_letter(1);
  const uint32_t skip = m.add_state(), pg = m.add_state(), qg = m.add_state(), qx = m.add_state(),
                 pl = m.add_state(), sk = m.add_state(), cnt = m.add_state(), r = m.add_state(),
                 t = m.add_state(true);
  m.names = {"skip", "gt_count", "gt_match", "gt_extra", "lt_start", "lt_skip", "lt_count", "lt_match", "done"};
  m.initial = skip;
  for (char c : std::string_view(kFour)) {
    m.add(tm(skip, c, skip));
    m.add(tm(t, c, t));
  }
  m.add(tm(skip, first, pg));
  m.add(tm(skip, first, pl));
  for (char b : {'0', '1'}) {
    // |v''| > |v'| + 1: count v' and the middle separator, then run past zero
    m.add(tm(pg, b, pg, 0, 0, 1));
    m.add(tm(qg, b, qg, 1, 1, 0, 1));
    m.add(tm(qg, b, qx, 1, 0));
    m.add(tm(qx, b, qx));
    // |v''| < |v'| + 1: skip k >= 1 letters, count the rest, match exactly
    m.add(tm(pl, b, sk));
    m.add(tm(sk, b, sk));
    m.add(tm(sk, b, cnt, 0, 0, 1));
    m.add(tm(cnt, b, cnt, 0, 0, 1));
    m.add(tm(r, b, r, 1, 1, 0, 1));
  }
  m.add(tm(pg, mid, qg, 0, 0, 1));
  m.add(tm(qx, first, t, 1, 0));
  m.add(tm(pl, mid, r));
  m.add(tm(sk, mid, r, 0, 0, 1));
  m.add(tm(sk, mid, r));
  m.add(tm(cnt, mid, r, 0, 0, 1));
  m.add(tm(r, first, t, 1, 0));
  m.canonicalize();
  return m;
}

bool pi0_literal(std::string_view w) {
  if (w.size() < 2 || w[w.size() - 2] != '2' || !binary(w.back())) return false;
  const std::string_view p = w.substr(0, w.size() - 2);
  size_t i = 0, pairs = 0;
  auto run = [&] {
    size_t n = 0;
    while (i < p.size() && binary(p[i])) ++i, ++n;
    return n;
  };
  while (i < p.size()) {
    if (p[i++] != '2') return false;
    if (run() != 0 && pairs == 0) return false;  // s_0 is empty
    if (i >= p.size() || p[i++] != '3') return false;
    run();
    ++pairs;
  }
  return pairs >= 1;
}

Word first_letters(const std::vector<Pi1Block>& bl) {
  Word out;
  for (const auto& b : bl) out.push_back(b.a);
  return out;
}

}  // namespace

// ---------------------------------------------------------------- S1 and the regular L

CounterMachine s1_machine() {
  CounterMachine m;
  m.alphabet = "01";
  m.real_time = true;
  const uint32_t s = m.add_state(), o = m.add_state(), acc = m.add_state(true);
  m.names = {"start", "after_1", "accept"};
  m.add({s, acc, '0'});
  m.add({s, o, '1'});
  m.add({o, o, '0'});
  m.add({o, acc, '1'});
  m.add({acc, acc, '0'});
  m.add({acc, acc, '1'});
  m.canonicalize();
  return m;
}

bool s1_oracle(std::string_view w) {
  if (!w.empty() && w[0] == '0') return true;
  if (w.empty() || w[0] != '1') return false;
  for (size_t i = 1; i < w.size(); ++i) {
    if (w[i] == '1') return true;
    if (w[i] != '0') return false;
  }
  return false;
}

CounterMachine contains_one_machine() {
  CounterMachine m;
  m.alphabet = "01";
  m.real_time = true;
  const uint32_t n = m.add_state(), y = m.add_state(true);
  m.names = {"no_1", "seen_1"};
  m.add({n, n, '0'});
  m.add({n, y, '1'});
  m.add({y, y, '0'});
  m.add({y, y, '1'});
  m.canonicalize();
  return m;
}

bool contains_one(std::string_view w) { return w.find('1') != std::string_view::npos; }

// ---------------------------------------------------------------- definitional oracles

std::optional<Component> parse_component(std::string_view name) {
  if (name == "mu0") return Component::Mu0;
  if (name == "mu1") return Component::Mu1;
  if (name == "mu2") return Component::Mu2;
  if (name == "pi0") return Component::Pi0;
  if (name == "f_shape" || name == "f") return Component::FShape;
  return std::nullopt;
}

std::optional<std::vector<Pi1Block>> parse_pi1(std::string_view w) {
  std::vector<Pi1Block> out;
  size_t i = 0;
  auto run = [&] {
    size_t n = 0;
    while (i < w.size() && binary(w[i])) ++i, ++n;
    return n;
  };
  while (i < w.size()) {
    Pi1Block b;
    b.a = w[i];
    if (!binary(b.a)) return std::nullopt;
    ++i;
    b.t = run();
    if (i >= w.size() || w[i] != '3' || b.t % 2) return std::nullopt;
    ++i;
    const size_t uv = run();
    if (i >= w.size() || w[i] != '2' || uv < b.t + 3 || (uv - b.t) % 2 == 0) return std::nullopt;
    ++i;
    b.u = b.t;
    b.v = b.w = uv - b.t;
    if (i + b.w > w.size()) return std::nullopt;
    for (size_t j = 0; j < b.w; ++j)
      if (!binary(w[i + j])) return std::nullopt;
    i += b.w;
    out.push_back(b);
  }
  if (out.empty()) return std::nullopt;
  return out;
}

bool defn_oracle(Component which, std::string_view w, char a) {
  switch (which) {
    case Component::Mu0:
      for (size_t i = 1; i + 1 < w.size(); ++i)
        if (w[i] == '2' && w[i + 1] == '3') return true;
      return false;
    case Component::Mu1:
      return mu12_oracle(w, '3', '2');
    case Component::Mu2:
      return mu12_oracle(w, '2', '3');
    case Component::Pi0:
      return pi0_literal(w);
    case Component::FShape: {
      auto bl = parse_pi1(w);
      return bl && bl->size() == 1 && (*bl)[0].a == a;
    }
  }
  return false;
}

bool mu_oracle(std::string_view w) {
  return defn_oracle(Component::Mu0, w) || defn_oracle(Component::Mu1, w) || defn_oracle(Component::Mu2, w);
}

bool pi1_oracle(std::string_view w, const std::function<bool(std::string_view)>& L) {
  auto bl = parse_pi1(w);
  return bl && L(first_letters(*bl));
}

bool a_oracle(std::string_view w, const std::function<bool(std::string_view)>& L) {
  return mu_oracle(w) || defn_oracle(Component::Pi0, w) || pi1_oracle(w, L);
}

// ---------------------------------------------------------------- machines

CounterMachine mu0_machine() {
  auto m = four_letter(0);
  const uint32_t s = m.add_state(), s1 = m.add_state(), t2 = m.add_state(), t = m.add_state(true);
  m.names = {"start", "v", "sep2", "done"};
  for (char c : std::string_view(kFour)) {
    m.add(tm(s, c, s1));
    m.add(tm(s1, c, s1));
    m.add(tm(t, c, t));
  }
  m.add(tm(s1, '2', t2));
  m.add(tm(t2, '3', t));
  m.canonicalize();
  return m;
}

CounterMachine mu1_machine() { return mu12_machine('3', '2'); }
CounterMachine mu2_machine() { return mu12_machine('2', '3'); }

CounterMachine pi0_machine() {
  auto m = four_letter(0);
  const uint32_t p0 = m.add_state(), p1 = m.add_state(), p2 = m.add_state(), pend = m.add_state(),
                 p4 = m.add_state(), acc = m.add_state(true);
  m.names = {"start", "s0", "odd", "last", "even", "done"};
  m.add(tm(p0, '2', p1));
  m.add(tm(p1, '3', p2));
  m.add(tm(p2, '2', pend));
  m.add(tm(p2, '2', p4));
  m.add(tm(p4, '3', p2));
  for (char b : {'0', '1'}) {
    m.add(tm(p2, b, p2));
    m.add(tm(p4, b, p4));
    m.add(tm(pend, b, acc));
  }
  m.canonicalize();
  return m;
}

CounterMachine pi1_machine(const CounterMachine& L) {
  if (!L.real_time || std::any_of(L.transitions.begin(), L.transitions.end(), [](auto& t) { return t.is_lambda(); }))
    throw InputError("pi1_machine: L must be real-time");
  if (L.k > 1) throw InputError("pi1_machine: L may use at most one counter");
  if (L.acceptance != Acceptance::FinalStateAndZero) throw InputError("pi1_machine: L needs FinalStateAndZero");
  for (char c : L.alphabet)
    if (!binary(c)) throw InputError("pi1_machine: L must be over 0 1");

  auto m = four_letter(L.k + 1);
  const uint8_t e = uint8_t(1u << L.k);  // the block-length counter
  const uint32_t n = L.num_states;
  // T0 | Tr(q, parity) | U(q) | V(q, c) c in 1..4 | W(q)
  m.initial = m.add_state();
  m.names.push_back("T0");
  auto base = [&](uint32_t count, bool final_if_L, const char* tag) {
    const uint32_t b = m.num_states;
    for (uint32_t i = 0; i < count; ++i) {
      const uint32_t q = i % n;
      m.add_state(final_if_L && L.is_final(q));
      m.names.push_back(std::string(tag) + "_" + L.state_name(q) + "_" + std::to_string(i / n));
    }
    return b;
  };
  const uint32_t tr = base(2 * n, false, "t"), u = base(n, false, "u"), v = base(4 * n, false, "v"),
                 w = base(n, true, "w");
  auto Tr = [&](uint32_t q, int par) { return tr + uint32_t(par) * n + q; };
  auto V = [&](uint32_t q, int c) { return v + uint32_t(c - 1) * n + q; };

  // t_j(0): one step of L, with the block counter required to be empty
  auto letter_moves = [&](uint32_t from, uint32_t q) {
    for (const auto& t : L.transitions) {
      if (t.src != q) continue;
      m.add(Transition{from, Tr(t.dst, 0), t.letter, uint8_t(t.care | e), t.pos, t.inc, t.dec});
    }
  };
  letter_moves(m.initial, L.initial);
  for (uint32_t q = 0; q < n; ++q) {
    for (char b : {'0', '1'}) {
      m.add(tm(Tr(q, 0), b, Tr(q, 1), 0, 0, e));
      m.add(tm(Tr(q, 1), b, Tr(q, 0), 0, 0, e));
      m.add(tm(u + q, b, u + q, e, e, 0, e));
      m.add(tm(u + q, b, V(q, 1), e, 0, e));
      for (int c = 1; c <= 4; ++c) m.add(tm(V(q, c), b, V(q, c == 4 ? 3 : c + 1), 0, 0, e));
      m.add(tm(w + q, b, w + q, e, e, 0, e));
    }
    m.add(tm(Tr(q, 0), '3', u + q));
    m.add(tm(V(q, 3), '2', w + q));
    letter_moves(w + q, q);
  }
  m.canonicalize();
  return trim(m);
}

CounterMachine assemble_A(const CounterMachine& L) {
  auto a = union_machines(mu0_machine(), mu1_machine());
  a = union_machines(a, mu2_machine());
  a = union_machines(a, pi0_machine());
  a = union_machines(a, pi1_machine(L));
  a.names.clear();
  return a;
}

static PipelineArtifact build_sn_stage(int n, int cap) {
  if (n < 1) throw InputError("build_sn: n must be positive");
  if (n > cap) throw InputError("build_sn: n above the configured cap");
  if (n == 2) throw Unsupported("build_sn: S2 is constructed in external reference only");
  if (n == 1) {
    PipelineArtifact art{s1_machine(), {}, "regular (k=0), FinalStateAndZero", std::nullopt, {}, {}};
    art.log.push_back(stage_line("S1", art.machine));
    return art;
  }
  if (n == 3) {
    const auto L = contains_one_machine();
    std::vector<std::string> log{stage_line("L", L)};
    auto a = assemble_A(L);
    log.push_back(stage_line("assemble_A", a));
    return {std::move(a), std::move(log), "real-time one-counter, FinalStateAndZero", std::nullopt, {}, {}};
  }
  auto p = build_pn(n - 1, cap);
  auto log = p.log;
  const auto a = assemble_A(p.machine);
  log.push_back(stage_line("assemble_A", a));
  return reduce_to_one_counter(a, std::move(log));
}

PipelineArtifact build_sn(int n, int cap) {
  auto a = build_sn_stage(n, cap);
  a.claimed_class = "Sigma0_" + std::to_string(n) + "-complete";
  return a;
}

bool sn_oracle(int n, const PipelineArtifact& art, std::string_view w) {
  if (n == 1) return s1_oracle(w);
  if (n == 3) return a_oracle(w, contains_one);
  if (n >= 4 && art.reduction) return reduction_oracle(*art.reduction, w);
  throw InputError("sn_oracle: no oracle for this stage");
}

// ---------------------------------------------------------------- K0 lemma witnesses

std::vector<Word> lemma16_backward(uint64_t N, const std::vector<Word>& words, const AlphaFill& fill) {
  Word letters;
  for (const auto& v : words) {
    if (v.empty()) throw InputError("lemma16_backward: factor words must be nonempty");
    for (char c : v)
      if (!binary(c)) throw InputError("lemma16_backward: factor words are binary");
    letters += v;
  }
  const uint64_t Q = letters.size();
  auto M = [N](uint64_t q) { return 2 * N + 2 * q + 2; };
  const uint64_t top = Q == 0 ? M(0) : M(Q - 1) + 2;
  std::vector<Word> s(top + 1);
  for (uint64_t m = 0; m <= top; ++m) {
    s[m].resize(m);
    for (uint64_t i = 0; i < m; ++i) s[m][i] = fill ? fill(m, i) : '0';
  }
  for (uint64_t q = 0; q < Q; ++q) s[M(q)][2 * q + 1] = letters[q];

  std::vector<Word> out;
  Word w0;
  for (uint64_t j = 0; j <= N; ++j) w0 += '2' + s[2 * j] + '3' + s[2 * j + 1];
  w0 += '2';
  w0 += s[M(0)][0];
  out.push_back(w0);
  uint64_t q = 0;
  for (const auto& v : words) {
    Word f;
    for (size_t j = 0; j < v.size(); ++j, ++q)
      f += s[M(q)].substr(2 * q + 1) + '3' + s[M(q) + 1] + '2' + s[M(q) + 2].substr(0, 2 * q + 3);
    out.push_back(f);
  }
  return out;
}

Lemma16Report lemma16_forward(const std::vector<Word>& factors) {
  if (factors.empty()) throw InputError("lemma16_forward: empty factorization");
  if (!defn_oracle(Component::Pi0, factors[0])) throw InputError("lemma16_forward: first factor is not in pi0");
  Lemma16Report rep;
  rep.N = uint64_t(std::count(factors[0].begin(), factors[0].end(), '3')) - 1;
  Word letters;
  for (size_t m = 1; m < factors.size(); ++m) {
    auto bl = parse_pi1(factors[m]);
    if (!bl) throw InputError("lemma16_forward: factor " + std::to_string(m) + " is not f-shaped");
    rep.words.push_back(first_letters(*bl));
    letters += rep.words.back();
  }
  const Word gamma = concat(factors, 0, factors.size());
  if (!k_prefix_check(gamma, 0)) throw InputError("lemma16_forward: concatenation is not a K0 prefix");

  // complete blocks only
  DiagonalPrefix d{0, {}};
  for (size_t at = 0; at < gamma.size();) {
    const uint64_t m = d.blocks.size();
    ++at;
    const size_t end = std::min(gamma.size(), at + m);
    if (end - at < m) break;
    d.blocks.emplace_back(gamma.substr(at, m));
    at = end;
  }
  rep.alpha = phi_forward(d);
  rep.vertical_ok = true;
  for (uint64_t q = 0; q < letters.size(); ++q) {
    const uint64_t pos = pair({2 * rep.N, 2 * q + 1});
    rep.positions.push_back(pos);
    if (pos >= rep.alpha.size() || rep.alpha[pos] != letters[q]) rep.vertical_ok = false;
  }
  return rep;
}

// ---------------------------------------------------------------- A^∞ case analysis

std::string describe(const AInfinityCase& c) {
  switch (c.kind) {
    case AInfinityCase::MuPower:
      return "MuPower";
    case AInfinityCase::InK0:
      return "InK0";
    case AInfinityCase::Shifted:
      break;
  }
  return "Shifted case=" + std::to_string(c.rule) + " t=" + (c.t.empty() ? "EPS" : c.t) + " i=" + std::to_string(c.i) +
         " N=" + std::to_string(c.N) + " v=" + c.v + " consumed=" + std::to_string(c.consumed);
}

AInfinityCase claim2_classify(const std::vector<Word>& factors, const std::function<bool(std::string_view)>& L) {
  const size_t n = factors.size();
  if (n == 0) throw InputError("claim2_classify: empty factorization");
  std::vector<uint8_t> is_mu(n), is_pi0(n);
  std::vector<std::optional<std::vector<Pi1Block>>> pi1(n);
  for (size_t m = 0; m < n; ++m) {
    if (factors[m].empty()) throw InputError("claim2_classify: empty factor");
    is_mu[m] = mu_oracle(factors[m]);
    is_pi0[m] = defn_oracle(Component::Pi0, factors[m]);
    pi1[m] = parse_pi1(factors[m]);
    if (pi1[m] && !L(first_letters(*pi1[m]))) pi1[m].reset();
    if (!is_mu[m] && !is_pi0[m] && !pi1[m])
      throw InputError("claim2_classify: factor " + std::to_string(m) + " is not in A");
  }
  if (std::all_of(is_mu.begin(), is_mu.end(), [](uint8_t x) { return x != 0; })) return {};

  // minimal m0 whose tail is π1 with constant |t| and |w| growing by 2 per block
  auto consistent_from = [&](size_t from) {
    size_t t = 0, w = 0, idx = 0;
    for (size_t m = from; m < n; ++m) {
      if (!pi1[m]) return false;
      for (const auto& b : *pi1[m]) {
        if (idx == 0) t = b.t, w = b.w;
        else if (b.t != t || b.w != w + 2 * idx) return false;
        ++idx;
      }
    }
    return true;
  };
  size_t m0 = n;
  while (m0 > 0 && consistent_from(m0 - 1)) --m0;
  if (m0 == n) throw InputError("claim2_classify: undetermined, no consistent pi1 tail in this prefix");

  auto shifted = [&](size_t at, int rule) {
    if (at >= n) throw InputError("claim2_classify: undetermined, prefix too short for case " + std::to_string(rule));
    AInfinityCase c;
    c.kind = AInfinityCase::Shifted;
    c.rule = rule;
    c.consumed = at;
    c.t = concat(factors, 0, at);
    const auto& b = (*pi1[at])[0];
    c.N = b.t / 2;
    c.i = (b.w - 3) / 2;
    c.v = factors[at].substr(0, 1 + b.t);
    return c;
  };
  if (m0 == 0) return shifted(0, 1);
  for (size_t m = 0; m < m0; ++m)
    if (is_mu[m]) return shifted(m0, 2);
  for (size_t m = 1; m < m0; ++m)
    if (is_pi0[m]) return shifted(m0, 3);
  if (is_pi0[0]) {
    const Word gamma = concat(factors, 0, n);
    if (k_prefix_check(gamma, 0)) {
      AInfinityCase c;
      c.kind = AInfinityCase::InK0;
      c.rule = 3;
      return c;
    }
    // first position where the K0 discipline breaks, then through the next separator
    size_t fail = 0;
    while (fail < gamma.size() && k_prefix_check(std::string_view(gamma).substr(0, fail + 1), 0)) ++fail;
    size_t end = fail;
    while (end < gamma.size() && binary(gamma[end])) ++end;
    end = std::max(end + 1, concat(factors, 0, m0).size());
    size_t m1 = m0, len = concat(factors, 0, m0).size();
    while (m1 < n && len < end) len += factors[m1++].size();
    if (len < end) throw InputError("claim2_classify: undetermined, prefix too short for case 3");
    return shifted(m1, 3);
  }
  return shifted(m0 + 1, 4);
}

}  // namespace omegapow
