#include "omegapow/machine.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace omegapow {

namespace {

struct ConfigHash {
  size_t operator()(const Configuration& c) const {
    uint64_t h = c.state * 0x9E3779B97F4A7C15ull;
    for (uint32_t v : c.counters) h = (h ^ v) * 0x100000001B3ull + (h >> 29);
    return static_cast<size_t>(h);
  }
};

void sort_unique(Runner::Frontier& f) {
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
}

}  // namespace

uint32_t CounterMachine::add_state(bool final) {
  finals.push_back(final ? 1 : 0);
  if (!names.empty()) names.push_back("q" + std::to_string(num_states));
  return num_states++;
}

std::string CounterMachine::state_name(uint32_t q) const {
  if (q < names.size() && !names[q].empty()) return names[q];
  return "q" + std::to_string(q);
}

void CounterMachine::canonicalize() {
  std::sort(transitions.begin(), transitions.end());
  transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());
}

Pattern pattern(std::string_view text) {
  Pattern p;
  for (size_t m = 0; m < text.size(); ++m) {
    if (text[m] == '*') continue;
    p.care |= uint8_t(1u << m);
    if (text[m] == '1') p.pos |= uint8_t(1u << m);
  }
  return p;
}

std::string pattern_text(const Transition& t, int k) {
  if (k == 0) return "-";
  std::string s;
  for (int m = 0; m < k; ++m) s += ((t.care >> m) & 1) ? (((t.pos >> m) & 1) ? '1' : '0') : '*';
  return s;
}

std::string delta_text(const Transition& t, int k) {
  if (k == 0) return "-";
  std::string s;
  for (int m = 0; m < k; ++m) {
    if (m) s += ',';
    s += std::to_string(t.delta(m));
  }
  return s;
}

void set_delta(Transition& t, const std::vector<int>& d) {
  t.inc = t.dec = 0;
  for (size_t m = 0; m < d.size(); ++m) {
    if (d[m] > 0) t.inc |= uint8_t(1u << m);
    if (d[m] < 0) t.dec |= uint8_t(1u << m);
  }
}

std::vector<Violation> validate_machine(const CounterMachine& m) {
  std::vector<Violation> out;
  if (m.k < 0 || m.k > kMaxCounters)
    out.push_back({"counters", "k=" + std::to_string(m.k) + " outside 0.." + std::to_string(kMaxCounters)});
  if (m.initial >= m.num_states) out.push_back({"state", "initial state unknown"});
  if (m.finals.size() != m.num_states) out.push_back({"state", "final flags do not match state count"});
  if (m.lambda_chain_bound < 0) out.push_back({"counters", "negative lambda bound"});
  const uint8_t mask = m.k >= 8 ? 0xFF : uint8_t((1u << std::max(m.k, 0)) - 1);
  for (size_t i = 0; i < m.transitions.size(); ++i) {
    const auto& t = m.transitions[i];
    std::string where = "transition " + std::to_string(i);
    if (t.src >= m.num_states || t.dst >= m.num_states) out.push_back({"state", where + " references unknown state"});
    if (!t.is_lambda() && !m.has_letter(t.letter)) out.push_back({"letter", where + " reads a letter outside the alphabet"});
    if (t.is_lambda() && m.real_time) out.push_back({"real-time", where + " is a lambda-transition"});
    if ((t.care | t.pos | t.inc | t.dec) & ~mask) out.push_back({"counters", where + " touches a counter beyond k"});
    if (t.inc & t.dec) out.push_back({"counters", where + " has contradictory delta"});
    // a decrement must be guarded by a positive test
    const uint8_t unsafe = t.dec & ~(t.care & t.pos);
    if (unsafe) {
      for (int c = 0; c < m.k; ++c)
        if ((unsafe >> c) & 1) out.push_back({"zero-test", where + " decrements counter " + std::to_string(c) + " without a positive test"});
    }
  }
  return out;
}

// ---------------------------------------------------------------- Runner

Runner::Runner(const CounterMachine& m) : m_(m) {
  off_.assign(m.num_states + 1, 0);
  for (const auto& t : m.transitions) ++off_[t.src + 1];
  std::partial_sum(off_.begin(), off_.end(), off_.begin());
  order_.resize(m.transitions.size());
  std::vector<uint32_t> fill(off_.begin(), off_.end() - 1);
  for (uint32_t i = 0; i < m.transitions.size(); ++i) order_[fill[m.transitions[i].src]++] = i;
  all_mask_ = m.k >= 8 ? 0xFF : uint8_t((1u << m.k) - 1);
}

uint32_t Runner::bound(size_t max_len) const {
  return static_cast<uint32_t>((max_len + 1) * (static_cast<size_t>(m_.lambda_chain_bound) + 1));
}

bool Runner::enabled(const Transition& t, const Configuration& c, uint32_t cap) const {
  for (int m = 0; m < m_.k; ++m) {
    const uint8_t bit = uint8_t(1u << m);
    const bool positive = c.counters[m] > 0;
    if ((t.care & bit) && positive != bool(t.pos & bit)) return false;
    if ((t.dec & bit) && !positive) return false;
    if ((t.inc & bit) && c.counters[m] + 1 > cap) return false;
  }
  return true;
}

Configuration Runner::apply(const Transition& t, const Configuration& c) const {
  Configuration n = c;
  n.state = t.dst;
  for (int m = 0; m < m_.k; ++m) {
    if ((t.inc >> m) & 1) ++n.counters[m];
    if ((t.dec >> m) & 1) --n.counters[m];
  }
  return n;
}

void Runner::close(Frontier& f, uint32_t cap) const {
  std::unordered_set<Configuration, ConfigHash> seen(f.begin(), f.end());
  Frontier layer = f;
  for (int depth = 0; depth < m_.lambda_chain_bound && !layer.empty(); ++depth) {
    Frontier next;
    for (const auto& c : layer) {
      auto [b, e] = out(c.state);
      for (auto it = b; it != e; ++it) {
        const auto& t = m_.transitions[*it];
        if (!t.is_lambda() || !enabled(t, c, cap)) continue;
        auto n = apply(t, c);
        if (seen.insert(n).second) next.push_back(n);
      }
    }
    f.insert(f.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  sort_unique(f);
}

Runner::Frontier Runner::start(size_t max_len) const {
  Frontier f{Configuration{m_.initial, {}}};
  close(f, bound(max_len));
  return f;
}

Runner::Frontier Runner::step(const Frontier& f, char letter, size_t max_len) const {
  const uint32_t cap = bound(max_len);
  Frontier next;
  for (const auto& c : f) {
    auto [b, e] = out(c.state);
    for (auto it = b; it != e; ++it) {
      const auto& t = m_.transitions[*it];
      if (t.letter == letter && enabled(t, c, cap)) next.push_back(apply(t, c));
    }
  }
  sort_unique(next);
  if (!next.empty()) close(next, cap);
  return next;
}

bool Runner::accepting(const Frontier& f) const {
  for (const auto& c : f) {
    if (!m_.is_final(c.state)) continue;
    if (m_.acceptance == Acceptance::FinalState) return true;
    bool zero = true;
    for (int m = 0; m < m_.k; ++m) zero = zero && c.counters[m] == 0;
    if (zero) return true;
  }
  return false;
}

bool Runner::accepts(std::string_view w) const {
  for (char c : w)
    if (!m_.has_letter(c)) throw InputError("letter '" + render_letter(c) + "' outside the alphabet");
  auto f = start(w.size());
  for (char c : w) {
    if (f.empty()) return false;
    f = step(f, c, w.size());
  }
  return accepting(f);
}

std::optional<std::vector<uint32_t>> Runner::find_run(std::string_view w) const {
  for (char c : w)
    if (!m_.has_letter(c)) throw InputError("letter '" + render_letter(c) + "' outside the alphabet");
  struct Node {
    Configuration c;
    int64_t parent;
    uint32_t via;
    int lambda_depth;
  };
  const uint32_t cap = bound(w.size());
  std::vector<Node> nodes;
  auto closure = [&](size_t begin) {
    std::unordered_set<Configuration, ConfigHash> seen;
    for (size_t i = begin; i < nodes.size(); ++i) seen.insert(nodes[i].c);
    for (size_t i = begin; i < nodes.size(); ++i) {
      if (nodes[i].lambda_depth >= m_.lambda_chain_bound) continue;
      auto [b, e] = out(nodes[i].c.state);
      for (auto it = b; it != e; ++it) {
        const auto& t = m_.transitions[*it];
        if (!t.is_lambda() || !enabled(t, nodes[i].c, cap)) continue;
        auto n = apply(t, nodes[i].c);
        if (seen.insert(n).second) nodes.push_back({n, int64_t(i), *it, nodes[i].lambda_depth + 1});
      }
    }
  };
  nodes.push_back({Configuration{m_.initial, {}}, -1, 0, 0});
  size_t layer = 0;
  closure(0);
  for (char letter : w) {
    const size_t begin = nodes.size();
    std::unordered_set<Configuration, ConfigHash> seen;
    for (size_t i = layer; i < begin; ++i) {
      auto [b, e] = out(nodes[i].c.state);
      for (auto it = b; it != e; ++it) {
        const auto& t = m_.transitions[*it];
        if (t.letter != letter || !enabled(t, nodes[i].c, cap)) continue;
        auto n = apply(t, nodes[i].c);
        if (seen.insert(n).second) nodes.push_back({n, int64_t(i), *it, 0});
      }
    }
    if (nodes.size() == begin) return std::nullopt;
    layer = begin;
    closure(begin);
  }
  for (size_t i = layer; i < nodes.size(); ++i) {
    if (!accepting({nodes[i].c})) continue;
    std::vector<uint32_t> run;
    for (int64_t j = int64_t(i); nodes[j].parent >= 0; j = nodes[j].parent) run.push_back(nodes[j].via);
    std::reverse(run.begin(), run.end());
    return run;
  }
  return std::nullopt;
}

bool accepts(const CounterMachine& m, std::string_view w) { return Runner(m).accepts(w); }

bool length_lex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::vector<Word> enumerate_accepted(const CounterMachine& m, size_t max_len) {
  Runner r(m);
  std::vector<Word> out;
  Word w;
  std::string letters = m.alphabet;
  std::sort(letters.begin(), letters.end());
  std::function<void(const Runner::Frontier&)> dfs = [&](const Runner::Frontier& f) {
    if (r.accepting(f)) out.push_back(w);
    if (w.size() == max_len) return;
    for (char c : letters) {
      auto n = r.step(f, c, max_len);
      if (n.empty()) continue;
      w.push_back(c);
      dfs(n);
      w.pop_back();
    }
  };
  auto f0 = r.start(max_len);
  if (!f0.empty()) dfs(f0);
  std::sort(out.begin(), out.end(), length_lex_less);
  return out;
}

CrosscheckResult crosscheck(const CounterMachine& m, const std::function<bool(std::string_view)>& oracle,
                            size_t max_len, const std::function<bool(std::string_view)>& viable) {
  const Runner run(m);
  const uint64_t sigma = m.alphabet.size();
  // subtree[d]: number of words of length <= d
  std::vector<uint64_t> subtree(max_len + 1, 1);
  for (size_t d = 1; d <= max_len; ++d) subtree[d] = subtree[d - 1] * sigma + 1;
  CrosscheckResult res;
  Word w;
  std::function<void(const Runner::Frontier&)> walk = [&](const Runner::Frontier& f) {
    if (f.empty() && viable && !viable(w)) {
      res.words += subtree[max_len - w.size()];
      return;
    }
    ++res.words;
    ++res.visited;
    const bool want = oracle(w);
    res.accepted += want;
    if (run.accepting(f) != want) {
      ++res.mismatches;
      if (res.examples.size() < 8) res.examples.push_back(w);
    }
    if (w.size() == max_len) return;
    for (char c : m.alphabet) {
      w.push_back(c);
      walk(f.empty() ? f : run.step(f, c, max_len));
      w.pop_back();
    }
  };
  walk(run.start(max_len));
  return res;
}

std::vector<Word> all_words(std::string_view alphabet, size_t max_len) {
  std::string letters(alphabet);
  std::sort(letters.begin(), letters.end());
  std::vector<Word> out{Word{}};
  size_t from = 0;
  for (size_t len = 1; len <= max_len; ++len) {
    const size_t to = out.size();
    for (size_t i = from; i < to; ++i)
      for (char c : letters) out.push_back(out[i] + c);
    from = to;
  }
  return out;
}

// ---------------------------------------------------------------- DFA

uint32_t DFA::next(uint32_t q, char c) const {
  const auto i = alphabet.find(c);
  if (i == std::string::npos) throw InputError("letter '" + render_letter(c) + "' outside the DFA alphabet");
  return delta[q * alphabet.size() + i];
}

bool DFA::accepts(std::string_view w) const {
  uint32_t q = initial;
  for (char c : w) q = next(q, c);
  return finals[q];
}

DFA DFA::all(std::string_view alphabet) {
  return DFA{std::string(alphabet), 1, 0, {1}, std::vector<uint32_t>(alphabet.size(), 0)};
}

DFA DFA::none(std::string_view alphabet) {
  return DFA{std::string(alphabet), 1, 0, {0}, std::vector<uint32_t>(alphabet.size(), 0)};
}

// ---------------------------------------------------------------- closure operations

namespace {

bool same_letters(std::string a, std::string b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

CounterMachine shell_like(const CounterMachine& m) {
  CounterMachine r;
  r.k = m.k;
  r.alphabet = m.alphabet;
  r.real_time = m.real_time;
  r.acceptance = m.acceptance;
  r.lambda_chain_bound = m.lambda_chain_bound;
  return r;
}

}  // namespace

CounterMachine intersect_regular(const CounterMachine& m, const DFA& d) {
  if (!same_letters(m.alphabet, d.alphabet)) throw InputError("intersect_regular: alphabet mismatch");
  CounterMachine r = shell_like(m);
  Runner idx(m);
  std::unordered_map<uint64_t, uint32_t> id;
  std::deque<std::pair<uint32_t, uint32_t>> todo;
  auto get = [&](uint32_t q, uint32_t s) {
    const uint64_t key = (uint64_t(q) << 32) | s;
    auto [it, fresh] = id.emplace(key, r.num_states);
    if (fresh) {
      r.add_state(m.is_final(q) && d.finals[s]);
      todo.emplace_back(q, s);
    }
    return it->second;
  };
  r.initial = get(m.initial, d.initial);
  while (!todo.empty()) {
    auto [q, s] = todo.front();
    todo.pop_front();
    const uint32_t from = id[(uint64_t(q) << 32) | s];
    auto [b, e] = idx.out(q);
    for (auto it = b; it != e; ++it) {
      Transition t = m.transitions[*it];
      const uint32_t s2 = t.is_lambda() ? s : d.next(s, t.letter);
      t.dst = get(t.dst, s2);
      t.src = from;
      r.add(t);
    }
  }
  return trim(r);
}

CounterMachine widen(const CounterMachine& m, int k) {
  if (k < m.k) throw InputError("widen: cannot drop counters");
  CounterMachine r = m;
  r.k = k;
  return r;
}

CounterMachine union_machines(const CounterMachine& m1, const CounterMachine& m2) {
  if (m1.acceptance != m2.acceptance) throw InputError("union_machines: acceptance-mode mismatch");
  if (!same_letters(m1.alphabet, m2.alphabet)) throw InputError("union_machines: alphabet mismatch");
  CounterMachine r;
  r.k = std::max(m1.k, m2.k);
  r.alphabet = m1.alphabet;
  r.acceptance = m1.acceptance;
  r.real_time = m1.real_time && m2.real_time;
  r.lambda_chain_bound = std::max(m1.lambda_chain_bound, m2.lambda_chain_bound);
  r.initial = r.add_state(m1.is_final(m1.initial) || m2.is_final(m2.initial));
  auto copy = [&](const CounterMachine& m) {
    const uint32_t base = r.num_states;
    for (uint32_t q = 0; q < m.num_states; ++q) r.add_state(m.is_final(q));
    for (auto t : m.transitions) {
      t.src += base;
      t.dst += base;
      r.add(t);
      // the fresh initial state branches without λ: it copies the first move
      if (t.src == base + m.initial) {
        t.src = r.initial;
        r.add(t);
      }
    }
  };
  copy(m1);
  copy(m2);
  r.canonicalize();
  return trim(r);
}

CounterMachine apply_letter_morphism(const CounterMachine& m, const LetterMorphism& f) {
  if (!same_letters(m.alphabet, f.source)) throw InputError("apply_letter_morphism: source alphabet mismatch");
  for (char c : f.source) {
    auto it = f.image.find(c);
    if (it == f.image.end()) throw InputError("apply_letter_morphism: letter without image");
    if (it->second.empty()) throw InputError("apply_letter_morphism: empty image word");
    for (char x : it->second)
      if (f.target.find(x) == std::string::npos) throw InputError("apply_letter_morphism: image outside target alphabet");
  }
  CounterMachine r = shell_like(m);
  r.alphabet = f.target;
  r.num_states = m.num_states;
  r.finals = m.finals;
  r.initial = m.initial;
  // Images leaving one state share their prefix chain; the test and the counter
  // update sit on the last letter, where the counters are still unchanged.
  std::map<std::pair<uint32_t, Word>, uint32_t> node;
  for (const auto& t : m.transitions) {
    if (t.is_lambda()) {
      r.add(t);
      continue;
    }
    const Word& img = f.image.at(t.letter);
    uint32_t from = t.src;
    for (size_t i = 0; i + 1 < img.size(); ++i) {
      auto [it, fresh] = node.emplace(std::make_pair(t.src, img.substr(0, i + 1)), 0);
      if (fresh) {
        it->second = r.add_state(false);
        r.add(Transition{from, it->second, img[i], 0, 0, 0, 0});
      }
      from = it->second;
    }
    Transition s = t;
    s.src = from;
    s.letter = img.back();
    r.add(s);
  }
  r.canonicalize();
  return r;
}

CounterMachine realtime_pad(const CounterMachine& m, char pad_letter, int pad_count) {
  if (pad_count < 1) throw InputError("realtime_pad: pad_count must be positive");
  if (m.has_letter(pad_letter)) throw InputError("realtime_pad: pad letter already in the alphabet");
  const int chain = longest_lambda_chain(m);
  if (chain < 0) throw InputError("realtime_pad: lambda-cycle");
  if (chain > pad_count - 1)
    throw InputError("realtime_pad: lambda-chain bound exceeds pad_count - 1");
  Runner idx(m);
  for (auto [b, e] = idx.out(m.initial); b != e; ++b)
    if (m.transitions[*b].is_lambda()) throw InputError("realtime_pad: lambda move before the first letter");

  CounterMachine r = shell_like(m);
  r.alphabet = m.alphabet + pad_letter;
  r.real_time = true;
  r.lambda_chain_bound = 0;
  // state (q, j): j pad letters still to read; j = 0 is q itself
  const uint32_t n = m.num_states;
  r.num_states = n * uint32_t(pad_count + 1);
  r.finals.assign(r.num_states, 0);
  for (uint32_t q = 0; q < n; ++q) r.finals[q] = m.finals[q];
  r.initial = m.initial;
  auto id = [n](uint32_t q, int j) { return uint32_t(j) * n + q; };
  for (const auto& t : m.transitions) {
    if (t.is_lambda()) {
      for (int j = 1; j <= pad_count; ++j) {
        Transition s = t;
        s.src = id(t.src, j);
        s.dst = id(t.dst, j - 1);
        s.letter = pad_letter;
        r.add(s);
      }
    } else {
      Transition s = t;
      s.dst = id(t.dst, pad_count);
      r.add(s);
    }
  }
  for (uint32_t q = 0; q < n; ++q)
    for (int j = 1; j <= pad_count; ++j) r.add(Transition{id(q, j), id(q, j - 1), pad_letter, 0, 0, 0, 0});
  r.canonicalize();
  return trim(r);
}

CounterMachine trim(const CounterMachine& m) {
  const uint32_t n = m.num_states;
  std::vector<std::vector<uint32_t>> fwd(n), bwd(n);
  for (const auto& t : m.transitions) {
    fwd[t.src].push_back(t.dst);
    bwd[t.dst].push_back(t.src);
  }
  auto sweep = [n](const std::vector<std::vector<uint32_t>>& g, std::vector<uint32_t> seeds) {
    std::vector<uint8_t> mark(n, 0);
    for (auto s : seeds) mark[s] = 1;
    while (!seeds.empty()) {
      auto q = seeds.back();
      seeds.pop_back();
      for (auto p : g[q])
        if (!mark[p]) {
          mark[p] = 1;
          seeds.push_back(p);
        }
    }
    return mark;
  };
  auto reach = sweep(fwd, {m.initial});
  std::vector<uint32_t> fin;
  for (uint32_t q = 0; q < n; ++q)
    if (m.is_final(q)) fin.push_back(q);
  auto coreach = sweep(bwd, fin);

  CounterMachine r = shell_like(m);
  std::vector<uint32_t> id(n, UINT32_MAX);
  const bool named = !m.names.empty();
  for (uint32_t q = 0; q < n; ++q)
    if ((reach[q] && coreach[q]) || q == m.initial) {
      id[q] = r.num_states++;
      r.finals.push_back(m.finals[q]);
      if (named) r.names.push_back(m.state_name(q));
    }
  r.initial = id[m.initial];
  for (const auto& t : m.transitions) {
    if (id[t.src] == UINT32_MAX || id[t.dst] == UINT32_MAX) continue;
    if (!(reach[t.dst] && coreach[t.dst])) continue;
    Transition s = t;
    s.src = id[t.src];
    s.dst = id[t.dst];
    r.add(s);
  }
  r.canonicalize();
  return r;
}

int longest_lambda_chain(const CounterMachine& m) {
  const uint32_t n = m.num_states;
  std::vector<std::vector<uint32_t>> g(n);
  std::vector<uint32_t> indeg(n, 0);
  for (const auto& t : m.transitions)
    if (t.is_lambda()) {
      g[t.src].push_back(t.dst);
      ++indeg[t.dst];
    }
  std::vector<uint32_t> order;
  for (uint32_t q = 0; q < n; ++q)
    if (!indeg[q]) order.push_back(q);
  std::vector<int> len(n, 0);
  for (size_t i = 0; i < order.size(); ++i)
    for (auto p : g[order[i]]) {
      len[p] = std::max(len[p], len[order[i]] + 1);
      if (--indeg[p] == 0) order.push_back(p);
    }
  if (order.size() != n) return -1;
  return n ? *std::max_element(len.begin(), len.end()) : 0;
}

}  // namespace omegapow
