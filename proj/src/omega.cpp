#include "omegapow/omega.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_map>

namespace omegapow {

std::vector<Word> Factorization::factors(std::string_view w) const {
  std::vector<Word> out;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) out.emplace_back(w.substr(cuts[i], cuts[i + 1] - cuts[i]));
  return out;
}

std::vector<Factorization> factorizations(std::string_view w, const LanguageOracle& L, size_t limit) {
  const size_t n = w.size();
  // member[i][j]: w[i, j) in L; tail[i]: w[i, n) splits into L-words
  std::vector<std::vector<uint8_t>> member(n + 1, std::vector<uint8_t>(n + 1, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j <= n; ++j) member[i][j] = L.member(w.substr(i, j - i));
  std::vector<uint8_t> tail(n + 1, 0);
  tail[n] = 1;
  for (size_t i = n; i-- > 0;)
    for (size_t j = i + 1; j <= n && !tail[i]; ++j) tail[i] = member[i][j] && tail[j];

  std::vector<Factorization> out;
  if (n == 0 || !tail[0] || limit == 0) return out;
  std::vector<size_t> cuts{0};
  std::function<void(size_t)> rec = [&](size_t i) {
    if (out.size() >= limit) return;
    if (i == n) {
      out.push_back({cuts, std::vector<uint8_t>(cuts.size() - 1, 1)});
      return;
    }
    for (size_t j = i + 1; j <= n; ++j) {
      if (!member[i][j] || !tail[j]) continue;
      cuts.push_back(j);
      rec(j);
      cuts.pop_back();
    }
  };
  rec(0);
  return out;
}

std::vector<Factorization> factorizations_naive(std::string_view w, const LanguageOracle& L) {
  const size_t n = w.size();
  std::vector<Factorization> out;
  if (n == 0) return out;
  // bit b of mask set: cut after position b + 1
  for (uint64_t mask = 0; mask < (uint64_t(1) << (n - 1)); ++mask) {
    std::vector<size_t> cuts{0};
    for (size_t b = 0; b + 1 < n; ++b)
      if ((mask >> b) & 1) cuts.push_back(b + 1);
    cuts.push_back(n);
    bool ok = true;
    for (size_t i = 0; ok && i + 1 < cuts.size(); ++i) ok = L.member(w.substr(cuts[i], cuts[i + 1] - cuts[i]));
    if (ok) out.push_back({cuts, std::vector<uint8_t>(cuts.size() - 1, 1)});
  }
  std::sort(out.begin(), out.end(), [](const Factorization& a, const Factorization& b) { return a.cuts < b.cuts; });
  return out;
}

bool is_proper_prefix_of_member(std::string_view p, const LanguageOracle& L, size_t extension_bound) {
  if (L.viable) return L.viable(p);
  Word w(p);
  std::function<bool(size_t)> rec = [&](size_t depth) -> bool {
    if (depth > 0 && L.member(w)) return true;
    if (depth == extension_bound) return false;
    for (char c : L.alphabet) {
      w.push_back(c);
      const bool hit = rec(depth + 1);
      w.pop_back();
      if (hit) return true;
    }
    return false;
  };
  return rec(0);
}

bool is_omega_power_prefix(std::string_view w, const LanguageOracle& L, size_t extension_bound) {
  const size_t n = w.size();
  std::vector<uint8_t> reach(n + 1, 0);
  reach[0] = 1;
  for (size_t i = 0; i < n; ++i) {
    if (!reach[i]) continue;
    for (size_t j = i + 1; j <= n; ++j)
      if (!reach[j] && L.member(w.substr(i, j - i))) reach[j] = 1;
  }
  if (reach[n]) return true;
  for (size_t i = 0; i < n; ++i)
    if (reach[i] && is_proper_prefix_of_member(w.substr(i), L, extension_bound)) return true;
  return false;
}

// ---------------------------------------------------------------- ultimately periodic words

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Yes:
      return "yes";
    case Verdict::NoBounded:
      return "no-bounded";
    case Verdict::Unknown:
      return "unknown";
  }
  return "?";
}

bool replay_certificate(const UPWord& x, const CounterMachine& m, const LassoCertificate& c) {
  if (x.v.empty() || c.cycle.empty()) return false;
  const Runner run(m);
  size_t at = 0;
  for (const auto& f : c.stem) {
    if (f.empty() || !run.accepts(f)) return false;
    for (char ch : f)
      if (x.at(at++) != ch) return false;
  }
  if (at < x.u.size()) return false;
  const size_t start = at;
  for (const auto& f : c.cycle) {
    if (f.empty() || !run.accepts(f)) return false;
    for (char ch : f)
      if (x.at(at++) != ch) return false;
  }
  return (at - start) % x.v.size() == 0;
}

namespace {

struct Node {
  Configuration conf;
  uint32_t pos = 0;
  bool fresh = true;  // no letter read since the last cut
  friend bool operator==(const Node&, const Node&) = default;
};

struct NodeHash {
  size_t operator()(const Node& n) const {
    size_t h = std::hash<uint64_t>()((uint64_t(n.conf.state) << 33) ^ (uint64_t(n.pos) << 1) ^ n.fresh);
    for (auto c : n.conf.counters) h = h * 1000003u ^ c;
    return h;
  }
};

struct Edge {
  uint32_t to;
  char letter;  // kEps for λ-moves and cuts
  bool cut;
};

}  // namespace

UPResult up_membership_bounded(const UPWord& x, const CounterMachine& m, uint32_t counter_cap, size_t unroll_cap) {
  if (x.v.empty()) throw InputError("upword: the period must be nonempty");
  const Runner run(m);
  const uint32_t span = uint32_t(x.u.size() + x.v.size());
  auto next_pos = [&](uint32_t p) { return p + 1 == span ? uint32_t(x.u.size()) : p + 1; };

  UPResult res;
  std::vector<Node> nodes;
  std::vector<std::vector<Edge>> adj;
  std::unordered_map<Node, uint32_t, NodeHash> ids;
  std::deque<uint32_t> todo;
  auto id = [&](const Node& n) -> std::optional<uint32_t> {
    auto it = ids.find(n);
    if (it != ids.end()) return it->second;
    if (nodes.size() >= unroll_cap) {
      res.node_cap_hit = true;
      return std::nullopt;
    }
    const uint32_t k = uint32_t(nodes.size());
    ids.emplace(n, k);
    nodes.push_back(n);
    adj.emplace_back();
    todo.push_back(k);
    return k;
  };
  Node start;
  start.conf.state = m.initial;
  id(start);
  while (!todo.empty()) {
    const uint32_t k = todo.front();
    todo.pop_front();
    const Node cur = nodes[k];
    auto [b, e] = run.out(cur.conf.state);
    for (auto it = b; it != e; ++it) {
      const auto& t = m.transitions[*it];
      if (!t.is_lambda() && t.letter != x.at(cur.pos)) continue;
      if (!run.enabled(t, cur.conf, UINT32_MAX)) continue;
      Node nx{run.apply(t, cur.conf), cur.pos, cur.fresh};
      if (std::any_of(nx.conf.counters.begin(), nx.conf.counters.end(), [&](uint32_t c) { return c > counter_cap; })) {
        res.counter_cap_hit = true;
        continue;
      }
      if (!t.is_lambda()) nx.pos = next_pos(cur.pos), nx.fresh = false;
      if (auto to = id(nx)) adj[k].push_back({*to, t.letter, false});
    }
    if (!cur.fresh && run.accepting({cur.conf})) {
      Node nx;
      nx.conf.state = m.initial;
      nx.pos = cur.pos;
      if (auto to = id(nx)) adj[k].push_back({*to, kEps, true});
    }
  }
  res.explored = nodes.size();

  // Tarjan, iteratively
  const uint32_t n = uint32_t(nodes.size());
  std::vector<uint32_t> index(n, UINT32_MAX), low(n, 0), comp(n, UINT32_MAX);
  std::vector<uint32_t> stack;
  std::vector<uint8_t> on(n, 0);
  uint32_t counter = 0, comps = 0;
  for (uint32_t root = 0; root < n; ++root) {
    if (index[root] != UINT32_MAX) continue;
    std::vector<std::pair<uint32_t, size_t>> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on[root] = 1;
    while (!call.empty()) {
      auto& [v, ei] = call.back();
      if (ei < adj[v].size()) {
        const uint32_t w = adj[v][ei++].to;
        if (index[w] == UINT32_MAX) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on[w] = 1;
          call.push_back({w, 0});
        } else if (on[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on[w] = 0;
          comp[w] = comps;
        } while (w != v);
        ++comps;
      }
      const uint32_t done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
    }
  }

  // a cut edge inside one component gives a lasso
  for (uint32_t a = 0; a < n; ++a)
    for (const auto& ed : adj[a]) {
      if (!ed.cut || comp[a] != comp[ed.to]) continue;
      const uint32_t b = ed.to;
      auto path = [&](uint32_t from, uint32_t to, bool within) {
        std::vector<int64_t> parent(n, -1);
        std::vector<const Edge*> via(n, nullptr);
        std::deque<uint32_t> q{from};
        parent[from] = from;
        while (!q.empty() && parent[to] < 0) {
          const uint32_t c = q.front();
          q.pop_front();
          for (const auto& e2 : adj[c]) {
            if (parent[e2.to] >= 0 || (within && comp[e2.to] != comp[from])) continue;
            parent[e2.to] = c;
            via[e2.to] = &e2;
            q.push_back(e2.to);
          }
        }
        std::vector<const Edge*> edges;
        for (uint32_t c = to; c != from; c = uint32_t(parent[c])) edges.push_back(via[c]);
        std::reverse(edges.begin(), edges.end());
        return edges;
      };
      auto split = [](const std::vector<const Edge*>& es) {
        std::vector<Word> fs;
        Word cur;
        for (const Edge* e2 : es) {
          if (e2->cut) {
            fs.push_back(cur);
            cur.clear();
          } else if (e2->letter != kEps) {
            cur.push_back(e2->letter);
          }
        }
        return fs;
      };
      LassoCertificate cert;
      cert.stem = split(path(0, b, false));
      auto loop = path(b, a, true);
      loop.push_back(&ed);
      cert.cycle = split(loop);
      res.verdict = Verdict::Yes;
      res.certificate = std::move(cert);
      return res;
    }
  res.verdict = (res.counter_cap_hit || res.node_cap_hit) ? Verdict::Unknown : Verdict::NoBounded;
  return res;
}

CounterMachine dfa_machine(const DFA& d) {
  CounterMachine m;
  m.alphabet = d.alphabet;
  m.real_time = true;
  m.acceptance = Acceptance::FinalState;
  m.num_states = d.num_states;
  m.finals = d.finals;
  m.initial = d.initial;
  for (uint32_t q = 0; q < d.num_states; ++q)
    for (size_t c = 0; c < d.alphabet.size(); ++c)
      m.add({q, d.delta[q * d.alphabet.size() + c], d.alphabet[c]});
  m.canonicalize();
  return m;
}

UPResult up_membership_regular_certified(const UPWord& x, const DFA& L) {
  const auto m = dfa_machine(L);
  // no counters: the configuration graph is finite and fully explored
  const size_t nodes = size_t(L.num_states) * (x.u.size() + x.v.size()) * 2 + 1;
  auto r = up_membership_bounded(x, m, 0, nodes);
  if (r.verdict == Verdict::Unknown) throw std::logic_error("up_membership_regular: search incomplete");
  return r;
}

bool up_membership_regular(const UPWord& x, const DFA& L) {
  return up_membership_regular_certified(x, L).verdict == Verdict::Yes;
}

}  // namespace omegapow
