// Line-oriented machine format; see README for the grammar.
#include <sstream>
#include <unordered_map>

#include "omegapow/machine.hpp"

namespace omegapow {

std::string render_letter(char c) {
  if (c == kEps) return "EPS";
  if (c == kEraser) return "BS";
  return std::string(1, c);
}

std::string render_word(std::string_view w) {
  if (w.empty()) return "EPS";
  std::string s;
  for (char c : w) s += render_letter(c);
  return s;
}

Word parse_word(std::string_view text) {
  if (text == "EPS") return {};
  Word w;
  for (size_t i = 0; i < text.size(); ++i) {
    if (text.substr(i, 2) == "BS") {
      w += kEraser;
      ++i;
    } else {
      w += text[i];
    }
  }
  return w;
}

std::string serialize(const CounterMachine& m) {
  std::ostringstream os;
  os << "kcm k=" << m.k << " alphabet=";
  for (size_t i = 0; i < m.alphabet.size(); ++i) os << (i ? "," : "") << render_letter(m.alphabet[i]);
  os << " real_time=" << (m.real_time ? 1 : 0)
     << " accept=" << (m.acceptance == Acceptance::FinalState ? "final" : "final_zero")
     << " lambda_bound=" << m.lambda_chain_bound << "\n";
  for (uint32_t q = 0; q < m.num_states; ++q) {
    os << "state " << m.state_name(q);
    if (q == m.initial) os << " initial";
    if (m.is_final(q)) os << " final";
    os << "\n";
  }
  for (const auto& t : m.transitions)
    os << "trans " << m.state_name(t.src) << " " << render_letter(t.letter) << " " << pattern_text(t, m.k) << " "
       << m.state_name(t.dst) << " " << delta_text(t, m.k) << "\n";
  return os.str();
}

namespace {

char parse_letter(const std::string& tok, int line) {
  if (tok == "EPS") return kEps;
  if (tok == "BS") return kEraser;
  if (tok.size() != 1) throw InputError("line " + std::to_string(line) + ": bad letter '" + tok + "'");
  return tok[0];
}

int parse_int(const std::string& s, int line) {
  try {
    size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InputError("line " + std::to_string(line) + ": bad integer '" + s + "'");
  }
}

}  // namespace

CounterMachine parse_machine(std::string_view text) {
  CounterMachine m;
  std::unordered_map<std::string, uint32_t> ids;
  bool header = false, has_initial = false;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  auto fail = [&](const std::string& what) { throw InputError("line " + std::to_string(line) + ": " + what); };
  while (std::getline(in, raw)) {
    ++line;
    if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok[0] == "kcm") {
      if (header) fail("duplicate header");
      header = true;
      for (size_t i = 1; i < tok.size(); ++i) {
        auto eq = tok[i].find('=');
        if (eq == std::string::npos) fail("expected key=value");
        const std::string key = tok[i].substr(0, eq), val = tok[i].substr(eq + 1);
        if (key == "k") {
          m.k = parse_int(val, line);
        } else if (key == "alphabet") {
          std::istringstream as(val);
          for (std::string l; std::getline(as, l, ',');) {
            const char c = parse_letter(l, line);
            if (c == kEps) fail("EPS is not a letter");
            m.alphabet += c;
          }
        } else if (key == "real_time") {
          m.real_time = parse_int(val, line) != 0;
        } else if (key == "accept") {
          if (val == "final") m.acceptance = Acceptance::FinalState;
          else if (val == "final_zero") m.acceptance = Acceptance::FinalStateAndZero;
          else fail("unknown acceptance '" + val + "'");
        } else if (key == "lambda_bound") {
          m.lambda_chain_bound = parse_int(val, line);
        } else {
          fail("unknown header key '" + key + "'");
        }
      }
      if (m.k < 0 || m.k > kMaxCounters) fail("k out of range");
    } else if (tok[0] == "state") {
      if (!header) fail("state before header");
      if (tok.size() < 2) fail("state needs a name");
      if (ids.count(tok[1])) fail("duplicate state '" + tok[1] + "'");
      ids[tok[1]] = m.num_states;
      m.names.resize(m.num_states);
      m.names.push_back(tok[1]);
      bool fin = false;
      for (size_t i = 2; i < tok.size(); ++i) {
        if (tok[i] == "initial") {
          if (has_initial) fail("second initial state");
          has_initial = true;
          m.initial = m.num_states;
        } else if (tok[i] == "final") {
          fin = true;
        } else {
          fail("unknown state flag '" + tok[i] + "'");
        }
      }
      m.finals.push_back(fin ? 1 : 0);
      ++m.num_states;
    } else if (tok[0] == "trans") {
      if (tok.size() != 6) fail("trans expects 5 fields");
      auto src = ids.find(tok[1]), dst = ids.find(tok[4]);
      if (src == ids.end() || dst == ids.end()) fail("unknown state in trans");
      Transition t;
      t.src = src->second;
      t.dst = dst->second;
      t.letter = parse_letter(tok[2], line);
      const std::string pat = tok[3] == "-" ? "" : tok[3];
      if (int(pat.size()) != m.k) fail("zero-pattern length differs from k");
      for (char c : pat)
        if (c != '0' && c != '1' && c != '*') fail("bad zero-pattern");
      auto p = pattern(pat);
      t.care = p.care;
      t.pos = p.pos;
      std::vector<int> d;
      if (tok[5] != "-") {
        std::istringstream ds(tok[5]);
        for (std::string x; std::getline(ds, x, ',');) {
          int v = parse_int(x, line);
          if (v < -1 || v > 1) fail("delta outside {-1,0,1}");
          d.push_back(v);
        }
      }
      if (int(d.size()) != m.k) fail("delta length differs from k");
      set_delta(t, d);
      m.transitions.push_back(t);
    } else {
      fail("unknown directive '" + tok[0] + "'");
    }
  }
  if (!header) throw InputError("missing kcm header");
  if (!has_initial) throw InputError("no initial state");
  return m;
}

}  // namespace omegapow
