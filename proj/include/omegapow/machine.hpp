#pragma once
// k-counter machines: representation, validation, breadth-first acceptance,
// and the closure operations the pipelines are assembled from.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <string>
#include <string_view>
#include <vector>

namespace omegapow {

using Word = std::string;

/// Letters are single bytes. The eraser is ASCII backspace, written `BS` in text.
inline constexpr char kEps = '\0';
inline constexpr char kEraser = '\x08';
inline constexpr int kMaxCounters = 8;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Acceptance { FinalState, FinalStateAndZero };

/// Zero-pattern: counters with a `care` bit must be positive (pos bit set) or
/// zero (pos bit clear); the others are don't-care. Delta is inc/dec bitmasks.
struct Transition {
  uint32_t src = 0;
  uint32_t dst = 0;
  char letter = kEps;
  uint8_t care = 0;
  uint8_t pos = 0;
  uint8_t inc = 0;
  uint8_t dec = 0;

  bool is_lambda() const { return letter == kEps; }
  int delta(int m) const { return ((inc >> m) & 1) - ((dec >> m) & 1); }
  auto key() const { return std::tie(src, letter, care, pos, dst, inc, dec); }
  friend bool operator==(const Transition& a, const Transition& b) { return a.key() == b.key(); }
  friend bool operator<(const Transition& a, const Transition& b) { return a.key() < b.key(); }
};

struct CounterMachine {
  int k = 0;
  std::string alphabet;
  uint32_t num_states = 0;
  uint32_t initial = 0;
  std::vector<uint8_t> finals;
  std::vector<Transition> transitions;
  bool real_time = false;
  Acceptance acceptance = Acceptance::FinalStateAndZero;
  int lambda_chain_bound = 8;
  std::vector<std::string> names;  // optional, parallel to states

  uint32_t add_state(bool final = false);
  void add(const Transition& t) { transitions.push_back(t); }
  bool is_final(uint32_t q) const { return q < finals.size() && finals[q]; }
  bool has_letter(char c) const { return alphabet.find(c) != std::string::npos; }
  std::string state_name(uint32_t q) const;
  /// Sorts transitions into canonical order and drops duplicates.
  void canonicalize();
};

/// Pattern helpers. `pattern("01*")` gives care/pos for a textual zero-pattern.
struct Pattern {
  uint8_t care = 0, pos = 0;
};
Pattern pattern(std::string_view text);
std::string pattern_text(const Transition& t, int k);
std::string delta_text(const Transition& t, int k);
/// Delta from a vector of -1/0/1 values.
void set_delta(Transition& t, const std::vector<int>& d);

struct Violation {
  std::string kind;  // "zero-test", "real-time", "state", "letter", "counters"
  std::string detail;
};
std::vector<Violation> validate_machine(const CounterMachine& m);

struct Configuration {
  uint32_t state = 0;
  std::array<uint32_t, kMaxCounters> counters{};
  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

/// Incremental breadth-first simulator. A frontier is the set of
/// configurations reachable after the consumed prefix, closed under λ-chains.
class Runner {
 public:
  using Frontier = std::vector<Configuration>;
  explicit Runner(const CounterMachine& m);
  Runner(CounterMachine&&) = delete;  // keeps a reference

  /// Counter bound used for a search over words of length at most max_len.
  uint32_t bound(size_t max_len) const;
  Frontier start(size_t max_len) const;
  Frontier step(const Frontier& f, char letter, size_t max_len) const;
  bool accepting(const Frontier& f) const;
  bool accepts(std::string_view w) const;
  /// One accepting run as a list of transition indices, if any.
  std::optional<std::vector<uint32_t>> find_run(std::string_view w) const;
  const CounterMachine& machine() const { return m_; }
  /// Transitions leaving q, as indices into machine().transitions.
  std::pair<const uint32_t*, const uint32_t*> out(uint32_t q) const {
    return {order_.data() + off_[q], order_.data() + off_[q + 1]};
  }
  bool enabled(const Transition& t, const Configuration& c, uint32_t cap) const;
  Configuration apply(const Transition& t, const Configuration& c) const;

 private:
  void close(Frontier& f, uint32_t cap) const;
  const CounterMachine& m_;
  std::vector<uint32_t> off_;
  std::vector<uint32_t> order_;
  uint8_t all_mask_ = 0;
};

bool accepts(const CounterMachine& m, std::string_view w);
std::vector<Word> enumerate_accepted(const CounterMachine& m, size_t max_len);
/// All words over `alphabet` up to max_len, length-lexicographic.
std::vector<Word> all_words(std::string_view alphabet, size_t max_len);
bool length_lex_less(const Word& a, const Word& b);

struct CrosscheckResult {
  uint64_t words = 0;     // all words up to the length bound, skipped subtrees included
  uint64_t visited = 0;   // words actually simulated
  uint64_t accepted = 0;  // by the oracle, among visited words
  uint64_t mismatches = 0;
  std::vector<Word> examples;  // first few disagreements
};
/// Compares m with `oracle` on every word over m.alphabet up to max_len by a
/// depth-first walk of the word trie. A subtree is skipped only when the
/// machine frontier is empty and `viable(prefix)` is false, i.e. both sides
/// reject every word below it.
CrosscheckResult crosscheck(const CounterMachine& m, const std::function<bool(std::string_view)>& oracle,
                            size_t max_len, const std::function<bool(std::string_view)>& viable = {});

struct DFA {
  std::string alphabet;
  uint32_t num_states = 0;
  uint32_t initial = 0;
  std::vector<uint8_t> finals;
  std::vector<uint32_t> delta;  // num_states * alphabet.size()

  uint32_t next(uint32_t q, char c) const;
  bool accepts(std::string_view w) const;
  static DFA all(std::string_view alphabet);
  static DFA none(std::string_view alphabet);
};

struct LetterMorphism {
  std::string source;
  std::string target;
  std::map<char, Word> image;
};

struct LanguageOracle {
  std::string alphabet;
  std::function<bool(std::string_view)> member;
  std::string tag;
  /// Optional: is the word a prefix of some member? Used by omega_analysis.
  std::function<bool(std::string_view)> viable;
};

CounterMachine intersect_regular(const CounterMachine& m, const DFA& d);
CounterMachine union_machines(const CounterMachine& m1, const CounterMachine& m2);
CounterMachine apply_letter_morphism(const CounterMachine& m, const LetterMorphism& f);
CounterMachine realtime_pad(const CounterMachine& m, char pad_letter, int pad_count);
/// Drops states that are unreachable or cannot reach a final state (counters ignored).
CounterMachine trim(const CounterMachine& m);
/// Widens to k counters; the added ones stay zero.
CounterMachine widen(const CounterMachine& m, int k);
/// Longest λ-chain in the transition graph, or -1 if λ-cycles exist.
int longest_lambda_chain(const CounterMachine& m);

/// Text format.
std::string serialize(const CounterMachine& m);
CounterMachine parse_machine(std::string_view text);
/// Word I/O: `BS` stands for the eraser.
Word parse_word(std::string_view text);
std::string render_word(std::string_view w);
std::string render_letter(char c);

}  // namespace omegapow
