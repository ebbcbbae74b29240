#pragma once
// The Π-side constructions: base machines P1/P2, the block language 𝓛 over a
// two-counter subject and its one-counter machine, the auxiliary language μ,
// the reduction to a real-time one-counter binary machine, and build_pn.

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "omegapow/codings.hpp"
#include "omegapow/machine.hpp"

namespace omegapow {

struct Unsupported : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FeasibilityError : std::runtime_error {
  FeasibilityError(const std::string& what, size_t idx) : std::runtime_error(what), index(idx) {}
  size_t index;
};

CounterMachine p_base_machine(int n);
bool p_base_oracle(int n, std::string_view w);
DFA p_base_dfa(int n);

/// One block v_i a_i 𝟏 w_i z_i 𝟐 u_{i+1} of an 𝓛 word; |u_{i+1}| = |z_i|.
struct ScriptLBlock {
  uint64_t v = 0, w = 0, z = 0;
  char a = 0;
  uint32_t from = 0, to = 0;  // subject states q_i, q_{i+1}
  int l2 = 0, l3 = 0;         // counter deltas (l_i, l'_i)
  friend bool operator==(const ScriptLBlock&, const ScriptLBlock&) = default;
};
struct ScriptLWitness {
  std::vector<ScriptLBlock> blocks;
  friend bool operator==(const ScriptLWitness&, const ScriptLWitness&) = default;
};

Word witness_word(const ScriptLWitness& wit, Marks mk = {});
/// Empty string if the witness satisfies every 𝓛 condition for the subject, else the reason.
std::string check_witness(const CounterMachine& subject, const ScriptLWitness& wit);

/// Dynamic programme over blocks; returns a witness when w ∈ 𝓛.
std::optional<ScriptLWitness> script_l_oracle(const CounterMachine& subject, std::string_view w, Marks mk = {});
/// Exhaustive split enumeration, for cross-checking the DP on short words.
bool script_l_naive(const CounterMachine& subject, std::string_view w, Marks mk = {});
CounterMachine script_l_machine(const CounterMachine& subject, Marks mk = {});
/// The regular shape (𝟎* Σ 𝟏 𝟎* 𝟐 𝟎*)* as a DFA over Σ ∪ marks.
DFA script_r_dfa(std::string_view sigma, Marks mk = {});

bool mu_five_oracle(std::string_view w, std::string_view sigma, Marks mk = {});
CounterMachine mu_five_machine(std::string_view sigma, Marks mk = {});

/// The bundled two-counter test machine with language {ab}.
CounterMachine test_machine_a0();
/// A second bundled subject: {a^n b^n c^m d^m : n, m >= 1}, exercising both counters.
CounterMachine test_machine_a1();
bool test_machine_a1_oracle(std::string_view w);

/// Data needed to replay the last reduction stage as an oracle.
struct Reduction {
  std::shared_ptr<const CounterMachine> subject;
  std::string sigma;
  Marks marks;
  char pad = 'c';
  std::string code_alphabet;  // letter j is coded 0^j 1
};

struct PipelineArtifact {
  CounterMachine machine;
  std::vector<std::string> log;
  std::string label;
  std::optional<Reduction> reduction;
  std::string code_alphabet;  // set when the last step is a binary recoding
  std::string claimed_class;  // Borel class of the omega-power, as claimed; never checked
};

/// Prefix code 0^j 1 for the j-th letter of the code alphabet.
LetterMorphism binary_recoding(std::string_view code_alphabet);
std::optional<Word> decode_binary(std::string_view w, std::string_view code_alphabet);
/// 𝓛 ∪ μ, c-padding, binary recoding: two-counter real-time subject to one-counter binary.
PipelineArtifact reduce_to_one_counter(const CounterMachine& subject, std::vector<std::string> log = {});
/// Definitional check against a reduction record: decode, strip pads, test 𝓛 ∪ μ.
bool reduction_oracle(const Reduction& r, std::string_view w);
/// Inverse direction: pad every letter and apply the binary code.
Word reduction_encode(const Reduction& r, std::string_view core);

inline constexpr int kDefaultCap = 6;
PipelineArtifact build_pn(int n, int cap = kDefaultCap);
/// Stagewise definitional oracle for P_n (n <= 3 fully independent of machines).
bool pn_oracle(int n, const PipelineArtifact& art, std::string_view w);

/// Claim 2 witness maps. The witness words, followed by one 𝟎, tile encode_g(p, concat(factors)).
std::vector<ScriptLWitness> claim2_forward(const CounterMachine& subject, const std::vector<Word>& factors, GParams p,
                                           Marks mk = {});
std::vector<Word> claim2_backward(const CounterMachine& subject, const std::vector<ScriptLWitness>& ws, Marks mk = {});

std::string stage_line(const std::string& step, const CounterMachine& m);

}  // namespace omegapow
