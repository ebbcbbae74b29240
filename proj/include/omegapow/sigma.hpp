#pragma once
// The Σ-side constructions over the four letters 0 1 2 3: S1, the shapes f(a),
// π0, π1 = f(L), μ0–μ2, the assembly A = μ ∪ π, build_sn, and the witness
// maps of the K0 lemma and of the A^∞ case analysis.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "omegapow/pi.hpp"

namespace omegapow {

inline constexpr const char* kFour = "0123";

CounterMachine s1_machine();
bool s1_oracle(std::string_view w);
/// {w : some letter of w is 1}, the regular L used for the third stage.
CounterMachine contains_one_machine();
bool contains_one(std::string_view w);

enum class Component { Mu0, Mu1, Mu2, Pi0, FShape };
std::optional<Component> parse_component(std::string_view name);
/// Literal evaluation of the definitions; `a` is the first letter for FShape.
bool defn_oracle(Component which, std::string_view w, char a = '0');
bool mu_oracle(std::string_view w);

/// One block a t 3 u v 2 w of an f-shaped word; lengths exclude the letter a.
struct Pi1Block {
  char a = '0';
  size_t t = 0, u = 0, v = 0, w = 0;
};
/// Deterministic decomposition into blocks with |t| = |u| even and |v| = |w| >= 3 odd.
std::optional<std::vector<Pi1Block>> parse_pi1(std::string_view w);
bool pi1_oracle(std::string_view w, const std::function<bool(std::string_view)>& L);
bool a_oracle(std::string_view w, const std::function<bool(std::string_view)>& L);

CounterMachine mu0_machine();
CounterMachine mu1_machine();
CounterMachine mu2_machine();
CounterMachine pi0_machine();
CounterMachine pi1_machine(const CounterMachine& L);
CounterMachine assemble_A(const CounterMachine& L);

PipelineArtifact build_sn(int n, int cap = kDefaultCap);
bool sn_oracle(int n, const PipelineArtifact& art, std::string_view w);

using AlphaFill = std::function<char(uint64_t m, uint64_t idx)>;
/// π-factorization of a K0 prefix whose image carries the factor words on the
/// odd part of the 2N-th vertical. Unconstrained bits come from `fill` (default 0).
std::vector<Word> lemma16_backward(uint64_t N, const std::vector<Word>& words, const AlphaFill& fill = {});
struct Lemma16Report {
  uint64_t N = 0;
  std::vector<Word> words;
  Word alpha;                        // image of the complete blocks
  std::vector<uint64_t> positions;   // ⟨2N, 2q+1⟩ for each extracted letter
  bool vertical_ok = false;          // alpha carries the letters at those positions
};
Lemma16Report lemma16_forward(const std::vector<Word>& factors);

struct AInfinityCase {
  enum Kind { MuPower, InK0, Shifted } kind = MuPower;
  Word t;
  uint64_t i = 0, N = 0;
  Word v;
  int rule = 0;        // which case of the analysis fired (1-4), 0 otherwise
  size_t consumed = 0; // number of factors making up t
};
std::string describe(const AInfinityCase& c);
/// Replays the case analysis on a finite factorization; every factor must lie in A.
AInfinityCase claim2_classify(const std::vector<Word>& factors, const std::function<bool(std::string_view)>& L);

}  // namespace omegapow
