#pragma once
// Finite-stage reasoning about ω-powers: factorizations, prefixes of ω-power
// members, and membership of ultimately periodic words u·v^ω in L^∞.

#include <optional>
#include <string>
#include <vector>

#include "omegapow/machine.hpp"

namespace omegapow {

struct Factorization {
  std::vector<size_t> cuts;  // 0 = c_0 < c_1 < ... < c_r = |w|
  std::vector<uint8_t> certified;
  std::vector<Word> factors(std::string_view w) const;
};

/// All factorizations into nonempty L-words, at most `limit`, in lexicographic cut order.
std::vector<Factorization> factorizations(std::string_view w, const LanguageOracle& L, size_t limit);
/// Exhaustive enumeration of cut sets, for cross-checking.
std::vector<Factorization> factorizations_naive(std::string_view w, const LanguageOracle& L);

/// Is p a proper prefix of some member of L? Uses L.viable when present,
/// otherwise searches extensions of length up to `extension_bound`.
bool is_proper_prefix_of_member(std::string_view p, const LanguageOracle& L, size_t extension_bound = 8);
bool is_omega_power_prefix(std::string_view w, const LanguageOracle& L, size_t extension_bound = 8);

struct UPWord {
  Word u, v;
  char at(size_t i) const { return i < u.size() ? u[i] : v[(i - u.size()) % v.size()]; }
};

/// u·v^ω = (stem factors)·(cycle factors)^ω with every factor nonempty and in L.
struct LassoCertificate {
  std::vector<Word> stem;
  std::vector<Word> cycle;
};
bool replay_certificate(const UPWord& x, const CounterMachine& m, const LassoCertificate& c);

enum class Verdict { Yes, NoBounded, Unknown };
std::string verdict_name(Verdict v);
struct UPResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<LassoCertificate> certificate;
  size_t explored = 0;
  bool counter_cap_hit = false, node_cap_hit = false;
};

/// Exact decision for a regular base given as a DFA.
bool up_membership_regular(const UPWord& x, const DFA& L);
UPResult up_membership_regular_certified(const UPWord& x, const DFA& L);
/// Bounded search for a counter-machine base: counters stay <= counter_cap and
/// at most unroll_cap configurations are explored. No(bounded) only when
/// neither cap was reached, so the search covered every run.
UPResult up_membership_bounded(const UPWord& x, const CounterMachine& m, uint32_t counter_cap, size_t unroll_cap);

CounterMachine dfa_machine(const DFA& d);

}  // namespace omegapow
