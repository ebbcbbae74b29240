#pragma once
// Eraser semantics, the language L3 = { balanced words over Σ ∪ {BS} }, and
// the exponentiation substitution a ↦ L3·a on machines.

#include <optional>
#include <string_view>

#include "omegapow/machine.hpp"

namespace omegapow {

/// nullopt is the Underflow marker.
using EvalResult = std::optional<Word>;

Word eval_tilde(std::string_view w);
EvalResult eval_approx(std::string_view w);
bool in_l3(std::string_view w);
/// Interval parser for S -> a S BS S | a BS S | λ, independent of eval_approx.
bool l3_grammar_accepts(std::string_view w);

/// Deterministic one-counter machine for L3·a over sigma_a ∪ {BS}.
CounterMachine l3a_machine(char a, std::string_view sigma_a);
/// Real-time machine with k+1 counters for h(L(m)), h(a) = L3·a.
CounterMachine exp_substitute(const CounterMachine& m);
/// Definitional check of u ∈ h(L) given membership in L: split u into L3·a factors.
bool in_exp_image(std::string_view u, const std::function<bool(std::string_view)>& base_member);

Word remove_letter(std::string_view w, char d);

}  // namespace omegapow
