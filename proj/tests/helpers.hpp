#pragma once
// Shared generators for the unit tests.

#include <functional>
#include <random>
#include <string>

#include "omegapow/machine.hpp"

namespace testutil {

using namespace omegapow;

/// Random well-formed machine. λ moves only go forward in state order and never
/// leave the initial state, so chains are bounded by the state count.
inline CounterMachine random_machine(std::mt19937_64& rng, uint32_t states, int k, const std::string& alphabet,
                                     bool lambdas, size_t transitions) {
  auto pick = [&](uint64_t n) { return uint64_t(std::uniform_int_distribution<uint64_t>(0, n - 1)(rng)); };
  CounterMachine m;
  m.k = k;
  m.alphabet = alphabet;
  m.real_time = !lambdas;
  m.lambda_chain_bound = int(states);
  for (uint32_t q = 0; q < states; ++q) m.add_state(pick(3) == 0);
  for (size_t i = 0; i < transitions; ++i) {
    Transition t;
    t.src = uint32_t(pick(states));
    t.dst = uint32_t(pick(states));
    if (lambdas && t.src != m.initial && pick(4) == 0) {
      t.letter = kEps;
      if (t.src + 1 >= states) continue;
      t.dst = t.src + 1 + uint32_t(pick(states - t.src - 1));
    } else {
      t.letter = alphabet[pick(alphabet.size())];
    }
    for (int c = 0; c < k; ++c) {
      const auto d = pick(3);
      const auto z = pick(3);
      if (z == 1) t.care |= uint8_t(1u << c);
      if (z == 2) t.care |= uint8_t(1u << c), t.pos |= uint8_t(1u << c);
      if (d == 0) t.inc |= uint8_t(1u << c);
      if (d == 1) {
        t.dec |= uint8_t(1u << c);
        t.care |= uint8_t(1u << c);
        t.pos |= uint8_t(1u << c);
      }
    }
    m.add(t);
  }
  m.canonicalize();
  return m;
}

inline DFA random_dfa(std::mt19937_64& rng, uint32_t states, const std::string& alphabet) {
  DFA d;
  d.alphabet = alphabet;
  d.num_states = states;
  d.finals.resize(states);
  for (auto& f : d.finals) f = rng() % 2;
  d.delta.resize(states * alphabet.size());
  for (auto& x : d.delta) x = uint32_t(rng() % states);
  return d;
}

/// Does w split as f(x) for some x accepted by `member`? Brute force over preimages.
inline bool in_morphic_image(std::string_view w, const LetterMorphism& f, const std::function<bool(std::string_view)>& member,
                             std::string& x) {
  if (w.empty()) return member(x);
  for (const auto& [a, img] : f.image) {
    if (!img.empty() && w.substr(0, img.size()) == img) {
      x.push_back(a);
      const bool ok = in_morphic_image(w.substr(img.size()), f, member, x);
      x.pop_back();
      if (ok) return true;
    }
  }
  return false;
}

}  // namespace testutil
