#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "value1/automaton.hpp"

namespace value1 {

/// All transition probabilities in {0, 1/2, 1}.
bool is_simple(const Automaton& automaton);

/// An Automaton known to be simple. Throws ValidationError otherwise.
class SimpleAutomaton {
 public:
  explicit SimpleAutomaton(Automaton automaton);
  const Automaton& automaton() const noexcept { return automaton_; }

 private:
  Automaton automaton_;
};

/// Layout of the fresh alphabet: star, merge, [finish], then check(a,q) for
/// every (a,q) in letter-major order, then apply(a,q) likewise.
class ReductionAlphabet {
 public:
  ReductionAlphabet(const Automaton& source, bool with_finish);

  LetterId star() const noexcept { return 0; }
  LetterId merge() const noexcept { return 1; }
  std::optional<LetterId> finish() const noexcept {
    return with_finish_ ? std::optional<LetterId>(2) : std::nullopt;
  }
  LetterId check(LetterId a, StateId q) const noexcept { return base() + a * states_ + q; }
  LetterId apply(LetterId a, StateId q) const noexcept { return base() + letters_ * states_ + a * states_ + q; }
  std::size_t size() const noexcept { return base() + 2 * letters_ * states_; }

  /// "star", "merge", "finish", "check:a:q", "apply:a:q".
  std::vector<std::string> names(const Automaton& source) const;

  /// Image of a source word under the hat morphism: per letter a,
  /// check(a,q0) star apply(a,q0) ... check(a,q_{n-1}) star apply(a,q_{n-1}) merge.
  Word hat(const Word& word) const;

 private:
  std::size_t base() const noexcept { return with_finish_ ? 3 : 2; }

  std::size_t states_;
  std::size_t letters_;
  bool with_finish_;
};

struct ReductionOutput {
  Automaton automaton;
  ReductionAlphabet letters;
  std::size_t checker_states = 0;  // states of the embedded syntactic checker (full reduction only)
};

/// The hat morphism rendered as fresh letter names.
std::vector<std::string> hat_morphism(const SimpleAutomaton& source, const Word& word);

/// Number of (state, letter) pairs whose row has an entry strictly between 0 and 1.
std::size_t count_probabilistic_transitions(const Automaton& automaton);

/// Simulation with one probabilistic transition, exact on the image of hat:
/// Prob_A(w) = Prob_B(hat(w)).
ReductionOutput reduce_basic(const SimpleAutomaton& source);

/// Replaces every 1/2-branch by a retry gadget driven by a fresh letter
/// "sharp" with probabilities 1/3 and 2/3. Two sharps make one round.
Automaton third_simulation(const SimpleAutomaton& source);

/// The standalone retry gadget: states g0, gT, gW, r0, r1 over {sharp},
/// initial g0, final {r0}.
Automaton third_gadget();

/// Probability that the gadget has decided r0 after `rounds` rounds.
Rational gadget_decision_probability(std::size_t rounds);

/// Simulation with one probabilistic transition and a fresh letter finish;
/// Prob_B((hat(w) finish)^p) increases to Prob_A(w) as p grows.
ReductionOutput reduce_full(const SimpleAutomaton& source);

}  // namespace value1
