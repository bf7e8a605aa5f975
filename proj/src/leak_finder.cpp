#include "value1/leak_finder.hpp"

#include "value1/markov_monoid.hpp"

namespace value1 {

ExtendedLimitWord iterate(const ExtendedLimitWord& u) {
  if (!is_idempotent(u.plus)) throw PreconditionError("iteration of a non-idempotent extended limit-word");
  return {iterate(u.limit), u.plus};
}

ExtendedClosure extended_markov_monoid(const Automaton& automaton, std::size_t cap) {
  std::vector<ExtendedLimitWord> letters;
  for (const LimitWord& a : letter_abstractions(automaton)) letters.push_back({a, a});
  const LimitWord one = LimitWord::identity(automaton.state_count());
  return saturate(ExtendedLimitWord{one, one}, letters, cap);
}

std::optional<LeakWitness> leak_in(const ExtendedLimitWord& element) {
  if (!is_idempotent(element)) return std::nullopt;
  const StateSet recurrent = recurrent_states(element.limit);
  for (StateId r : recurrent.members()) {
    for (StateId q : element.plus.row(r).members()) {
      if (!element.limit.test(q, r)) return LeakWitness{element, {}, r, q};
    }
  }
  return std::nullopt;
}

std::optional<LeakWitness> find_leak_witness(const ExtendedClosure& closure) {
  std::optional<LeakWitness> best;
  for (std::size_t i = 0; i < closure.size(); ++i) {
    const ExtendedLimitWord& e = closure.element(i);
    if (best && !(e < best->element)) continue;
    if (auto w = leak_in(e)) {
      w->expression = closure.provenance(i);
      best = std::move(w);
    }
  }
  return best;
}

LeaktightResult decide_leaktight(const Automaton& automaton, std::size_t cap) {
  const ExtendedClosure closure = extended_markov_monoid(automaton, cap);
  LeaktightResult out;
  out.witness = find_leak_witness(closure);
  out.leaktight = !out.witness.has_value();
  out.extended_monoid_size = closure.size();
  return out;
}

}  // namespace value1
