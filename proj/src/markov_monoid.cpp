#include "value1/markov_monoid.hpp"

#include <unordered_map>

#include "value1/leak_finder.hpp"

namespace value1 {

std::vector<LimitWord> letter_abstractions(const Automaton& automaton) {
  std::vector<LimitWord> out;
  for (LetterId a = 0; a < automaton.letter_count(); ++a) out.push_back(letter_abstraction(automaton, a));
  return out;
}

MonoidClosure markov_monoid(const Automaton& automaton, std::size_t cap) {
  return saturate(LimitWord::identity(automaton.state_count()), letter_abstractions(automaton), cap);
}

bool is_value1_witness(const LimitWord& u, const Automaton& automaton) {
  for (StateId s : u.row(automaton.initial()).members()) {
    if (!automaton.is_final(s)) return false;
  }
  return true;
}

std::optional<WitnessMatch> find_value1_witness(const MonoidClosure& closure, const Automaton& automaton) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < closure.size(); ++i) {
    const LimitWord& u = closure.element(i);
    if (best && !(u < closure.element(*best))) continue;
    if (is_value1_witness(u, automaton)) best = i;
  }
  if (!best) return std::nullopt;
  return WitnessMatch{closure.element(*best), closure.provenance(*best)};
}

unsigned sharp_height(const MonoidClosure& closure) { return closure.max_height(); }

std::optional<SharpExpression> bounded_witness_search(const Automaton& automaton, std::size_t cap) {
  const LimitWord one = LimitWord::identity(automaton.state_count());
  if (is_value1_witness(one, automaton)) return SharpExpression::empty(one);

  std::vector<SharpExpression> generators;
  std::unordered_set<LimitWord> generator_values;
  for (LetterId a = 0; a < automaton.letter_count(); ++a) {
    auto e = SharpExpression::letter(a, letter_abstraction(automaton, a));
    if (generator_values.insert(e.value()).second) generators.push_back(std::move(e));
  }

  const unsigned bound = static_cast<unsigned>(automaton.state_count());
  for (unsigned height = 0; height <= bound; ++height) {
    for (const SharpExpression& g : generators) {
      if (is_value1_witness(g.value(), automaton)) return g;
    }
    std::unordered_map<LimitWord, SharpExpression> visited;
    std::vector<SharpExpression> stack(generators.rbegin(), generators.rend());
    while (!stack.empty()) {
      SharpExpression x = std::move(stack.back());
      stack.pop_back();
      if (!visited.emplace(x.value(), x).second) continue;
      if (visited.size() > cap) throw ResourceLimitError("witness search exceeded the element cap");
      if (is_value1_witness(x.value(), automaton)) return x;
      for (const SharpExpression& g : generators) {
        LimitWord y = concat(g.value(), x.value());
        if (!visited.contains(y)) stack.push_back(SharpExpression::concat(g, x));
      }
    }
    if (height == bound) break;

    bool grew = false;
    for (const auto& [value, expr] : visited) {
      if (!is_idempotent(value)) continue;
      LimitWord sharp = iterate(value);
      if (sharp == value || generator_values.contains(sharp)) continue;
      generator_values.insert(sharp);
      generators.push_back(SharpExpression::iterate(expr));
      grew = true;
    }
    if (!grew) break;
  }
  return std::nullopt;
}

std::unordered_set<LimitWord> two_sided_ideal(const LimitWord& v, const MonoidClosure& closure) {
  if (!closure.contains(v)) throw PreconditionError("j_leq: element not in the closure");
  std::unordered_set<LimitWord> ideal{v};
  std::vector<LimitWord> frontier{v};
  while (!frontier.empty()) {
    LimitWord x = std::move(frontier.back());
    frontier.pop_back();
    for (std::size_t g : closure.generators()) {
      const LimitWord& gen = closure.element(g);
      for (LimitWord y : {concat(gen, x), concat(x, gen)}) {
        if (ideal.insert(y).second) frontier.push_back(std::move(y));
      }
    }
  }
  return ideal;
}

bool j_leq(const LimitWord& u, const LimitWord& v, const MonoidClosure& closure) {
  if (!closure.contains(u)) throw PreconditionError("j_leq: element not in the closure");
  return two_sided_ideal(v, closure).contains(u);
}

Certificate decide_value1(const Automaton& automaton, std::size_t cap) {
  const MonoidClosure closure = markov_monoid(automaton, cap);
  const ExtendedClosure extended = extended_markov_monoid(automaton, cap);

  Certificate out;
  out.witness = find_value1_witness(closure, automaton);
  out.leaktight = !find_leak_witness(extended).has_value();
  out.bound.p_min = min_transition_probability(automaton);
  out.bound.monoid_size = closure.size();
  out.bound.extended_monoid_size = extended.size();
  const unsigned long long j = extended.size();
  out.bound.exponent = 3ULL * j * j;
  if (out.witness) {
    out.verdict = Verdict::Value1;
  } else {
    out.verdict = out.leaktight ? Verdict::NoWitness : Verdict::NotApplicable;
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Value1:
      return "yes";
    case Verdict::NoWitness:
      return "no-with-bound";
    case Verdict::NotApplicable:
      return "no-unreliable";
  }
  return {};
}

}  // namespace value1
