#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_set>

#include "value1/automaton.hpp"
#include "value1/closure.hpp"
#include "value1/limit_word.hpp"
#include "value1/sharp_expression.hpp"

namespace value1 {

using SharpExpression = BasicSharpExpression<LimitWord>;
using MonoidClosure = Closure<LimitWord>;

/// Letter abstractions of every letter, indexed by LetterId.
std::vector<LimitWord> letter_abstractions(const Automaton& automaton);

/// The Markov monoid. Throws ResourceLimitError past `cap` elements.
MonoidClosure markov_monoid(const Automaton& automaton, std::size_t cap = kDefaultElementCap);

/// u(i,s) = 1 implies s final, for the initial state i.
bool is_value1_witness(const LimitWord& u, const Automaton& automaton);

struct WitnessMatch {
  LimitWord element;
  SharpExpression expression;
};

/// Least (row-major lexicographic) witness element of the closure.
std::optional<WitnessMatch> find_value1_witness(const MonoidClosure& closure, const Automaton& automaton);

/// Maximum minimal sharp-height over the closure.
unsigned sharp_height(const MonoidClosure& closure);

/// Searches for a witness among sharp-expressions of height at most |Q| that
/// iterate only unstable idempotents. Independent of markov_monoid: products
/// are explored depth-first by left multiplication, one height bound at a
/// time, stopping at the first witness.
std::optional<SharpExpression> bounded_witness_search(const Automaton& automaton,
                                                      std::size_t cap = kDefaultElementCap);

/// The two-sided ideal G·v·G. Requires v in the closure.
std::unordered_set<LimitWord> two_sided_ideal(const LimitWord& v, const MonoidClosure& closure);

/// u <=_J v, i.e. u = x·v·y for some x, y in the closure. Throws
/// PreconditionError if u or v is not an element.
bool j_leq(const LimitWord& u, const LimitWord& v, const MonoidClosure& closure);

/// Symbolic upper bound val <= 1 - p_min^(2^h) with h = 3·J^2, where J is
/// the size of the extended Markov monoid.
struct UpperBound {
  Rational p_min;
  std::size_t monoid_size = 0;           // |Markov monoid|
  std::size_t extended_monoid_size = 0;  // J
  unsigned long long exponent = 0;       // h
  std::string formula = "1 - p_min^(2^h), h = 3*J^2";
};

enum class Verdict {
  Value1,         // a witness exists; sound for every automaton
  NoWitness,      // no witness and leaktight: the upper bound holds
  NotApplicable,  // no witness but not leaktight: no conclusion
};

struct Certificate {
  Verdict verdict = Verdict::NoWitness;
  std::optional<WitnessMatch> witness;
  UpperBound bound;
  bool leaktight = true;
};

Certificate decide_value1(const Automaton& automaton, std::size_t cap = kDefaultElementCap);

std::string to_string(Verdict v);

}  // namespace value1
