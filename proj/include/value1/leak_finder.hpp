#pragma once

#include <cstddef>
#include <optional>

#include "value1/automaton.hpp"
#include "value1/closure.hpp"
#include "value1/extended_limit_word.hpp"

namespace value1 {

using ExtendedExpression = BasicSharpExpression<ExtendedLimitWord>;
using ExtendedClosure = Closure<ExtendedLimitWord>;

/// Closure of {(a,a)} ∪ {(1,1)} under componentwise concat and (u,u+)# = (u#,u+).
ExtendedClosure extended_markov_monoid(const Automaton& automaton, std::size_t cap = kDefaultElementCap);

/// Idempotent (u,u+) with r u-recurrent, u+(r,q) = 1 and u(q,r) = 0.
struct LeakWitness {
  ExtendedLimitWord element;
  ExtendedExpression expression;
  StateId r = 0;
  StateId q = 0;
};

/// Checks the three conditions on a single element; returns the least (r,q).
std::optional<LeakWitness> leak_in(const ExtendedLimitWord& element);

/// Least leak witness: smallest element first, then smallest (r,q).
std::optional<LeakWitness> find_leak_witness(const ExtendedClosure& closure);

struct LeaktightResult {
  bool leaktight = true;
  std::optional<LeakWitness> witness;
  std::size_t extended_monoid_size = 0;
};

LeaktightResult decide_leaktight(const Automaton& automaton, std::size_t cap = kDefaultElementCap);

}  // namespace value1
