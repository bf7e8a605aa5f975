#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "value1/automaton.hpp"

namespace value1 {

bool is_deterministic(const Automaton& automaton);

/// Rank function: non-decreasing along every positive transition, with at
/// most one same-rank successor per (state, letter).
struct HierarchyWitness {
  std::vector<unsigned> rank;
};

/// True iff `witness` satisfies both hierarchy conditions on `automaton`.
bool validate_hierarchy(const Automaton& automaton, const HierarchyWitness& witness);

/// Ranks are the topological order of the strongly connected components of
/// the all-letters support graph; such a rank exists iff no (state, letter)
/// has two successors inside the state's own component.
std::optional<HierarchyWitness> is_hierarchical(const Automaton& automaton);

inline constexpr std::size_t kDefaultSubsetStateCap = 12;

/// Subset graph over non-empty S with edges S -> S·a and, when S·a = S,
/// S -> S·a#, where a# iterates the idempotent power of a. True iff every
/// cycle is a self-loop. Throws ResourceLimitError when |Q| > cap.
bool is_sharp_acyclic(const Automaton& automaton, std::size_t state_cap = kDefaultSubsetStateCap);

}  // namespace value1
