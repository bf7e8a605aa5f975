#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "value1/automaton.hpp"

namespace value1 {

using Bindings = std::map<std::string, unsigned long long>;

/// A letter or parenthesized group raised to a literal or named exponent.
struct FamilyAtom {
  bool is_group = false;
  LetterId letter = 0;
  std::vector<FamilyAtom> group;
  std::optional<std::string> parameter;  // exponent name, if any
  unsigned long long literal = 1;        // exponent when no parameter
};

/// Parameterized word template such as "(b a^n)^m": atoms separated by
/// spaces, `^NAME` or `^NAT` exponents, parentheses for groups.
struct WordFamily {
  std::vector<FamilyAtom> atoms;

  std::set<std::string> parameters() const;
};

WordFamily parse_family(std::string_view text, const Automaton& automaton);

/// Length of the instantiated word; throws ValidationError on an unbound
/// parameter and ResourceLimitError on overflow.
unsigned long long family_length(const WordFamily& family, const Bindings& bindings);

/// The concrete word; throws ResourceLimitError beyond `max_length` letters.
Word instantiate(const WordFamily& family, const Bindings& bindings, unsigned long long max_length);

/// Exact matrix of the instantiated word, built from block powers.
Matrix family_matrix(const Automaton& automaton, const WordFamily& family, const Bindings& bindings);

struct FamilyRow {
  Bindings bindings;
  Rational value;
};

/// Acceptance probability at every point of the grid (cartesian product of
/// the value lists), in lexicographic order of the parameter names.
std::vector<FamilyRow> evaluate_family(const Automaton& automaton, const WordFamily& family,
                                       const std::map<std::string, std::vector<unsigned long long>>& grid,
                                       unsigned long long max_length = 1ULL << 40);

}  // namespace value1
