#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "value1/automaton.hpp"
#include "value1/error.hpp"
#include "value1/leak_finder.hpp"
#include "value1/markov_monoid.hpp"

namespace value1 {

inline constexpr std::size_t kDefaultBruteForceBudget = std::size_t{1} << 22;
inline constexpr unsigned long long kDefaultWordBudget = 1ULL << 24;

/// Exact maximum acceptance probability over all words of length at most
/// `max_len`; distinct distributions are explored once per level.
Rational brute_force_value(const Automaton& automaton, std::size_t max_len,
                           std::size_t budget = kDefaultBruteForceBudget);

/// n·|Q|!, the repetition count substituted for each iteration.
unsigned long long reification_exponent(unsigned long long n, std::size_t state_count);

namespace detail {

unsigned long long checked_mul(unsigned long long a, unsigned long long b);
unsigned long long checked_add(unsigned long long a, unsigned long long b);

template <typename Value>
unsigned long long reified_length(const BasicSharpExpression<Value>& e, unsigned long long g) {
  switch (e.kind()) {
    case ExprKind::Empty: return 0;
    case ExprKind::Letter: return 1;
    case ExprKind::Concat: return checked_add(reified_length(e.left(), g), reified_length(e.right(), g));
    case ExprKind::Iterate: return checked_mul(reified_length(e.child(), g), g);
  }
  return 0;
}

template <typename Value>
void reify_into(const BasicSharpExpression<Value>& e, unsigned long long g, Word& out) {
  switch (e.kind()) {
    case ExprKind::Empty: return;
    case ExprKind::Letter: out.push_back(e.letter_id()); return;
    case ExprKind::Concat:
      reify_into(e.left(), g, out);
      reify_into(e.right(), g, out);
      return;
    case ExprKind::Iterate: {
      Word block;
      reify_into(e.child(), g, block);
      for (unsigned long long i = 0; i < g; ++i) out.insert(out.end(), block.begin(), block.end());
      return;
    }
  }
}

template <typename Value>
Matrix reify_matrix_of(const Automaton& automaton, const BasicSharpExpression<Value>& e, unsigned long long g) {
  switch (e.kind()) {
    case ExprKind::Empty: return Matrix::identity(automaton.state_count());
    case ExprKind::Letter: return automaton.matrix(e.letter_id());
    case ExprKind::Concat:
      return reify_matrix_of(automaton, e.left(), g) * reify_matrix_of(automaton, e.right(), g);
    case ExprKind::Iterate: return power(reify_matrix_of(automaton, e.child(), g), g);
  }
  return {};
}

}  // namespace detail

/// The concrete word for `e` at parameter n; throws ResourceLimitError when
/// it would exceed `max_length` letters.
template <typename Value>
Word reify(const BasicSharpExpression<Value>& e, unsigned long long n, std::size_t state_count,
           unsigned long long max_length = kDefaultWordBudget) {
  if (n == 0) throw PreconditionError("reification parameter must be at least 1");
  const unsigned long long g = reification_exponent(n, state_count);
  if (detail::reified_length(e, g) > max_length) throw ResourceLimitError("reified word exceeds budget");
  Word out;
  detail::reify_into(e, g, out);
  return out;
}

/// Matrix of reify(e, n), computed from block powers without materializing
/// the word.
template <typename Value>
Matrix reify_matrix(const Automaton& automaton, const BasicSharpExpression<Value>& e, unsigned long long n) {
  if (n == 0) throw PreconditionError("reification parameter must be at least 1");
  return detail::reify_matrix_of(automaton, e, reification_exponent(n, automaton.state_count()));
}

struct EntryCheck {
  StateId source = 0;
  StateId target = 0;
  bool claimed = false;
  Rational measured;
  bool pass = false;
};

struct ReificationReport {
  std::size_t element = 0;
  std::string expression;
  unsigned long long n = 0;
  std::vector<EntryCheck> entries;  // all |Q|² pairs, row-major
  bool pass = false;                // false means inconclusive at n
};

/// Reifies every closure element at n and compares each entry against its
/// claimed bit: zeros must be at most `zero_eps`, ones at least `one_delta`.
std::vector<ReificationReport> check_consistency(const Automaton& automaton, const MonoidClosure& closure,
                                                 unsigned long long n, const Rational& zero_eps,
                                                 const Rational& one_delta);

struct LowerBoundCheck {
  std::string expression;
  unsigned depth = 0;
  Rational bound;               // p_min^(2^depth)
  bool support_matches = false; // support of the word equals the plus component
  bool bound_holds = false;     // every limit entry reaches the bound
  Rational min_limit_entry;     // smallest measured entry among limit ones
  bool pass() const { return support_matches && bound_holds; }
};

struct LowerBoundReport {
  unsigned long long n = 0;
  std::vector<LowerBoundCheck> checks;
  bool pass = false;
};

/// Throws PreconditionError if the closure holds a leak witness.
LowerBoundReport check_lower_bound(const Automaton& automaton, const ExtendedClosure& closure,
                                   const std::vector<ExtendedExpression>& expressions, unsigned long long n);

}  // namespace value1
