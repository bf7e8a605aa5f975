#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "value1/rational.hpp"

namespace value1 {

using StateId = std::size_t;
using LetterId = std::size_t;
using Word = std::vector<LetterId>;

/// Dense square matrix of exact rationals.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

  static Matrix identity(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  Rational& at(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const Rational& at(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }

  Rational row_sum(std::size_t row) const;

  friend Matrix operator*(const Matrix& lhs, const Matrix& rhs);
  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Rational> data_;
};

/// matrix^exponent by repeated squaring (identity for exponent 0).
Matrix power(const Matrix& matrix, unsigned long long exponent);

/// Probability distribution over states; weights sum to exactly 1.
struct Distribution {
  std::vector<Rational> weights;

  Distribution step(const Matrix& m) const;
  friend bool operator==(const Distribution&, const Distribution&) = default;
};

/// Probabilistic automaton over finite words with exact rational transitions.
///
/// Construction validates every invariant: each letter matrix is square over
/// the state set, entries lie in [0,1], rows sum exactly to 1, the initial
/// state exists and finals are state indices. Names must be unique and
/// non-empty. Immutable afterwards.
class Automaton {
 public:
  Automaton(std::vector<std::string> states, std::vector<std::string> alphabet,
            std::vector<Matrix> matrices, StateId initial, std::vector<StateId> finals);

  std::size_t state_count() const noexcept { return states_.size(); }
  std::size_t letter_count() const noexcept { return alphabet_.size(); }
  const std::vector<std::string>& states() const noexcept { return states_; }
  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
  const Matrix& matrix(LetterId letter) const { return matrices_.at(letter); }
  StateId initial() const noexcept { return initial_; }
  /// Sorted, duplicate-free.
  const std::vector<StateId>& finals() const noexcept { return finals_; }
  bool is_final(StateId s) const;

  std::optional<StateId> find_state(std::string_view name) const;
  std::optional<LetterId> find_letter(std::string_view name) const;

  Distribution initial_distribution() const;

 private:
  std::vector<std::string> states_;
  std::vector<std::string> alphabet_;
  std::vector<Matrix> matrices_;
  StateId initial_;
  std::vector<StateId> finals_;
  std::vector<bool> final_mask_;
};

/// Reads the JSON interchange format. Throws ParseError on malformed JSON
/// or wrong field types and ValidationError on model violations.
Automaton parse_automaton(std::string_view text);

/// Serializes to the interchange format (only positive entries are listed).
std::string serialize_automaton(const Automaton& automaton);

/// Parses a word. Tokens separated by whitespace are letter names; a single
/// token that is not itself a letter is split into one-character letters.
Word parse_word(const Automaton& automaton, std::string_view text);
std::string render_word(const Automaton& automaton, const Word& word);

/// Product M_{a1}···M_{an}; the identity for the empty word.
Matrix word_matrix(const Automaton& automaton, const Word& word);

/// Sum over finals of the initial row of word_matrix.
Rational acceptance_probability(const Automaton& automaton, const Word& word);

/// Acceptance mass of a distribution.
Rational accepted_mass(const Automaton& automaton, const Distribution& d);

/// Smallest strictly positive transition probability (p_min).
Rational min_transition_probability(const Automaton& automaton);

/// Fresh initial state that moves to itself or to either component's initial
/// state with probability 1/3 each; components are copied verbatim.
/// States are ordered: fresh initial, then A's states, then B's.
Automaton parallel_composition(const Automaton& a, const Automaton& b);

/// Cartesian product with multiplied probabilities; finals are F_A x F_B.
/// Pair (s,t) has index s * |Q_B| + t.
Automaton synchronized_product(const Automaton& a, const Automaton& b);

}  // namespace value1
