#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "value1/automaton.hpp"

namespace value1 {

/// Set of states, bit s set iff state s is a member. Supports up to 64 states.
class StateSet {
 public:
  constexpr StateSet() = default;
  constexpr explicit StateSet(std::uint64_t bits) : bits_(bits) {}

  constexpr bool contains(StateId s) const noexcept { return (bits_ >> s) & 1U; }
  constexpr void insert(StateId s) noexcept { bits_ |= std::uint64_t{1} << s; }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  int size() const noexcept { return __builtin_popcountll(bits_); }
  constexpr std::uint64_t bits() const noexcept { return bits_; }
  std::vector<StateId> members() const;

  friend constexpr bool operator==(StateSet, StateSet) = default;
  friend constexpr auto operator<=>(StateSet, StateSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

inline constexpr std::size_t kMaxLimitWordDim = 64;

/// Boolean Q x Q matrix without dead-end rows, bit-packed one row per word.
///
/// Ordering is lexicographic in row-major bit order: bits (0,0), (0,1), ...
/// compared with 0 < 1.
class LimitWord {
 public:
  LimitWord() = default;

  /// Throws PreconditionError on a dead-end row, a stray bit, or dim > 64.
  static LimitWord from_rows(std::size_t dim, std::vector<std::uint64_t> rows);
  static LimitWord identity(std::size_t dim);
  static LimitWord all_ones(std::size_t dim);

  std::size_t dim() const noexcept { return rows_.size(); }
  bool test(StateId s, StateId t) const { return (rows_[s] >> t) & 1U; }
  StateSet row(StateId s) const { return StateSet(rows_[s]); }
  std::span<const std::uint64_t> rows() const noexcept { return rows_; }

  /// Entrywise this <= other.
  bool included_in(const LimitWord& other) const;

  friend bool operator==(const LimitWord&, const LimitWord&) = default;
  friend std::strong_ordering operator<=>(const LimitWord& lhs, const LimitWord& rhs);

 private:
  explicit LimitWord(std::vector<std::uint64_t> rows) : rows_(std::move(rows)) {}
  friend LimitWord concat(const LimitWord&, const LimitWord&);
  friend LimitWord iterate(const LimitWord&);

  std::vector<std::uint64_t> rows_;
};

/// Support of M_a.
LimitWord letter_abstraction(const Automaton& automaton, LetterId letter);

/// Boolean matrix product. Throws PreconditionError on dimension mismatch.
LimitWord concat(const LimitWord& u, const LimitWord& v);

bool is_idempotent(const LimitWord& u);

/// The idempotent power of u (equal to u^(dim!)).
LimitWord power_to_idempotent(const LimitWord& u);

/// States s with u(s,t) => u(t,s) for all t. Requires u idempotent.
StateSet recurrent_states(const LimitWord& u);

/// Keeps exactly the edges into recurrent states. Requires u idempotent.
LimitWord iterate(const LimitWord& u);

/// States carrying a mutual edge (Z_u) and their partition by mutual
/// one-step reachability. `recurrent` is reported alongside.
struct RecurrencePartition {
  StateSet recurrent;
  StateSet support;
  std::vector<StateSet> classes;  // sorted by least member
};

RecurrencePartition recurrence_classes(const LimitWord& u);

/// S·u: states reachable in one step of u from some member of S.
StateSet image(StateSet from, const LimitWord& u);

/// "s -> {t1,t2}" per row, newline-terminated.
std::string render(const LimitWord& u, std::span<const std::string> state_names);

struct LimitWordHash {
  std::size_t operator()(const LimitWord& u) const noexcept;
};

}  // namespace value1

template <>
struct std::hash<value1::LimitWord> : value1::LimitWordHash {};
