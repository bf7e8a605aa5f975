#pragma once

#include <compare>
#include <functional>

#include "value1/limit_word.hpp"

namespace value1 {

/// Pair (u, u+): `limit` is subject to iteration, `plus` keeps every edge of
/// positive probability.
struct ExtendedLimitWord {
  LimitWord limit;
  LimitWord plus;

  friend bool operator==(const ExtendedLimitWord&, const ExtendedLimitWord&) = default;
  friend std::strong_ordering operator<=>(const ExtendedLimitWord&, const ExtendedLimitWord&) = default;
};

inline ExtendedLimitWord concat(const ExtendedLimitWord& u, const ExtendedLimitWord& v) {
  return {concat(u.limit, v.limit), concat(u.plus, v.plus)};
}

inline bool is_idempotent(const ExtendedLimitWord& u) { return is_idempotent(u.limit) && is_idempotent(u.plus); }

/// (u#, u+). Requires both components idempotent.
ExtendedLimitWord iterate(const ExtendedLimitWord& u);

}  // namespace value1

template <>
struct std::hash<value1::ExtendedLimitWord> {
  std::size_t operator()(const value1::ExtendedLimitWord& u) const noexcept {
    const value1::LimitWordHash h;
    return h(u.limit) * 31 + h(u.plus);
  }
};
