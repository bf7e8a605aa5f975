#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "value1/error.hpp"
#include "value1/sharp_expression.hpp"

namespace value1 {

inline constexpr std::size_t kDefaultElementCap = std::size_t{1} << 20;

/// A finitely generated monoid closed under concatenation and under iteration
/// of idempotents, with a minimal-sharp-height derivation per element.
template <class Value>
class Closure {
 public:
  using Expression = BasicSharpExpression<Value>;

  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<Value>& elements() const noexcept { return elements_; }
  const Value& element(std::size_t i) const { return elements_.at(i); }
  const Expression& provenance(std::size_t i) const { return provenance_.at(i); }
  unsigned height(std::size_t i) const { return heights_.at(i); }

  std::optional<std::size_t> find(const Value& v) const {
    auto it = index_.find(v);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const Value& v) const { return index_.contains(v); }

  /// Indices of the monoid generators: the letter images followed by every
  /// iterated element introduced during saturation.
  const std::vector<std::size_t>& generators() const noexcept { return generators_; }

  std::size_t identity_index() const noexcept { return identity_; }

  unsigned max_height() const {
    unsigned h = 0;
    for (unsigned x : heights_) h = std::max(h, x);
    return h;
  }

  template <class V>
  friend Closure<V> saturate(const V& identity, const std::vector<V>& letters, std::size_t cap);

 private:
  bool add(Value v, Expression e, unsigned height) {
    if (index_.contains(v)) return false;
    if (elements_.size() >= cap_) {
      throw ResourceLimitError("closure exceeded the element cap of " + std::to_string(cap_));
    }
    index_.emplace(v, elements_.size());
    elements_.push_back(std::move(v));
    provenance_.push_back(std::move(e));
    heights_.push_back(height);
    return true;
  }

  // Right-multiplies every element in `pending` (and everything it produces)
  // by every generator until no new element appears.
  void extend(std::vector<std::size_t> pending, unsigned height) {
    for (std::size_t k = 0; k < pending.size(); ++k) {
      const std::size_t y = pending[k];
      for (std::size_t g : generators_) {
        Value product = concat(elements_[y], elements_[g]);
        if (index_.contains(product)) continue;
        Expression e = Expression::concat(provenance_[y], provenance_[g]);
        add(std::move(product), std::move(e), height);
        pending.push_back(elements_.size() - 1);
      }
    }
  }

  void add_generator(std::size_t g, unsigned height) {
    generators_.push_back(g);
    std::vector<std::size_t> pending{g};
    const std::size_t existing = elements_.size();
    for (std::size_t x = 0; x < existing; ++x) {
      Value product = concat(elements_[x], elements_[g]);
      if (index_.contains(product)) continue;
      add(std::move(product), Expression::concat(provenance_[x], provenance_[g]), height);
      pending.push_back(elements_.size() - 1);
    }
    extend(std::move(pending), height);
  }

  std::vector<Value> elements_;
  std::vector<Expression> provenance_;
  std::vector<unsigned> heights_;
  std::unordered_map<Value, std::size_t> index_;
  std::vector<std::size_t> generators_;
  std::size_t identity_ = 0;
  std::size_t cap_ = kDefaultElementCap;
};

/// Least set containing `identity` and `letters`, closed under concat and
/// under iterate on idempotents. Saturation is stratified by sharp-height:
/// the full concatenation closure at height h is computed before any
/// height-(h+1) iteration is introduced, and iterating a stable idempotent
/// (u# == u) adds nothing, so recorded heights are minimal.
template <class Value>
Closure<Value> saturate(const Value& identity, const std::vector<Value>& letters, std::size_t cap) {
  using Expression = BasicSharpExpression<Value>;
  Closure<Value> c;
  c.cap_ = cap;

  std::vector<std::size_t> pending;
  for (std::size_t a = 0; a < letters.size(); ++a) {
    if (c.add(letters[a], Expression::letter(a, letters[a]), 0)) {
      c.generators_.push_back(c.size() - 1);
      pending.push_back(c.size() - 1);
    }
  }
  if (c.add(identity, Expression::empty(identity), 0)) pending.push_back(c.size() - 1);
  c.identity_ = *c.find(identity);
  c.extend(std::move(pending), 0);

  std::size_t scanned = 0;
  for (unsigned level = 1;; ++level) {
    std::vector<std::size_t> sources;
    std::vector<Value> sharps;
    const std::size_t end = c.size();
    for (std::size_t i = scanned; i < end; ++i) {
      if (!is_idempotent(c.elements_[i])) continue;
      Value s = iterate(c.elements_[i]);
      if (s == c.elements_[i] || c.contains(s)) continue;
      if (std::find(sharps.begin(), sharps.end(), s) != sharps.end()) continue;
      sources.push_back(i);
      sharps.push_back(std::move(s));
    }
    scanned = end;
    if (sources.empty()) break;
    for (std::size_t k = 0; k < sources.size(); ++k) {
      if (c.contains(sharps[k])) continue;
      c.add(sharps[k], Expression::iterate(c.provenance_[sources[k]]), level);
      c.add_generator(c.size() - 1, level);
    }
  }
  return c;
}

}  // namespace value1
