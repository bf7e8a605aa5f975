#include "value1/limit_word.hpp"

#include <bit>
#include <unordered_map>

#include "value1/error.hpp"

namespace value1 {

namespace {

std::uint64_t full_mask(std::size_t dim) {
  return dim == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << dim) - 1;
}

void require_idempotent(const LimitWord& u, const char* op) {
  if (!is_idempotent(u)) throw PreconditionError(std::string(op) + " requires an idempotent limit-word");
}

}  // namespace

std::vector<StateId> StateSet::members() const {
  std::vector<StateId> out;
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<StateId>(std::countr_zero(b)));
  return out;
}

LimitWord LimitWord::from_rows(std::size_t dim, std::vector<std::uint64_t> rows) {
  if (dim == 0 || dim > kMaxLimitWordDim) throw PreconditionError("limit-word dimension must be in 1..64");
  if (rows.size() != dim) throw PreconditionError("limit-word row count does not match dimension");
  const std::uint64_t mask = full_mask(dim);
  for (std::uint64_t r : rows) {
    if (r == 0) throw PreconditionError("limit-word has a dead-end row");
    if (r & ~mask) throw PreconditionError("limit-word row has bits beyond its dimension");
  }
  return LimitWord(std::move(rows));
}

LimitWord LimitWord::identity(std::size_t dim) {
  std::vector<std::uint64_t> rows(dim);
  for (std::size_t i = 0; i < dim; ++i) rows[i] = std::uint64_t{1} << i;
  return from_rows(dim, std::move(rows));
}

LimitWord LimitWord::all_ones(std::size_t dim) {
  return from_rows(dim, std::vector<std::uint64_t>(dim, full_mask(dim)));
}

bool LimitWord::included_in(const LimitWord& other) const {
  if (dim() != other.dim()) throw PreconditionError("limit-word dimension mismatch");
  for (std::size_t s = 0; s < dim(); ++s) {
    if (rows_[s] & ~other.rows_[s]) return false;
  }
  return true;
}

std::strong_ordering operator<=>(const LimitWord& lhs, const LimitWord& rhs) {
  if (auto c = lhs.dim() <=> rhs.dim(); c != 0) return c;
  for (std::size_t s = 0; s < lhs.dim(); ++s) {
    const std::uint64_t diff = lhs.rows_[s] ^ rhs.rows_[s];
    if (diff == 0) continue;
    // The first differing column decides; a 0 there sorts first.
    const std::uint64_t lowest = diff & (~diff + 1);
    return (lhs.rows_[s] & lowest) ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return std::strong_ordering::equal;
}

LimitWord letter_abstraction(const Automaton& automaton, LetterId letter) {
  if (letter >= automaton.letter_count()) throw ValidationError("unknown letter id " + std::to_string(letter));
  const std::size_t n = automaton.state_count();
  if (n > kMaxLimitWordDim) throw PreconditionError("limit-words support at most 64 states");
  const Matrix& m = automaton.matrix(letter);
  std::vector<std::uint64_t> rows(n);
  for (StateId s = 0; s < n; ++s)
    for (StateId t = 0; t < n; ++t)
      if (sgn(m.at(s, t)) > 0) rows[s] |= std::uint64_t{1} << t;
  return LimitWord::from_rows(n, std::move(rows));
}

LimitWord concat(const LimitWord& u, const LimitWord& v) {
  if (u.dim() != v.dim()) throw PreconditionError("limit-word dimension mismatch");
  std::vector<std::uint64_t> rows(u.dim());
  for (std::size_t s = 0; s < u.dim(); ++s) {
    std::uint64_t acc = 0;
    for (std::uint64_t b = u.rows_[s]; b != 0; b &= b - 1) acc |= v.rows_[std::countr_zero(b)];
    rows[s] = acc;
  }
  return LimitWord(std::move(rows));
}

bool is_idempotent(const LimitWord& u) { return concat(u, u) == u; }

LimitWord power_to_idempotent(const LimitWord& u) {
  // Powers u, u^2, ... are eventually periodic; the idempotent power is u^k for
  // the unique multiple k of the period lying in [index, index + period).
  std::vector<LimitWord> powers{u};
  std::unordered_map<LimitWord, std::size_t> seen{{u, 1}};
  std::size_t index = 0;
  std::size_t period = 0;
  for (;;) {
    LimitWord next = concat(powers.back(), u);
    const std::size_t k = powers.size() + 1;
    auto [it, inserted] = seen.emplace(next, k);
    if (!inserted) {
      index = it->second;
      period = k - it->second;
      break;
    }
    powers.push_back(std::move(next));
  }
  std::size_t k = ((index + period - 1) / period) * period;
  return powers[k - 1];
}

StateSet recurrent_states(const LimitWord& u) {
  require_idempotent(u, "recurrent_states");
  StateSet out;
  for (StateId s = 0; s < u.dim(); ++s) {
    bool recurrent = true;
    for (StateId t : u.row(s).members()) {
      if (!u.test(t, s)) {
        recurrent = false;
        break;
      }
    }
    if (recurrent) out.insert(s);
  }
  return out;
}

LimitWord iterate(const LimitWord& u) {
  const std::uint64_t keep = recurrent_states(u).bits();
  std::vector<std::uint64_t> rows(u.dim());
  for (std::size_t s = 0; s < u.dim(); ++s) rows[s] = u.rows_[s] & keep;
  return LimitWord(std::move(rows));
}

RecurrencePartition recurrence_classes(const LimitWord& u) {
  RecurrencePartition out;
  out.recurrent = recurrent_states(u);
  const std::size_t n = u.dim();
  // i ~ j iff u(i,j) and u(j,i); transitive by idempotency.
  for (StateId i = 0; i < n; ++i) {
    if (u.test(i, i)) out.support.insert(i);
  }
  StateSet assigned;
  for (StateId i : out.support.members()) {
    if (assigned.contains(i)) continue;
    StateSet cls;
    for (StateId j : out.support.members()) {
      if (u.test(i, j) && u.test(j, i)) cls.insert(j);
    }
    assigned = StateSet(assigned.bits() | cls.bits());
    out.classes.push_back(cls);
  }
  return out;
}

StateSet image(StateSet from, const LimitWord& u) {
  std::uint64_t acc = 0;
  for (StateId s : from.members()) acc |= u.row(s).bits();
  return StateSet(acc);
}

std::string render(const LimitWord& u, std::span<const std::string> state_names) {
  std::string out;
  for (StateId s = 0; s < u.dim(); ++s) {
    out += state_names[s];
    out += " -> {";
    bool first = true;
    for (StateId t : u.row(s).members()) {
      if (!first) out += ',';
      out += state_names[t];
      first = false;
    }
    out += "}\n";
  }
  return out;
}

std::size_t LimitWordHash::operator()(const LimitWord& u) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ u.dim();
  for (std::uint64_t r : u.rows()) {
    h ^= r + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

}  // namespace value1
