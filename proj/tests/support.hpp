#pragma once

#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "value1/automaton.hpp"
#include "value1/extended_limit_word.hpp"
#include "value1/limit_word.hpp"

namespace value1::testing {

inline std::string fixture_path(const std::string& name) { return std::string(VALUE1_FIXTURE_DIR) + "/" + name; }

inline std::string read_fixture(const std::string& name) {
  std::ifstream f(fixture_path(name), std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

inline Automaton load_fixture(const std::string& name) { return parse_automaton(read_fixture(name)); }

inline std::vector<std::string> numbered(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

inline std::vector<std::string> letter_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

/// States 0, L, R, T, B; L keeps weight x on a, R keeps 1-x.
inline Automaton fig1x(const Rational& x) {
  enum { O, L, R, T, B };
  Matrix a(5), b(5);
  a.at(O, O) = 1;
  a.at(L, L) = x;
  a.at(L, O) = 1 - x;
  a.at(R, R) = 1 - x;
  a.at(R, O) = x;
  a.at(T, T) = 1;
  a.at(B, B) = 1;
  b.at(O, L) = Rational(1, 2);
  b.at(O, R) = Rational(1, 2);
  b.at(L, T) = 1;
  b.at(R, B) = 1;
  b.at(T, T) = 1;
  b.at(B, B) = 1;
  return Automaton({"0", "L", "R", "T", "B"}, {"a", "b"}, {a, b}, O, {T});
}

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Row over the states in `mask` with random positive weights.
inline void fill_row(Matrix& m, StateId s, std::uint64_t mask, Rng& rng) {
  std::vector<std::pair<StateId, unsigned>> weights;
  unsigned total = 0;
  for (StateId t = 0; t < m.dim(); ++t) {
    if (!((mask >> t) & 1U)) continue;
    const unsigned w = static_cast<unsigned>(uniform(rng, 1, 3));
    weights.emplace_back(t, w);
    total += w;
  }
  for (auto [t, w] : weights) m.at(s, t) = Rational(w, total);
}

/// Mostly one or two successors, so closures stay sparse.
inline std::uint64_t sparse_mask(Rng& rng, std::size_t n) {
  static constexpr std::size_t kCounts[] = {1, 1, 2, 2, 3};
  const std::size_t want = std::min(n, kCounts[uniform(rng, 0, 4)]);
  std::uint64_t mask = 0;
  while (static_cast<std::size_t>(__builtin_popcountll(mask)) < want) mask |= std::uint64_t{1} << uniform(rng, 0, n - 1);
  return mask;
}

inline std::vector<StateId> random_finals(Rng& rng, std::size_t n) {
  std::vector<StateId> finals;
  for (StateId s = 0; s < n; ++s)
    if (uniform(rng, 0, 1)) finals.push_back(s);
  return finals;
}

inline Automaton random_automaton(Rng& rng, std::size_t max_states = 4, std::size_t max_letters = 2) {
  const std::size_t n = uniform(rng, 1, max_states);
  const std::size_t k = uniform(rng, 1, max_letters);
  std::vector<Matrix> ms(k, Matrix(n));
  for (auto& m : ms)
    for (StateId s = 0; s < n; ++s) fill_row(m, s, sparse_mask(rng, n), rng);
  return Automaton(numbered(n), letter_names(k), ms, 0, random_finals(rng, n));
}

inline Automaton random_deterministic(Rng& rng, std::size_t max_states = 5, std::size_t max_letters = 2) {
  const std::size_t n = uniform(rng, 1, max_states);
  const std::size_t k = uniform(rng, 1, max_letters);
  std::vector<Matrix> ms(k, Matrix(n));
  for (auto& m : ms)
    for (StateId s = 0; s < n; ++s) m.at(s, uniform(rng, 0, n - 1)) = 1;
  return Automaton(numbered(n), letter_names(k), ms, 0, random_finals(rng, n));
}

/// Draws a rank per state, then for every (state, letter) at most one
/// successor of equal rank and any number of higher rank.
inline Automaton random_hierarchical(Rng& rng, std::size_t max_states = 5, std::size_t max_letters = 2) {
  const std::size_t n = uniform(rng, 1, max_states);
  const std::size_t k = uniform(rng, 1, max_letters);
  std::vector<std::size_t> rank(n);
  for (auto& r : rank) r = uniform(rng, 0, 2);
  std::vector<Matrix> ms(k, Matrix(n));
  for (auto& m : ms) {
    for (StateId s = 0; s < n; ++s) {
      std::vector<StateId> same, higher;
      for (StateId t = 0; t < n; ++t) {
        if (rank[t] == rank[s]) same.push_back(t);
        if (rank[t] > rank[s]) higher.push_back(t);
      }
      std::uint64_t mask = 0;
      if (higher.empty() || uniform(rng, 0, 1)) mask |= std::uint64_t{1} << same[uniform(rng, 0, same.size() - 1)];
      for (StateId t : higher)
        if (uniform(rng, 0, 1)) mask |= std::uint64_t{1} << t;
      if (mask == 0) mask |= std::uint64_t{1} << higher[uniform(rng, 0, higher.size() - 1)];
      fill_row(m, s, mask, rng);
    }
  }
  return Automaton(numbered(n), letter_names(k), ms, 0, random_finals(rng, n));
}

/// Rows are either a point mass or 1/2-1/2 over two distinct states.
inline Automaton random_simple(Rng& rng, std::size_t n, std::size_t k) {
  std::vector<Matrix> ms(k, Matrix(n));
  for (auto& m : ms)
    for (StateId s = 0; s < n; ++s) {
      const StateId t = uniform(rng, 0, n - 1);
      const StateId u = uniform(rng, 0, n - 1);
      if (t == u) {
        m.at(s, t) = 1;
      } else {
        m.at(s, t) = Rational(1, 2);
        m.at(s, u) = Rational(1, 2);
      }
    }
  auto finals = random_finals(rng, n);
  return Automaton(numbered(n), letter_names(k), ms, 0, finals);
}

/// Same supports, fresh positive weights.
inline Automaton perturb(const Automaton& a, Rng& rng) {
  std::vector<Matrix> ms;
  for (LetterId x = 0; x < a.letter_count(); ++x) {
    Matrix m(a.state_count());
    for (StateId s = 0; s < a.state_count(); ++s) {
      std::uint64_t mask = 0;
      for (StateId t = 0; t < a.state_count(); ++t)
        if (a.matrix(x).at(s, t) > 0) mask |= std::uint64_t{1} << t;
      fill_row(m, s, mask, rng);
    }
    ms.push_back(std::move(m));
  }
  return Automaton(a.states(), a.alphabet(), ms, a.initial(), a.finals());
}

inline LimitWord random_limit_word(Rng& rng, std::size_t dim) {
  std::vector<std::uint64_t> rows(dim);
  for (auto& r : rows) r = uniform(rng, 1, (std::uint64_t{1} << dim) - 1);
  return LimitWord::from_rows(dim, rows);
}

// Naive oracles on plain boolean tables, independent of the bit-packed code.

using Table = std::vector<std::vector<bool>>;

inline Table table(const LimitWord& u) {
  Table t(u.dim(), std::vector<bool>(u.dim()));
  for (StateId s = 0; s < u.dim(); ++s)
    for (StateId r = 0; r < u.dim(); ++r) t[s][r] = u.test(s, r);
  return t;
}

inline Table naive_product(const Table& x, const Table& y) {
  const std::size_t n = x.size();
  Table z(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (x[i][k] && y[k][j]) z[i][j] = true;
  return z;
}

/// Recurrence through reachability: every state reachable from s reaches s.
inline std::vector<bool> naive_recurrent(const Table& u) {
  const std::size_t n = u.size();
  Table reach = u;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
  std::vector<bool> rec(n, true);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t)
      if (reach[s][t] && !reach[t][s]) rec[s] = false;
  return rec;
}

inline Table naive_iterate(const Table& u) {
  const auto rec = naive_recurrent(u);
  Table out = u;
  for (auto& row : out)
    for (std::size_t t = 0; t < row.size(); ++t) row[t] = row[t] && rec[t];
  return out;
}

/// Unstratified fixpoint: all pairwise products and all iterates until
/// nothing changes.
template <typename Value>
std::set<Value> naive_closure(const Value& identity, const std::vector<Value>& letters) {
  std::set<Value> s(letters.begin(), letters.end());
  s.insert(identity);
  for (bool changed = true; changed;) {
    changed = false;
    const std::vector<Value> snapshot(s.begin(), s.end());
    for (const auto& x : snapshot) {
      for (const auto& y : snapshot) changed |= s.insert(concat(x, y)).second;
      if (is_idempotent(x)) changed |= s.insert(iterate(x)).second;
    }
  }
  return s;
}

/// Least k such that u lies in level k, where level 0 is the product
/// closure of the generators and level k+1 adds iterates of level k.
template <typename Value>
std::map<Value, unsigned> naive_heights(const Value& identity, const std::vector<Value>& letters) {
  std::map<Value, unsigned> height;
  std::set<Value> level(letters.begin(), letters.end());
  level.insert(identity);
  for (unsigned k = 0;; ++k) {
    for (bool changed = true; changed;) {
      changed = false;
      const std::vector<Value> snapshot(level.begin(), level.end());
      for (const auto& x : snapshot)
        for (const auto& y : snapshot) changed |= level.insert(concat(x, y)).second;
    }
    bool grew = false;
    for (const auto& x : level) grew |= height.emplace(x, k).second;
    if (!grew && k > 0) return height;
    const std::vector<Value> snapshot(level.begin(), level.end());
    for (const auto& x : snapshot)
      if (is_idempotent(x)) level.insert(iterate(x));
  }
}

}  // namespace value1::testing
