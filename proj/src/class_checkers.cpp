#include "value1/class_checkers.hpp"

#include <algorithm>
#include <functional>

#include "value1/error.hpp"
#include "value1/limit_word.hpp"
#include "value1/markov_monoid.hpp"

namespace value1 {

bool is_deterministic(const Automaton& automaton) {
  for (LetterId a = 0; a < automaton.letter_count(); ++a) {
    const Matrix& m = automaton.matrix(a);
    for (StateId s = 0; s < automaton.state_count(); ++s)
      for (StateId t = 0; t < automaton.state_count(); ++t)
        if (sgn(m.at(s, t)) != 0 && m.at(s, t) != 1) return false;
  }
  return true;
}

bool validate_hierarchy(const Automaton& automaton, const HierarchyWitness& witness) {
  if (witness.rank.size() != automaton.state_count()) return false;
  for (LetterId a = 0; a < automaton.letter_count(); ++a) {
    const Matrix& m = automaton.matrix(a);
    for (StateId s = 0; s < automaton.state_count(); ++s) {
      int same = 0;
      for (StateId t = 0; t < automaton.state_count(); ++t) {
        if (sgn(m.at(s, t)) == 0) continue;
        if (witness.rank[t] < witness.rank[s]) return false;
        if (witness.rank[t] == witness.rank[s]) ++same;
      }
      if (same > 1) return false;
    }
  }
  return true;
}

namespace {

/// Tarjan's algorithm; components come out in reverse topological order.
std::vector<std::size_t> scc_ids(const std::vector<std::vector<StateId>>& succ, std::size_t& count) {
  const std::size_t n = succ.size();
  std::vector<std::size_t> index(n, SIZE_MAX), low(n, 0), comp(n, SIZE_MAX);
  std::vector<StateId> stack;
  std::vector<bool> on_stack(n, false);
  std::size_t next = 0;
  count = 0;

  std::function<void(StateId)> visit = [&](StateId v) {
    index[v] = low[v] = next++;
    stack.push_back(v);
    on_stack[v] = true;
    for (StateId w : succ[v]) {
      if (index[w] == SIZE_MAX) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      for (;;) {
        StateId w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = count;
        if (w == v) break;
      }
      ++count;
    }
  };
  for (StateId v = 0; v < n; ++v)
    if (index[v] == SIZE_MAX) visit(v);
  return comp;
}

}  // namespace

std::optional<HierarchyWitness> is_hierarchical(const Automaton& automaton) {
  const std::size_t n = automaton.state_count();
  std::vector<std::vector<StateId>> succ(n);
  for (LetterId a = 0; a < automaton.letter_count(); ++a)
    for (StateId s = 0; s < n; ++s)
      for (StateId t = 0; t < n; ++t)
        if (sgn(automaton.matrix(a).at(s, t)) != 0) succ[s].push_back(t);

  std::size_t count = 0;
  const auto comp = scc_ids(succ, count);

  for (LetterId a = 0; a < automaton.letter_count(); ++a) {
    for (StateId s = 0; s < n; ++s) {
      int same = 0;
      for (StateId t = 0; t < n; ++t)
        if (sgn(automaton.matrix(a).at(s, t)) != 0 && comp[t] == comp[s]) ++same;
      if (same > 1) return std::nullopt;
    }
  }
  // Tarjan numbers sinks first; reverse so ranks grow along edges.
  HierarchyWitness w;
  w.rank.resize(n);
  for (StateId s = 0; s < n; ++s) w.rank[s] = static_cast<unsigned>(count - 1 - comp[s]);
  return w;
}

bool is_sharp_acyclic(const Automaton& automaton, std::size_t state_cap) {
  const std::size_t n = automaton.state_count();
  if (n > state_cap) {
    throw ResourceLimitError("sharp-acyclicity check limited to " + std::to_string(state_cap) + " states");
  }
  std::vector<LimitWord> letters = letter_abstractions(automaton);
  std::vector<LimitWord> sharps;
  for (const LimitWord& a : letters) sharps.push_back(iterate(power_to_idempotent(a)));

  const std::uint64_t subsets = std::uint64_t{1} << n;
  std::vector<std::vector<std::uint64_t>> succ(subsets);
  for (std::uint64_t s = 1; s < subsets; ++s) {
    const StateSet from(s);
    for (std::size_t a = 0; a < letters.size(); ++a) {
      const StateSet to = image(from, letters[a]);
      if (to != from) succ[s].push_back(to.bits());
      if (to == from) {
        const StateSet sharp = image(from, sharps[a]);
        if (sharp != from) succ[s].push_back(sharp.bits());
      }
    }
  }
  // Any cycle longer than a self-loop shows up as a back edge in a DFS.
  enum : std::uint8_t { White, Grey, Black };
  std::vector<std::uint8_t> color(subsets, White);
  for (std::uint64_t root = 1; root < subsets; ++root) {
    if (color[root] != White) continue;
    std::vector<std::pair<std::uint64_t, std::size_t>> stack{{root, 0}};
    color[root] = Grey;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < succ[v].size()) {
        const std::uint64_t w = succ[v][next++];
        if (color[w] == Grey) return false;
        if (color[w] == White) {
          color[w] = Grey;
          stack.emplace_back(w, 0);
        }
      } else {
        color[v] = Black;
        stack.pop_back();
      }
    }
  }
  return true;
}

}  // namespace value1
