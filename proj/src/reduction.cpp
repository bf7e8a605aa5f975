#include "value1/reduction.hpp"

#include <utility>

#include "value1/error.hpp"

namespace value1 {

namespace {

const Rational kHalf(1, 2);
const Rational kThird(1, 3);
const Rational kTwoThirds(2, 3);

/// Matrices default to the identity: a (letter, state) pair not given a row
/// has no effect.
class Builder {
 public:
  Builder(std::size_t states, std::size_t letters) : matrices_(letters, Matrix::identity(states)) {}

  void set_row(LetterId a, StateId s, std::initializer_list<std::pair<StateId, Rational>> row) {
    Matrix& m = matrices_[a];
    for (std::size_t t = 0; t < m.dim(); ++t) m.at(s, t) = 0;
    for (const auto& [t, p] : row) m.at(s, t) += p;
  }
  void move(LetterId a, StateId s, StateId t) { set_row(a, s, {{t, Rational(1)}}); }

  std::vector<Matrix> take() && { return std::move(matrices_); }

 private:
  std::vector<Matrix> matrices_;
};

/// The one or two targets of row (q,a) of a simple automaton.
std::pair<StateId, StateId> branch_targets(const Automaton& a, LetterId letter, StateId q) {
  std::optional<StateId> first;
  for (StateId t = 0; t < a.state_count(); ++t) {
    const Rational& p = a.matrix(letter).at(q, t);
    if (p == 1) return {t, t};
    if (p == kHalf) {
      if (!first) {
        first = t;
      } else {
        return {*first, t};
      }
    }
  }
  throw ValidationError("row is not simple");
}

std::string fresh_letter(const Automaton& a, std::string name) {
  while (a.find_letter(name)) name += "'";
  return name;
}

}  // namespace

bool is_simple(const Automaton& automaton) {
  for (LetterId a = 0; a < automaton.letter_count(); ++a)
    for (StateId s = 0; s < automaton.state_count(); ++s)
      for (StateId t = 0; t < automaton.state_count(); ++t) {
        const Rational& p = automaton.matrix(a).at(s, t);
        if (sgn(p) != 0 && p != 1 && p != kHalf) return false;
      }
  return true;
}

SimpleAutomaton::SimpleAutomaton(Automaton automaton) : automaton_(std::move(automaton)) {
  if (!is_simple(automaton_)) throw ValidationError("automaton is not simple (entries must be 0, 1/2 or 1)");
}

ReductionAlphabet::ReductionAlphabet(const Automaton& source, bool with_finish)
    : states_(source.state_count()), letters_(source.letter_count()), with_finish_(with_finish) {}

std::vector<std::string> ReductionAlphabet::names(const Automaton& source) const {
  std::vector<std::string> out{"star", "merge"};
  if (with_finish_) out.push_back("finish");
  for (const char* kind : {"check", "apply"})
    for (const auto& a : source.alphabet())
      for (const auto& q : source.states()) out.push_back(std::string(kind) + ":" + a + ":" + q);
  return out;
}

Word ReductionAlphabet::hat(const Word& word) const {
  Word out;
  out.reserve(word.size() * (3 * states_ + 1));
  for (LetterId a : word) {
    if (a >= letters_) throw ValidationError("unknown letter id " + std::to_string(a));
    for (StateId q = 0; q < states_; ++q) {
      out.push_back(check(a, q));
      out.push_back(star());
      out.push_back(apply(a, q));
    }
    out.push_back(merge());
  }
  return out;
}

std::vector<std::string> hat_morphism(const SimpleAutomaton& source, const Word& word) {
  const ReductionAlphabet letters(source.automaton(), false);
  const auto names = letters.names(source.automaton());
  std::vector<std::string> out;
  for (LetterId b : letters.hat(word)) out.push_back(names[b]);
  return out;
}

std::size_t count_probabilistic_transitions(const Automaton& automaton) {
  std::size_t count = 0;
  for (LetterId a = 0; a < automaton.letter_count(); ++a)
    for (StateId s = 0; s < automaton.state_count(); ++s)
      for (StateId t = 0; t < automaton.state_count(); ++t) {
        const Rational& p = automaton.matrix(a).at(s, t);
        if (sgn(p) > 0 && p < 1) {
          ++count;
          break;
        }
      }
  return count;
}

ReductionOutput reduce_basic(const SimpleAutomaton& simple) {
  const Automaton& src = simple.automaton();
  const std::size_t n = src.state_count();
  // States: q (0..n-1), bar(q) (n..2n-1), s_star, s_0, s_1.
  const StateId s_star = 2 * n, s_0 = 2 * n + 1, s_1 = 2 * n + 2;
  auto bar = [n](StateId q) { return n + q; };

  std::vector<std::string> states;
  for (const auto& q : src.states()) states.push_back("q:" + q);
  for (const auto& q : src.states()) states.push_back("bar:" + q);
  states.insert(states.end(), {"s_star", "s_0", "s_1"});

  ReductionAlphabet letters(src, false);
  Builder b(states.size(), letters.size());
  b.set_row(letters.star(), s_star, {{s_0, kHalf}, {s_1, kHalf}});
  for (StateId q = 0; q < n; ++q) b.move(letters.merge(), bar(q), q);
  for (LetterId a = 0; a < src.letter_count(); ++a) {
    for (StateId q = 0; q < n; ++q) {
      b.move(letters.check(a, q), q, s_star);
      const auto [r0, r1] = branch_targets(src, a, q);
      b.move(letters.apply(a, q), s_0, bar(r0));
      b.move(letters.apply(a, q), s_1, bar(r1));
    }
  }
  Automaton out(std::move(states), letters.names(src), std::move(b).take(), src.initial(), src.finals());
  return ReductionOutput{std::move(out), letters, 0};
}

Automaton third_gadget() {
  // g0 -#-> 1/3 gT + 2/3 gW;  gT -#-> 1/3 g0 + 2/3 r0;  gW -#-> 1/3 r1 + 2/3 g0.
  Builder b(5, 1);
  b.set_row(0, 0, {{1, kThird}, {2, kTwoThirds}});
  b.set_row(0, 1, {{0, kThird}, {3, kTwoThirds}});
  b.set_row(0, 2, {{4, kThird}, {0, kTwoThirds}});
  return Automaton({"g0", "gT", "gW", "r0", "r1"}, {"sharp"}, std::move(b).take(), 0, {3});
}

Rational gadget_decision_probability(std::size_t rounds) {
  const Automaton g = third_gadget();
  return acceptance_probability(g, Word(2 * rounds, 0));
}

Automaton third_simulation(const SimpleAutomaton& simple) {
  const Automaton& src = simple.automaton();
  const std::size_t n = src.state_count();
  const std::size_t m = src.letter_count();

  struct Branch {
    LetterId letter;
    StateId from, r0, r1;
  };
  std::vector<Branch> branches;
  for (LetterId a = 0; a < m; ++a)
    for (StateId q = 0; q < n; ++q) {
      const auto [r0, r1] = branch_targets(src, a, q);
      if (r0 != r1) branches.push_back({a, q, r0, r1});
    }

  std::vector<std::string> states = src.states();
  for (const auto& br : branches) {
    const std::string tag = "[" + src.states()[br.from] + "," + src.alphabet()[br.letter] + "]";
    for (const char* g : {"g0", "gT", "gW"}) states.push_back(std::string(g) + tag);
  }
  std::vector<std::string> alphabet = src.alphabet();
  alphabet.push_back(fresh_letter(src, "sharp"));
  const LetterId sharp = m;

  Builder b(states.size(), m + 1);
  for (LetterId a = 0; a < m; ++a)
    for (StateId q = 0; q < n; ++q) {
      const auto [r0, r1] = branch_targets(src, a, q);
      if (r0 == r1) b.move(a, q, r0);
    }
  for (std::size_t k = 0; k < branches.size(); ++k) {
    const auto& br = branches[k];
    const StateId g0 = n + 3 * k, g_t = g0 + 1, g_w = g0 + 2;
    b.move(br.letter, br.from, g0);
    b.set_row(sharp, g0, {{g_t, kThird}, {g_w, kTwoThirds}});
    b.set_row(sharp, g_t, {{g0, kThird}, {br.r0, kTwoThirds}});
    b.set_row(sharp, g_w, {{br.r1, kThird}, {g0, kTwoThirds}});
  }
  return Automaton(std::move(states), std::move(alphabet), std::move(b).take(), src.initial(), src.finals());
}

ReductionOutput reduce_full(const SimpleAutomaton& simple) {
  const Automaton& src = simple.automaton();
  const std::size_t n = src.state_count();
  const std::size_t m = src.letter_count();
  const ReductionAlphabet letters(src, true);
  const LetterId finish = *letters.finish();

  // States: q, bar(q), s_star, s_0, s_1, wait, bottom, then the checker:
  // start (accepting), mid (after a merge), dead, and chk/star/app per (a, i).
  const StateId s_star = 2 * n, s_0 = s_star + 1, s_1 = s_star + 2, wait = s_star + 3, bottom = s_star + 4;
  const StateId c_start = s_star + 5, c_mid = c_start + 1, c_dead = c_start + 2;
  const StateId c_base = c_start + 3;
  auto bar = [n](StateId q) { return n + q; };
  auto c_chk = [&](LetterId a, StateId i) { return c_base + 3 * (a * n + i); };
  auto c_star = [&](LetterId a, StateId i) { return c_chk(a, i) + 1; };
  auto c_app = [&](LetterId a, StateId i) { return c_chk(a, i) + 2; };
  const std::size_t checker_states = 3 + 3 * m * n;

  std::vector<std::string> states;
  for (const auto& q : src.states()) states.push_back("q:" + q);
  for (const auto& q : src.states()) states.push_back("bar:" + q);
  states.insert(states.end(), {"s_star", "s_0", "s_1", "wait", "bottom", "C:start", "C:mid", "C:dead"});
  for (LetterId a = 0; a < m; ++a)
    for (StateId i = 0; i < n; ++i) {
      const std::string tag = ":" + src.alphabet()[a] + ":" + src.states()[i];
      states.insert(states.end(), {"C:chk" + tag, "C:star" + tag, "C:app" + tag});
    }

  Builder b(states.size(), letters.size());

  // Simulation part.
  for (LetterId x = 0; x < letters.size(); ++x) {
    if (x != letters.star()) b.move(x, s_star, wait);
  }
  b.set_row(letters.star(), s_star, {{s_0, kThird}, {s_1, kThird}, {wait, kThird}});
  for (StateId q = 0; q < n; ++q) b.move(letters.merge(), bar(q), q);
  for (LetterId a = 0; a < m; ++a)
    for (StateId q = 0; q < n; ++q) {
      b.move(letters.check(a, q), q, s_star);
      const auto [r0, r1] = branch_targets(src, a, q);
      b.move(letters.apply(a, q), s_0, bar(r0));
      b.move(letters.apply(a, q), s_1, bar(r1));
    }
  for (StateId q = 0; q < n; ++q) b.move(finish, q, src.is_final(q) ? c_start : bottom);
  for (StateId q = 0; q < n; ++q) b.move(finish, bar(q), bottom);
  b.move(finish, s_0, bottom);
  b.move(finish, s_1, bottom);
  b.move(finish, wait, src.initial());

  // Checker for {hat(w) finish}*: every checker state reads every letter.
  std::vector<std::vector<StateId>> delta(checker_states, std::vector<StateId>(letters.size(), c_dead));
  auto local = [&](StateId s) { return s - c_start; };
  for (StateId boundary : {c_start, c_mid}) {
    delta[local(boundary)][finish] = c_start;
    for (LetterId a = 0; a < m; ++a) delta[local(boundary)][letters.check(a, 0)] = c_chk(a, 0);
  }
  for (LetterId a = 0; a < m; ++a)
    for (StateId i = 0; i < n; ++i) {
      delta[local(c_chk(a, i))][letters.star()] = c_star(a, i);
      delta[local(c_star(a, i))][letters.apply(a, i)] = c_app(a, i);
      if (i + 1 < n) {
        delta[local(c_app(a, i))][letters.check(a, i + 1)] = c_chk(a, i + 1);
      } else {
        delta[local(c_app(a, i))][letters.merge()] = c_mid;
      }
    }
  for (std::size_t k = 0; k < checker_states; ++k)
    for (LetterId x = 0; x < letters.size(); ++x) b.move(x, c_start + k, delta[k][x]);

  Automaton out(std::move(states), letters.names(src), std::move(b).take(), src.initial(), {c_start});
  return ReductionOutput{std::move(out), letters, checker_states};
}

}  // namespace value1
