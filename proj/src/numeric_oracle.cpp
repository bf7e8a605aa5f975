#include "value1/numeric_oracle.hpp"

#include <algorithm>
#include <set>

namespace value1 {

namespace detail {

unsigned long long checked_mul(unsigned long long a, unsigned long long b) {
  unsigned long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw ResourceLimitError("reification length overflow");
  return r;
}

unsigned long long checked_add(unsigned long long a, unsigned long long b) {
  unsigned long long r;
  if (__builtin_add_overflow(a, b, &r)) throw ResourceLimitError("reification length overflow");
  return r;
}

}  // namespace detail

namespace {

constexpr unsigned kMaxExactDepth = 24;

Rational bound_for_depth(const Rational& p_min, unsigned depth) {
  return pow(p_min, 1UL << std::min(depth, kMaxExactDepth));
}

}  // namespace

Rational brute_force_value(const Automaton& automaton, std::size_t max_len, std::size_t budget) {
  Distribution start = automaton.initial_distribution();
  Rational best = accepted_mass(automaton, start);
  std::set<std::vector<Rational>> seen{start.weights};
  std::vector<Distribution> frontier{std::move(start)};
  std::size_t explored = 1;
  for (std::size_t len = 0; len < max_len && !frontier.empty(); ++len) {
    std::vector<Distribution> next;
    for (const auto& d : frontier) {
      for (LetterId a = 0; a < automaton.letter_count(); ++a) {
        Distribution e = d.step(automaton.matrix(a));
        if (!seen.insert(e.weights).second) continue;
        if (++explored > budget) throw ResourceLimitError("brute-force budget exceeded");
        const Rational mass = accepted_mass(automaton, e);
        if (mass > best) best = mass;
        next.push_back(std::move(e));
      }
    }
    frontier = std::move(next);
  }
  return best;
}

unsigned long long reification_exponent(unsigned long long n, std::size_t state_count) {
  unsigned long long g = n;
  for (std::size_t k = 2; k <= state_count; ++k) g = detail::checked_mul(g, k);
  return g;
}

std::vector<ReificationReport> check_consistency(const Automaton& automaton, const MonoidClosure& closure,
                                                 unsigned long long n, const Rational& zero_eps,
                                                 const Rational& one_delta) {
  const std::size_t dim = automaton.state_count();
  std::vector<ReificationReport> reports;
  for (std::size_t i = 0; i < closure.size(); ++i) {
    const auto& expr = closure.provenance(i);
    const Matrix m = reify_matrix(automaton, expr, n);
    const LimitWord& claimed = closure.element(i);
    ReificationReport r{i, render(expr, automaton.alphabet()), n, {}, true};
    r.entries.reserve(dim * dim);
    for (StateId s = 0; s < dim; ++s)
      for (StateId t = 0; t < dim; ++t) {
        EntryCheck c{s, t, claimed.test(s, t), m.at(s, t), false};
        c.pass = c.claimed ? c.measured >= one_delta : c.measured <= zero_eps;
        r.pass = r.pass && c.pass;
        r.entries.push_back(std::move(c));
      }
    reports.push_back(std::move(r));
  }
  return reports;
}

LowerBoundReport check_lower_bound(const Automaton& automaton, const ExtendedClosure& closure,
                                   const std::vector<ExtendedExpression>& expressions, unsigned long long n) {
  if (find_leak_witness(closure)) throw PreconditionError("the extended closure contains a leak witness");
  const std::size_t dim = automaton.state_count();
  const Rational p_min = min_transition_probability(automaton);
  LowerBoundReport report{n, {}, true};
  for (const auto& expr : expressions) {
    const ExtendedLimitWord& pair = expr.value();
    const Matrix m = reify_matrix(automaton, expr, n);
    LowerBoundCheck c;
    c.expression = render(expr, automaton.alphabet());
    c.depth = expr.depth();
    c.bound = bound_for_depth(p_min, c.depth);
    c.support_matches = true;
    c.bound_holds = true;
    c.min_limit_entry = 1;
    for (StateId s = 0; s < dim; ++s)
      for (StateId t = 0; t < dim; ++t) {
        const Rational& v = m.at(s, t);
        if ((v > 0) != pair.plus.test(s, t)) c.support_matches = false;
        if (!pair.limit.test(s, t)) continue;
        if (v < c.min_limit_entry) c.min_limit_entry = v;
        if (v < c.bound) {
          if (c.depth > kMaxExactDepth) throw ResourceLimitError("lower bound exponent too large to evaluate");
          c.bound_holds = false;
        }
      }
    report.pass = report.pass && c.pass();
    report.checks.push_back(std::move(c));
  }
  return report;
}

}  // namespace value1
