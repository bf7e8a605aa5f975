#include <doctest.h>

#include "support.hpp"
#include "value1/error.hpp"
#include "value1/numeric_oracle.hpp"
#include "value1/word_family.hpp"

using namespace value1;
using namespace value1::testing;

namespace {

// Maximum over every word, enumerated one by one.
Rational enumerate_value(const Automaton& a, std::size_t max_len) {
  Rational best = acceptance_probability(a, {});
  std::vector<Word> level{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const auto& w : level)
      for (LetterId x = 0; x < a.letter_count(); ++x) {
        Word v = w;
        v.push_back(x);
        best = std::max(best, acceptance_probability(a, v));
        next.push_back(std::move(v));
      }
    level = std::move(next);
  }
  return best;
}

// Win probability of the round process: p/(p+q) (1 - (1-p-q)^(N-1)).
Rational rounds_closed_form(const Rational& x, unsigned long n, unsigned long big_n) {
  const Rational p = Rational(1, 2) * pow(x, n);
  const Rational q = Rational(1, 2) * pow(1 - x, n);
  return p / (p + q) * (1 - pow(1 - p - q, big_n - 1));
}

SharpExpression parse_expr(const Automaton& a, const std::string& text) {
  const auto letters = letter_abstractions(a);
  return build_expression<LimitWord>(parse_expression_syntax(text, a.alphabet()),
                                     LimitWord::identity(a.state_count()),
                                     [&](LetterId x) { return letters[x]; });
}

const Rational kEps(1, 1000);
const Rational kDelta(1, 100);

}  // namespace

TEST_CASE("brute-force value") {
  CHECK(brute_force_value(load_fixture("sink.json"), 6) == 0);
  CHECK(brute_force_value(load_fixture("det1.json"), 0) == 1);
  CHECK(brute_force_value(fig1x(Rational(1, 3)), 10) == Rational(1, 2));
  CHECK_THROWS_AS(brute_force_value(fig1x(Rational(1, 3)), 10, 5), ResourceLimitError);

  Rng rng(51);
  for (int i = 0; i < 60; ++i) {
    const Automaton a = random_automaton(rng, 3, 2);
    Rational prev = 0;
    for (std::size_t len = 0; len <= 6; ++len) {
      const Rational v = brute_force_value(a, len);
      REQUIRE(v == enumerate_value(a, len));
      REQUIRE(v >= prev);
      REQUIRE(v <= 1);
      prev = v;
    }
  }
}

TEST_CASE("word families") {
  const Automaton a = fig1x(Rational(2, 3));
  const WordFamily f = parse_family("(b a^n)^N", a);
  CHECK(f.parameters() == std::set<std::string>{"N", "n"});
  CHECK(render_word(a, instantiate(f, {{"n", 2}, {"N", 2}}, 100)) == render_word(a, parse_word(a, "baabaa")));
  CHECK(family_length(f, {{"n", 7}, {"N", 200}}) == 1600);
  CHECK_THROWS_AS(instantiate(f, {{"n", 7}, {"N", 200}}, 100), ResourceLimitError);
  CHECK_THROWS_AS(family_length(f, {{"n", 7}}), ValidationError);
  CHECK_THROWS_AS(parse_family("(b a", a), ParseError);
  CHECK_THROWS_AS(parse_family("c", a), ParseError);
  CHECK(family_length(parse_family("ab^3 (a)^2", a), {}) == 6);
}

TEST_CASE("family evaluation on FIG1X") {
  const WordFamily f = parse_family("(b a^n)^N", fig1x(Rational(1, 2)));
  const auto rows = evaluate_family(fig1x(Rational(2, 3)), f, {{"n", {7}}, {"N", {200}}});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].value >= Rational(95, 100));
  CHECK(rows[0].value == rounds_closed_form(Rational(2, 3), 7, 200));
  CHECK(approximate(rows[0].value) == doctest::Approx(0.9897).epsilon(0.001));

  for (const auto& r : evaluate_family(fig1x(Rational(1, 2)), f, {{"n", {0, 1, 3, 7}}, {"N", {1, 5, 50}}}))
    CHECK(r.value <= Rational(1, 2));
  for (const auto& r : evaluate_family(fig1x(Rational(2, 3)), f, {{"n", {0}}, {"N", {1, 2, 10, 100}}}))
    CHECK(r.value <= Rational(1, 2));

  // Grid values equal direct evaluation of the instantiated word.
  const Automaton third = fig1x(Rational(1, 3));
  for (const auto& r : evaluate_family(third, f, {{"n", {0, 1, 2, 4}}, {"N", {1, 3, 6}}}))
    CHECK(r.value == acceptance_probability(third, instantiate(f, r.bindings, 1000)));

  Rational prev = 0;
  for (unsigned long long big_n : {1, 2, 10, 50, 200, 400}) {
    const auto v = evaluate_family(fig1x(Rational(2, 3)), f, {{"n", {7}}, {"N", {big_n}}})[0].value;
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("reification") {
  const Automaton a = load_fixture("fig3.json");
  CHECK(reification_exponent(12, 2) == 24);
  CHECK(reification_exponent(1, 5) == 120);
  CHECK(reify(parse_expr(a, "(a)#"), 12, 2) == Word(24, 0));
  Word expected{1};
  expected.insert(expected.end(), 24, 0);
  CHECK(reify(parse_expr(a, "b (a)#"), 12, 2) == expected);
  CHECK(reify(parse_expr(a, "b a"), 1, 2) == reify(parse_expr(a, "b a"), 9, 2));
  CHECK_THROWS_AS(reify(parse_expr(a, "(a)#"), 0, 2), PreconditionError);
  CHECK_THROWS_AS(reify(parse_expr(a, "(a)#"), 100, 2, 50), ResourceLimitError);
  const auto e = parse_expr(a, "b (a)# a");
  CHECK(reify_matrix(a, e, 5) == word_matrix(a, reify(e, 5, 2)));
}

TEST_CASE("consistency on FIG3") {
  const Automaton a = load_fixture("fig3.json");
  const MonoidClosure g = markov_monoid(a);
  const auto reports = check_consistency(a, g, 12, kEps, kDelta);
  REQUIRE(reports.size() == g.size());
  for (const auto& r : reports) {
    CHECK(r.pass);
    CHECK(r.entries.size() == 4);
  }
  const std::size_t sharp = *g.find(iterate(letter_abstraction(a, 0)));
  CHECK(reports[sharp].entries[0].measured == pow(Rational(1, 2), 24));
  CHECK(reports[sharp].entries[1].measured == 1 - pow(Rational(1, 2), 24));
  // Tight thresholds turn the same run into an inconclusive report.
  const auto strict = check_consistency(a, g, 12, pow(Rational(1, 2), 30), kDelta);
  CHECK_FALSE(strict[sharp].pass);
}

TEST_CASE("consistency on other fixtures") {
  for (const char* f : {"det1.json", "hier2.json", "fig1_half.json", "rnd3.json"}) {
    INFO(f);
    const Automaton a = load_fixture(f);
    for (const auto& r : check_consistency(a, markov_monoid(a), 12, kEps, kDelta)) CHECK(r.pass);
  }
}

TEST_CASE("reified witnesses concentrate the initial row on finals") {
  for (const char* f : {"fig3.json", "hier2.json", "rnd3.json", "det1.json"}) {
    INFO(f);
    const Automaton a = load_fixture(f);
    const auto w = find_value1_witness(markov_monoid(a), a);
    REQUIRE(w);
    const Matrix m = reify_matrix(a, w->expression, 12);
    for (StateId s = 0; s < a.state_count(); ++s)
      if (!a.is_final(s)) CHECK(m.at(a.initial(), s) <= kEps);
  }
}

TEST_CASE("lower bound") {
  const Automaton fig3 = load_fixture("fig3.json");
  const ExtendedClosure g = extended_markov_monoid(fig3);
  std::vector<ExtendedExpression> all;
  for (std::size_t i = 0; i < g.size(); ++i) all.push_back(g.provenance(i));

  for (unsigned long long n : {1, 2, 3}) {
    const LowerBoundReport r = check_lower_bound(fig3, g, all, n);
    CHECK(r.pass);
    CHECK(r.checks.size() == g.size());
  }
  const ExtendedExpression* sharp = nullptr;
  for (const auto& e : all)
    if (render(e, fig3.alphabet()) == "(a)#") sharp = &e;
  REQUIRE(sharp);
  const LowerBoundReport one = check_lower_bound(fig3, g, {*sharp}, 3);
  CHECK(one.checks[0].min_limit_entry == 1 - pow(Rational(1, 2), 6));
  CHECK(one.checks[0].bound == pow(Rational(1, 2), 2));

  for (const char* f : {"det1.json", "hier2.json", "sink.json", "rnd3.json"}) {
    INFO(f);
    const Automaton a = load_fixture(f);
    const ExtendedClosure h = extended_markov_monoid(a);
    std::vector<ExtendedExpression> exprs;
    for (std::size_t i = 0; i < h.size(); ++i) exprs.push_back(h.provenance(i));
    for (unsigned long long n : {1, 2, 3}) CHECK(check_lower_bound(a, h, exprs, n).pass);
  }

  const Automaton leaky = load_fixture("fig1_half.json");
  CHECK_THROWS_AS(check_lower_bound(leaky, extended_markov_monoid(leaky), {}, 1), PreconditionError);
}

TEST_CASE("lower bound on random leaktight automata") {
  Rng rng(52);
  int checked = 0;
  for (int i = 0; i < 120; ++i) {
    const Automaton a = random_automaton(rng, 3, 2);
    const ExtendedClosure h = extended_markov_monoid(a);
    if (find_leak_witness(h)) continue;
    ++checked;
    std::vector<ExtendedExpression> exprs;
    for (std::size_t k = 0; k < h.size(); ++k) exprs.push_back(h.provenance(k));
    for (unsigned long long n : {1, 2}) REQUIRE(check_lower_bound(a, h, exprs, n).pass);
  }
  CHECK(checked > 20);
}
