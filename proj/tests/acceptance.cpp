// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include "support.hpp"
#include "value1/class_checkers.hpp"
#include "value1/leak_finder.hpp"
#include "value1/markov_monoid.hpp"
#include "value1/numeric_oracle.hpp"
#include "value1/reduction.hpp"
#include "value1/word_family.hpp"

using namespace value1;
using namespace value1::testing;

namespace {

constexpr std::uint64_t kSeed = 0x1ea471647;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (condition || !pass) {
      pass = pass && condition;
      return;
    }
    pass = false;
    detail = what;
  }
};

std::vector<Automaton> random_corpus() {
  Rng rng(kSeed);
  std::vector<Automaton> out;
  for (int i = 0; i < 500; ++i) out.push_back(random_automaton(rng, 4, 2));
  return out;
}

template <typename Value>
std::string render_closure(const Closure<Value>& g, const Automaton& a, std::function<std::string(const Value&)> show) {
  std::ostringstream s;
  for (std::size_t i = 0; i < g.size(); ++i)
    s << render(g.provenance(i), a.alphabet()) << " h=" << g.height(i) << "\n" << show(g.element(i));
  return s.str();
}

Outcome criterion1() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const Automaton a = load_fixture("fig3.json");
  const Certificate c = decide_value1(a);
  o.require(c.verdict == Verdict::Value1, "value1 is not yes");
  o.require(c.witness && render(c.witness->expression, a.alphabet()) == "(a)#", "witness is not (a)#");
  o.require(decide_leaktight(a).leaktight, "not leaktight");
  o.require(markov_monoid(a).size() - 1 == 4, "Markov monoid does not have 4 non-identity elements");
  o.require(extended_markov_monoid(a).size() - 1 == 5, "extended monoid does not have 5 non-identity elements");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(secs < 1.0, "runtime above 1 s");
  return o;
}

Outcome criterion2() {
  Outcome o;
  std::optional<std::string> limits, pairs, witness;
  std::optional<Verdict> verdict;
  for (Rational x : {Rational(1, 3), Rational(1, 2), Rational(2, 3)}) {
    const Automaton a = fig1x(x);
    const LeaktightResult l = decide_leaktight(a);
    o.require(!l.leaktight && l.witness, "leaktight for x = " + to_string(x));
    if (!l.witness) continue;
    o.require(a.states()[l.witness->r] == "L" && a.states()[l.witness->q] == "T", "witness is not (L, T)");
    std::ostringstream w;
    w << render(l.witness->expression, a.alphabet()) << "|" << l.witness->r << "|" << l.witness->q;
    const Verdict v = decide_value1(a).verdict;
    const std::string g = render_closure<LimitWord>(markov_monoid(a), a, [&](const LimitWord& u) {
      return render(u, a.states());
    });
    const std::string gp = render_closure<ExtendedLimitWord>(
        extended_markov_monoid(a), a,
        [&](const ExtendedLimitWord& u) { return render(u.limit, a.states()) + render(u.plus, a.states()); });
    if (witness) {
      o.require(*witness == w.str(), "witness differs across x");
      o.require(*verdict == v, "verdict differs across x");
      o.require(*limits == g, "closure differs across x");
      o.require(*pairs == gp, "extended closure differs across x");
    }
    witness = w.str();
    verdict = v;
    limits = g;
    pairs = gp;
  }
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  o.require(brute_force_value(fig1x(Rational(1, 3)), 10) == Rational(1, 2), "brute-force value is not 1/2");
  const Automaton a = fig1x(Rational(2, 3));
  const auto rows = evaluate_family(a, parse_family("(b a^n)^N", a), {{"n", {7}}, {"N", {200}}});
  o.require(rows.size() == 1 && rows[0].value >= Rational(95, 100), "family value below 0.95");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(secs < 30.0, "runtime above 30 s");
  if (o.pass) o.detail = "value " + std::to_string(approximate(rows[0].value));
  return o;
}

Outcome criterion4() {
  Outcome o;
  const SimpleAutomaton src(load_fixture("rnd3.json"));
  const Automaton& a = src.automaton();
  const ReductionOutput out = reduce_basic(src);
  o.require(count_probabilistic_transitions(out.automaton) == 1, "not exactly one probabilistic transition");
  std::vector<Word> words{{}}, level{{}};
  for (int len = 1; len <= 4; ++len) {
    std::vector<Word> next;
    for (const auto& w : level)
      for (LetterId x = 0; x < a.letter_count(); ++x) {
        Word v = w;
        v.push_back(x);
        next.push_back(v);
      }
    words.insert(words.end(), next.begin(), next.end());
    level = std::move(next);
  }
  Rng rng(kSeed);
  for (int i = 0; i < 50; ++i) {
    Word w(uniform(rng, 0, 6));
    for (auto& x : w) x = uniform(rng, 0, a.letter_count() - 1);
    words.push_back(w);
  }
  for (const auto& w : words)
    o.require(acceptance_probability(a, w) == acceptance_probability(out.automaton, out.letters.hat(w)),
              "mismatch on " + render_word(a, w));
  return o;
}

Outcome criterion5() {
  Outcome o;
  o.require(gadget_decision_probability(1) == Rational(2, 9), "p=1 is not 2/9");
  o.require(gadget_decision_probability(2) == Rational(28, 81), "p=2 is not 28/81");
  for (std::size_t p : {1, 2, 5})
    o.require(gadget_decision_probability(p) == Rational(1, 2) * (1 - pow(Rational(5, 9), p)),
              "closed form fails at p=" + std::to_string(p));
  return o;
}

Outcome criterion6(const std::vector<Automaton>& corpus) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t k = 0; k < corpus.size() && o.pass; ++k) {
    const Automaton& a = corpus[k];
    const std::string tag = " (automaton " + std::to_string(k) + ")";
    const MonoidClosure g = markov_monoid(a);
    o.require(sharp_height(g) <= a.state_count(), "sharp-height above |Q|" + tag);
    std::vector<LimitWord> idempotents;
    for (const auto& u : g.elements()) {
      if (!is_idempotent(u)) continue;
      idempotents.push_back(u);
      const LimitWord s = iterate(u);
      o.require(is_idempotent(s), "u# not idempotent" + tag);
      o.require(concat(s, u) == s && concat(u, s) == s, "u# u = u# = u u# fails" + tag);
      o.require(iterate(s) == s, "(u#)# != u#" + tag);
      const auto cu = recurrence_classes(u).classes;
      const auto cs = recurrence_classes(s).classes;
      for (const auto& c : cs)
        o.require(std::find(cu.begin(), cu.end(), c) != cu.end(), "Cl(u#) not included in Cl(u)" + tag);
      if (s != u) o.require(cs.size() < cu.size(), "class inclusion not strict" + tag);
    }
    for (const auto& v : idempotents) {
      const auto ideal = two_sided_ideal(v, g);
      const std::size_t classes_v = recurrence_classes(v).classes.size();
      for (const auto& u : idempotents)
        if (ideal.contains(u))
          o.require(recurrence_classes(u).classes.size() <= classes_v, "J-order class count fails" + tag);
    }
    const ExtendedClosure ext = extended_markov_monoid(a);
    for (const auto& e : ext.elements())
      o.require(e.limit.included_in(e.plus), "limit not below plus" + tag);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(secs < 60.0, "runtime above 60 s");
  return o;
}

Outcome criterion7(const std::vector<Automaton>& corpus) {
  Outcome o;
  std::vector<Automaton> all = corpus;
  for (const char* f : {"fig3.json", "det1.json", "sink.json", "hier2.json", "rnd3.json", "fig1_third.json",
                        "fig1_half.json", "fig1_two_thirds.json"})
    all.push_back(load_fixture(f));
  for (std::size_t k = 0; k < all.size(); ++k) {
    const bool closure = decide_value1(all[k]).verdict == Verdict::Value1;
    const auto search = bounded_witness_search(all[k]);
    o.require(search.has_value() == closure, "disagreement on automaton " + std::to_string(k));
  }
  return o;
}

Outcome criterion8(const std::vector<Automaton>& corpus) {
  Outcome o;
  Rng rng(kSeed + 8);
  for (int i = 0; i < 100; ++i) {
    const Automaton d = random_deterministic(rng);
    o.require(decide_leaktight(d).leaktight, "deterministic automaton with a leak");
    o.require(sharp_height(markov_monoid(d)) == 0, "deterministic automaton with positive sharp-height");
    const Automaton h = random_hierarchical(rng);
    o.require(is_hierarchical(h).has_value(), "generated automaton is not hierarchical");
    o.require(decide_leaktight(h).leaktight, "hierarchical automaton with a leak");
  }
  std::size_t acyclic = 0;
  for (const auto& a : corpus) {
    if (!is_sharp_acyclic(a)) continue;
    ++acyclic;
    o.require(decide_leaktight(a).leaktight, "sharp-acyclic automaton with a leak");
  }
  if (o.pass) o.detail = std::to_string(acyclic) + " sharp-acyclic samples";
  return o;
}

Outcome criterion9() {
  Outcome o;
  std::vector<std::pair<std::string, Automaton>> cases;
  for (const char* f : {"fig3.json", "det1.json", "hier2.json"}) cases.emplace_back(f, load_fixture(f));
  for (Rational x : {Rational(1, 3), Rational(1, 2), Rational(2, 3)}) cases.emplace_back("FIG1X(" + to_string(x) + ")", fig1x(x));
  for (const auto& [name, a] : cases)
    for (const auto& r : check_consistency(a, markov_monoid(a), 12, Rational(1, 1000), Rational(1, 100)))
      o.require(r.pass, name + ": " + r.expression + " inconclusive at n=12");
  return o;
}

Outcome criterion10() {
  Outcome o;
  const Automaton fig3 = load_fixture("fig3.json");
  const Automaton det1 = load_fixture("det1.json");
  o.require(decide_leaktight(parallel_composition(fig3, det1)).leaktight, "FIG3 || DET1 has a leak");
  o.require(decide_leaktight(synchronized_product(fig3, det1)).leaktight, "FIG3 x DET1 has a leak");
  o.require(decide_leaktight(synchronized_product(fig3, fig3)).leaktight, "FIG3 x FIG3 has a leak");
  return o;
}

}  // namespace

int main() {
  const std::vector<Automaton> corpus = random_corpus();
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"FIG3 end-to-end", criterion1},
      {"FIG1X qualitative invariance", criterion2},
      {"FIG1X numeric threshold", criterion3},
      {"reduction exactness on RND3", criterion4},
      {"third gadget closed form", criterion5},
      {"monoid laws on 500 random automata", [&] { return criterion6(corpus); }},
      {"bounded search agrees with the closure", [&] { return criterion7(corpus); }},
      {"class members are leaktight", [&] { return criterion8(corpus); }},
      {"consistency of reified closures at n=12", criterion9},
      {"composition keeps leaktightness", criterion10},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2zu: %s  %s (%.3f s)%s%s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, secs,
                o.detail.empty() ? "" : ": ", o.detail.c_str());
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
