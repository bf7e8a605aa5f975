#include "value1/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "value1/automaton.hpp"
#include "value1/class_checkers.hpp"
#include "value1/error.hpp"
#include "value1/leak_finder.hpp"
#include "value1/markov_monoid.hpp"
#include "value1/numeric_oracle.hpp"
#include "value1/reduction.hpp"
#include "value1/word_family.hpp"

namespace value1 {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string format = "json";
  std::uint64_t seed = 20120701;
  std::size_t cap = kDefaultElementCap;
  std::size_t max_len = 8;
  std::vector<std::string> binds;
  std::string eps = "1/1000";
  std::string delta = "1/100";
  std::string input;
  std::vector<std::string> inputs;
  std::string mode;
  std::string pattern;
  std::string output;
  unsigned long long n = 12;
  bool lower_bound = false;
};

std::string read_all(std::istream& s) {
  std::ostringstream buf;
  buf << s.rdbuf();
  return buf.str();
}

std::string read_input(const std::string& path, std::istream& in) {
  if (path.empty() || path == "-") return read_all(in);
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot open '" + path + "'");
  return read_all(f);
}

Automaton load(const Options& o, std::size_t i, std::istream& in) {
  return parse_automaton(read_input(i < o.inputs.size() ? o.inputs[i] : std::string(), in));
}

Json digest(const Automaton& a) {
  return Json{{"states", a.state_count()},
              {"letters", a.letter_count()},
              {"p_min", to_string(min_transition_probability(a))}};
}

Json rows(const LimitWord& u, const Automaton& a) {
  Json out = Json::array();
  std::istringstream lines(render(u, a.states()));
  for (std::string line; std::getline(lines, line);) out.push_back(line);
  return out;
}

Json rational_json(const Rational& r) { return Json{{"exact", to_string(r)}, {"approx", approximate(r)}}; }

Json leak_json(const LeakWitness& w, const Automaton& a) {
  return Json{{"r", a.states()[w.r]},
              {"q", a.states()[w.q]},
              {"expression", render(w.expression, a.alphabet())},
              {"limit", rows(w.element.limit, a)},
              {"plus", rows(w.element.plus, a)},
              {"conditions",
               {{"idempotent", true},
                {"r_recurrent_in_limit", true},
                {"plus_r_to_q", true},
                {"limit_q_to_r", false}}}};
}

Bindings single_bindings(const std::vector<std::string>& binds) {
  Bindings out;
  for (const auto& b : binds) {
    const auto eq = b.find('=');
    if (eq == std::string::npos || eq == 0) throw ValidationError("binding '" + b + "' is not NAME=NAT");
    try {
      std::size_t used = 0;
      const std::string value = b.substr(eq + 1);
      out[b.substr(0, eq)] = std::stoull(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::logic_error&) {
      throw ValidationError("binding '" + b + "' is not NAME=NAT");
    }
  }
  return out;
}

Json cmd_validate(const Options& o, std::istream& in) {
  const Automaton a = load(o, 0, in);
  return Json{{"valid", true}, {"digest", digest(a)}, {"simple", is_simple(a)}};
}

Json cmd_value1(const Options& o, std::istream& in) {
  const Automaton a = load(o, 0, in);
  const Certificate c = decide_value1(a, o.cap);
  Json r{{"digest", digest(a)}, {"value1", to_string(c.verdict)}};
  if (c.witness) {
    r["witness"] = render(c.witness->expression, a.alphabet());
    r["witness_element"] = rows(c.witness->element, a);
  } else {
    r["witness"] = nullptr;
  }
  r["leaktight"] = c.leaktight ? "yes" : "no";
  r["p_min"] = to_string(c.bound.p_min);
  if (c.verdict == Verdict::NoWitness) {
    r["bound"] = Json{{"formula", c.bound.formula},
                      {"monoid_size", c.bound.monoid_size},
                      {"extended_monoid_size", c.bound.extended_monoid_size},
                      {"h", c.bound.exponent}};
  }
  return r;
}

Json cmd_leaktight(const Options& o, std::istream& in) {
  const Automaton a = load(o, 0, in);
  const LeaktightResult r = decide_leaktight(a, o.cap);
  Json out{{"digest", digest(a)},
           {"leaktight", r.leaktight ? "yes" : "no"},
           {"extended_monoid_size", r.extended_monoid_size}};
  out["witness"] = r.witness ? leak_json(*r.witness, a) : Json(nullptr);
  return out;
}

Json cmd_monoid(const Options& o, std::istream& in) {
  const Automaton a = load(o, 0, in);
  const MonoidClosure g = markov_monoid(a, o.cap);
  Json elements = Json::array();
  for (std::size_t i = 0; i < g.size(); ++i) {
    elements.push_back(Json{{"index", i},
                            {"expression", render(g.provenance(i), a.alphabet())},
                            {"sharp_height", g.height(i)},
                            {"idempotent", is_idempotent(g.element(i))},
                            {"rows", rows(g.element(i), a)}});
  }
  return Json{{"digest", digest(a)}, {"size", g.size()}, {"sharp_height", g.max_height()}, {"elements", elements}};
}

Json cmd_extended_monoid(const Options& o, std::istream& in) {
  const Automaton a = load(o, 0, in);
  const ExtendedClosure g = extended_markov_monoid(a, o.cap);
  Json elements = Json::array();
  for (std::size_t i = 0; i < g.size(); ++i) {
    elements.push_back(Json{{"index", i},
                            {"expression", render(g.provenance(i), a.alphabet())},
                            {"sharp_height", g.height(i)},
                            {"limit", rows(g.element(i).limit, a)},
                            {"plus", rows(g.element(i).plus, a)}});
  }
  return Json{{"digest", digest(a)}, {"size", g.size()}, {"elements", elements}};
}

Json cmd_sharp_height(const Options& o, std::istream& in) {
  const Automaton a = load(o, 0, in);
  const MonoidClosure g = markov_monoid(a, o.cap);
  return Json{{"digest", digest(a)}, {"sharp_height", sharp_height(g)}, {"monoid_size", g.size()}};
}

Json cmd_classify(const Options& o, std::istream& in) {
  const Automaton a = load(o, 0, in);
  const auto hier = is_hierarchical(a);
  Json r{{"digest", digest(a)}, {"deterministic", is_deterministic(a)}, {"hierarchical", hier.has_value()}};
  if (hier) {
    Json ranks = Json::object();
    for (StateId s = 0; s < a.state_count(); ++s) ranks[a.states()[s]] = hier->rank[s];
    r["rank"] = ranks;
  }
  r["sharp_acyclic"] = is_sharp_acyclic(a);
  r["leaktight"] = decide_leaktight(a, o.cap).leaktight ? "yes" : "no";
  return r;
}

void write_output(const Options& o, const Automaton& a) {
  if (o.output.empty()) return;
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw ValidationError("cannot write '" + o.output + "'");
  f << serialize_automaton(a) << '\n';
}

Json cmd_compose(const Options& o, std::istream& in) {
  if (o.inputs.size() != 2) throw ValidationError("compose needs two input files");
  const Automaton a = load(o, 0, in);
  const Automaton b = load(o, 1, in);
  const Automaton c = o.mode == "product" ? synchronized_product(a, b) : parallel_composition(a, b);
  write_output(o, c);
  return Json{{"mode", o.mode},
              {"digest", digest(c)},
              {"leaktight", decide_leaktight(c, o.cap).leaktight ? "yes" : "no"},
              {"automaton", Json::parse(serialize_automaton(c))}};
}

Json cmd_reduce(const Options& o, std::istream& in) {
  const SimpleAutomaton src(load(o, 0, in));
  const Automaton& a = src.automaton();
  Json r{{"mode", o.mode}};
  if (o.mode == "third") {
    const Automaton b = third_simulation(src);
    write_output(o, b);
    r["digest"] = digest(b);
    r["automaton"] = Json::parse(serialize_automaton(b));
    return r;
  }
  const ReductionOutput out = o.mode == "full" ? reduce_full(src) : reduce_basic(src);
  write_output(o, out.automaton);
  Json letter_map = Json::object();
  for (LetterId x = 0; x < a.letter_count(); ++x) letter_map[a.alphabet()[x]] = hat_morphism(src, Word{x});
  r["digest"] = digest(out.automaton);
  r["probabilistic_transitions"] = count_probabilistic_transitions(out.automaton);
  if (o.mode == "full") r["checker_states"] = out.checker_states;
  r["letter_map"] = letter_map;
  r["automaton"] = Json::parse(serialize_automaton(out.automaton));
  return r;
}

Json cmd_estimate_value(const Options& o, std::istream& in) {
  const Automaton a = load(o, 0, in);
  Json r{{"digest", digest(a)}};
  if (o.pattern.empty()) {
    r["max_len"] = o.max_len;
    r["value"] = rational_json(brute_force_value(a, o.max_len));
    return r;
  }
  const WordFamily family = parse_family(o.pattern, a);
  std::map<std::string, std::vector<unsigned long long>> grid;
  for (const auto& [k, v] : single_bindings(o.binds)) grid[k] = {v};
  Json table = Json::array();
  for (const auto& row : evaluate_family(a, family, grid)) {
    Json b = Json::object();
    for (const auto& [k, v] : row.bindings) b[k] = v;
    table.push_back(Json{{"bindings", b}, {"value", rational_json(row.value)}});
  }
  r["family"] = o.pattern;
  r["table"] = table;
  return r;
}

Json entry_json(const EntryCheck& e, const Automaton& a) {
  return Json{{"from", a.states()[e.source]},
              {"to", a.states()[e.target]},
              {"claimed", e.claimed ? 1 : 0},
              {"measured", approximate(e.measured)},
              {"pass", e.pass}};
}

Json cmd_reify_check(const Options& o, std::istream& in) {
  const Automaton a = load(o, 0, in);
  const Rational eps = parse_rational(o.eps);
  const Rational delta = parse_rational(o.delta);
  MonoidClosure g = markov_monoid(a, o.cap);
  std::vector<ReificationReport> reports = check_consistency(a, g, o.n, eps, delta);
  if (!o.pattern.empty()) {
    const auto letters = letter_abstractions(a);
    const SharpExpression e = build_expression<LimitWord>(
        parse_expression_syntax(o.pattern, a.alphabet()), LimitWord::identity(a.state_count()),
        [&](LetterId x) { return letters[x]; });
    const auto index = g.find(e.value());
    if (!index) throw ValidationError("expression is not in the closure");
    reports = {reports[*index]};
    reports.front().expression = render(e, a.alphabet());
  }
  bool all = true;
  Json list = Json::array();
  for (const auto& rep : reports) {
    all = all && rep.pass;
    Json entries = Json::array();
    for (const auto& e : rep.entries) entries.push_back(entry_json(e, a));
    list.push_back(Json{{"element", rep.element},
                        {"expression", rep.expression},
                        {"status", rep.pass ? "pass" : "inconclusive at n"},
                        {"entries", entries}});
  }
  Json r{{"digest", digest(a)},
         {"n", o.n},
         {"zero_eps", o.eps},
         {"one_delta", o.delta},
         {"consistent", all},
         {"reports", list}};
  if (o.lower_bound) {
    const ExtendedClosure ext = extended_markov_monoid(a, o.cap);
    std::vector<ExtendedExpression> exprs;
    for (std::size_t i = 0; i < ext.size(); ++i) exprs.push_back(ext.provenance(i));
    const LowerBoundReport lb = check_lower_bound(a, ext, exprs, o.n);
    Json checks = Json::array();
    for (const auto& c : lb.checks) {
      checks.push_back(Json{{"expression", c.expression},
                            {"depth", c.depth},
                            {"support_matches", c.support_matches},
                            {"bound_holds", c.bound_holds},
                            {"min_limit_entry", approximate(c.min_limit_entry)}});
    }
    r["lower_bound"] = Json{{"pass", lb.pass}, {"checks", checks}};
  }
  return r;
}

void print_text(const Json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) print_text(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array()) {
    if (std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_string(); })) {
      out << prefix << ":\n";
      for (const auto& x : j) out << "  " << x.get<std::string>() << '\n';
      return;
    }
    for (std::size_t i = 0; i < j.size(); ++i) print_text(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Value-1 and leaktight decisions for probabilistic automata", "value1"};
  app.require_subcommand(1);
  Options o;

  app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", o.seed, "Seed for sampled checks");
  app.add_option("--cap", o.cap, "Closure element cap")->check(CLI::PositiveNumber);
  app.add_option("--max-len", o.max_len, "Word length bound for brute force");
  app.add_option("--bind", o.binds, "Family parameter NAME=NAT");
  app.add_option("--eps", o.eps, "Zero threshold (rational)");
  app.add_option("--delta", o.delta, "One threshold (rational)");

  using Handler = Json (*)(const Options&, std::istream&);
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto add = [&](const char* name, const char* help, Handler h) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    commands.emplace_back(sub, h);
    return sub;
  };

  add("validate", "Parse and validate an automaton", cmd_validate)->add_option("input", o.input);
  add("value1", "Decide value 1", cmd_value1)->add_option("input", o.input);
  add("leaktight", "Decide the leaktight property", cmd_leaktight)->add_option("input", o.input);
  add("monoid", "List the Markov monoid", cmd_monoid)->add_option("input", o.input);
  add("extended-monoid", "List the extended Markov monoid", cmd_extended_monoid)->add_option("input", o.input);
  add("sharp-height", "Sharp-height of the Markov monoid", cmd_sharp_height)->add_option("input", o.input);
  add("classify", "Deterministic, hierarchical and sharp-acyclic checks", cmd_classify)->add_option("input", o.input);

  CLI::App* compose = add("compose", "Parallel composition or synchronized product", cmd_compose);
  compose->add_option("inputs", o.inputs)->expected(2);
  compose->add_option("--mode", o.mode)->check(CLI::IsMember({"parallel", "product"}))->default_val("parallel");
  compose->add_option("--output", o.output, "Write the composed automaton here");

  CLI::App* reduce = add("reduce", "Reduce a simple automaton", cmd_reduce);
  reduce->add_option("input", o.input);
  reduce->add_option("--mode", o.mode)->check(CLI::IsMember({"basic", "third", "full"}))->default_val("basic");
  reduce->add_option("--output", o.output, "Write the reduced automaton here");

  CLI::App* estimate = add("estimate-value", "Brute-force value or word-family evaluation", cmd_estimate_value);
  estimate->add_option("input", o.input)->required();
  estimate->add_option("family", o.pattern, "Word family such as \"(b a^n)^m\"");

  CLI::App* reify = add("reify-check", "Check closure elements against reified words", cmd_reify_check);
  reify->add_option("input", o.input)->required();
  reify->add_option("expression", o.pattern, "Check only this sharp-expression");
  reify->add_option("--n", o.n, "Reification parameter")->check(CLI::PositiveNumber);
  reify->add_flag("--lower-bound", o.lower_bound, "Also check the depth-indexed lower bound");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (!o.input.empty()) o.inputs.push_back(o.input);
  } catch (const CLI::ParseError& e) {
    return e.get_exit_code() == 0 ? (app.exit(e, out, err), kExitOk) : (app.exit(e, out, err), kExitInputError);
  }

  for (const auto& [sub, handler] : commands) {
    if (!sub->parsed()) continue;
    try {
      const auto start = std::chrono::steady_clock::now();
      Json body = handler(o, in);
      Json report{{"command", sub->get_name()}, {"arguments", args}};
      for (auto& [k, v] : body.items()) report[k] = v;
      report["timing_ms"] =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      if (o.format == "text") {
        print_text(report, "", out);
      } else {
        out << report.dump(2) << '\n';
      }
      return kExitOk;
    } catch (const ResourceLimitError& e) {
      err << "value1: resource limit: " << e.what() << '\n';
      return kExitResourceLimit;
    } catch (const ParseError& e) {
      err << "value1: parse error at byte " << e.position() << ": " << e.what() << '\n';
      return kExitInputError;
    } catch (const std::exception& e) {
      err << "value1: " << e.what() << '\n';
      return kExitInputError;
    }
  }
  return kExitInputError;
}

}  // namespace value1
