#include "value1/automaton.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "value1/error.hpp"

namespace value1 {

using json = nlohmann::json;

Matrix Matrix::identity(std::size_t dim) {
  Matrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1;
  return m;
}

Rational Matrix::row_sum(std::size_t row) const {
  Rational sum = 0;
  for (std::size_t c = 0; c < dim_; ++c) sum += at(row, c);
  return sum;
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.dim_ != rhs.dim_) throw PreconditionError("matrix dimension mismatch");
  const std::size_t n = lhs.dim_;
  Matrix out(n);
  Rational term;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Rational& left = lhs.at(i, k);
      if (sgn(left) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const Rational& right = rhs.at(k, j);
        if (sgn(right) == 0) continue;
        term = left * right;
        out.at(i, j) += term;
      }
    }
  }
  return out;
}

Matrix power(const Matrix& matrix, unsigned long long exponent) {
  Matrix result = Matrix::identity(matrix.dim());
  Matrix base = matrix;
  bool first = true;
  while (exponent > 0) {
    if (exponent & 1ULL) {
      result = first ? base : result * base;
      first = false;
    }
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Distribution Distribution::step(const Matrix& m) const {
  Distribution next{std::vector<Rational>(weights.size())};
  for (std::size_t s = 0; s < weights.size(); ++s) {
    if (sgn(weights[s]) == 0) continue;
    for (std::size_t t = 0; t < weights.size(); ++t) {
      if (sgn(m.at(s, t)) != 0) next.weights[t] += weights[s] * m.at(s, t);
    }
  }
  return next;
}

namespace {

void check_names(const std::vector<std::string>& names, const char* what) {
  std::set<std::string_view> seen;
  for (const auto& name : names) {
    if (name.empty()) throw ValidationError(std::string("empty ") + what + " name");
    for (unsigned char c : name) {
      if (std::iscntrl(c)) throw ValidationError(std::string(what) + " name contains a control character");
    }
    if (!seen.insert(name).second) throw ValidationError(std::string("duplicate ") + what + " '" + name + "'");
  }
}

}  // namespace

Automaton::Automaton(std::vector<std::string> states, std::vector<std::string> alphabet,
                     std::vector<Matrix> matrices, StateId initial, std::vector<StateId> finals)
    : states_(std::move(states)),
      alphabet_(std::move(alphabet)),
      matrices_(std::move(matrices)),
      initial_(initial),
      finals_(std::move(finals)) {
  if (states_.empty()) throw ValidationError("automaton has no states");
  if (alphabet_.empty()) throw ValidationError("automaton has an empty alphabet");
  check_names(states_, "state");
  check_names(alphabet_, "letter");
  if (matrices_.size() != alphabet_.size()) throw ValidationError("one matrix per letter is required");
  if (initial_ >= states_.size()) throw ValidationError("initial state out of range");
  const std::size_t n = states_.size();
  for (std::size_t a = 0; a < matrices_.size(); ++a) {
    Matrix& m = matrices_[a];
    if (m.dim() != n) throw ValidationError("matrix for letter '" + alphabet_[a] + "' has wrong dimension");
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t t = 0; t < n; ++t) {
        m.at(s, t).canonicalize();
        if (m.at(s, t) < 0 || m.at(s, t) > 1) {
          throw ValidationError("letter '" + alphabet_[a] + "', " + states_[s] + " -> " + states_[t] +
                                ": probability " + to_string(m.at(s, t)) + " outside [0,1]");
        }
      }
      const Rational sum = m.row_sum(s);
      if (sum != 1) {
        throw ValidationError("letter '" + alphabet_[a] + "', state '" + states_[s] + "': row sum " +
                              to_string(sum) + " ≠ 1");
      }
    }
  }
  std::sort(finals_.begin(), finals_.end());
  finals_.erase(std::unique(finals_.begin(), finals_.end()), finals_.end());
  final_mask_.assign(n, false);
  for (StateId f : finals_) {
    if (f >= n) throw ValidationError("final state out of range");
    final_mask_[f] = true;
  }
}

bool Automaton::is_final(StateId s) const { return s < final_mask_.size() && final_mask_[s]; }

std::optional<StateId> Automaton::find_state(std::string_view name) const {
  auto it = std::find(states_.begin(), states_.end(), name);
  if (it == states_.end()) return std::nullopt;
  return static_cast<StateId>(it - states_.begin());
}

std::optional<LetterId> Automaton::find_letter(std::string_view name) const {
  auto it = std::find(alphabet_.begin(), alphabet_.end(), name);
  if (it == alphabet_.end()) return std::nullopt;
  return static_cast<LetterId>(it - alphabet_.begin());
}

Distribution Automaton::initial_distribution() const {
  Distribution d{std::vector<Rational>(states_.size())};
  d.weights[initial_] = 1;
  return d;
}

namespace {

std::vector<std::string> string_array(const json& doc, const char* field) {
  if (!doc.contains(field)) throw ParseError(std::string("missing field '") + field + "'");
  const json& arr = doc.at(field);
  if (!arr.is_array()) throw ParseError(std::string("field '") + field + "' must be an array of strings");
  std::vector<std::string> out;
  for (const json& item : arr) {
    if (!item.is_string()) throw ParseError(std::string("field '") + field + "' must be an array of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace

Automaton parse_automaton(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
  if (!doc.is_object()) throw ParseError("automaton document must be a JSON object");

  auto states = string_array(doc, "states");
  auto alphabet = string_array(doc, "alphabet");
  auto final_names = string_array(doc, "final");
  if (!doc.contains("initial")) throw ValidationError("missing initial state");
  if (!doc.at("initial").is_string()) throw ParseError("field 'initial' must be a string");
  const auto initial_name = doc.at("initial").get<std::string>();

  std::map<std::string_view, StateId> state_index;
  for (std::size_t i = 0; i < states.size(); ++i) state_index.emplace(states[i], i);
  auto lookup_state = [&](const std::string& name) {
    auto it = state_index.find(name);
    if (it == state_index.end()) throw ValidationError("unknown state '" + name + "'");
    return it->second;
  };

  const StateId initial = lookup_state(initial_name);
  std::vector<StateId> finals;
  for (const auto& f : final_names) finals.push_back(lookup_state(f));

  std::vector<Matrix> matrices(alphabet.size(), Matrix(states.size()));
  if (doc.contains("transitions")) {
    const json& trans = doc.at("transitions");
    if (!trans.is_object()) throw ParseError("field 'transitions' must be an object");
    for (const auto& [letter, triples] : trans.items()) {
      auto it = std::find(alphabet.begin(), alphabet.end(), letter);
      if (it == alphabet.end()) throw ValidationError("unknown letter '" + letter + "'");
      Matrix& m = matrices[static_cast<std::size_t>(it - alphabet.begin())];
      if (!triples.is_array()) throw ParseError("transitions of '" + letter + "' must be an array");
      for (const json& triple : triples) {
        if (!triple.is_array() || triple.size() != 3 || !triple[0].is_string() || !triple[1].is_string() ||
            !triple[2].is_string()) {
          throw ParseError("transition of '" + letter + "' must be [from, to, \"num/den\"]");
        }
        const StateId from = lookup_state(triple[0].get<std::string>());
        const StateId to = lookup_state(triple[1].get<std::string>());
        const Rational p = parse_rational(triple[2].get<std::string>());
        m.at(from, to) += p;
      }
    }
  }
  return Automaton(std::move(states), std::move(alphabet), std::move(matrices), initial, std::move(finals));
}

std::string serialize_automaton(const Automaton& automaton) {
  json doc;
  doc["states"] = automaton.states();
  doc["alphabet"] = automaton.alphabet();
  doc["initial"] = automaton.states()[automaton.initial()];
  json finals = json::array();
  for (StateId f : automaton.finals()) finals.push_back(automaton.states()[f]);
  doc["final"] = finals;
  json trans = json::object();
  for (LetterId a = 0; a < automaton.letter_count(); ++a) {
    json triples = json::array();
    const Matrix& m = automaton.matrix(a);
    for (StateId s = 0; s < automaton.state_count(); ++s) {
      for (StateId t = 0; t < automaton.state_count(); ++t) {
        if (sgn(m.at(s, t)) != 0) {
          triples.push_back({automaton.states()[s], automaton.states()[t], to_string(m.at(s, t))});
        }
      }
    }
    trans[automaton.alphabet()[a]] = triples;
  }
  doc["transitions"] = trans;
  return doc.dump(2);
}

Word parse_word(const Automaton& automaton, std::string_view text) {
  std::vector<std::string> tokens;
  std::istringstream in{std::string(text)};
  for (std::string tok; in >> tok;) tokens.push_back(tok);

  Word word;
  if (tokens.size() == 1 && !automaton.find_letter(tokens.front())) {
    for (char c : tokens.front()) {
      auto id = automaton.find_letter(std::string_view(&c, 1));
      if (!id) throw ValidationError("unknown letter '" + std::string(1, c) + "'");
      word.push_back(*id);
    }
    return word;
  }
  for (const auto& tok : tokens) {
    auto id = automaton.find_letter(tok);
    if (!id) throw ValidationError("unknown letter '" + tok + "'");
    word.push_back(*id);
  }
  return word;
}

std::string render_word(const Automaton& automaton, const Word& word) {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i > 0) out += ' ';
    out += automaton.alphabet().at(word[i]);
  }
  return out;
}

Matrix word_matrix(const Automaton& automaton, const Word& word) {
  Matrix result = Matrix::identity(automaton.state_count());
  for (LetterId a : word) {
    if (a >= automaton.letter_count()) throw ValidationError("unknown letter id " + std::to_string(a));
    result = result * automaton.matrix(a);
  }
  return result;
}

Rational accepted_mass(const Automaton& automaton, const Distribution& d) {
  Rational sum = 0;
  for (StateId f : automaton.finals()) sum += d.weights.at(f);
  return sum;
}

Rational acceptance_probability(const Automaton& automaton, const Word& word) {
  Distribution d = automaton.initial_distribution();
  for (LetterId a : word) {
    if (a >= automaton.letter_count()) throw ValidationError("unknown letter id " + std::to_string(a));
    d = d.step(automaton.matrix(a));
  }
  return accepted_mass(automaton, d);
}

Rational min_transition_probability(const Automaton& automaton) {
  std::optional<Rational> best;
  for (LetterId a = 0; a < automaton.letter_count(); ++a) {
    const Matrix& m = automaton.matrix(a);
    for (StateId s = 0; s < automaton.state_count(); ++s) {
      for (StateId t = 0; t < automaton.state_count(); ++t) {
        const Rational& p = m.at(s, t);
        if (sgn(p) > 0 && (!best || p < *best)) best = p;
      }
    }
  }
  return *best;  // rows are stochastic, so some entry is positive
}

namespace {

/// For each letter of `a`, the index of the same-named letter in `b`.
std::vector<LetterId> match_alphabets(const Automaton& a, const Automaton& b) {
  if (a.letter_count() != b.letter_count()) throw ValidationError("alphabet mismatch");
  std::vector<LetterId> map;
  for (const auto& name : a.alphabet()) {
    auto id = b.find_letter(name);
    if (!id) throw ValidationError("alphabet mismatch: '" + name + "' missing from second automaton");
    map.push_back(*id);
  }
  return map;
}

}  // namespace

Automaton parallel_composition(const Automaton& a, const Automaton& b) {
  const auto letter_map = match_alphabets(a, b);
  const std::size_t na = a.state_count();
  const std::size_t nb = b.state_count();
  const std::size_t n = 1 + na + nb;

  std::vector<std::string> states{"init"};
  for (const auto& s : a.states()) states.push_back("A:" + s);
  for (const auto& s : b.states()) states.push_back("B:" + s);

  const Rational third(1, 3);
  std::vector<Matrix> matrices;
  for (LetterId l = 0; l < a.letter_count(); ++l) {
    Matrix m(n);
    m.at(0, 0) += third;
    m.at(0, 1 + a.initial()) += third;
    m.at(0, 1 + na + b.initial()) += third;
    const Matrix& ma = a.matrix(l);
    const Matrix& mb = b.matrix(letter_map[l]);
    for (StateId s = 0; s < na; ++s)
      for (StateId t = 0; t < na; ++t) m.at(1 + s, 1 + t) = ma.at(s, t);
    for (StateId s = 0; s < nb; ++s)
      for (StateId t = 0; t < nb; ++t) m.at(1 + na + s, 1 + na + t) = mb.at(s, t);
    matrices.push_back(std::move(m));
  }
  std::vector<StateId> finals;
  for (StateId f : a.finals()) finals.push_back(1 + f);
  for (StateId f : b.finals()) finals.push_back(1 + na + f);
  return Automaton(std::move(states), a.alphabet(), std::move(matrices), 0, std::move(finals));
}

Automaton synchronized_product(const Automaton& a, const Automaton& b) {
  const auto letter_map = match_alphabets(a, b);
  const std::size_t na = a.state_count();
  const std::size_t nb = b.state_count();
  auto pair = [nb](StateId s, StateId t) { return s * nb + t; };

  std::vector<std::string> states;
  for (const auto& s : a.states())
    for (const auto& t : b.states()) states.push_back("(" + s + "," + t + ")");

  std::vector<Matrix> matrices;
  for (LetterId l = 0; l < a.letter_count(); ++l) {
    Matrix m(na * nb);
    const Matrix& ma = a.matrix(l);
    const Matrix& mb = b.matrix(letter_map[l]);
    for (StateId s = 0; s < na; ++s)
      for (StateId s2 = 0; s2 < na; ++s2) {
        if (sgn(ma.at(s, s2)) == 0) continue;
        for (StateId t = 0; t < nb; ++t)
          for (StateId t2 = 0; t2 < nb; ++t2) {
            if (sgn(mb.at(t, t2)) == 0) continue;
            m.at(pair(s, t), pair(s2, t2)) = ma.at(s, s2) * mb.at(t, t2);
          }
      }
    matrices.push_back(std::move(m));
  }
  std::vector<StateId> finals;
  for (StateId f : a.finals())
    for (StateId g : b.finals()) finals.push_back(pair(f, g));
  return Automaton(std::move(states), a.alphabet(), std::move(matrices), pair(a.initial(), b.initial()),
                   std::move(finals));
}

}  // namespace value1
