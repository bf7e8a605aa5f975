#include "value1/word_family.hpp"

#include <algorithm>
#include <cctype>

#include "value1/error.hpp"

namespace value1 {

namespace {

class FamilyParser {
 public:
  FamilyParser(std::string_view text, const Automaton& automaton) : text_(text), automaton_(automaton) {}

  WordFamily parse() {
    WordFamily f{sequence()};
    if (pos_ != text_.size()) fail("unexpected ')'");
    if (f.atoms.empty()) fail("empty family");
    return f;
  }

 private:
  std::vector<FamilyAtom> sequence() {
    std::vector<FamilyAtom> atoms;
    for (;;) {
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] == ')') return atoms;
      for (auto& a : atom()) atoms.push_back(std::move(a));
    }
  }

  std::vector<FamilyAtom> atom() {
    std::vector<FamilyAtom> out;
    if (text_[pos_] == '(') {
      ++pos_;
      FamilyAtom g;
      g.is_group = true;
      g.group = sequence();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      if (g.group.empty()) fail("empty group");
      out.push_back(std::move(g));
    } else {
      const std::string_view token = word_token();
      if (token.empty()) fail("expected a letter");
      if (auto id = automaton_.find_letter(token)) {
        out.push_back(FamilyAtom{false, *id, {}, std::nullopt, 1});
      } else {
        for (char c : token) {
          auto single = automaton_.find_letter(std::string_view(&c, 1));
          if (!single) fail("unknown letter '" + std::string(token) + "'");
          out.push_back(FamilyAtom{false, *single, {}, std::nullopt, 1});
        }
      }
    }
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      const std::string_view exp = word_token();
      if (exp.empty()) fail("expected an exponent after '^'");
      FamilyAtom& last = out.back();
      if (std::all_of(exp.begin(), exp.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        last.literal = std::stoull(std::string(exp));
      } else {
        last.parameter = std::string(exp);
      }
    }
    return out;
  }

  std::string_view word_token() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
           text_[pos_] != ')' && text_[pos_] != '^') {
      ++pos_;
    }
    return text_.substr(start, pos_ - start);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what + " in word family", pos_); }

  std::string_view text_;
  const Automaton& automaton_;
  std::size_t pos_ = 0;
};

void collect(const std::vector<FamilyAtom>& atoms, std::set<std::string>& out) {
  for (const auto& a : atoms) {
    if (a.parameter) out.insert(*a.parameter);
    if (a.is_group) collect(a.group, out);
  }
}

unsigned long long exponent(const FamilyAtom& atom, const Bindings& bindings) {
  if (!atom.parameter) return atom.literal;
  auto it = bindings.find(*atom.parameter);
  if (it == bindings.end()) throw ValidationError("unbound parameter '" + *atom.parameter + "'");
  return it->second;
}

unsigned long long checked_mul(unsigned long long a, unsigned long long b) {
  unsigned long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw ResourceLimitError("word length overflow");
  return r;
}

unsigned long long length_of(const std::vector<FamilyAtom>& atoms, const Bindings& bindings) {
  unsigned long long total = 0;
  for (const auto& a : atoms) {
    const unsigned long long base = a.is_group ? length_of(a.group, bindings) : 1;
    if (__builtin_add_overflow(total, checked_mul(base, exponent(a, bindings)), &total)) {
      throw ResourceLimitError("word length overflow");
    }
  }
  return total;
}

void append(const std::vector<FamilyAtom>& atoms, const Bindings& bindings, Word& out) {
  for (const auto& a : atoms) {
    const unsigned long long k = exponent(a, bindings);
    if (!a.is_group) {
      out.insert(out.end(), k, a.letter);
      continue;
    }
    Word block;
    append(a.group, bindings, block);
    for (unsigned long long i = 0; i < k; ++i) out.insert(out.end(), block.begin(), block.end());
  }
}

Matrix matrix_of(const Automaton& automaton, const std::vector<FamilyAtom>& atoms, const Bindings& bindings) {
  Matrix acc = Matrix::identity(automaton.state_count());
  for (const auto& a : atoms) {
    const Matrix block = a.is_group ? matrix_of(automaton, a.group, bindings) : automaton.matrix(a.letter);
    acc = acc * power(block, exponent(a, bindings));
  }
  return acc;
}

}  // namespace

std::set<std::string> WordFamily::parameters() const {
  std::set<std::string> out;
  collect(atoms, out);
  return out;
}

WordFamily parse_family(std::string_view text, const Automaton& automaton) {
  return FamilyParser(text, automaton).parse();
}

unsigned long long family_length(const WordFamily& family, const Bindings& bindings) {
  return length_of(family.atoms, bindings);
}

Word instantiate(const WordFamily& family, const Bindings& bindings, unsigned long long max_length) {
  if (family_length(family, bindings) > max_length) throw ResourceLimitError("instantiated word exceeds budget");
  Word out;
  append(family.atoms, bindings, out);
  return out;
}

Matrix family_matrix(const Automaton& automaton, const WordFamily& family, const Bindings& bindings) {
  return matrix_of(automaton, family.atoms, bindings);
}

std::vector<FamilyRow> evaluate_family(const Automaton& automaton, const WordFamily& family,
                                       const std::map<std::string, std::vector<unsigned long long>>& grid,
                                       unsigned long long max_length) {
  for (const auto& p : family.parameters()) {
    if (!grid.contains(p)) throw ValidationError("no values given for parameter '" + p + "'");
  }
  std::vector<Bindings> points{Bindings{}};
  for (const auto& [name, values] : grid) {
    std::vector<Bindings> next;
    for (const auto& b : points)
      for (unsigned long long v : values) {
        Bindings nb = b;
        nb[name] = v;
        next.push_back(std::move(nb));
      }
    points = std::move(next);
  }

  std::vector<FamilyRow> rows;
  for (const auto& b : points) {
    if (family_length(family, b) > max_length) throw ResourceLimitError("instantiated word exceeds budget");
    const Matrix m = family_matrix(automaton, family, b);
    Rational value = 0;
    for (StateId f : automaton.finals()) value += m.at(automaton.initial(), f);
    rows.push_back({b, value});
  }
  return rows;
}

}  // namespace value1
