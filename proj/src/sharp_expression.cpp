#include "value1/sharp_expression.hpp"

#include <algorithm>
#include <cctype>

namespace value1 {

namespace {

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, std::span<const std::string> alphabet)
      : text_(text), alphabet_(alphabet) {}

  ExprSyntax parse() {
    ExprSyntax e = sequence();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return e;
  }

 private:
  // sequence := item*   (empty sequence is only allowed as "ε")
  ExprSyntax sequence() {
    std::vector<ExprSyntax> items;
    for (;;) {
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] == ')') break;
      for (auto& item : this->item()) items.push_back(std::move(item));
    }
    if (items.empty()) fail("empty expression");
    ExprSyntax acc = std::move(items.front());
    for (std::size_t i = 1; i < items.size(); ++i) {
      ExprSyntax c{ExprKind::Concat, 0, {}};
      c.children.push_back(std::move(acc));
      c.children.push_back(std::move(items[i]));
      acc = std::move(c);
    }
    return acc;
  }

  std::vector<ExprSyntax> item() {
    if (text_[pos_] == '(') {
      ++pos_;
      ExprSyntax inner = sequence();
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      if (pos_ >= text_.size() || text_[pos_] != '#') fail("expected '#' after ')'");
      ++pos_;
      ExprSyntax it{ExprKind::Iterate, 0, {}};
      it.children.push_back(std::move(inner));
      return {std::move(it)};
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
           text_[pos_] != ')') {
      ++pos_;
    }
    const std::string_view token = text_.substr(start, pos_ - start);
    if (token.empty()) fail("unexpected character");
    if (token == "ε") return {ExprSyntax{}};
    if (auto id = find(token)) return {ExprSyntax{ExprKind::Letter, *id, {}}};
    std::vector<ExprSyntax> letters;
    for (char c : token) {
      auto id = find(std::string_view(&c, 1));
      if (!id) throw ParseError("unknown letter '" + std::string(token) + "' in expression", start);
      letters.push_back(ExprSyntax{ExprKind::Letter, *id, {}});
    }
    return letters;
  }

  std::optional<LetterId> find(std::string_view name) const {
    auto it = std::find(alphabet_.begin(), alphabet_.end(), name);
    if (it == alphabet_.end()) return std::nullopt;
    return static_cast<LetterId>(it - alphabet_.begin());
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what + " in expression", pos_); }

  std::string_view text_;
  std::span<const std::string> alphabet_;
  std::size_t pos_ = 0;
};

}  // namespace

ExprSyntax parse_expression_syntax(std::string_view text, std::span<const std::string> alphabet) {
  return ExpressionParser(text, alphabet).parse();
}

}  // namespace value1
