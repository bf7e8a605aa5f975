#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "value1/automaton.hpp"
#include "value1/error.hpp"

namespace value1 {

enum class ExprKind { Empty, Letter, Concat, Iterate };

namespace detail {
template <class Value>
Value concat_values(const Value& a, const Value& b) { return concat(a, b); }
template <class Value>
Value iterate_value(const Value& a) { return iterate(a); }
template <class Value>
bool idempotent_value(const Value& a) { return is_idempotent(a); }
}  // namespace detail

/// Derivation tree of a monoid element: letters, binary concatenation and
/// iteration of idempotents. Every node carries its evaluated value, so the
/// tree is self-checking. Nodes are shared and immutable.
///
/// `Value` must provide `concat(v, v)`, `is_idempotent(v)` and `iterate(v)`
/// found by argument-dependent lookup.
template <class Value>
class BasicSharpExpression {
  struct Node {
    ExprKind kind;
    LetterId letter = 0;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
    Value value;
    unsigned sharp_height = 0;
    unsigned depth = 0;
  };

 public:
  BasicSharpExpression() = default;

  /// The empty word, evaluating to the identity.
  static BasicSharpExpression empty(Value identity) {
    return BasicSharpExpression(std::make_shared<const Node>(Node{ExprKind::Empty, 0, {}, {}, std::move(identity)}));
  }

  static BasicSharpExpression letter(LetterId id, Value value) {
    return BasicSharpExpression(std::make_shared<const Node>(Node{ExprKind::Letter, id, {}, {}, std::move(value)}));
  }

  static BasicSharpExpression concat(const BasicSharpExpression& lhs, const BasicSharpExpression& rhs) {
    Node n{ExprKind::Concat, 0, lhs.node_, rhs.node_, detail::concat_values(lhs.value(), rhs.value())};
    n.sharp_height = std::max(lhs.sharp_height(), rhs.sharp_height());
    n.depth = std::max(lhs.depth(), rhs.depth()) + 1;
    return BasicSharpExpression(std::make_shared<const Node>(std::move(n)));
  }

  /// Throws PreconditionError unless the child evaluates to an idempotent.
  static BasicSharpExpression iterate(const BasicSharpExpression& child) {
    if (!detail::idempotent_value(child.value())) throw PreconditionError("iteration of a non-idempotent element");
    Node n{ExprKind::Iterate, 0, child.node_, {}, detail::iterate_value(child.value())};
    n.sharp_height = child.sharp_height() + 1;
    n.depth = child.depth() + 1;
    return BasicSharpExpression(std::make_shared<const Node>(std::move(n)));
  }

  bool valid() const noexcept { return node_ != nullptr; }
  ExprKind kind() const { return node_->kind; }
  LetterId letter_id() const { return node_->letter; }
  BasicSharpExpression left() const { return BasicSharpExpression(node_->left); }
  BasicSharpExpression right() const { return BasicSharpExpression(node_->right); }
  BasicSharpExpression child() const { return BasicSharpExpression(node_->left); }
  const Value& value() const { return node_->value; }

  /// Maximal nesting of iteration nodes.
  unsigned sharp_height() const { return node_->sharp_height; }
  /// Tree depth: leaves 0, every concatenation or iteration node adds one.
  unsigned depth() const { return node_->depth; }

 private:
  explicit BasicSharpExpression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Renders with the grammar  expr := LETTER | expr expr | "(" expr ")#".
/// The empty expression renders as "ε".
template <class Value>
std::string render(const BasicSharpExpression<Value>& e, std::span<const std::string> alphabet) {
  switch (e.kind()) {
    case ExprKind::Empty:
      return "ε";
    case ExprKind::Letter:
      return alphabet[e.letter_id()];
    case ExprKind::Concat:
      return render(e.left(), alphabet) + " " + render(e.right(), alphabet);
    case ExprKind::Iterate:
      return "(" + render(e.child(), alphabet) + ")#";
  }
  return {};
}

/// Re-evaluates the tree bottom-up from its leaves, ignoring cached values.
template <class Value, class LeafFn>
Value reevaluate(const BasicSharpExpression<Value>& e, const Value& identity, LeafFn&& leaf) {
  switch (e.kind()) {
    case ExprKind::Empty:
      return identity;
    case ExprKind::Letter:
      return leaf(e.letter_id());
    case ExprKind::Concat:
      return concat(reevaluate(e.left(), identity, leaf), reevaluate(e.right(), identity, leaf));
    case ExprKind::Iterate:
      return iterate(reevaluate(e.child(), identity, leaf));
  }
  return identity;
}

/// Untyped parse tree of the expression grammar.
struct ExprSyntax {
  ExprKind kind = ExprKind::Empty;
  LetterId letter = 0;
  std::vector<ExprSyntax> children;  // Concat: two children; Iterate: one
};

/// Parses the textual grammar (concatenation is left-associative; "ε" is the
/// empty expression). Letters are resolved against `alphabet`; a token that
/// is not a letter name is split into single-character letters.
ExprSyntax parse_expression_syntax(std::string_view text, std::span<const std::string> alphabet);

template <class Value, class LeafFn>
BasicSharpExpression<Value> build_expression(const ExprSyntax& syntax, const Value& identity, LeafFn&& leaf) {
  switch (syntax.kind) {
    case ExprKind::Empty:
      return BasicSharpExpression<Value>::empty(identity);
    case ExprKind::Letter:
      return BasicSharpExpression<Value>::letter(syntax.letter, leaf(syntax.letter));
    case ExprKind::Concat:
      return BasicSharpExpression<Value>::concat(build_expression(syntax.children[0], identity, leaf),
                                                 build_expression(syntax.children[1], identity, leaf));
    case ExprKind::Iterate:
      return BasicSharpExpression<Value>::iterate(build_expression(syntax.children[0], identity, leaf));
  }
  return BasicSharpExpression<Value>::empty(identity);
}

}  // namespace value1
