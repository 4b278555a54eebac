#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "cruled/jet.hpp"

namespace cruled {

namespace detail {
struct Node;
}

/// A parsed expression in the single free variable `s`.
///
/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := base ('^' integer)?
///   base   := number | 's' | 'pi' | func '(' expr ')' | '(' expr ')' | '-' base
///   func   := sin | cos | tan | exp | log | sqrt | atan
class Expression {
 public:
  /// Throws ParseError (Syntax or UnknownFunction) with a 0-based position.
  static Expression parse(std::string_view text);

  double evaluate(double s) const;
  /// Evaluates with `s` seeded as the identity jet of the requested order.
  Jet evaluate(const Jet& s) const;

  const std::string& source() const noexcept { return source_; }
  /// Canonical fully-parenthesized rendering of the tree.
  std::string to_string() const;

 private:
  Expression(std::shared_ptr<const detail::Node> root, std::string source)
      : root_(std::move(root)), source_(std::move(source)) {}

  std::shared_ptr<const detail::Node> root_;
  std::string source_;
};

}  // namespace cruled
