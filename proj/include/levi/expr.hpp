#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "levi/field.hpp"

namespace levi {

/// Expression tree for field elements and coefficient formulas.
///
/// Grammar, loosest first:
///   sum     := product (('+' | '-') product)*
///   product := unary (('*' | '/') unary)*
///   unary   := ('-' | '+') unary | power
///   power   := postfix ('^' unary)?        (right associative)
///   postfix := atom '!'*
///   atom    := integer | name | '(' sum ')'
/// `e` is eps and `w` is 1/eps; other names are looked up when evaluating.
struct Expr {
  enum class Kind { Number, Epsilon, Omega, Name, Negate, Add, Sub, Mul, Div, Pow, Factorial };

  Kind kind = Kind::Number;
  Rat number;
  std::string name;
  std::shared_ptr<const Expr> lhs;
  std::shared_ptr<const Expr> rhs;
};

using ExprPtr = std::shared_ptr<const Expr>;
using Bindings = std::map<std::string, FieldElement, std::less<>>;

/// Throws ParseError carrying the byte offset of the problem.
ExprPtr parse_expression(std::string_view text);

FieldElement evaluate(const Expr& e, const Bindings& names = {});

/// Parses and evaluates a closed expression.
FieldElement parse_element(std::string_view text, const Bindings& names = {});

/// The element as an integer; throws EvaluationError otherwise.
std::int64_t to_integer(const FieldElement& x);

/// Expression in one index variable, compiled to a function of that index.
std::function<FieldElement(std::uint64_t)> index_function(ExprPtr e, std::string var,
                                                          Bindings names);

}  // namespace levi
