#include "levi/expr.hpp"

#include <cctype>

#include "levi/error.hpp"

namespace levi {

namespace {

ExprPtr node(Expr::Kind k, ExprPtr lhs = nullptr, ExprPtr rhs = nullptr) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  return e;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  ExprPtr parse() {
    ExprPtr e = sum();
    skip();
    if (pos_ < s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { 
    throw ParseError(what + " at offset " + std::to_string(pos_), pos_);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprPtr sum() {
    ExprPtr e = product();
    while (true) {
      if (accept('+')) {
        e = node(Expr::Kind::Add, e, product());
      } else if (accept('-')) {
        e = node(Expr::Kind::Sub, e, product());
      } else {
        return e;
      }
    }
  }

  ExprPtr product() {
    ExprPtr e = unary();
    while (true) {
      if (accept('*')) {
        e = node(Expr::Kind::Mul, e, unary());
      } else if (accept('/')) {
        e = node(Expr::Kind::Div, e, unary());
      } else {
        return e;
      }
    }
  }

  ExprPtr unary() {
    if (accept('-')) return node(Expr::Kind::Negate, unary());
    if (accept('+')) return unary();
    return power();
  }

  ExprPtr power() {
    ExprPtr base = postfix();
    if (accept('^')) return node(Expr::Kind::Pow, base, unary());
    return base;
  }

  ExprPtr postfix() {
    ExprPtr e = atom();
    while (accept('!')) e = node(Expr::Kind::Factorial, e);
    return e;
  }

  ExprPtr atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr e = sum();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Number;
      e->number = Rat(std::string(s_.substr(start, pos_ - start)));
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
        ++pos_;
      }
      const std::string name(s_.substr(start, pos_ - start));
      if (name == "e") return node(Expr::Kind::Epsilon);
      if (name == "w") return node(Expr::Kind::Omega);
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Name;
      e->name = name;
      return e;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parse_expression(std::string_view text) { return Parser(text).parse(); }

std::int64_t to_integer(const FieldElement& x) {
  if (x.is_zero()) return 0;
  if (!x.is_polynomial() || x.valuation() != Valuation(0) || x.numerator().high() != 0) {
    throw EvaluationError("expected an integer, got " + x.to_string());
  }
  const Rat c = x.leading_coefficient();
  if (c.get_den() != 1 || !c.get_num().fits_slong_p()) {
    throw EvaluationError("expected an integer, got " + x.to_string());
  }
  return c.get_num().get_si();
}

FieldElement evaluate(const Expr& e, const Bindings& names) {
  switch (e.kind) {
    case Expr::Kind::Number:
      return FieldElement(e.number);
    case Expr::Kind::Epsilon:
      return FieldElement::epsilon();
    case Expr::Kind::Omega:
      return FieldElement::omega();
    case Expr::Kind::Name: {
      const auto it = names.find(e.name);
      if (it == names.end()) throw EvaluationError("unbound name '" + e.name + "'");
      return it->second;
    }
    case Expr::Kind::Negate:
      return -evaluate(*e.lhs, names);
    case Expr::Kind::Add:
      return evaluate(*e.lhs, names) + evaluate(*e.rhs, names);
    case Expr::Kind::Sub:
      return evaluate(*e.lhs, names) - evaluate(*e.rhs, names);
    case Expr::Kind::Mul:
      return evaluate(*e.lhs, names) * evaluate(*e.rhs, names);
    case Expr::Kind::Div:
      return evaluate(*e.lhs, names) / evaluate(*e.rhs, names);
    case Expr::Kind::Pow:
      return evaluate(*e.lhs, names).pow(to_integer(evaluate(*e.rhs, names)));
    case Expr::Kind::Factorial: {
      const std::int64_t n = to_integer(evaluate(*e.lhs, names));
      if (n < 0) throw EvaluationError("factorial of a negative integer");
      return FieldElement(factorial(static_cast<std::uint64_t>(n)));
    }
  }
  throw EvaluationError("bad expression node");
}

FieldElement parse_element(std::string_view text, const Bindings& names) {
  return evaluate(*parse_expression(text), names);
}

std::function<FieldElement(std::uint64_t)> index_function(ExprPtr e, std::string var,
                                                          Bindings names) {
  return [e = std::move(e), var = std::move(var), names = std::move(names)](std::uint64_t n) {
    Bindings local = names;
    local.insert_or_assign(var, FieldElement(static_cast<std::int64_t>(n)));
    return evaluate(*e, local);
  };
}

}  // namespace levi
