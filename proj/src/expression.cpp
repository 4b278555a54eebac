#include "cruled/expression.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <variant>
#include <vector>

#include "cruled/errors.hpp"

namespace cruled {
namespace detail {

enum class Func { Sin, Cos, Tan, Exp, Log, Sqrt, Atan };

struct Number {
  double value;
};
struct Variable {};
struct Negate {
  std::shared_ptr<const Node> operand;
};
struct Binary {
  char op;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};
struct Power {
  std::shared_ptr<const Node> base;
  int exponent;
};
struct Call {
  Func func;
  std::shared_ptr<const Node> arg;
};

struct Node {
  std::variant<Number, Variable, Negate, Binary, Power, Call> v;
};

}  // namespace detail

namespace {

using detail::Func;
using detail::Node;
using NodePtr = std::shared_ptr<const Node>;

constexpr std::array<std::pair<std::string_view, Func>, 7> kFunctions = {{
    {"sin", Func::Sin},
    {"cos", Func::Cos},
    {"tan", Func::Tan},
    {"exp", Func::Exp},
    {"log", Func::Log},
    {"sqrt", Func::Sqrt},
    {"atan", Func::Atan},
}};

std::string_view func_name(Func f) {
  for (const auto& [name, fn] : kFunctions) {
    if (fn == f) return name;
  }
  return "?";
}

template <class T>
NodePtr make(T&& payload) {
  return std::make_shared<const Node>(Node{std::forward<T>(payload)});
}

// Recursive-descent parser, one method per grammar rule.
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(ErrorKind::Syntax, pos_, "syntax error: " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make(detail::Binary{'+', lhs, term()});
      } else if (accept('-')) {
        lhs = make(detail::Binary{'-', lhs, term()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = make(detail::Binary{'*', lhs, factor()});
      } else if (accept('/')) {
        lhs = make(detail::Binary{'/', lhs, factor()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr factor() {
    NodePtr b = base();
    if (accept('^')) {
      skip_ws();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected integer exponent");
      int exponent = 0;
      const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, exponent);
      if (ec != std::errc{}) {
        pos_ = start;
        fail("exponent out of range");
      }
      return make(detail::Power{b, exponent});
    }
    return b;
  }

  NodePtr base() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '-') {
      ++pos_;
      return make(detail::Negate{base()});
    }
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail("unexpected character");
  }

  NodePtr number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      ++pos_;
    }
    // Optional exponent part: 1e-3, 2.5E+2.
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
        pos_ = p;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc{} || ptr != text_.data() + pos_) {
      pos_ = start;
      fail("malformed number");
    }
    return make(detail::Number{value});
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "s") return make(detail::Variable{});
    if (name == "pi") return make(detail::Number{std::numbers::pi});
    for (const auto& [fname, fn] : kFunctions) {
      if (name == fname) {
        expect('(');
        NodePtr arg = expr();
        expect(')');
        return make(detail::Call{fn, arg});
      }
    }
    throw ParseError(ErrorKind::UnknownFunction, start,
                     "unknown identifier '" + std::string(name) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

template <class T>
T apply(Func f, const T& x) {
  using std::atan, std::cos, std::exp, std::log, std::sin, std::sqrt, std::tan;
  switch (f) {
    case Func::Sin: return sin(x);
    case Func::Cos: return cos(x);
    case Func::Tan: return tan(x);
    case Func::Exp: return exp(x);
    case Func::Log: return log(x);
    case Func::Sqrt: return sqrt(x);
    case Func::Atan: return atan(x);
  }
  return x;
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Jet eval(const Node& node, const Jet& s) {
  return std::visit(
      Overloaded{
          [&](const detail::Number& n) { return Jet::constant(n.value, s.order()); },
          [&](const detail::Variable&) { return s; },
          [&](const detail::Negate& n) { return -eval(*n.operand, s); },
          [&](const detail::Binary& b) {
            const Jet lhs = eval(*b.lhs, s);
            const Jet rhs = eval(*b.rhs, s);
            switch (b.op) {
              case '+': return lhs + rhs;
              case '-': return lhs - rhs;
              case '*': return lhs * rhs;
              default: return lhs / rhs;
            }
          },
          [&](const detail::Power& p) { return pow(eval(*p.base, s), p.exponent); },
          [&](const detail::Call& c) {
            const Jet arg = eval(*c.arg, s);
            if (c.func == Func::Log && !(arg.value() > 0.0)) {
              throw GeomError(ErrorKind::EvaluationSingularity,
                              "log of nonpositive value at s = " + std::to_string(s.value()));
            }
            return apply(c.func, arg);
          },
      },
      node.v);
}

std::string render(const Node& node) {
  return std::visit(
      Overloaded{
          [](const detail::Number& n) {
            char buf[32];
            const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, n.value);
            return std::string(buf, ptr);
          },
          [](const detail::Variable&) { return std::string("s"); },
          [](const detail::Negate& n) { return "(-" + render(*n.operand) + ")"; },
          [](const detail::Binary& b) {
            return "(" + render(*b.lhs) + " " + b.op + " " + render(*b.rhs) + ")";
          },
          [](const detail::Power& p) {
            return "(" + render(*p.base) + "^" + std::to_string(p.exponent) + ")";
          },
          [](const detail::Call& c) {
            return std::string(func_name(c.func)) + "(" + render(*c.arg) + ")";
          },
      },
      node.v);
}

}  // namespace

Expression Expression::parse(std::string_view text) {
  return Expression(Parser(text).parse(), std::string(text));
}

double Expression::evaluate(double s) const { return evaluate(Jet::constant(s, 0)).value(); }

Jet Expression::evaluate(const Jet& s) const { return eval(*root_, s); }

std::string Expression::to_string() const { return render(*root_); }

}  // namespace cruled
