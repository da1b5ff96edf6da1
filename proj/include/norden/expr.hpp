#pragma once

// Closed-form scalar expressions over chart coordinates: parsing, printing,
// exact symbolic differentiation and evaluation over any scalar-like type
// (plain doubles or the jets in jets.hpp).

#include <algorithm>
#include <cctype>
#include <cmath>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "norden/core.hpp"

namespace norden {

enum class Op { constant, coord, neg, sum, product, quotient, power, sin, cos, exp, log };

struct ExprNode;

/// Immutable handle to an expression tree. Copies share structure.
class Expr {
 public:
  Expr();

  static Expr constant(double c);
  static Expr coord(int index);
  static Expr neg(Expr a);
  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr quotient(Expr num, Expr den);
  static Expr power(Expr base, int exponent);
  static Expr apply(Op function, Expr arg);

  Op op() const;
  /// Constant value; only meaningful for Op::constant.
  double value() const;
  /// Coordinate index for Op::coord, exponent for Op::power.
  int index() const;
  std::span<const Expr> args() const;

  bool is_constant() const { return op() == Op::constant; }
  bool is_constant(double c) const { return is_constant() && value() == c; }
  /// Largest coordinate index referenced, or -1 for a constant tree.
  int max_coord() const;

  const ExprNode* node() const { return node_.get(); }

 private:
  explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const ExprNode> node_;
};

struct ExprNode {
  Op op = Op::constant;
  double value = 0.0;
  int index = 0;
  std::vector<Expr> args;
};

inline Expr::Expr() : node_(std::make_shared<const ExprNode>()) {}

inline Expr Expr::constant(double c) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{Op::constant, c, 0, {}}));
}
inline Expr Expr::coord(int index) {
  if (index < 0) throw InvalidInputError("negative coordinate index");
  return Expr(std::make_shared<const ExprNode>(ExprNode{Op::coord, 0.0, index, {}}));
}
inline Expr Expr::neg(Expr a) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{Op::neg, 0.0, 0, {std::move(a)}}));
}
inline Expr Expr::sum(std::vector<Expr> terms) {
  if (terms.empty()) return constant(0.0);
  return Expr(std::make_shared<const ExprNode>(ExprNode{Op::sum, 0.0, 0, std::move(terms)}));
}
inline Expr Expr::product(std::vector<Expr> factors) {
  if (factors.empty()) return constant(1.0);
  return Expr(std::make_shared<const ExprNode>(ExprNode{Op::product, 0.0, 0, std::move(factors)}));
}
inline Expr Expr::quotient(Expr num, Expr den) {
  return Expr(std::make_shared<const ExprNode>(
      ExprNode{Op::quotient, 0.0, 0, {std::move(num), std::move(den)}}));
}
inline Expr Expr::power(Expr base, int exponent) {
  return Expr(std::make_shared<const ExprNode>(ExprNode{Op::power, 0.0, exponent, {std::move(base)}}));
}
inline Expr Expr::apply(Op function, Expr arg) {
  if (function != Op::sin && function != Op::cos && function != Op::exp && function != Op::log)
    throw InvalidInputError("not a unary function");
  return Expr(std::make_shared<const ExprNode>(ExprNode{function, 0.0, 0, {std::move(arg)}}));
}

inline Op Expr::op() const { return node_->op; }
inline double Expr::value() const { return node_->value; }
inline int Expr::index() const { return node_->index; }
inline std::span<const Expr> Expr::args() const { return node_->args; }

inline int Expr::max_coord() const {
  if (op() == Op::coord) return index();
  int m = -1;
  for (const auto& a : args()) m = std::max(m, a.max_coord());
  return m;
}

// Folding builders. Unlike the raw constructors above these drop additive
// zeros and multiplicative ones and flatten nested sums/products; they are
// what differentiation and the catalog use to keep trees small.

inline Expr operator-(const Expr& a) {
  if (a.is_constant()) return Expr::constant(-a.value());
  if (a.op() == Op::neg) return a.args()[0];
  return Expr::neg(a);
}

inline Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_constant(0.0)) return b;
  if (b.is_constant(0.0)) return a;
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() + b.value());
  std::vector<Expr> terms;
  for (const Expr* e : {&a, &b}) {
    if (e->op() == Op::sum)
      terms.insert(terms.end(), e->args().begin(), e->args().end());
    else
      terms.push_back(*e);
  }
  return Expr::sum(std::move(terms));
}

inline Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

inline Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_constant(0.0) || b.is_constant(0.0)) return Expr::constant(0.0);
  if (a.is_constant(1.0)) return b;
  if (b.is_constant(1.0)) return a;
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.value() * b.value());
  if (a.is_constant(-1.0)) return -b;
  if (b.is_constant(-1.0)) return -a;
  std::vector<Expr> factors;
  for (const Expr* e : {&a, &b}) {
    if (e->op() == Op::product)
      factors.insert(factors.end(), e->args().begin(), e->args().end());
    else
      factors.push_back(*e);
  }
  return Expr::product(std::move(factors));
}

inline Expr operator/(const Expr& a, const Expr& b) {
  if (a.is_constant(0.0) && !b.is_constant(0.0)) return Expr::constant(0.0);
  if (b.is_constant(1.0)) return a;
  return Expr::quotient(a, b);
}

inline Expr pow(const Expr& a, int n) {
  if (n == 0) return Expr::constant(1.0);
  if (n == 1) return a;
  if (a.is_constant() && (n > 0 || a.value() != 0.0)) return Expr::constant(std::pow(a.value(), n));
  return Expr::power(a, n);
}

inline Expr sin(const Expr& a) { return Expr::apply(Op::sin, a); }
inline Expr cos(const Expr& a) { return Expr::apply(Op::cos, a); }
inline Expr exp(const Expr& a) { return Expr::apply(Op::exp, a); }
inline Expr log(const Expr& a) { return Expr::apply(Op::log, a); }

/// x1, x2, ..., x{dim}
inline std::vector<std::string> default_coordinate_names(int dim) {
  std::vector<std::string> names;
  for (int i = 0; i < dim; ++i) names.push_back("x" + std::to_string(i + 1));
  return names;
}

namespace detail {

inline const char* function_name(Op op) {
  switch (op) {
    case Op::sin: return "sin";
    case Op::cos: return "cos";
    case Op::exp: return "exp";
    case Op::log: return "log";
    default: return "?";
  }
}

inline void print(const Expr& e, std::span<const std::string> names, std::string& out) {
  switch (e.op()) {
    case Op::constant:
      if (e.value() < 0 || std::signbit(e.value()))
        out += "(" + format_double(e.value()) + ")";
      else
        out += format_double(e.value());
      return;
    case Op::coord:
      if (static_cast<std::size_t>(e.index()) < names.size())
        out += names[e.index()];
      else
        out += "x" + std::to_string(e.index() + 1);
      return;
    case Op::neg:
      out += "(-";
      print(e.args()[0], names, out);
      out += ")";
      return;
    case Op::sum:
    case Op::product: {
      const char* sep = e.op() == Op::sum ? " + " : "*";
      out += "(";
      for (std::size_t i = 0; i < e.args().size(); ++i) {
        if (i) out += sep;
        print(e.args()[i], names, out);
      }
      out += ")";
      return;
    }
    case Op::quotient:
      out += "(";
      print(e.args()[0], names, out);
      out += "/";
      print(e.args()[1], names, out);
      out += ")";
      return;
    case Op::power:
      out += "(";
      print(e.args()[0], names, out);
      out += "^" + std::to_string(e.index()) + ")";
      return;
    default:
      out += function_name(e.op());
      out += "(";
      print(e.args()[0], names, out);
      out += ")";
      return;
  }
}

}  // namespace detail

/// Fully parenthesized text that parses back to an equivalent tree.
inline std::string to_string(const Expr& e, std::span<const std::string> names = {}) {
  std::string out;
  detail::print(e, names, out);
  return out;
}

/// Exact partial derivative with respect to coordinate `i`.
inline Expr differentiate(const Expr& e, int i) {
  const auto args = e.args();
  switch (e.op()) {
    case Op::constant: return Expr::constant(0.0);
    case Op::coord: return Expr::constant(e.index() == i ? 1.0 : 0.0);
    case Op::neg: return -differentiate(args[0], i);
    case Op::sum: {
      Expr acc = Expr::constant(0.0);
      for (const auto& a : args) acc = acc + differentiate(a, i);
      return acc;
    }
    case Op::product: {
      Expr acc = Expr::constant(0.0);
      for (std::size_t k = 0; k < args.size(); ++k) {
        Expr term = differentiate(args[k], i);
        if (term.is_constant(0.0)) continue;
        for (std::size_t j = 0; j < args.size(); ++j)
          if (j != k) term = term * args[j];
        acc = acc + term;
      }
      return acc;
    }
    case Op::quotient: {
      const Expr& a = args[0];
      const Expr& b = args[1];
      Expr da = differentiate(a, i);
      Expr db = differentiate(b, i);
      return da / b - (a * db) / pow(b, 2);
    }
    case Op::power: {
      const int n = e.index();
      return Expr::constant(n) * pow(args[0], n - 1) * differentiate(args[0], i);
    }
    case Op::sin: return cos(args[0]) * differentiate(args[0], i);
    case Op::cos: return -(sin(args[0]) * differentiate(args[0], i));
    case Op::exp: return e * differentiate(args[0], i);
    case Op::log: return differentiate(args[0], i) / args[0];
  }
  return Expr::constant(0.0);
}

// Scalar protocol used by `evaluate_as`: a type S constructible as S{double},
// closed under +, * and unary -, with free functions value_of(S) and
// chain(S u, f(u0), f'(u0), f''(u0)) applying a smooth unary map.

inline double value_of(double x) { return x; }
inline double chain(double, double f0, double, double) { return f0; }

namespace detail {

template <class S>
S integer_power(const S& u, int n, const Expr& where) {
  const double u0 = value_of(u);
  if (n < 0 && u0 == 0.0) throw EvalError("division by zero", to_string(where));
  const double f0 = std::pow(u0, n);
  const double f1 = n == 0 ? 0.0 : n * std::pow(u0, n - 1);
  const double f2 = (n == 0 || n == 1) ? 0.0 : static_cast<double>(n) * (n - 1) * std::pow(u0, n - 2);
  return chain(u, f0, f1, f2);
}

}  // namespace detail

/// Evaluates `e` with coordinate leaves supplied by `leaf(index)`.
template <class S, class Leaf>
S evaluate_as(const Expr& e, const Leaf& leaf) {
  const auto args = e.args();
  switch (e.op()) {
    case Op::constant: return S{e.value()};
    case Op::coord: return leaf(e.index());
    case Op::neg: return -evaluate_as<S>(args[0], leaf);
    case Op::sum: {
      S acc = evaluate_as<S>(args[0], leaf);
      for (std::size_t k = 1; k < args.size(); ++k) acc = acc + evaluate_as<S>(args[k], leaf);
      return acc;
    }
    case Op::product: {
      S acc = evaluate_as<S>(args[0], leaf);
      for (std::size_t k = 1; k < args.size(); ++k) acc = acc * evaluate_as<S>(args[k], leaf);
      return acc;
    }
    case Op::quotient: {
      S num = evaluate_as<S>(args[0], leaf);
      S den = evaluate_as<S>(args[1], leaf);
      const double d0 = value_of(den);
      if (d0 == 0.0) throw EvalError("division by zero", to_string(e));
      return num * chain(den, 1.0 / d0, -1.0 / (d0 * d0), 2.0 / (d0 * d0 * d0));
    }
    case Op::power: return detail::integer_power(evaluate_as<S>(args[0], leaf), e.index(), e);
    case Op::sin: {
      S u = evaluate_as<S>(args[0], leaf);
      const double u0 = value_of(u);
      return chain(u, std::sin(u0), std::cos(u0), -std::sin(u0));
    }
    case Op::cos: {
      S u = evaluate_as<S>(args[0], leaf);
      const double u0 = value_of(u);
      return chain(u, std::cos(u0), -std::sin(u0), -std::cos(u0));
    }
    case Op::exp: {
      S u = evaluate_as<S>(args[0], leaf);
      const double f = std::exp(value_of(u));
      return chain(u, f, f, f);
    }
    case Op::log: {
      S u = evaluate_as<S>(args[0], leaf);
      const double u0 = value_of(u);
      if (!(u0 > 0.0)) throw EvalError("log of non-positive value", to_string(e));
      return chain(u, std::log(u0), 1.0 / u0, -1.0 / (u0 * u0));
    }
  }
  return S{0.0};
}

inline double eval(const Expr& e, std::span<const double> point) {
  const int need = e.max_coord();
  if (need >= static_cast<int>(point.size()))
    throw InvalidInputError("point has dimension " + std::to_string(point.size()) +
                            " but expression uses coordinate " + std::to_string(need + 1));
  return evaluate_as<double>(e, [&](int i) { return point[i]; });
}

namespace detail {

class ExprParser {
 public:
  ExprParser(std::string_view text, std::span<const std::string> names) : text_(text), names_(names) {}

  Expr parse() {
    Expr e = expr();
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError(ParseError::Kind::syntax, std::string("unexpected character '") + text_[pos_] + "'",
                       pos_);
    return e;
  }

 private:
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
    skip_ws();
    if (pos_ >= text_.size())
      throw ParseError(ParseError::Kind::syntax, std::string("expected '") + c + "' but input ended", pos_);
    if (text_[pos_] != c)
      throw ParseError(ParseError::Kind::syntax,
                       std::string("expected '") + c + "' but found '" + text_[pos_] + "'", pos_);
    ++pos_;
  }

  Expr expr() {
    std::vector<Expr> terms{term()};
    for (;;) {
      if (accept('+'))
        terms.push_back(term());
      else if (accept('-'))
        terms.push_back(Expr::neg(term()));
      else
        break;
    }
    return terms.size() == 1 ? terms.front() : Expr::sum(std::move(terms));
  }

  Expr term() {
    std::vector<Expr> factors{factor()};
    for (;;) {
      if (accept('*')) {
        factors.push_back(factor());
      } else if (accept('/')) {
        Expr num = factors.size() == 1 ? factors.front() : Expr::product(std::move(factors));
        factors = {Expr::quotient(std::move(num), factor())};
      } else {
        break;
      }
    }
    return factors.size() == 1 ? factors.front() : Expr::product(std::move(factors));
  }

  Expr factor() {
    Expr b = base();
    if (!accept('^')) return b;
    skip_ws();
    const std::size_t start = pos_;
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    const std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) throw ParseError(ParseError::Kind::syntax, "expected integer exponent", start);
    int n = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + digits, text_.data() + pos_, n);
    if (ec != std::errc{}) throw ParseError(ParseError::Kind::syntax, "exponent out of range", start);
    (void)ptr;
    return Expr::power(std::move(b), negative ? -n : n);
  }

  Expr base() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError(ParseError::Kind::syntax, "unexpected end of input", pos_);
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (c == '-') {
      ++pos_;
      return Expr::neg(base());
    }
    throw ParseError(ParseError::Kind::syntax, std::string("unexpected character '") + c + "'", pos_);
  }

  Expr number() {
    const std::size_t start = pos_;
    auto is_digit = [&](std::size_t p) {
      return p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]));
    };
    while (is_digit(pos_)) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (is_digit(pos_)) ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (!is_digit(p)) throw ParseError(ParseError::Kind::syntax, "malformed exponent in number", pos_);
      pos_ = p;
      while (is_digit(pos_)) ++pos_;
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc{} || ptr != text_.data() + pos_)
      throw ParseError(ParseError::Kind::syntax, "malformed number", start);
    return Expr::constant(v);
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);

    Op function = Op::constant;
    if (name == "sin") function = Op::sin;
    else if (name == "cos") function = Op::cos;
    else if (name == "exp") function = Op::exp;
    else if (name == "log") function = Op::log;

    if (function != Op::constant) {
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != '(')
        throw ParseError(ParseError::Kind::syntax, "expected '(' after " + std::string(name), pos_);
      ++pos_;
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == ')')
        throw ParseError(ParseError::Kind::arity, std::string(name) + " takes exactly one argument", pos_);
      Expr arg = expr();
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == ',')
        throw ParseError(ParseError::Kind::arity, std::string(name) + " takes exactly one argument", pos_);
      expect(')');
      return Expr::apply(function, std::move(arg));
    }

    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == name) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '(')
          throw ParseError(ParseError::Kind::arity, "coordinate " + std::string(name) + " takes no arguments",
                           pos_);
        return Expr::coord(static_cast<int>(i));
      }
    }
    throw ParseError(ParseError::Kind::unknown_identifier, "unknown identifier '" + std::string(name) + "'",
                     start);
  }

  std::string_view text_;
  std::span<const std::string> names_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses `text` against the expression grammar; identifiers resolve to
/// indices into `coordinate_names`.
inline Expr parse_expr(std::string_view text, std::span<const std::string> coordinate_names) {
  return detail::ExprParser(text, coordinate_names).parse();
}

}  // namespace norden
