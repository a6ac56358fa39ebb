#pragma once

// Expression grammar for field elements and rational functions.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary | unary)*     juxtaposition multiplies
//   unary   := '-' unary | power
//   power   := primary ('^' exponent)?
//   exponent:= ['-'] integer | '{' rational '}' | '(' rational ')'
//   primary := integer | symbol | '(' expr ')'
//   symbol  := x | t | u | t1 | t2 | a
//
// Rational exponents are only meaningful on t in the Hahn-style fields.
// Parsing builds a syntax tree; a builder maps it into a concrete type.

#include <cctype>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fields.hpp"

namespace ivrf {

struct Expr {
  enum class Kind { number, symbol, add, sub, mul, div, neg, pow };
  Kind kind;
  Integer number;
  std::string symbol;
  Rational exponent;
  std::vector<std::shared_ptr<const Expr>> args;
};
using ExprPtr = std::shared_ptr<const Expr>;

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  ExprPtr parse() {
    auto e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool eat(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  static ExprPtr node(Expr::Kind k, std::vector<ExprPtr> args) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->args = std::move(args);
    return e;
  }

  ExprPtr expr() {
    auto lhs = term();
    for (;;) {
      if (eat('+')) lhs = node(Expr::Kind::add, {lhs, term()});
      else if (eat('-')) lhs = node(Expr::Kind::sub, {lhs, term()});
      else return lhs;
    }
  }
  bool starts_primary() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return c == '(' || std::isalnum(static_cast<unsigned char>(c));
  }
  ExprPtr term() {
    auto lhs = unary();
    for (;;) {
      if (eat('*')) lhs = node(Expr::Kind::mul, {lhs, unary()});
      else if (eat('/')) lhs = node(Expr::Kind::div, {lhs, unary()});
      else if (starts_primary()) lhs = node(Expr::Kind::mul, {lhs, power()});
      else return lhs;
    }
  }
  ExprPtr unary() {
    if (eat('-')) return node(Expr::Kind::neg, {unary()});
    return power();
  }
  ExprPtr power() {
    auto base = primary();
    if (!eat('^')) return base;
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::pow;
    e->args = {base};
    if (eat('{')) {
      e->exponent = rational();
      expect('}');
    } else if (eat('(')) {
      e->exponent = rational();
      expect(')');
    } else {
      bool neg = eat('-');
      e->exponent = Rational(integer());
      if (neg) e->exponent = -e->exponent;
    }
    return e;
  }
  Rational rational() {
    bool neg = eat('-');
    Integer n = integer(), d = 1;
    if (eat('/')) d = integer();
    if (d == 0) fail("zero denominator in exponent");
    Rational q = make_rational(n, d);
    return neg ? Rational(-q) : q;
  }
  Integer integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }
  ExprPtr primary() {
    skip();
    if (eat('(')) {
      auto e = expr();
      expect(')');
      return e;
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::number;
      e->number = integer();
      return e;
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    // t1, t2
    if (pos_ - start == 1 && s_[start] == 't' && pos_ < s_.size() && (s_[pos_] == '1' || s_[pos_] == '2')) ++pos_;
    if (start == pos_) fail("expected a number, symbol or '('");
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::symbol;
    e->symbol = std::string(s_.substr(start, pos_ - start));
    return e;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline ExprPtr parse_expr(std::string_view s) { return detail::Parser(s).parse(); }

// Builder: T integer(const Integer&), T symbol(const std::string&),
// T power(const T&, const Expr& base, const Rational& e).
template <class T, class B>
T build(const Expr& e, const B& b) {
  switch (e.kind) {
    case Expr::Kind::number: return b.integer(e.number);
    case Expr::Kind::symbol: return b.symbol(e.symbol);
    case Expr::Kind::add: return build<T>(*e.args[0], b) + build<T>(*e.args[1], b);
    case Expr::Kind::sub: return build<T>(*e.args[0], b) - build<T>(*e.args[1], b);
    case Expr::Kind::mul: return build<T>(*e.args[0], b) * build<T>(*e.args[1], b);
    case Expr::Kind::div: {
      T d = build<T>(*e.args[1], b);
      if (is_zero(d)) throw ParseError("division by zero in expression");
      return build<T>(*e.args[0], b) / d;
    }
    case Expr::Kind::neg: return -build<T>(*e.args[0], b);
    case Expr::Kind::pow: return b.power(build<T>(*e.args[0], b), *e.args[0], e.exponent);
  }
  throw ParseError("malformed expression");
}

template <class T>
T integral_power(const T& base, const Rational& e) {
  if (!is_integral(e)) throw ParseError("fractional exponents are only allowed on t in Hahn fields");
  if (e < 0 && is_zero(base)) throw ParseError("negative power of zero");
  return power(base, e.get_num().get_si());
}

// Residue-field symbols.
inline std::optional<GfElem> residue_symbol(const FiniteResidueField& L, const std::string& s) {
  if (L.base().degree() > 1 && s == L.base().symbol()) return L.generator();
  return std::nullopt;
}
inline std::optional<FuncResidue> residue_symbol(const FunctionResidueField& L, const std::string& s) {
  if (s == "u") return L.u();
  if (L.base().degree() > 1 && s == L.base().symbol()) return FuncResidue(generator(L.base()));
  return std::nullopt;
}

inline GfElem residue_integer(const FiniteResidueField& L, const Integer& n) {
  return L.from_int(static_cast<long>(mpz_fdiv_ui(n.get_mpz_t(), L.characteristic())));
}
inline FuncResidue residue_integer(const FunctionResidueField& L, const Integer& n) {
  return L.from_int(static_cast<long>(mpz_fdiv_ui(n.get_mpz_t(), L.characteristic())));
}

// Element builders, one per policy.
template <class VF>
struct ElemBuilder;

template <>
struct ElemBuilder<PAdicQ> {
  const PAdicQ& f;
  Rational integer(const Integer& n) const { return Rational(n); }
  Rational symbol(const std::string& s) const { throw ParseError("unknown symbol '" + s + "' in " + f.name()); }
  Rational power(const Rational& b, const Expr&, const Rational& e) const { return integral_power(b, e); }
};

template <class R>
struct ElemBuilder<TAdic<R>> {
  using Elem = typename TAdic<R>::Elem;
  const TAdic<R>& f;
  Elem integer(const Integer& n) const { return Elem(residue_integer(f.residue_field(), n)); }
  Elem symbol(const std::string& s) const {
    if (s == "t") return f.t();
    if (auto r = residue_symbol(f.residue_field(), s)) return Elem(*r);
    throw ParseError("unknown symbol '" + s + "' in " + f.name());
  }
  Elem power(const Elem& b, const Expr&, const Rational& e) const { return integral_power(b, e); }
};

template <class R>
struct ElemBuilder<LexRank2<R>> {
  using Elem = typename LexRank2<R>::Elem;
  const LexRank2<R>& f;
  Elem integer(const Integer& n) const { return f.lift(residue_integer(f.residue_field(), n)); }
  Elem symbol(const std::string& s) const {
    if (s == "t1") return f.t1();
    if (s == "t2") return f.t2();
    if (auto r = residue_symbol(f.residue_field(), s)) return f.lift(*r);
    throw ParseError("unknown symbol '" + s + "' in " + f.name());
  }
  Elem power(const Elem& b, const Expr&, const Rational& e) const { return integral_power(b, e); }
};

template <class R>
struct ElemBuilder<Hahn<R>> {
  using Elem = typename Hahn<R>::Elem;
  const Hahn<R>& f;
  Elem integer(const Integer& n) const { return Elem(residue_integer(f.residue_field(), n)); }
  Elem symbol(const std::string& s) const {
    if (s == "t") return f.t_power(Rational(1));
    if (auto r = residue_symbol(f.residue_field(), s)) return Elem(*r);
    throw ParseError("unknown symbol '" + s + "' in " + f.name());
  }
  Elem power(const Elem& b, const Expr& base, const Rational& e) const {
    if (is_integral(e)) return integral_power(b, e);
    if (base.kind != Expr::Kind::symbol || base.symbol != "t")
      throw ParseError("fractional exponents are only allowed on t");
    return f.t_power(e);
  }
};

// Rational functions in x with coefficients from a field builder.
template <class VF>
struct FunctionBuilder {
  using Elem = typename VF::Elem;
  using Fn = RatFunc<Elem, VarX>;
  ElemBuilder<VF> inner;
  Fn integer(const Integer& n) const { return Fn(inner.integer(n)); }
  Fn symbol(const std::string& s) const {
    if (s == "x") return Fn(Fn::poly_type::monomial(inner.f.one(), 1));
    return Fn(inner.symbol(s));
  }
  Fn power(const Fn& b, const Expr& base, const Rational& e) const {
    if (b.is_constant()) return Fn(inner.power(b.constant(), base, e));
    return integral_power(b, e);
  }
};

template <class VF>
typename VF::Elem parse_element(const VF& field, std::string_view s) {
  return build<typename VF::Elem>(*parse_expr(s), ElemBuilder<VF>{field});
}

template <class VF>
RatFunc<typename VF::Elem, VarX> parse_function(const VF& field, std::string_view s) {
  return build<RatFunc<typename VF::Elem, VarX>>(*parse_expr(s), FunctionBuilder<VF>{{field}});
}

// Polynomials in x over Q, for the constructions over Q.
inline RatFunc<Rational, VarX> parse_rational_function(std::string_view s) { return parse_function(PAdicQ(2), s); }

}  // namespace ivrf
