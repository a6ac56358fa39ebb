#pragma once

// Elements of the fraction field of finitely supported sums  sum c_i t^{q_i},
// q_i rational, over a coefficient field kappa. Every such element lies in
// kappa(s) with s = t^{1/N} for some N; the stored N is the least one, which
// makes the representation canonical.

#include <numeric>
#include <string>

#include "ratfun.hpp"

namespace ivrf {

template <class K>
class HahnElem {
 public:
  using inner_type = RatFunc<K, VarS>;
  using poly_type = Poly<K, VarS>;

  HahnElem() = default;
  HahnElem(int c) : f_(c) {}  // NOLINT
  explicit HahnElem(K c) : f_(std::move(c)) {}
  HahnElem(std::int64_t root, inner_type f) : root_(root), f_(std::move(f)) {
    if (root_ < 1) throw StructuralError("root index must be positive");
    canonicalize();
  }

  // c * t^q
  static HahnElem monomial(K c, const Rational& q) {
    auto den = q.get_den().get_si();
    auto num = q.get_num().get_si();
    inner_type s = inner_type::var();
    return HahnElem(den, inner_type(std::move(c)) * pow(s, num));
  }
  static HahnElem t_power(const Rational& q) { return monomial(K(1), q); }

  std::int64_t root() const { return root_; }
  const inner_type& inner() const { return f_; }
  bool is_zero() const { return f_.is_zero(); }

  // Exponent of the lowest term, as a rational; precondition nonzero.
  Rational order() const {
    return make_rational(Integer(static_cast<long>(f_.num().order() - f_.den().order())), Integer(static_cast<long>(root_)));
  }
  // Ratio of lowest coefficients: the residue of an order-0 element.
  K leading_unit() const {
    return f_.num().coeff(static_cast<std::size_t>(f_.num().order())) /
           f_.den().coeff(static_cast<std::size_t>(f_.den().order()));
  }

  friend HahnElem operator+(const HahnElem& a, const HahnElem& b) {
    auto n = std::lcm(a.root_, b.root_);
    return HahnElem(n, a.lifted(n) + b.lifted(n));
  }
  HahnElem operator-() const {
    HahnElem r = *this;
    r.f_ = -r.f_;
    return r;
  }
  friend HahnElem operator-(const HahnElem& a, const HahnElem& b) { return a + (-b); }
  friend HahnElem operator*(const HahnElem& a, const HahnElem& b) {
    auto n = std::lcm(a.root_, b.root_);
    return HahnElem(n, a.lifted(n) * b.lifted(n));
  }
  friend HahnElem operator/(const HahnElem& a, const HahnElem& b) {
    if (b.is_zero()) throw StructuralError("division by zero");
    auto n = std::lcm(a.root_, b.root_);
    return HahnElem(n, a.lifted(n) / b.lifted(n));
  }
  friend bool operator==(const HahnElem& a, const HahnElem& b) { return a.root_ == b.root_ && a.f_ == b.f_; }

  friend std::string to_str(const HahnElem& h) {
    if (h.f_.is_polynomial()) return h.sum_str(h.f_.num());
    auto wrap = [&](const poly_type& p) {
      std::string s = h.sum_str(p);
      return s.find_first_of(" ") == std::string::npos ? s : "(" + s + ")";
    };
    return wrap(h.f_.num()) + "/" + wrap(h.f_.den());
  }

 private:
  inner_type lifted(std::int64_t n) const {
    auto k = static_cast<std::size_t>(n / root_);
    if (k == 1) return f_;
    return inner_type(f_.num().inflate(k), f_.den().inflate(k));
  }

  void canonicalize() {
    if (f_.is_zero()) {
      root_ = 1;
      return;
    }
    auto g = static_cast<std::int64_t>(std::gcd(f_.num().exponent_gcd(), f_.den().exponent_gcd()));
    g = std::gcd(g, root_);
    if (g > 1) {
      auto k = static_cast<std::size_t>(g);
      f_ = inner_type(f_.num().deflate(k), f_.den().deflate(k));
      root_ /= g;
    }
  }

  std::string sum_str(const poly_type& p) const {
    if (p.is_zero()) return "0";
    std::string s;
    for (std::size_t i = p.coeffs().size(); i-- > 0;) {
      const K& c = p.coeffs()[i];
      if (ivrf::is_zero(c)) continue;
      std::string cs = to_str(c);
      bool negative = !cs.empty() && cs[0] == '-' && cs.find_first_of("+ /", 1) == std::string::npos;
      if (negative) cs = cs.substr(1);
      if (!s.empty()) s += negative ? " - " : " + ";
      else if (negative) s += "-";
      if (i == 0) {
        s += cs;
        continue;
      }
      Rational e = make_rational(Integer(static_cast<long>(i)), Integer(static_cast<long>(root_)));
      std::string mono = "t";
      if (e != 1) mono += is_integral(e) ? "^" + to_str(e) : "^{" + to_str(e) + "}";
      bool plain = cs.find_first_of("+ /*") == std::string::npos;
      if (cs == "1") s += mono;
      else s += (plain ? cs : "(" + cs + ")") + "*" + mono;
    }
    return s;
  }

  std::int64_t root_ = 1;
  inner_type f_;
};

}  // namespace ivrf
