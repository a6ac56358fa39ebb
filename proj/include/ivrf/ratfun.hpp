#pragma once

// Reduced rational functions num/den over a field K: gcd(num, den) = 1 and den
// monic, so equality of canonical forms is syntactic. The same template serves
// as the function field K(x) of integer-valued rational functions and as the
// transcendental coefficient fields kappa(t), kappa(u).

#include <optional>
#include <string>

#include "poly.hpp"

namespace ivrf {

template <class K, class Var>
class RatFunc {
 public:
  using poly_type = Poly<K, Var>;
  using coeff_type = K;

  RatFunc() : den_(K(1)) {}
  RatFunc(int c) : num_(K(c)), den_(K(1)) {}  // NOLINT
  explicit RatFunc(K c) : num_(std::move(c)), den_(K(1)) {}
  RatFunc(poly_type p) : num_(std::move(p)), den_(K(1)) {}  // NOLINT
  RatFunc(poly_type num, poly_type den) : num_(std::move(num)), den_(std::move(den)) { normalize_in_place(); }

  static RatFunc var() { return RatFunc(poly_type::var()); }

  const poly_type& num() const { return num_; }
  const poly_type& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }
  // The constant value; precondition is_constant().
  K constant() const {
    if (!is_constant()) throw PreconditionError("rational function is not constant");
    return num_.coeff(0) / den_.coeff(0);
  }
  int degree() const { return std::max(num_.degree(), den_.degree()); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    // Adding a polynomial keeps the fraction reduced.
    if (b.is_polynomial()) return reduced(a.num_ + b.num_ * a.den_, a.den_);
    if (a.is_polynomial()) return reduced(b.num_ + a.num_ * b.den_, b.den_);
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  RatFunc operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_polynomial() && b.is_polynomial()) return RatFunc(a.num_ * b.num_);
    // Cross-cancel first so products stay small.
    poly_type g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
    RatFunc r;
    r.num_ = (a.num_ / g1) * (b.num_ / g2);
    r.den_ = (a.den_ / g2) * (b.den_ / g1);
    r.make_monic();
    return r;
  }
  RatFunc inverse() const {
    if (is_zero()) throw StructuralError("inverse of zero rational function");
    RatFunc r;
    r.num_ = den_;
    r.den_ = num_;
    r.make_monic();
    return r;
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  // Value at a point, or nullopt at a pole.
  std::optional<K> operator()(const K& a) const {
    K d = den_(a);
    if (ivrf::is_zero(d)) return std::nullopt;
    return num_(a) / d;
  }

  // phi(psi) for a rational function psi; throws if the result's denominator vanishes.
  RatFunc compose(const RatFunc& inner) const {
    const int n = std::max(num_.degree(), den_.degree());
    auto homogenize = [&](const poly_type& p) {
      // sum c_i P^i Q^(n-i)
      poly_type acc;
      std::vector<poly_type> qpow(static_cast<std::size_t>(n) + 1);
      qpow[0] = poly_type(K(1));
      for (int i = 1; i <= n; ++i) qpow[static_cast<std::size_t>(i)] = qpow[static_cast<std::size_t>(i) - 1] * inner.den_;
      poly_type ppow(K(1));
      for (int i = 0; i <= p.degree(); ++i) {
        if (!ivrf::is_zero(p.coeff(static_cast<std::size_t>(i))))
          acc = acc + (ppow * qpow[static_cast<std::size_t>(n - i)]).scaled(p.coeff(static_cast<std::size_t>(i)));
        ppow = ppow * inner.num_;
      }
      return acc;
    };
    poly_type nd = homogenize(den_);
    if (nd.is_zero()) throw StructuralError("composition lands on a pole");
    return RatFunc(homogenize(num_), nd);
  }

  friend std::string to_str(const RatFunc& r) {
    if (r.is_polynomial()) return to_str(r.num_);
    auto wrap = [](const poly_type& p) {
      std::string s = to_str(p);
      return s.find_first_of(" /+*") == std::string::npos ? s : "(" + s + ")";
    };
    auto monomial_or_wrap = [&](const poly_type& p) {
      std::string s = to_str(p);
      bool single = s.find_first_of(" /+") == std::string::npos;
      return single ? s : "(" + s + ")";
    };
    return monomial_or_wrap(r.num_) + "/" + wrap(r.den_);
  }

  // Assembles num/den already known to be coprime.
  static RatFunc reduced(poly_type num, poly_type den) {
    RatFunc r;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    r.make_monic();
    return r;
  }

 private:
  void make_monic() {
    if (num_.is_zero()) {
      den_ = poly_type(K(1));
      return;
    }
    K lc = den_.lead();
    if (!(lc == K(1))) {
      K inv = K(1) / lc;
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }
  void normalize_in_place() {
    if (den_.is_zero()) throw StructuralError("zero denominator");
    if (num_.is_zero()) {
      den_ = poly_type(K(1));
      return;
    }
    if (!den_.is_constant()) {
      poly_type g = gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = num_ / g;
        den_ = den_ / g;
      }
    }
    make_monic();
  }

  poly_type num_;
  poly_type den_;
};

template <class K, class Var>
RatFunc<K, Var> normalize(const Poly<K, Var>& f, const Poly<K, Var>& g) {
  return RatFunc<K, Var>(f, g);
}

template <class K, class Var>
bool identity_check(const RatFunc<K, Var>& lhs, const RatFunc<K, Var>& rhs) {
  return lhs == rhs;
}

template <class K, class Var>
RatFunc<K, Var> pow(const RatFunc<K, Var>& r, long e) {
  if (e < 0) return pow(r.inverse(), -e);
  return RatFunc<K, Var>::reduced(pow(r.num(), static_cast<unsigned>(e)), pow(r.den(), static_cast<unsigned>(e)));
}

}  // namespace ivrf
