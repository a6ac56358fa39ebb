#pragma once

// Dense univariate polynomials over an exact field K.
//
// K must be constructible from int (0 and 1 at least), support + - * / and ==,
// and have a to_str overload. The Var tag only names the indeterminate, which
// keeps K[x] and K[t] distinct types.

#include <string>
#include <algorithm>
#include <numeric>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "core.hpp"

namespace ivrf {

struct VarX {
  static constexpr std::string_view name = "x";
};
struct VarT {
  static constexpr std::string_view name = "t";
};
struct VarU {
  static constexpr std::string_view name = "u";
};
struct VarS {  // t^(1/N) inside Hahn-style elements
  static constexpr std::string_view name = "s";
};
struct VarT1 {
  static constexpr std::string_view name = "t1";
};
struct VarT2 {
  static constexpr std::string_view name = "t2";
};

template <class K, class Var>
class Poly {
 public:
  using coeff_type = K;
  using var_type = Var;

  Poly() = default;
  Poly(int c) : Poly(K(c)) {}  // NOLINT
  explicit Poly(K c) {
    if (!ivrf::is_zero(c)) coeffs_.push_back(std::move(c));
  }
  explicit Poly(std::vector<K> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static Poly monomial(K c, std::size_t degree) {
    if (ivrf::is_zero(c)) return Poly();
    std::vector<K> v(degree + 1, K(0));
    v[degree] = std::move(c);
    return Poly(std::move(v));
  }
  static Poly var() { return monomial(K(1), 1); }

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<K>& coeffs() const { return coeffs_; }
  K coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : K(0); }
  const K& lead() const {
    if (coeffs_.empty()) throw PreconditionError("leading coefficient of zero polynomial");
    return coeffs_.back();
  }
  // Lowest index with a nonzero coefficient.
  int order() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (!ivrf::is_zero(coeffs_[i])) return static_cast<int>(i);
    return -1;
  }
  bool is_constant() const { return coeffs_.size() <= 1; }

  friend Poly operator+(const Poly& a, const Poly& b) {
    const auto& big = a.coeffs_.size() >= b.coeffs_.size() ? a : b;
    const auto& small = a.coeffs_.size() >= b.coeffs_.size() ? b : a;
    std::vector<K> r = big.coeffs_;
    for (std::size_t i = 0; i < small.coeffs_.size(); ++i) r[i] = r[i] + small.coeffs_[i];
    return Poly(std::move(r));
  }
  Poly operator-() const {
    Poly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<K> r(a.coeffs_.size() + b.coeffs_.size() - 1, K(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (ivrf::is_zero(a.coeffs_[i])) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] = r[i + j] + a.coeffs_[i] * b.coeffs_[j];
    }
    return Poly(std::move(r));
  }
  Poly scaled(const K& c) const {
    if (ivrf::is_zero(c)) return Poly();
    Poly r = *this;
    for (auto& x : r.coeffs_) x = x * c;
    r.trim();
    return r;
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

  // Quotient and remainder of Euclidean division.
  friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw StructuralError("polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly(), a};
    std::vector<K> rem = a.coeffs_;
    const std::size_t db = b.coeffs_.size() - 1;
    std::vector<K> quo(rem.size() - db, K(0));
    const K inv_lead = K(1) / b.lead();
    for (std::size_t i = rem.size(); i-- > db;) {
      if (ivrf::is_zero(rem[i])) continue;
      K q = rem[i] * inv_lead;
      for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] = rem[i - db + j] - q * b.coeffs_[j];
      quo[i - db] = std::move(q);
    }
    rem.resize(db);
    return {Poly(std::move(quo)), Poly(std::move(rem))};
  }
  friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }
  friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }

  Poly monic() const {
    if (is_zero()) return *this;
    return scaled(K(1) / lead());
  }

  K operator()(const K& x) const {
    K acc(0);
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
  }

  // Substitute another polynomial for the indeterminate.
  Poly compose(const Poly& inner) const {
    Poly acc;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * inner + Poly(coeffs_[i]);
    return acc;
  }

  // p(x) -> p(x^k)
  Poly inflate(std::size_t k) const {
    if (is_zero() || k == 1) return *this;
    std::vector<K> r((coeffs_.size() - 1) * k + 1, K(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i * k] = coeffs_[i];
    return Poly(std::move(r));
  }
  // p(x^k) -> p(x); requires every exponent to be a multiple of k.
  Poly deflate(std::size_t k) const {
    if (is_zero() || k == 1) return *this;
    std::vector<K> r((coeffs_.size() - 1) / k + 1, K(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (ivrf::is_zero(coeffs_[i])) continue;
      if (i % k) throw StructuralError("deflate: exponent not divisible");
      r[i / k] = coeffs_[i];
    }
    return Poly(std::move(r));
  }
  // gcd of all exponents carrying a nonzero coefficient (0 for constants).
  std::size_t exponent_gcd() const {
    std::size_t g = 0;
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
      if (!ivrf::is_zero(coeffs_[i])) g = std::gcd(g, i);
    return g;
  }
  // p(x) / x^k, exact
  Poly shift_down(std::size_t k) const {
    if (k == 0) return *this;
    if (static_cast<int>(k) > order() && !is_zero()) throw StructuralError("shift_down below order");
    return Poly(std::vector<K>(coeffs_.begin() + static_cast<long>(k), coeffs_.end()));
  }

  friend std::string to_str(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string s;
    for (std::size_t i = p.coeffs_.size(); i-- > 0;) {
      const K& c = p.coeffs_[i];
      if (ivrf::is_zero(c)) continue;
      std::string cs = to_str(c);
      bool negative = !cs.empty() && cs[0] == '-' && atomic(cs.substr(1));
      if (negative) cs = cs.substr(1);
      if (!s.empty()) s += negative ? " - " : " + ";
      else if (negative) s += "-";
      std::string mono;
      if (i > 0) {
        mono = std::string(Var::name);
        if (i > 1) mono += "^" + std::to_string(i);
      }
      if (i == 0) {
        s += cs;
      } else if (cs == "1") {
        s += mono;
      } else {
        s += (atomic(cs) ? cs : "(" + cs + ")") + "*" + mono;
      }
    }
    return s;
  }

 private:
  // A printed coefficient needs no parentheses if it has no top-level operators.
  static bool atomic(const std::string& s) {
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      char ch = s[i];
      if (ch == '(' || ch == '{') ++depth;
      else if (ch == ')' || ch == '}') --depth;
      else if (depth == 0 && (ch == '+' || ch == '/' || ch == '*' || (ch == '-' && i > 0) || ch == ' '))
        return false;
    }
    return true;
  }

  void trim() {
    while (!coeffs_.empty() && ivrf::is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<K> coeffs_;
};

// Monic gcd; gcd(0, 0) = 0.
template <class K, class Var>
Poly<K, Var> gcd(Poly<K, Var> a, Poly<K, Var> b) {
  // A monomial c x^k shares only a power of x.
  auto monomial_gcd = [](const Poly<K, Var>& m, const Poly<K, Var>& other) -> std::optional<Poly<K, Var>> {
    if (m.is_zero() || other.is_zero() || m.order() != m.degree()) return std::nullopt;
    return Poly<K, Var>::monomial(K(1), static_cast<std::size_t>(std::min(m.degree(), other.order())));
  };
  if (auto g = monomial_gcd(a, b)) return *g;
  if (auto g = monomial_gcd(b, a)) return *g;
  while (!b.is_zero()) {
    Poly<K, Var> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

template <class K, class Var>
Poly<K, Var> pow(const Poly<K, Var>& p, unsigned e) {
  Poly<K, Var> r(K(1)), base = p;
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

}  // namespace ivrf
