#pragma once

// Desk-scale valued fields.
//
// Each policy bundles a field K, its valuation v: K* -> Gamma, the residue
// map onto L = V/m, and an element of every prescribed value. Policies share
// one interface so the envelope and certification engines are generic:
//
//   Elem, Residue, ResElem
//   group(), residue_field(), name()
//   valuation(x) -> ExtValue, residue(x) -> ResElem, lift(r) -> Elem
//   element_of_value(g) -> Elem with v = g, sample(rng) -> Elem

#include <string>

#include "hahn.hpp"
#include "ordgroup.hpp"
#include "residue.hpp"

namespace ivrf {

// Q with the p-adic valuation; residue field GF(p).
class PAdicQ {
 public:
  using Elem = Rational;
  using Residue = FiniteResidueField;
  using ResElem = GfElem;

  explicit PAdicQ(unsigned p) : p_(p), residue_(GaloisField::get(p)) {}

  unsigned prime() const { return p_; }
  const GroupSpec& group() const { return GroupSpec::integers(1); }
  const Residue& residue_field() const { return residue_; }
  std::string name() const { return "padic(" + std::to_string(p_) + ")"; }

  long ord(const Integer& n) const {
    if (n == 0) throw PreconditionError("order of zero");
    Integer r;
    return static_cast<long>(mpz_remove(r.get_mpz_t(), n.get_mpz_t(), Integer(p_).get_mpz_t()));
  }
  ExtValue valuation(const Elem& x) const {
    if (is_zero(x)) return ExtValue::infinity();
    return GroupElement::scalar(group(), Rational(ord(x.get_num()) - ord(x.get_den())));
  }
  ResElem residue(const Elem& x) const {
    if (is_zero(x)) return residue_.from_int(0);
    long v = ord(x.get_num()) - ord(x.get_den());
    if (v < 0) throw PreconditionError("residue of an element with negative valuation");
    if (v > 0) return residue_.from_int(0);
    auto mod = [&](const Integer& n) {
      Integer r;
      mpz_fdiv_r_ui(r.get_mpz_t(), n.get_mpz_t(), p_);
      return residue_.from_int(r.get_si());
    };
    return mod(x.get_num()) / mod(x.get_den());
  }
  Elem lift(const ResElem& r) const { return Rational(r.index()); }
  Elem one() const { return Rational(1); }
  Elem element_of_value(const GroupElement& g) const {
    if (!g.in_lattice()) throw PreconditionError("value outside the value group");
    return power(Rational(p_), g[0].get_num().get_si());
  }
  Elem sample(Rng& rng) const {
    Integer n = uniform_int(rng, -60, 60), d = uniform_int(rng, 1, 60);
    if (n == 0) n = 1;
    return make_rational(n, d) * power(Rational(p_), uniform_int(rng, -3, 3));
  }

 private:
  unsigned p_;
  Residue residue_;
};

// kappa(t) with the t-adic valuation; residue field kappa.
template <class R>
class TAdic {
 public:
  using Residue = R;
  using ResElem = typename R::Elem;
  using Elem = RatFunc<ResElem, VarT>;

  explicit TAdic(R residue) : residue_(std::move(residue)) {}

  const GroupSpec& group() const { return GroupSpec::integers(1); }
  const Residue& residue_field() const { return residue_; }
  std::string name() const { return "tadic(" + residue_.name() + ")"; }

  ExtValue valuation(const Elem& x) const {
    if (x.is_zero()) return ExtValue::infinity();
    return GroupElement::scalar(group(), Rational(x.num().order() - x.den().order()));
  }
  ResElem residue(const Elem& x) const {
    if (x.is_zero()) return residue_.from_int(0);
    int v = x.num().order() - x.den().order();
    if (v < 0) throw PreconditionError("residue of an element with negative valuation");
    if (v > 0) return residue_.from_int(0);
    return x.num().coeff(0) / x.den().coeff(0);
  }
  Elem lift(const ResElem& r) const { return Elem(r); }
  Elem one() const { return lift(residue_.from_int(1)); }
  Elem t() const { return Elem(Elem::poly_type::monomial(residue_.from_int(1), 1)); }
  Elem element_of_value(const GroupElement& g) const {
    if (!g.in_lattice()) throw PreconditionError("value outside the value group");
    return pow(t(), g[0].get_num().get_si());
  }
  Elem sample(Rng& rng) const {
    auto rp = [&](int deg) {
      std::vector<ResElem> c;
      for (int i = 0; i <= deg; ++i) c.push_back(residue_.random(rng));
      return typename Elem::poly_type(std::move(c));
    };
    auto num = rp(static_cast<int>(uniform_int(rng, 0, 2)));
    auto den = rp(static_cast<int>(uniform_int(rng, 0, 2)));
    if (num.is_zero()) num = typename Elem::poly_type(residue_.from_int(1));
    if (den.is_zero()) den = typename Elem::poly_type(residue_.from_int(1));
    return Elem(num, den) * pow(t(), uniform_int(rng, -2, 2));
  }

 private:
  R residue_;
};

// kappa(t1, t2) with the rank-two valuation v(t2) = (1,0), v(t1) = (0,1):
// the t2-adic valuation refined by the t1-adic valuation of the leading coefficient.
template <class R>
class LexRank2 {
 public:
  using Residue = R;
  using ResElem = typename R::Elem;
  using Inner = RatFunc<ResElem, VarT1>;
  using Elem = RatFunc<Inner, VarT2>;

  explicit LexRank2(R residue) : residue_(std::move(residue)) {}

  const GroupSpec& group() const { return GroupSpec::integers(2); }
  const Residue& residue_field() const { return residue_; }
  std::string name() const { return "lex2(" + residue_.name() + ")"; }

  ExtValue valuation(const Elem& x) const {
    if (x.is_zero()) return ExtValue::infinity();
    auto [a, c] = split(x);
    return GroupElement(group(), {Rational(a), Rational(c.num().order() - c.den().order())});
  }
  ResElem residue(const Elem& x) const {
    if (x.is_zero()) return residue_.from_int(0);
    auto v = valuation(x).finite();
    if (v.sign() < 0) throw PreconditionError("residue of an element with negative valuation");
    if (v.sign() > 0) return residue_.from_int(0);
    auto c = split(x).second;
    return c.num().coeff(0) / c.den().coeff(0);
  }
  Elem lift(const ResElem& r) const { return Elem(Inner(r)); }
  Elem one() const { return lift(residue_.from_int(1)); }
  Elem t1() const { return Elem(inner_t1()); }
  Elem t2() const { return Elem(Elem::poly_type::monomial(Inner(residue_.from_int(1)), 1)); }
  Elem element_of_value(const GroupElement& g) const {
    if (!g.in_lattice()) throw PreconditionError("value outside the value group");
    return pow(t2(), g[0].get_num().get_si()) * pow(t1(), g[1].get_num().get_si());
  }
  Elem sample(Rng& rng) const {
    auto inner = [&] {
      std::vector<ResElem> c;
      for (int i = 0, d = static_cast<int>(uniform_int(rng, 0, 1)); i <= d; ++i) c.push_back(residue_.random(rng));
      typename Inner::poly_type p(std::move(c));
      if (p.is_zero()) p = typename Inner::poly_type(residue_.from_int(1));
      return Inner(p) * pow(inner_t1(), uniform_int(rng, -1, 1));
    };
    Elem x(typename Elem::poly_type(std::vector<Inner>{inner(), coin(rng) ? inner() : Inner()}));
    if (coin(rng)) x = x / Elem(typename Elem::poly_type(std::vector<Inner>{Inner(residue_.from_int(1)), inner()}));
    return x * pow(t2(), uniform_int(rng, -1, 1));
  }

 private:
  Inner inner_t1() const { return Inner(Inner::poly_type::monomial(residue_.from_int(1), 1)); }
  // t2-order and the ratio of the lowest t2-coefficients.
  static std::pair<int, Inner> split(const Elem& x) {
    int on = x.num().order(), od = x.den().order();
    return {on - od, x.num().coeff(static_cast<std::size_t>(on)) / x.den().coeff(static_cast<std::size_t>(od))};
  }

  R residue_;
};

// Fractions of finitely supported sums  sum c_i t^{q_i}, q_i in Q, with the
// t-adic valuation; value group Q, residue field kappa.
template <class R>
class Hahn {
 public:
  using Residue = R;
  using ResElem = typename R::Elem;
  using Elem = HahnElem<ResElem>;

  explicit Hahn(R residue) : residue_(std::move(residue)) {}

  const GroupSpec& group() const { return GroupSpec::rationals(); }
  const Residue& residue_field() const { return residue_; }
  std::string name() const { return "hahn(" + residue_.name() + ")"; }

  ExtValue valuation(const Elem& x) const {
    if (x.is_zero()) return ExtValue::infinity();
    return GroupElement::scalar(group(), x.order());
  }
  ResElem residue(const Elem& x) const {
    if (x.is_zero()) return residue_.from_int(0);
    int s = sgn(x.order());
    if (s < 0) throw PreconditionError("residue of an element with negative valuation");
    if (s > 0) return residue_.from_int(0);
    return x.leading_unit();
  }
  Elem lift(const ResElem& r) const { return Elem(r); }
  Elem one() const { return lift(residue_.from_int(1)); }
  Elem t_power(const Rational& q) const { return Elem::monomial(residue_.from_int(1), q); }
  Elem element_of_value(const GroupElement& g) const { return t_power(g[0]); }
  Elem sample(Rng& rng) const {
    auto sum = [&] {
      Elem s;
      for (int i = 0, n = static_cast<int>(uniform_int(rng, 1, 2)); i < n; ++i) {
        auto c = residue_.random(rng);
        if (is_zero(c)) c = residue_.from_int(1);
        s = s + Elem::monomial(c, make_rational(uniform_int(rng, -4, 6), uniform_int(rng, 1, 2)));
      }
      return s.is_zero() ? one() : s;
    };
    Elem x = sum();
    if (coin(rng, 1, 4)) x = x / sum();
    return x;
  }

 private:
  R residue_;
};

// D = pi^{-1}(F) for a subfield F of the residue field.
template <class VF>
struct PVDSpec {
  VF field;
  Subfield sub;

  PVDSpec(VF f, Subfield s) : field(std::move(f)), sub(s) { sub.validate(field.residue_field()); }

  bool member(const typename VF::Elem& x) const {
    auto v = field.valuation(x);
    if (v.is_infinite()) return true;
    int s = v.finite().sign();
    if (s != 0) return s > 0;
    return sub.contains(field.residue_field(), field.residue(x));
  }
};

template <class VF>
bool pvd_member(const typename VF::Elem& x, const PVDSpec<VF>& d) {
  return d.member(x);
}

// Ideals of V and D given by a valuation threshold.
struct IdealWhich {
  enum class Kind { m, m_of_d, m_power };
  Kind kind = Kind::m;
  unsigned power = 1;

  static IdealWhich max_ideal() { return {Kind::m, 1}; }
  static IdealWhich max_ideal_of_d() { return {Kind::m_of_d, 1}; }
  static IdealWhich m_pow(unsigned k) { return {Kind::m_power, k}; }
};

// The least positive value in a discrete lexicographic group.
inline GroupElement least_positive(const GroupSpec& g) {
  if (g.divisible()) throw PreconditionError("divisible groups have no least positive element");
  std::vector<Rational> c(g.rank());
  c.back() = 1;
  return GroupElement(g, std::move(c));
}

// Threshold form of an ideal: membership is v(x) > tau (strict) or v(x) >= tau.
struct Threshold {
  GroupElement tau;
  bool strict = false;

  bool admits(const ExtValue& v) const {
    if (v.is_infinite()) return true;
    auto c = v.finite() <=> tau;
    return strict ? c > 0 : c >= 0;
  }
};

inline Threshold threshold_of(const IdealWhich& w, const GroupSpec& g) {
  if (w.kind != IdealWhich::Kind::m_power || w.power <= 1 || g.divisible())
    return {GroupElement::zero(g), true};  // m (shared by V and D); m^k = m when Gamma is divisible
  return {least_positive(g).scale(Rational(w.power)), false};
}

template <class VF>
bool ideal_member(const typename VF::Elem& x, const VF& field, IdealWhich which) {
  return threshold_of(which, field.group()).admits(field.valuation(x));
}

}  // namespace ivrf
