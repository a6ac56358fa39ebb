#pragma once

// Residue fields L = V/m and their subfields F = D/m.
//
// Two families are supported: finite fields GF(q), and rational function
// fields GF(q)(u). Each provides element enumeration or candidate streams,
// root finding for residue polynomials, and subfield membership.

#include <algorithm>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gf.hpp"
#include "ratfun.hpp"

namespace ivrf {

using FuncResidue = RatFunc<GfElem, VarU>;

template <class R>
using ResiduePoly = Poly<R, VarX>;

enum class Tri { yes, no, unknown };

class FiniteResidueField {
 public:
  using Elem = GfElem;
  static constexpr bool enumerable = true;

  explicit FiniteResidueField(const GaloisField& f) : field_(&f) {}

  const GaloisField& base() const { return *field_; }
  bool finite() const { return true; }
  unsigned characteristic() const { return field_->characteristic(); }
  std::string name() const { return "GF(" + std::to_string(field_->order()) + ")"; }
  Elem from_int(long n) const { return GfElem(*field_, field_->from_int(n)); }
  Elem generator() const { return ivrf::generator(*field_); }
  std::vector<Elem> nonzero() const {
    std::vector<Elem> out;
    for (unsigned i = 1; i < field_->order(); ++i) out.emplace_back(*field_, i);
    return out;
  }
  // Exhaustive; never nullopt.
  std::optional<std::vector<Elem>> nonzero_roots(const ResiduePoly<Elem>& p) const {
    std::vector<Elem> out;
    if (p.is_zero()) return nonzero();
    for (auto& c : nonzero())
      if (is_zero(p(c))) out.push_back(c);
    return out;
  }
  Elem random(Rng& rng) const {
    return GfElem(*field_, static_cast<unsigned>(uniform_int(rng, 0, field_->order() - 1)));
  }

 private:
  const GaloisField* field_;
};

class FunctionResidueField {
 public:
  using Elem = FuncResidue;
  using GfPoly = Poly<GfElem, VarU>;
  static constexpr bool enumerable = false;

  explicit FunctionResidueField(const GaloisField& f, unsigned root_degree_bound = 4)
      : field_(&f), bound_(root_degree_bound) {}

  const GaloisField& base() const { return *field_; }
  bool finite() const { return false; }
  unsigned characteristic() const { return field_->characteristic(); }
  std::string name() const { return "GF(" + std::to_string(field_->order()) + ")(u)"; }
  Elem from_int(long n) const { return Elem(GfElem(*field_, field_->from_int(n))); }
  Elem u() const { return Elem(GfPoly::monomial(GfElem(*field_, 1), 1)); }
  Elem generator() const { return u(); }
  unsigned root_degree_bound() const { return bound_; }

  // A deterministic stream of nonzero elements of small height, for witness searches.
  std::vector<Elem> candidates() const {
    std::vector<Elem> out;
    auto polys = monic_polys_up_to(2);
    std::vector<GfElem> units;
    for (unsigned i = 1; i < field_->order(); ++i) units.emplace_back(*field_, i);
    for (const auto& lam : units)
      for (const auto& n : polys) out.push_back(Elem(n.scaled(lam)));
    for (const auto& d : polys) {
      if (d.degree() < 1) continue;
      for (const auto& n : polys) {
        Elem e(n, d);
        if (!e.is_constant()) out.push_back(e);
      }
    }
    return out;
  }

  // Nonzero roots in GF(q)(u) via the rational root theorem over GF(q)[u];
  // nullopt when the divisor enumeration exceeds the configured bound.
  std::optional<std::vector<Elem>> nonzero_roots(const ResiduePoly<Elem>& p) const {
    if (p.is_zero()) throw PreconditionError("roots of the zero polynomial");
    // Clear denominators.
    GfPoly l(GfElem(*field_, 1));
    for (const auto& c : p.coeffs()) l = l / gcd(l, c.den()) * c.den();
    std::vector<GfPoly> cs;
    for (const auto& c : p.coeffs()) cs.push_back(c.num() * (l / c.den()));
    std::size_t k = 0;
    while (k < cs.size() && cs[k].is_zero()) ++k;
    cs.erase(cs.begin(), cs.begin() + static_cast<long>(k));
    if (cs.size() <= 1) return std::vector<Elem>{};
    auto num_divs = divisors(cs.front());
    auto den_divs = divisors(cs.back());
    if (!num_divs || !den_divs) return std::nullopt;
    std::vector<Elem> out;
    for (unsigned i = 1; i < field_->order(); ++i) {
      GfElem lam(*field_, i);
      for (const auto& a : *num_divs)
        for (const auto& b : *den_divs) {
          if (gcd(a, b).degree() > 0) continue;
          Elem r(a.scaled(lam), b);
          if (is_zero(p(r)) && std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
        }
    }
    return out;
  }

  Elem random(Rng& rng) const {
    auto rp = [&](int deg) {
      std::vector<GfElem> c;
      for (int i = 0; i <= deg; ++i)
        c.emplace_back(*field_, static_cast<unsigned>(uniform_int(rng, 0, field_->order() - 1)));
      return GfPoly(std::move(c));
    };
    GfPoly d = rp(static_cast<int>(uniform_int(rng, 0, 1)));
    if (d.is_zero()) d = GfPoly(GfElem(*field_, 1));
    return Elem(rp(static_cast<int>(uniform_int(rng, 0, 2))), d);
  }

 private:
  std::vector<GfPoly> monic_polys_of_degree(int d) const {
    std::vector<GfPoly> out;
    const unsigned q = field_->order();
    std::size_t count = 1;
    for (int i = 0; i < d; ++i) count *= q;
    for (std::size_t idx = 0; idx < count; ++idx) {
      std::vector<GfElem> c;
      std::size_t r = idx;
      for (int i = 0; i < d; ++i, r /= q) c.emplace_back(*field_, static_cast<unsigned>(r % q));
      c.emplace_back(*field_, 1);
      out.emplace_back(std::move(c));
    }
    return out;
  }
  std::vector<GfPoly> monic_polys_up_to(int d) const {
    std::vector<GfPoly> out;
    for (int i = 0; i <= d; ++i) {
      auto v = monic_polys_of_degree(i);
      out.insert(out.end(), v.begin(), v.end());
    }
    return out;
  }

  // All monic divisors, from a trial-division factorization.
  std::optional<std::vector<GfPoly>> divisors(const GfPoly& p) const {
    std::vector<std::pair<GfPoly, int>> factors;
    GfPoly rest = p.monic();
    int d = 1;
    std::size_t work = 0;
    while (rest.degree() >= 2 * d) {
      if (d > static_cast<int>(bound_)) return std::nullopt;
      for (const auto& f : monic_polys_of_degree(d)) {
        if (++work > 100000) return std::nullopt;
        int mult = 0;
        while (rest.degree() >= f.degree()) {
          auto [q, r] = divmod(rest, f);
          if (!r.is_zero()) break;
          rest = q;
          ++mult;
        }
        if (mult) factors.emplace_back(f, mult);
      }
      ++d;
    }
    if (rest.degree() > 0) factors.emplace_back(rest, 1);
    std::vector<GfPoly> out{GfPoly(GfElem(*field_, 1))};
    for (const auto& [f, m] : factors) {
      std::vector<GfPoly> next;
      for (const auto& base : out) {
        GfPoly acc = base;
        for (int i = 0; i <= m; ++i) {
          next.push_back(acc);
          acc = acc * f;
        }
      }
      out = std::move(next);
    }
    return out;
  }

  const GaloisField* field_;
  unsigned bound_;
};

// A subfield F of a residue field L.
class Subfield {
 public:
  enum class Kind {
    whole,      // F = L
    finite,     // GF(p^d) inside GF(p^k), d | k
    constants,  // GF(q) inside GF(q)(u)
    frobenius,  // GF(q)(u^{p^e}) inside GF(q)(u)
  };

  static Subfield whole() { return Subfield(Kind::whole, 0); }
  static Subfield finite_subfield(unsigned d) { return Subfield(Kind::finite, d); }
  static Subfield constants() { return Subfield(Kind::constants, 0); }
  static Subfield frobenius(unsigned e) { return Subfield(Kind::frobenius, e); }

  Kind kind() const { return kind_; }
  unsigned param() const { return param_; }

  void validate(const FiniteResidueField& L) const {
    if (kind_ == Kind::constants || kind_ == Kind::frobenius)
      throw StructuralError("subfield kind requires a function residue field");
    if (kind_ == Kind::finite && (param_ == 0 || L.base().degree() % param_ != 0))
      throw StructuralError("GF(p^d) embeds in GF(p^k) only when d divides k");
  }
  void validate(const FunctionResidueField&) const {
    if (kind_ == Kind::finite) throw StructuralError("finite subfield kind requires a finite residue field");
    if (kind_ == Kind::frobenius && param_ == 0) throw StructuralError("Frobenius exponent must be positive");
  }

  std::string name(const FiniteResidueField& L) const {
    if (kind_ == Kind::whole) return L.name();
    unsigned q = 1;
    for (unsigned i = 0; i < param_; ++i) q *= L.characteristic();
    return "GF(" + std::to_string(q) + ")";
  }
  std::string name(const FunctionResidueField& L) const {
    std::string base = "GF(" + std::to_string(L.base().order()) + ")";
    switch (kind_) {
      case Kind::whole: return L.name();
      case Kind::constants: return base;
      default: return base + "(u^" + std::to_string(pe(L.characteristic())) + ")";
    }
  }

  bool contains(const FiniteResidueField& L, const GfElem& x) const {
    if (kind_ == Kind::whole) return true;
    unsigned sub_order = 1;
    for (unsigned i = 0; i < param_; ++i) sub_order *= L.characteristic();
    return power(x, sub_order) == x;
  }
  bool contains(const FunctionResidueField& L, const FuncResidue& x) const {
    switch (kind_) {
      case Kind::whole: return true;
      case Kind::constants: return x.is_constant();
      case Kind::frobenius: {
        auto k = pe(L.characteristic());
        return divisible(x.num(), k) && divisible(x.den(), k);
      }
      default: return false;
    }
  }

  bool is_finite(const FiniteResidueField&) const { return true; }
  bool is_finite(const FunctionResidueField&) const { return kind_ == Kind::constants; }

  std::vector<GfElem> nonzero_elements(const FiniteResidueField& L) const {
    std::vector<GfElem> out;
    for (auto& c : L.nonzero())
      if (contains(L, c)) out.push_back(c);
    return out;
  }
  std::vector<FuncResidue> nonzero_elements(const FunctionResidueField& L) const {
    if (kind_ != Kind::constants) throw PreconditionError("subfield is infinite");
    std::vector<FuncResidue> out;
    for (unsigned i = 1; i < L.base().order(); ++i) out.emplace_back(GfElem(L.base(), i));
    return out;
  }

  // Whether x^c lies in F for every x in L.
  bool powers_in(const FiniteResidueField& L, long c) const {
    for (auto& x : L.nonzero())
      if (!contains(L, power(x, c))) return false;
    return true;
  }
  bool powers_in(const FunctionResidueField& L, long c) const {
    switch (kind_) {
      case Kind::whole: return true;
      case Kind::constants: return c == 0;
      case Kind::frobenius: return c % static_cast<long>(pe(L.characteristic())) == 0;
      default: return false;
    }
  }

  // L/F purely inseparable of finite exponent: the exponent e (L^{p^e} in F).
  std::optional<unsigned> inseparable_exponent(const FunctionResidueField&) const {
    if (kind_ == Kind::whole) return 0u;
    if (kind_ == Kind::frobenius) return param_;
    return std::nullopt;
  }

  // Whether x -> R(x) sends every nonzero point of the source set (L, or F
  // when from_subfield) into F, skipping poles and the excluded points.
  Tri maps_into(const FiniteResidueField& L, const RatFunc<GfElem, VarX>& r, bool from_subfield,
                const std::vector<GfElem>& exclude, std::optional<GfElem>* witness) const {
    auto source = from_subfield ? nonzero_elements(L) : L.nonzero();
    for (auto& c : source) {
      if (std::find(exclude.begin(), exclude.end(), c) != exclude.end()) continue;
      auto v = r(c);
      if (!v) continue;
      if (!contains(L, *v)) {
        if (witness) *witness = c;
        return Tri::no;
      }
    }
    return Tri::yes;
  }
  Tri maps_into(const FunctionResidueField& L, const RatFunc<FuncResidue, VarX>& r, bool from_subfield,
                const std::vector<FuncResidue>& exclude, std::optional<FuncResidue>* witness) const {
    if (kind_ == Kind::whole) return Tri::yes;
    auto coeffs_in_f = [&] {
      for (const auto* p : {&r.num(), &r.den()})
        for (const auto& c : p->coeffs())
          if (!contains(L, c)) return false;
      return true;
    };
    if (r.is_constant() && contains(L, r.constant())) return Tri::yes;
    if (from_subfield && coeffs_in_f()) return Tri::yes;
    if (kind_ == Kind::frobenius && coeffs_in_f()) {
      auto k = pe(L.characteristic());
      if (divisible(r.num(), k) && divisible(r.den(), k)) return Tri::yes;
    }
    std::vector<FuncResidue> cands;
    if (from_subfield) {
      if (kind_ == Kind::constants) cands = nonzero_elements(L);
      else
        for (auto& c : L.candidates()) cands.push_back(power(c, static_cast<long>(pe(L.characteristic()))));
    } else {
      cands = L.candidates();
    }
    for (auto& c : cands) {
      if (std::find(exclude.begin(), exclude.end(), c) != exclude.end()) continue;
      auto v = r(c);
      if (!v || is_zero(r.num()(c))) continue;
      if (!contains(L, *v)) {
        if (witness) *witness = c;
        return Tri::no;
      }
    }
    if (from_subfield && kind_ == Kind::constants) return Tri::yes;  // exhaustive over F*
    return Tri::unknown;
  }

 private:
  Subfield(Kind k, unsigned p) : kind_(k), param_(p) {}

  unsigned pe(unsigned p) const {
    unsigned r = 1;
    for (unsigned i = 0; i < param_; ++i) r *= p;
    return r;
  }
  template <class P>
  static bool divisible(const P& poly, unsigned k) {
    for (std::size_t i = 0; i < poly.coeffs().size(); ++i)
      if (!is_zero(poly.coeffs()[i]) && i % k) return false;
    return true;
  }

  Kind kind_;
  unsigned param_;
};

}  // namespace ivrf
