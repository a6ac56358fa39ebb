#pragma once

// Explicit rational functions: theta, psi, rho, the separator, the
// not-local witnesses, and exhaustive scans of maps from a finite field into
// a subfield.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "intr.hpp"

namespace ivrf {

// A finite family of valuations on one field with a uniform element t:
// 0 < v_m(t) < n * v_m(t_m) for every member.
template <class VF>
struct SingularData {
  using Elem = typename VF::Elem;
  using Fn = RatFunc<Elem, VarX>;

  std::vector<VF> valuations;
  std::vector<Elem> uniformizers;
  Elem t;
  unsigned n = 1;

  SingularData(std::vector<VF> vals, std::vector<Elem> unif, Elem t_, unsigned n_)
      : valuations(std::move(vals)), uniformizers(std::move(unif)), t(std::move(t_)), n(n_) {
    if (valuations.empty() || valuations.size() != uniformizers.size())
      throw StructuralError("singular data needs one uniformizer per valuation");
    if (n == 0) throw StructuralError("n must be positive");
    for (std::size_t i = 0; i < valuations.size(); ++i) {
      const auto& v = valuations[i];
      auto vt = v.valuation(t);
      auto vu = v.valuation(uniformizers[i]);
      if (vt.is_infinite() || vu.is_infinite() || vt.finite().sign() <= 0 ||
          !(vt.finite() < vu.finite().scale(Rational(n))))
        throw StructuralError("0 < v(t) < n v(t_m) fails for " + v.name());
    }
  }
};

// The shipped presets over Q: primes {2,3} with t = 6, or {2,3,5} with t = 30; n = 2.
inline SingularData<PAdicQ> singular_preset(const std::vector<unsigned>& primes, long t, unsigned n) {
  std::vector<PAdicQ> vals;
  std::vector<Rational> unif;
  for (auto p : primes) {
    vals.emplace_back(p);
    unif.emplace_back(p);
  }
  return SingularData<PAdicQ>(std::move(vals), std::move(unif), Rational(t), n);
}

template <class VF>
DomainSpec<VF> domain_of(const SingularData<VF>& s, ESet e = ESet::whole_field) {
  return DomainSpec<VF>::intersection(s.valuations, e);
}

// theta(x) = t(1 + x^{2n}) / ((1 + t x^n)(t + x^n))
template <class VF>
RatFunc<typename VF::Elem, VarX> build_theta(const SingularData<VF>& s) {
  using Elem = typename VF::Elem;
  using P = Poly<Elem, VarX>;
  const std::size_t n = s.n;
  const Elem e1 = s.valuations.front().one();
  P one(e1);
  P xn = P::monomial(e1, n);
  P num = (one + P::monomial(e1, 2 * n)).scaled(s.t);
  P den = (one + xn.scaled(s.t)) * (P(s.t) + xn);
  return RatFunc<Elem, VarX>(num, den);
}

// psi = phi^n / (t + phi^{2n})
template <class VF>
RatFunc<typename VF::Elem, VarX> build_psi(const RatFunc<typename VF::Elem, VarX>& phi, const SingularData<VF>& s) {
  using Fn = RatFunc<typename VF::Elem, VarX>;
  Fn pn = pow(phi, static_cast<long>(s.n));
  return pn / (Fn(s.t) + pn * pn);
}

// phi^n (1 - phi^n psi) == t psi
template <class VF>
bool psi_identity(const RatFunc<typename VF::Elem, VarX>& phi, const SingularData<VF>& s) {
  using Fn = RatFunc<typename VF::Elem, VarX>;
  Fn psi = build_psi(phi, s);
  Fn pn = pow(phi, static_cast<long>(s.n));
  return identity_check(pn * (Fn(1) - pn * psi), Fn(s.t) * psi);
}

// rho = phi1 + theta(phi1/phi2) phi2
template <class VF>
RatFunc<typename VF::Elem, VarX> build_rho(const RatFunc<typename VF::Elem, VarX>& phi1,
                                           const RatFunc<typename VF::Elem, VarX>& phi2, const SingularData<VF>& s) {
  if (phi2.is_zero()) throw PreconditionError("rho needs phi2 != 0");
  return phi1 + build_theta(s).compose(phi1 / phi2) * phi2;
}

// phi / (phi + theta(phi))
template <class VF>
RatFunc<typename VF::Elem, VarX> build_separator(const RatFunc<typename VF::Elem, VarX>& phi,
                                                 const SingularData<VF>& s) {
  if (phi.is_zero()) throw PreconditionError("separator needs phi != 0");
  return phi / (phi + build_theta(s).compose(phi));
}

// Outcome of a verification suite: counts and the first few violations.
struct SuiteReport {
  explicit SuiteReport(std::string n = "") : name(std::move(n)) {}

  std::string name;
  std::size_t checks = 0;
  std::size_t violations = 0;
  std::vector<std::string> examples;
  std::map<std::string, std::size_t> tally;

  void check(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    ++violations;
    if (examples.size() < 10) examples.push_back(what);
  }
  bool passed() const { return violations == 0; }
  void absorb(const SuiteReport& o) {
    checks += o.checks;
    violations += o.violations;
    for (const auto& e : o.examples)
      if (examples.size() < 10) examples.push_back(e);
    for (const auto& [k, v] : o.tally) tally[k] += v;
  }
};

// The three cases for theta at one sample a and one valuation.
template <class VF>
void theta_cases(const RatFunc<typename VF::Elem, VarX>& theta, const SingularData<VF>& s,
                 const typename VF::Elem& a, SuiteReport& rep) {
  auto val = theta(a);
  if (!val) {
    rep.check(false, "theta has a pole at " + to_str(a));
    return;
  }
  for (const auto& v : s.valuations) {
    auto va = v.valuation(a);
    auto vt = v.valuation(*val);
    std::string where = v.name() + " at a = " + to_str(a);
    rep.check(vt.is_infinite() || vt.finite().sign() >= 0, "theta(a) not integral, " + where);
    if (!va.is_infinite() && va.finite().is_zero()) {
      ++rep.tally["unit"];
      rep.check(vt.is_infinite() || vt.finite().sign() > 0, "v(theta(a)) <= 0 for a unit, " + where);
    } else {
      ++rep.tally[va.is_infinite() || va.finite().sign() > 0 ? "positive" : "negative"];
      bool ok = !vt.is_infinite() && vt.finite().is_zero() && v.residue(*val) == v.residue_field().from_int(1);
      rep.check(ok, "theta(a) not congruent to 1, " + where);
    }
  }
}

template <class VF>
SuiteReport verify_theta(const SingularData<VF>& s, const std::vector<typename VF::Elem>& samples) {
  SuiteReport rep{"theta"};
  auto theta = build_theta(s);
  using Fn = RatFunc<typename VF::Elem, VarX>;
  rep.check(identity_check(theta, theta.compose(Fn::var().inverse())), "theta(x) != theta(1/x)");
  for (const auto& a : samples) theta_cases(theta, s, a, rep);
  return rep;
}

// a = r/s with |r|, |s| <= h, reduced, s > 0.
inline std::vector<Rational> rational_grid(long h) {
  std::vector<Rational> out;
  for (long r = -h; r <= h; ++r)
    for (long q = 1; q <= h; ++q)
      if (std::gcd(r, q) == 1) out.push_back(make_rational(r, q));
  return out;
}

// Valuation table for psi at a: 0 -> 0, positive -> n v(phi(a)) - v(t), negative -> -n v(phi(a)).
template <class VF>
void psi_cases(const RatFunc<typename VF::Elem, VarX>& phi, const RatFunc<typename VF::Elem, VarX>& psi,
               const SingularData<VF>& s, const typename VF::Elem& a, SuiteReport& rep) {
  auto pa = phi(a);
  auto sa = psi(a);
  if (!pa || is_zero(*pa)) return;
  if (!sa) {
    rep.check(false, "psi has a pole at " + to_str(a) + " for phi = " + to_str(phi));
    return;
  }
  for (const auto& v : s.valuations) {
    GroupElement vp = v.valuation(*pa).finite();
    ExtValue vs = v.valuation(*sa);
    std::string where = v.name() + ", phi = " + to_str(phi) + ", a = " + to_str(a);
    if (vp.is_zero()) {
      ++rep.tally["zero"];
      rep.check(vs == vp, "v(psi(a)) != 0, " + where);
    } else if (vp.sign() > 0) {
      ++rep.tally["positive"];
      GroupElement expect = vp.scale(Rational(s.n)) - v.valuation(s.t).finite();
      rep.check(vs == expect && expect.sign() > 0, "v(psi(a)) != n v(phi(a)) - v(t) > 0, " + where);
    } else {
      ++rep.tally["negative"];
      rep.check(vs == vp.scale(-Rational(s.n)), "v(psi(a)) != -n v(phi(a)), " + where);
    }
  }
}

template <class VF>
ExtValue min_value(const ExtValue& a, const ExtValue& b) {
  return a <= b ? a : b;
}

// v_m(rho(a)) = min(v_m(phi1(a)), v_m(phi2(a))) at one a.
template <class VF>
void rho_cases(const RatFunc<typename VF::Elem, VarX>& phi1, const RatFunc<typename VF::Elem, VarX>& phi2,
               const RatFunc<typename VF::Elem, VarX>& rho, const SingularData<VF>& s, const typename VF::Elem& a,
               SuiteReport& rep) {
  auto x1 = phi1(a), x2 = phi2(a);
  if (!x1 || !x2) return;
  auto r = rho(a);
  if (!r) {
    rep.check(false, "rho has a pole at " + to_str(a));
    return;
  }
  for (const auto& v : s.valuations) {
    ExtValue want = min_value<VF>(v.valuation(*x1), v.valuation(*x2));
    rep.check(v.valuation(*r) == want, "v(rho(a)) != min at a = " + to_str(a) + " for " + v.name() + ", phi1 = " +
                                           to_str(phi1) + ", phi2 = " + to_str(phi2));
  }
}

// Separator: v(psi(a)) > 0 iff v(phi(a)) > 0, and psi(a) integral everywhere.
template <class VF>
void separator_cases(const RatFunc<typename VF::Elem, VarX>& phi, const RatFunc<typename VF::Elem, VarX>& sep,
                     const SingularData<VF>& s, const typename VF::Elem& a, SuiteReport& rep) {
  auto pa = phi(a);
  if (!pa) return;
  auto sa = sep(a);
  if (!sa) {
    rep.check(false, "separator has a pole at " + to_str(a));
    return;
  }
  for (const auto& v : s.valuations) {
    auto vp = v.valuation(*pa), vs = v.valuation(*sa);
    bool pos_p = vp.is_infinite() || vp.finite().sign() > 0;
    bool pos_s = vs.is_infinite() || vs.finite().sign() > 0;
    bool integral = vs.is_infinite() || vs.finite().sign() >= 0;
    rep.check(pos_p == pos_s && integral, "separator case fails at a = " + to_str(a) + " for " + v.name());
  }
}

// Witnesses that IntR(D) is not local.
template <class VF>
struct WitnessRecord {
  RatFunc<typename VF::Elem, VarX> w;
  std::string kind;  // finite or inseparable
  MembershipVerdict<typename VF::Elem> membership;
  SuiteReport split{"witness split"};
  SuiteReport residue_map{"residue map"};
};

inline std::string no_witness_message() {
  return "no not-local witness: the residue field is infinite and not purely inseparable of finite exponent "
         "over F, where IntR(K, D) is local";
}

template <class VF>
RatFunc<typename VF::Elem, VarX> notlocal_witness_function(const PVDSpec<VF>& d, std::string* kind = nullptr) {
  using Elem = typename VF::Elem;
  using P = Poly<Elem, VarX>;
  using Fn = RatFunc<Elem, VarX>;
  const auto& L = d.field.residue_field();
  const Elem one = d.field.lift(L.from_int(1));
  if constexpr (VF::Residue::enumerable) {
    // 1/(x^q - x + 1)
    const std::size_t q = L.base().order();
    if (kind) *kind = "finite";
    return Fn(P(one), P::monomial(one, q) - P::monomial(one, 1) + P(one));
  } else {
    auto e = d.sub.inseparable_exponent(L);
    if (!e || *e == 0) throw UnsupportedCase(no_witness_message());
    // 1/(x^{p^{2e}} - u^{p^e})
    std::size_t pe = 1;
    for (unsigned i = 0; i < *e; ++i) pe *= L.characteristic();
    Elem c = power(d.field.lift(L.u()), static_cast<long>(pe));
    if (kind) *kind = "inseparable";
    return Fn(P(one), P::monomial(one, pe * pe) - P(c));
  }
}

// Certifies w in IntR(D) and checks that w lies in M_{m,a} exactly when v(a) < 0.
template <class VF>
WitnessRecord<VF> notlocal_witness(const PVDSpec<VF>& d, const std::vector<typename VF::Elem>& samples, int depth = 3) {
  std::string kind;
  auto w = notlocal_witness_function(d, &kind);
  WitnessRecord<VF> rec{w, kind, intr_member(w, DomainSpec<VF>::pvd(d), depth)};
  const auto& L = d.field.residue_field();
  if constexpr (VF::Residue::enumerable) {
    // w is 1/(d^q - d + 1) = 1 on L.
    ResiduePoly<typename VF::ResElem> den;
    for (std::size_t i = 0; i <= static_cast<std::size_t>(w.den().degree()); ++i) {
      auto c = w.den().coeff(i);
      den = den + ResiduePoly<typename VF::ResElem>::monomial(d.field.residue(c), i);
    }
    for (auto r : elements(L.base())) {
      auto val = den(r);
      rec.residue_map.check(val == L.from_int(1), "d^q - d + 1 != 1 at d = " + to_str(r));
    }
  } else {
    // The residue of the denominator has no root in L.
    std::vector<typename VF::ResElem> c;
    for (std::size_t i = 0; i <= static_cast<std::size_t>(w.den().degree()); ++i) c.push_back(d.field.residue(w.den().coeff(i)));
    ResiduePoly<typename VF::ResElem> den(std::move(c));
    auto roots = L.nonzero_roots(den);
    rec.residue_map.check(roots && roots->empty(), "denominator residue has a root in L");
    rec.residue_map.check(!is_zero(den(L.from_int(0))), "denominator residue vanishes at 0");
    for (const auto& r : L.candidates())
      rec.residue_map.check(!is_zero(den(r)), "denominator residue vanishes at " + to_str(r));
  }
  for (const auto& a : samples) {
    if (is_zero(a)) continue;
    auto val = w(a);
    if (!val) {
      rec.split.check(false, "pole at " + to_str(a));
      continue;
    }
    bool negative = d.field.valuation(a).finite().sign() < 0;
    auto vw = d.field.valuation(*val);
    bool in_m = vw.is_infinite() || vw.finite().sign() > 0;
    ++rec.split.tally[negative ? "v(a) < 0" : "v(a) >= 0"];
    rec.split.check(in_m == negative, "w(a) in m disagrees with v(a) < 0 at a = " + to_str(a));
  }
  return rec;
}

// Exhaustive scan of rational functions over a finite field L of height <= B
// that send all but at most k points of L into the subfield M.
struct FoundMap {
  std::string function;
  std::vector<std::string> exceptions;
  std::vector<std::string> values;  // induced map on L, "pole" at poles
  std::string kind;                 // constant, trace, other
};

struct FieldMapReport {
  std::string source, target;
  unsigned degree_bound = 0, exception_bound = 0;
  std::size_t scanned = 0;
  std::vector<FoundMap> maps;
  std::size_t distinct_induced = 0;
  std::map<std::string, std::size_t> kinds;  // counted over distinct induced maps
  bool constant_only_besides_trace = false;

  bool contains(const std::string& fn) const {
    return std::any_of(maps.begin(), maps.end(), [&](const FoundMap& m) { return m.function == fn; });
  }
};

inline FieldMapReport field_map_scan(const FiniteResidueField& L, const Subfield& M, unsigned B, unsigned k) {
  using P = Poly<GfElem, VarX>;
  M.validate(L);
  const unsigned q = L.base().order();
  if (q > 64) throw ResourceError("field map scan needs |L| <= 64");
  if (B > 4) throw ResourceError("field map scan needs degree bound <= 4");
  double nums = 1, dens = 0, qd = 1;
  for (unsigned i = 0; i <= B; ++i) nums *= q;
  for (unsigned i = 0; i <= B; ++i, qd *= q) dens += qd;
  if (nums * dens > 5e6) throw ResourceError("field map scan exceeds 5e6 candidate pairs");

  FieldMapReport rep;
  rep.source = L.name();
  rep.target = M.name(L);
  rep.degree_bound = B;
  rep.exception_bound = k;
  auto points = elements(L.base());
  auto m_elems = M.nonzero_elements(L);
  m_elems.insert(m_elems.begin(), L.from_int(0));

  // Tr_{L/M}(d) = sum of d^{|M|^i}, i < [L:M].
  const unsigned mq = static_cast<unsigned>(m_elems.size());
  unsigned ext = 0;
  for (unsigned s = 1; s < q; s *= mq) ++ext;
  auto trace = [&](const GfElem& d) {
    GfElem acc = L.from_int(0), x = d;
    for (unsigned i = 0; i < ext; ++i) {
      acc = acc + x;
      x = power(x, static_cast<long>(mq));
    }
    return acc;
  };

  auto poly_from = [&](std::size_t idx, unsigned len, bool monic) {
    std::vector<GfElem> c;
    for (unsigned i = 0; i < len; ++i, idx /= q) c.emplace_back(L.base(), static_cast<unsigned>(idx % q));
    if (monic) c.emplace_back(L.base(), 1);
    return P(std::move(c));
  };
  std::vector<P> numerators, denominators;
  for (std::size_t i = 0, n = static_cast<std::size_t>(nums); i < n; ++i) numerators.push_back(poly_from(i, B + 1, false));
  for (unsigned d = 0; d <= B; ++d) {
    std::size_t count = 1;
    for (unsigned i = 0; i < d; ++i) count *= q;
    for (std::size_t i = 0; i < count; ++i) denominators.push_back(poly_from(i, d, true));
  }

  std::map<std::vector<std::int64_t>, std::string> induced;
  for (const auto& den : denominators) {
    for (const auto& num : numerators) {
      if (num.is_zero() && den.degree() > 0) continue;
      if (gcd(num, den).degree() > 0) continue;
      ++rep.scanned;
      FoundMap fm;
      std::vector<std::int64_t> key;
      std::optional<GfElem> first;
      bool constant = true;
      for (const auto& d : points) {
        GfElem dv = den(d);
        if (is_zero(dv)) {
          fm.exceptions.push_back(to_str(d));
          fm.values.push_back("pole");
          key.push_back(-1);
          continue;
        }
        GfElem v = num(d) / dv;
        fm.values.push_back(to_str(v));
        key.push_back(v.index());
        if (!M.contains(L, v)) fm.exceptions.push_back(to_str(d));
        if (first && !(*first == v)) constant = false;
        if (!first) first = v;
      }
      if (fm.exceptions.size() > k) continue;
      fm.function = to_str(RatFunc<GfElem, VarX>(num, den));
      // Classify the induced map on the non-exceptional points.
      auto good = [&](std::size_t i) {
        return std::find(fm.exceptions.begin(), fm.exceptions.end(), to_str(points[i])) == fm.exceptions.end();
      };
      if (constant) {
        fm.kind = "constant";
      } else {
        fm.kind = "other";
        for (std::size_t ai = 1; ai < m_elems.size() && fm.kind == "other"; ++ai)
          for (const auto& b : m_elems) {
            bool all = true;
            for (std::size_t i = 0; i < points.size() && all; ++i) {
              if (!good(i)) continue;
              GfElem v = num(points[i]) / den(points[i]);
              all = v == m_elems[ai] * trace(points[i]) + b;
            }
            if (all) {
              fm.kind = "trace";
              break;
            }
          }
      }
      if (induced.emplace(key, fm.kind).second) ++rep.kinds[fm.kind];
      rep.maps.push_back(std::move(fm));
    }
  }
  rep.distinct_induced = induced.size();
  rep.constant_only_besides_trace = rep.kinds.count("other") == 0;
  return rep;
}

// Bounded search for a nonconstant phi over GF(q)(u) of small height sending
// all but k candidate points into the subfield; a hit would contradict the
// nonexistence lemmas for infinite L.
struct FalsificationReport {
  std::size_t scanned = 0;
  std::vector<std::string> counterexamples;
};

inline FalsificationReport falsification_scan(const FunctionResidueField& L, const Subfield& M, unsigned B,
                                              unsigned k) {
  using P = Poly<FuncResidue, VarX>;
  M.validate(L);
  if (M.inseparable_exponent(L)) throw UnsupportedCase("the subfield makes L/M purely inseparable of finite exponent");
  std::vector<FuncResidue> coeffs{L.from_int(0)};
  for (unsigned i = 1; i < L.base().order(); ++i) coeffs.emplace_back(GfElem(L.base(), i));
  coeffs.push_back(L.u());
  const std::size_t c = coeffs.size();
  std::size_t total = 1;
  for (unsigned i = 0; i <= B; ++i) total *= c;
  if (total * total > 5000000) throw ResourceError("falsification scan too large");
  auto poly_from = [&](std::size_t idx) {
    std::vector<FuncResidue> v;
    for (unsigned i = 0; i <= B; ++i, idx /= c) v.push_back(coeffs[idx % c]);
    return P(std::move(v));
  };
  auto points = L.candidates();
  FalsificationReport rep;
  for (std::size_t di = 0; di < total; ++di) {
    P den = poly_from(di);
    if (den.is_zero() || !(den.lead() == L.from_int(1))) continue;
    for (std::size_t ni = 0; ni < total; ++ni) {
      P num = poly_from(ni);
      RatFunc<FuncResidue, VarX> phi(num, den);
      if (phi.is_constant() || !(phi.num() == num)) continue;
      ++rep.scanned;
      unsigned bad = 0;
      for (const auto& a : points) {
        auto v = phi(a);
        if (!v || !M.contains(L, *v)) ++bad;
        if (bad > k) break;
      }
      if (bad <= k) rep.counterexamples.push_back(to_str(phi));
    }
  }
  return rep;
}

}  // namespace ivrf
