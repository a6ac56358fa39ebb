#pragma once

// Verification suites: randomized and exhaustive checks of the envelope,
// prediction, slope, ideal and construction properties. Every suite is
// driven by one seeded generator, so a seed reproduces a run exactly.

#include <functional>
#include <string>
#include <vector>

#include "constructions.hpp"

namespace ivrf {

struct SuiteConfig {
  std::uint64_t seed = 1;
  std::size_t samples = 0;  // 0 selects the suite default
  int depth = 3;

  std::size_t n(std::size_t dflt) const { return samples ? samples : dflt; }
};

template <class VF>
Poly<typename VF::Elem, VarX> random_poly(const VF& f, Rng& rng, int max_deg, int min_deg = 0) {
  using Elem = typename VF::Elem;
  std::vector<Elem> c;
  for (int i = 0, d = static_cast<int>(uniform_int(rng, min_deg, max_deg)); i <= d; ++i)
    c.push_back(coin(rng, 3, 4) ? f.sample(rng) : Elem{});
  if (is_zero(c.back())) c.back() = f.sample(rng);
  return Poly<Elem, VarX>(std::move(c));
}

// Rational points of the value line; lattice points when requested.
inline GroupElement random_value(const GroupSpec& g, Rng& rng, bool lattice) {
  std::vector<Rational> c;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    std::int64_t d = lattice && !g.divisible() ? 1 : uniform_int(rng, 1, 3);
    c.push_back(make_rational(uniform_int(rng, -6, 6), d));
  }
  return GroupElement(g, std::move(c));
}

template <class VF>
typename VF::ResElem random_unit(const VF& f, Rng& rng) {
  auto r = f.residue_field().random(rng);
  return is_zero(r) ? f.residue_field().from_int(1) : r;
}

// Rational functions over Q with small integer coefficients.
inline RatFunc<Rational, VarX> small_rational_function(Rng& rng, int max_deg = 2, long h = 6) {
  using P = Poly<Rational, VarX>;
  auto rp = [&] {
    std::vector<Rational> c;
    for (int i = 0, d = static_cast<int>(uniform_int(rng, 0, max_deg)); i <= d; ++i)
      c.emplace_back(uniform_int(rng, -h, h));
    return P(std::move(c));
  };
  P num = rp(), den = rp();
  if (num.is_zero()) num = P(Rational(1));
  if (den.is_zero()) den = P(Rational(1));
  return RatFunc<Rational, VarX>(num, den);
}

inline Rational small_rational(Rng& rng, long h = 40) {
  Integer n(static_cast<long>(uniform_int(rng, -h, h)));
  Integer d(static_cast<long>(uniform_int(rng, 1, h)));
  return make_rational(n, d);
}

inline GroupElement least_positive_or_one(const GroupSpec& g) {
  return g.divisible() ? GroupElement::scalar(g, Rational(1)) : least_positive(g);
}

namespace detail {

template <class VF>
void envelope_on(const VF& f, std::size_t polys, std::size_t gammas, Rng& rng, SuiteReport& rep) {
  for (std::size_t k = 0; k < polys; ++k) {
    auto p = random_poly(f, rng, 8);
    auto pl = minval_poly(p, f);
    std::vector<GroupElement> pts = pl.breakpoints();
    for (std::size_t j = 0; j < gammas; ++j) pts.push_back(random_value(f.group(), rng, false));
    for (const auto& g : pts)
      rep.check(pl_eval(pl, g) == minval_direct(p, f, g),
                f.name() + ": envelope != direct minimum at " + g.str() + " for " + to_str(p));
  }
  ++rep.tally[f.name()];
}

template <class VF>
void gauss_on(const VF& f, std::size_t pairs, Rng& rng, SuiteReport& rep) {
  for (std::size_t k = 0; k < pairs; ++k) {
    auto a = random_poly(f, rng, 4), b = random_poly(f, rng, 4);
    rep.check(minval_poly(a * b, f) == minval_poly(a, f) + minval_poly(b, f),
              f.name() + ": minval(fg) != minval(f) + minval(g) for " + to_str(a) + " and " + to_str(b));
  }
  ++rep.tally[f.name()];
}

template <class VF>
void predict_on(const VF& f, std::size_t n, Rng& rng, SuiteReport& rep) {
  using Elem = typename VF::Elem;
  using P = Poly<Elem, VarX>;
  for (std::size_t k = 0; k < n; ++k) {
    P p = random_poly(f, rng, 6, 1);
    Elem a = f.sample(rng);
    switch (uniform_int(rng, 0, 3)) {
      case 0: {  // a close to a root of p
        Elem b = f.sample(rng);
        p = p * (P::monomial(f.one(), 1) - P(b));
        auto pos = random_value(f.group(), rng, true);
        if (pos.sign() <= 0) pos = -pos;
        if (pos.is_zero()) pos = least_positive_or_one(f.group());
        a = b * (f.one() + f.element_of_value(pos));
        break;
      }
      case 1: {  // a is a root of p
        p = p * (P::monomial(f.one(), 1) - P(a));
        break;
      }
      default: break;
    }
    if (is_zero(a)) continue;
    auto pr = predict(RatFunc<Elem, VarX>(p), a, f);
    ExtValue v = f.valuation(p(a));
    bool ge = v.is_infinite() || v.finite() >= pr.predicted;
    bool eq = v == pr.predicted;
    ++rep.tally[pr.exact ? "local polynomial nonzero" : "local polynomial vanishes"];
    rep.check(ge && eq == pr.exact, f.name() + ": prediction fails for f = " + to_str(p) + " at a = " + to_str(a) +
                                        " (v = " + v.str() + ", minval = " + pr.predicted.str() + ")");
  }
}

template <class VF>
void slopes_on(const VF& f, std::size_t n, Rng& rng, SuiteReport& rep) {
  using Elem = typename VF::Elem;
  for (std::size_t k = 0; k < n; ++k) {
    auto num = random_poly(f, rng, 5), den = random_poly(f, rng, 4);
    // Left unreduced: a common factor shifts both envelopes and both local polynomials equally.
    auto phi = RatFunc<Elem, VarX>::reduced(num, den);
    auto pl = minval_rat(phi, f);
    GroupElement g = random_value(f.group(), rng, true);
    if (coin(rng)) {
      std::vector<GroupElement> lat;
      for (const auto& pb : {minval_poly(phi.num(), f), minval_poly(phi.den(), f)})
        for (const auto& b : pb.breakpoints())
          if (b.in_lattice()) lat.push_back(b);
      if (!lat.empty()) {
        g = lat[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(lat.size()) - 1))];
        ++rep.tally["at a breakpoint"];
      }
    }
    Elem t = f.element_of_value(g) * f.lift(random_unit(f, rng));
    auto s = slopes_check(phi, t, f);
    rep.check(s.left == pl.slope_left(g) && s.right == pl.slope_right(g),
              f.name() + ": slopes at " + g.str() + " disagree for " + to_str(phi));
  }
}

}  // namespace detail

inline TAdic<FiniteResidueField> tadic_gf4() { return TAdic<FiniteResidueField>(FiniteResidueField(GaloisField::get(2, 2))); }
inline Hahn<FunctionResidueField> hahn_gf2u() { return Hahn<FunctionResidueField>(FunctionResidueField(GaloisField::get(2))); }

inline SuiteReport suite_envelope(const SuiteConfig& c) {
  SuiteReport rep{"envelope"};
  Rng rng(c.seed);
  detail::envelope_on(PAdicQ(5), c.n(500), 100, rng, rep);
  detail::envelope_on(tadic_gf4(), c.n(500), 100, rng, rep);
  return rep;
}

inline SuiteReport suite_gauss(const SuiteConfig& c) {
  SuiteReport rep{"gauss"};
  Rng rng(c.seed);
  detail::gauss_on(PAdicQ(5), c.n(500), rng, rep);
  detail::gauss_on(tadic_gf4(), c.n(500), rng, rep);
  return rep;
}

inline SuiteReport suite_predict(const SuiteConfig& c) {
  SuiteReport rep{"predict"};
  Rng rng(c.seed);
  detail::predict_on(PAdicQ(5), c.n(10000), rng, rep);
  detail::predict_on(tadic_gf4(), c.n(10000), rng, rep);
  return rep;
}

inline SuiteReport suite_slopes(const SuiteConfig& c) {
  SuiteReport rep{"slopes"};
  Rng rng(c.seed);
  detail::slopes_on(PAdicQ(5), c.n(200), rng, rep);
  detail::slopes_on(tadic_gf4(), c.n(200), rng, rep);
  detail::slopes_on(LexRank2<FiniteResidueField>(FiniteResidueField(GaloisField::get(2))), c.n(200), rng, rep);
  detail::slopes_on(hahn_gf2u(), c.n(200), rng, rep);
  return rep;
}

inline SingularData<PAdicQ> default_singular() { return singular_preset({2, 3}, 6, 2); }

// Symbolic identity for 100 functions, then the valuation table at samples.
inline SuiteReport suite_psi(const SuiteConfig& c, const SingularData<PAdicQ>& s = default_singular()) {
  SuiteReport rep{"psi-identity"};
  Rng rng(c.seed);
  std::vector<RatFunc<Rational, VarX>> phis, psis;
  for (int i = 0; i < 100; ++i) {
    phis.push_back(small_rational_function(rng));
    psis.push_back(build_psi(phis.back(), s));
    rep.check(psi_identity(phis.back(), s), "identity fails for phi = " + to_str(phis.back()));
  }
  for (std::size_t k = 0, n = c.n(1000); k < n; ++k) {
    std::size_t i = k % phis.size();
    Rational a = small_rational(rng) * power(Rational(uniform_int(rng, 1, 3) == 1 ? 2 : 3), uniform_int(rng, -3, 3));
    psi_cases(phis[i], psis[i], s, a, rep);
  }
  return rep;
}

inline SuiteReport suite_theta(const SuiteConfig& c, const SingularData<PAdicQ>& s = default_singular()) {
  return verify_theta(s, rational_grid(c.samples ? static_cast<long>(c.samples) : 200));
}

// Pointwise minimum property, then characteristic sets over pointed families.
inline SuiteReport suite_rho(const SuiteConfig& c, const SingularData<PAdicQ>& s = default_singular()) {
  SuiteReport rep{"rho"};
  Rng rng(c.seed);
  const std::size_t n = c.n(1000);
  const auto d = domain_of(s);
  for (std::size_t k = 0; k < n; ++k) {
    auto phi1 = small_rational_function(rng, 2, 12), phi2 = small_rational_function(rng, 2, 12);
    auto rho = build_rho(phi1, phi2, s);
    rho_cases(phi1, phi2, rho, s, small_rational(rng) * power(Rational(6), uniform_int(rng, -2, 2)), rep);
    if (k % 20 != 0) continue;
    std::vector<IdealSpec<PAdicQ>> family;
    for (int j = 0; j < 12; ++j) {
      Rational a = small_rational(rng, 12) * power(Rational(6), uniform_int(rng, -1, 2));
      if (!phi1(a) || !phi2(a) || !rho(a)) continue;
      for (std::size_t m = 0; m < s.valuations.size(); ++m) family.push_back(IdealSpec<PAdicQ>::pointed(a, m));
    }
    auto c1 = characteristic_set(phi1, family, d), c2 = characteristic_set(phi2, family, d);
    std::vector<std::size_t> both;
    std::set_intersection(c1.begin(), c1.end(), c2.begin(), c2.end(), std::back_inserter(both));
    ++rep.tally["families"];
    rep.check(both == characteristic_set(rho, family, d),
              "chi(rho) != chi(phi1) & chi(phi2) for " + to_str(phi1) + ", " + to_str(phi2));
  }
  return rep;
}

// Both not-local witness presets: certification, residue map, and the split.
inline SuiteReport suite_witnesses(const SuiteConfig& c) {
  SuiteReport rep{"witnesses"};
  Rng rng(c.seed);
  const std::size_t n = c.n(1000);
  auto run = [&](const auto& pvd) {
    using VF = std::decay_t<decltype(pvd.field)>;
    std::vector<typename VF::Elem> smp;
    for (std::size_t i = 0; i < n; ++i) smp.push_back(pvd.field.sample(rng));
    auto w = notlocal_witness(pvd, smp, c.depth);
    rep.check(w.membership.in() && w.membership.depth <= 3,
              to_str(w.w) + " not certified in at depth <= 3 (" + verdict_name(w.membership.verdict) + ")");
    rep.absorb(w.residue_map);
    rep.absorb(w.split);
    ++rep.tally[w.kind + ": " + to_str(w.w)];
  };
  run(PVDSpec(tadic_gf4(), Subfield::finite_subfield(1)));
  run(PVDSpec(hahn_gf2u(), Subfield::frobenius(1)));
  return rep;
}

// Certified members of IntR(K, D) on the Hahn PVD with F = GF(2), built from
// constants of D and functions integer-valued on V. Every denominator is a
// product of x^2 + x + u, x^2 + u and x^4 + x + u. These are irreducible over
// K (their residues are irreducible over GF(2)(u)), so fractions are reduced
// by exact division instead of a gcd over K.
struct DichotomyCorpus {
  using VF = Hahn<FunctionResidueField>;
  using Elem = VF::Elem;
  using P = Poly<Elem, VarX>;
  using Fn = RatFunc<Elem, VarX>;

  PVDSpec<VF> pvd;
  std::vector<P> factors;
  std::vector<Fn> members;
  std::size_t attempted = 0;

  DichotomyCorpus() : pvd(hahn_gf2u(), Subfield::constants()) {
    const auto& L = pvd.field.residue_field();
    const Elem one(L.from_int(1)), u(L.u());
    const P x = P::monomial(one, 1);
    factors = {P::monomial(one, 2) + x + P(u), P::monomial(one, 2) + P(u), P::monomial(one, 4) + x + P(u)};
  }

  Fn make(P num, P den) const {
    for (const auto& q : factors)
      while (den.degree() >= q.degree() && (den % q).is_zero() && (num % q).is_zero()) {
        num = num / q;
        den = den / q;
      }
    return num.is_zero() ? Fn() : Fn::reduced(std::move(num), std::move(den));
  }
  Fn add(const Fn& f, const Fn& g) const {
    if (f.den() == g.den()) return make(f.num() + g.num(), f.den());
    return make(f.num() * g.den() + g.num() * f.den(), f.den() * g.den());
  }
  Fn mul(const Fn& f, const Fn& g) const { return make(f.num() * g.num(), f.den() * g.den()); }
};

inline DichotomyCorpus dichotomy_corpus(std::size_t target, std::uint64_t seed, int depth = 3) {
  using VF = DichotomyCorpus::VF;
  using Elem = DichotomyCorpus::Elem;
  using P = DichotomyCorpus::P;
  using Fn = DichotomyCorpus::Fn;
  DichotomyCorpus corpus;
  const auto& L = corpus.pvd.field.residue_field();
  const Elem one(L.from_int(1)), u(L.u());
  const auto& q = corpus.factors;
  const auto& H = corpus.pvd.field;
  auto tq = [&](long k, long d) { return H.t_power(make_rational(k, d)); };
  const P x = P::monomial(one, 1);
  // Integer-valued on V: the denominator residues have no root in GF(2)(u).
  const std::vector<Fn> psi = {
      Fn::reduced(P(one), q[0]),
      Fn::reduced(x, q[1]),
      Fn::reduced(P::monomial(one, 2), q[0]),
      Fn::reduced(P(one), q[2]),
      Fn::reduced(x + P(u), q[1]),
  };
  const std::vector<Elem> consts = {one, tq(1, 2), one + tq(1, 1), tq(3, 2), one + tq(1, 3), u * tq(1, 1)};
  Rng rng(seed);
  auto pick = [&](const auto& v) {
    return v[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(v.size()) - 1))];
  };
  const auto d = DomainSpec<VF>::pvd(corpus.pvd, ESet::whole_field);
  auto t_times_psi = [&] { return corpus.mul(Fn(tq(uniform_int(rng, 1, 4), 2)), pick(psi)); };
  std::vector<Fn> pool;
  while (corpus.members.size() < target && corpus.attempted < 20 * target) {
    Fn phi;
    switch (pool.size() < 4 ? uniform_int(rng, 0, 2) : uniform_int(rng, 0, 5)) {
      case 0: phi = Fn(pick(consts)); break;
      case 1: phi = t_times_psi(); break;
      case 2: phi = corpus.add(Fn(one), t_times_psi()); break;
      case 3: phi = corpus.mul(pick(pool), pick(pool)); break;
      case 4: phi = corpus.add(pick(pool), pick(pool)); break;
      default: phi = corpus.add(pick(pool), corpus.mul(t_times_psi(), coin(rng) ? Fn(x) : pick(psi))); break;
    }
    ++corpus.attempted;
    if (phi.is_zero() || !intr_member(phi, d, depth).in()) continue;
    corpus.members.push_back(phi);
    if (phi.num().degree() <= 6 && phi.den().degree() <= 6) pool.push_back(phi);
  }
  return corpus;
}

inline SuiteReport suite_dichotomy(const SuiteConfig& c) {
  SuiteReport rep{"dichotomy"};
  auto corpus = dichotomy_corpus(c.n(200), c.seed, c.depth);
  rep.check(corpus.members.size() == c.n(200), "corpus has only " + std::to_string(corpus.members.size()) + " members");
  for (const auto& phi : corpus.members) {
    auto k = dichotomy_check(phi, corpus.pvd);
    ++rep.tally[dichotomy_name(k)];
    rep.check(k != Dichotomy::violation, "certified member " + to_str(phi) + " classifies as Violation");
  }
  using Fn = DichotomyCorpus::Fn;
  using P = Fn::poly_type;
  const auto& H = corpus.pvd.field;
  const auto one = H.lift(H.residue_field().from_int(1));
  Fn bad(P::monomial(one, 2), P::monomial(one, 2) + P(H.t_power(Rational(1))));
  rep.check(dichotomy_check(bad, corpus.pvd) == Dichotomy::violation, "x^2/(x^2 + t) does not classify as Violation");
  rep.check(!intr_member(bad, DomainSpec<DichotomyCorpus::VF>::pvd(corpus.pvd, ESet::whole_field), c.depth).in(),
            "x^2/(x^2 + t) certified as a member");
  return rep;
}

// Ideal and primality axioms for M* on the Hahn PVD, exact at 0.
inline SuiteReport suite_mstar(const SuiteConfig& c) {
  SuiteReport rep{"mstar"};
  using VF = DichotomyCorpus::VF;
  using Fn = DichotomyCorpus::Fn;
  using P = Fn::poly_type;
  auto corpus = dichotomy_corpus(60, c.seed + 1, c.depth);
  const auto& H = corpus.pvd.field;
  const auto zero = GroupElement::zero(H.group());
  const auto one = H.lift(H.residue_field().from_int(1));
  std::vector<Fn> pool = corpus.members;
  // Polynomials over D lie in IntR(D).
  const P x = P::monomial(one, 1);
  for (const auto& p : {x, x + P(one), P::monomial(one, 2) + P(H.t_power(make_rational(1, 2))) * x})
    pool.emplace_back(p);
  const auto d = DomainSpec<VF>::pvd(corpus.pvd, ESet::whole_ring);
  std::vector<GroupElement> at0;
  for (const auto& phi : pool) {
    rep.check(intr_member(phi, d, c.depth).in(), to_str(phi) + " not certified in IntR(D)");
    at0.push_back(minval_rat(phi, H)(zero));
    rep.check(at0.back().sign() >= 0, "minval(0) < 0 for " + to_str(phi));
  }
  Rng rng(c.seed);
  auto idx = [&] { return static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(pool.size()) - 1)); };
  for (std::size_t k = 0, n = c.n(500); k < n; ++k) {
    std::size_t i = idx(), j = idx();
    const Fn &f = pool[i], &g = pool[j];
    bool fi = at0[i].sign() > 0, gi = at0[j].sign() > 0;
    if (auto sum = corpus.add(f, g); fi && gi && !sum.is_zero()) {
      ++rep.tally["sum"];
      rep.check(minval_rat(sum, H)(zero).sign() > 0, "M* not closed under sums: " + to_str(f) + ", " + to_str(g));
    }
    auto prod = minval_rat(corpus.mul(f, g), H)(zero);
    rep.check(prod == at0[i] + at0[j], "minval(fg)(0) != minval(f)(0) + minval(g)(0)");
    if (fi || gi) {
      ++rep.tally["product"];
      rep.check(prod.sign() > 0, "M* not closed under multiplication by IntR(D)");
    }
    if (prod.sign() > 0) {
      ++rep.tally["prime"];
      rep.check(fi || gi, "M* not prime: " + to_str(f) + ", " + to_str(g));
    }
  }
  // x lies in every M_{m,a} with a in m, but not in M*.
  rep.check(!ideal_member(Fn(x), IdealSpec<VF>::mstar(), d), "x in M*");
  for (int k = 0; k < 50; ++k) {
    auto g = random_value(H.group(), rng, true);
    if (g.sign() <= 0) g = -g + GroupElement::scalar(H.group(), make_rational(1, 3));
    auto a = H.element_of_value(g) * H.lift(random_unit(H, rng));
    rep.check(ideal_member(Fn(x), IdealSpec<VF>::pointed(a), d), "x not in M(m, " + to_str(a) + ")");
  }
  return rep;
}

// Exhaustive scans of maps from GF(4) into GF(2) and of GF(2) into itself.
inline SuiteReport suite_fieldmaps(const SuiteConfig&) {
  SuiteReport rep{"fieldmaps"};
  FiniteResidueField L4(GaloisField::get(2, 2)), L2(GaloisField::get(2));
  auto s2 = field_map_scan(L4, Subfield::finite_subfield(1), 2, 0);
  rep.check(s2.contains("x^2 + x"), "x^2 + x missing from the scan at B = 2");
  auto s3 = field_map_scan(L4, Subfield::finite_subfield(1), 3, 0);
  rep.check(s3.contains("x^3"), "x^3 missing from the scan at B = 3");
  auto s1 = field_map_scan(L2, Subfield::whole(), 2, 0);
  rep.check(s1.constant_only_besides_trace, "maps GF(2) -> GF(2) other than constants and the trace");
  rep.tally["GF(4)->GF(2), B=2"] = s2.maps.size();
  rep.tally["GF(4)->GF(2), B=3"] = s3.maps.size();
  rep.tally["GF(2)->GF(2), distinct induced"] = s1.distinct_induced;
  return rep;
}

struct SuiteEntry {
  std::string name;
  std::function<SuiteReport(const SuiteConfig&)> run;
};

inline const std::vector<SuiteEntry>& suites() {
  static const std::vector<SuiteEntry> all = {
      {"envelope", suite_envelope},
      {"gauss", suite_gauss},
      {"predict", suite_predict},
      {"slopes", suite_slopes},
      {"psi-identity", [](const SuiteConfig& c) { return suite_psi(c); }},
      {"theta", [](const SuiteConfig& c) { return suite_theta(c); }},
      {"rho", [](const SuiteConfig& c) { return suite_rho(c); }},
      {"mstar", suite_mstar},
      {"witnesses", suite_witnesses},
      {"dichotomy", suite_dichotomy},
      {"fieldmaps", suite_fieldmaps},
  };
  return all;
}

inline const SuiteEntry* find_suite(const std::string& name) {
  for (const auto& s : suites())
    if (s.name == name) return &s;
  return nullptr;
}

}  // namespace ivrf
