#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include <ivrf/config.hpp>

using namespace ivrf;

namespace {

long slow_padic(Rational x, long p) {
  long v = 0;
  Integer n = x.get_num(), d = x.get_den();
  while (n % p == 0) n /= p, ++v;
  while (d % p == 0) d /= p, --v;
  return v;
}

const GaloisField& gf2() { return GaloisField::get(2); }
const GaloisField& gf4() { return GaloisField::get(2, 2); }

template <class VF>
void check_valuation_axioms(const VF& f, int n) {
  Rng rng(7);
  for (int i = 0; i < n; ++i) {
    auto x = f.sample(rng), y = f.sample(rng);
    auto vx = f.valuation(x), vy = f.valuation(y);
    ASSERT_EQ(f.valuation(x * y), vx + vy) << f.name();
    auto s = f.valuation(x + y);
    EXPECT_GE(s, std::min(vx, vy)) << f.name();
    if (vx != vy) {
      EXPECT_EQ(s, std::min(vx, vy)) << f.name();
    }
    if (!vx.is_infinite() && vx.finite().is_zero() && !vy.is_infinite() && vy.finite().is_zero()) {
      EXPECT_EQ(f.residue(x * y), f.residue(x) * f.residue(y)) << f.name();
    }
  }
}

}  // namespace

TEST(Fields, PAdicValuationMatchesRepeatedDivision) {
  PAdicQ f(5);
  for (long n = -60; n <= 60; ++n)
    for (long d : {1, 3, 10, 25, 125, 7}) {
      if (n == 0) continue;
      Rational x(n, d);
      x.canonicalize();
      EXPECT_EQ(f.valuation(x), ExtValue(GroupElement::scalar(f.group(), Rational(slow_padic(x, 5)))));
    }
  EXPECT_TRUE(f.valuation(Rational(0)).is_infinite());
}

TEST(Fields, PAdicResidueIsReductionModP) {
  PAdicQ f(7);
  for (long n = -20; n <= 20; ++n) {
    Rational x(n, 3);
    EXPECT_EQ(f.residue(x).index(), static_cast<unsigned>(((n * 5) % 7 + 7) % 7));  // 3^{-1} = 5 mod 7
  }
  EXPECT_THROW(f.residue(Rational(1, 7)), PreconditionError);
  for (unsigned r = 0; r < 7; ++r) EXPECT_EQ(f.residue(f.lift(GfElem(GaloisField::get(7), r))).index(), r);
}

TEST(Fields, TAdicValuationIsOrderDifference) {
  TAdic<FiniteResidueField> f{FiniteResidueField(gf4())};
  auto t = f.t();
  auto u = f.lift(generator(gf4()));
  auto x = (t * t * (u + t)) / (t + t * t * t);
  EXPECT_EQ(f.valuation(x).finite()[0], Rational(1));
  auto y = (u + t) / (f.one() + t);
  EXPECT_EQ(f.residue(y), generator(gf4()));
  EXPECT_EQ(f.valuation(f.element_of_value(GroupElement::scalar(f.group(), Rational(-3)))).finite()[0], Rational(-3));
}

TEST(Fields, LexRankTwoValuation) {
  LexRank2<FiniteResidueField> f{FiniteResidueField(gf2())};
  auto t1 = f.t1(), t2 = f.t2();
  auto g = [&](long a, long b) { return GroupElement(f.group(), {Rational(a), Rational(b)}); };
  EXPECT_EQ(f.valuation(t1).finite(), g(0, 1));
  EXPECT_EQ(f.valuation(t2).finite(), g(1, 0));
  EXPECT_EQ(f.valuation(t2 / (t1 * t1 * t1)).finite(), g(1, -3));
  EXPECT_EQ(f.valuation(t1 + t2).finite(), g(0, 1));
  EXPECT_GT(f.valuation(t2 / (t1 * t1 * t1)).finite(), f.valuation(t1 * t1).finite());
}

TEST(Fields, HahnValuation) {
  Hahn<FunctionResidueField> f{FunctionResidueField(gf2())};
  auto x = f.t_power(Rational(1, 2)) + f.t_power(Rational(2, 3));
  EXPECT_EQ(f.valuation(x).finite()[0], Rational(1, 2));
  auto u = f.lift(f.residue_field().u());
  EXPECT_EQ(f.residue(u + f.t_power(Rational(1, 5))), f.residue_field().u());
}

TEST(Fields, ValuationAxiomsOnSamples) {
  check_valuation_axioms(PAdicQ(3), 300);
  check_valuation_axioms(TAdic<FiniteResidueField>(FiniteResidueField(gf4())), 300);
  check_valuation_axioms(TAdic<FunctionResidueField>(FunctionResidueField(gf2())), 100);
  check_valuation_axioms(LexRank2<FiniteResidueField>(FiniteResidueField(gf2())), 60);
  check_valuation_axioms(Hahn<FunctionResidueField>(FunctionResidueField(gf2())), 200);
}

TEST(Residue, FiniteRootsMatchExhaustiveSearch) {
  FiniteResidueField L(GaloisField::get(3, 2));
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    std::vector<GfElem> c;
    for (int j = 0; j < 4; ++j) c.push_back(L.random(rng));
    ResiduePoly<GfElem> p(c);
    if (p.is_zero()) continue;
    std::set<unsigned> expect, got;
    for (unsigned a = 1; a < 9; ++a)
      if (is_zero(p(GfElem(L.base(), a)))) expect.insert(a);
    auto roots = L.nonzero_roots(p);
    for (auto& r : *roots) got.insert(r.index());
    EXPECT_EQ(got, expect);
  }
}

TEST(Residue, FunctionFieldRoots) {
  FunctionResidueField L(gf2());
  auto u = L.u();
  auto one = L.from_int(1);
  auto r2 = (u + one) / u;
  ResiduePoly<FuncResidue> x = ResiduePoly<FuncResidue>::monomial(one, 1);
  auto p = (x - ResiduePoly<FuncResidue>(u)) * (x - ResiduePoly<FuncResidue>(r2)) * (x * x + x + ResiduePoly<FuncResidue>(u));
  auto roots = L.nonzero_roots(p);
  ASSERT_TRUE(roots);
  EXPECT_EQ(roots->size(), 2u);
  for (auto& r : *roots) EXPECT_TRUE(is_zero(p(r)));
  EXPECT_NE(std::find(roots->begin(), roots->end(), r2), roots->end());
  auto q = x * x + ResiduePoly<FuncResidue>(u);
  EXPECT_TRUE(L.nonzero_roots(q)->empty());
}

TEST(Residue, SubfieldMembership) {
  FiniteResidueField L4(gf4());
  auto prime = Subfield::finite_subfield(1);
  EXPECT_EQ(prime.nonzero_elements(L4).size(), 1u);
  EXPECT_FALSE(prime.contains(L4, generator(gf4())));
  EXPECT_TRUE(Subfield::whole().contains(L4, generator(gf4())));
  EXPECT_THROW(Subfield::finite_subfield(3).validate(L4), StructuralError);

  FunctionResidueField L(gf2());
  auto u = L.u();
  EXPECT_TRUE(Subfield::constants().contains(L, L.from_int(1)));
  EXPECT_FALSE(Subfield::constants().contains(L, u));
  EXPECT_TRUE(Subfield::frobenius(1).contains(L, u * u / (u * u + L.from_int(1))));
  EXPECT_FALSE(Subfield::frobenius(1).contains(L, u * u * u));
  EXPECT_TRUE(Subfield::frobenius(1).powers_in(L, 2));
  EXPECT_FALSE(Subfield::frobenius(2).powers_in(L, 2));
  EXPECT_EQ(*Subfield::frobenius(1).inseparable_exponent(L), 1u);
  EXPECT_FALSE(Subfield::constants().inseparable_exponent(L));
}

TEST(Fields, PvdMembership) {
  TAdic<FiniteResidueField> f{FiniteResidueField(gf4())};
  PVDSpec<TAdic<FiniteResidueField>> d(f, Subfield::finite_subfield(1));
  auto u = f.lift(generator(gf4()));
  EXPECT_TRUE(d.member(f.one() + f.t()));
  EXPECT_FALSE(d.member(u));
  EXPECT_TRUE(d.member(u * f.t()));
  EXPECT_FALSE(d.member(f.one() / f.t()));
}

TEST(Fields, IdealThresholds) {
  PAdicQ f(5);
  EXPECT_TRUE(ideal_member(Rational(5), f, IdealWhich::max_ideal()));
  EXPECT_FALSE(ideal_member(Rational(2), f, IdealWhich::max_ideal()));
  EXPECT_FALSE(ideal_member(Rational(5), f, IdealWhich::m_pow(2)));
  EXPECT_TRUE(ideal_member(Rational(25, 3), f, IdealWhich::m_pow(2)));
  Hahn<FunctionResidueField> h{FunctionResidueField(gf2())};
  EXPECT_TRUE(ideal_member(h.t_power(Rational(1, 100)), h, IdealWhich::m_pow(3)));
}

TEST(Config, FieldSpecs) {
  auto f = parse_field_spec("padic(5)");
  EXPECT_EQ(f.kind, FieldSpec::Kind::padic);
  EXPECT_EQ(f.p, 5u);
  auto h = parse_field_spec("hahn(GF(4)(u))");
  EXPECT_EQ(h.kind, FieldSpec::Kind::hahn);
  EXPECT_EQ(h.residue.q, 4u);
  EXPECT_TRUE(h.residue.function);
  EXPECT_EQ(parse_field_spec("lex2( GF(3) )").str(), "lex2(GF(3))");
  EXPECT_THROW(parse_field_spec("padic(6)"), ParseError);
  EXPECT_THROW(parse_field_spec("tadic(GF(6))"), ParseError);
  EXPECT_THROW(parse_field_spec("adic(5)"), ParseError);
  EXPECT_EQ(with_field(parse_field_spec("tadic(GF(9))"), [](const auto& vf) { return vf.name(); }), "tadic(GF(9))");
}

TEST(Config, Subfields) {
  auto r4 = parse_residue_spec("GF(4)");
  EXPECT_EQ(parse_subfield("GF(2)", r4).kind(), Subfield::Kind::finite);
  EXPECT_EQ(parse_subfield("GF(4)", r4).kind(), Subfield::Kind::whole);
  EXPECT_THROW(parse_subfield("GF(8)", r4), ParseError);
  EXPECT_THROW(parse_subfield("GF(3)", r4), ParseError);
  auto ru = parse_residue_spec("GF(2)(u)");
  EXPECT_EQ(parse_subfield("constants", ru).kind(), Subfield::Kind::constants);
  auto frob = parse_subfield("GF(2)(u^4)", ru);
  EXPECT_EQ(frob.kind(), Subfield::Kind::frobenius);
  EXPECT_EQ(frob.param(), 2u);
  EXPECT_THROW(parse_subfield("GF(2)(u^3)", ru), ParseError);
  EXPECT_THROW(parse_subfield("constants", r4), ParseError);
}
