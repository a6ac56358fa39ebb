#include <gtest/gtest.h>

#include <ivrf/parse.hpp>
#include <ivrf/suites.hpp>

using namespace ivrf;

namespace {

using QFn = RatFunc<Rational, VarX>;
using T4 = TAdic<FiniteResidueField>;
using HF = Hahn<FunctionResidueField>;

const SingularData<PAdicQ>& s23() {
  static const auto s = singular_preset({2, 3}, 6, 2);
  return s;
}

long vp(const Rational& q, long p) {
  long v = 0;
  Integer n = q.get_num(), d = q.get_den();
  while (n % p == 0) n /= p, ++v;
  while (d % p == 0) d /= p, --v;
  return v;
}

QFn x() { return QFn::var(); }

}  // namespace

TEST(Singular, PresetsSatisfyInvariant) {
  EXPECT_NO_THROW(singular_preset({2, 3}, 6, 2));
  EXPECT_NO_THROW(singular_preset({2, 3, 5}, 30, 2));
  EXPECT_THROW(singular_preset({2, 3}, 12, 2), StructuralError);
  EXPECT_THROW(singular_preset({2, 3}, 5, 2), StructuralError);
  EXPECT_THROW(singular_preset({2}, 2, 0), StructuralError);
}

TEST(Theta, FormulaAndValues) {
  auto theta = build_theta(s23());
  EXPECT_EQ(theta, parse_rational_function("6(1+x^4)/((1+6x^2)(6+x^2))"));
  EXPECT_EQ(*theta(Rational(1)), Rational(12, 49));
  EXPECT_EQ(*theta(Rational(2, 3)), Rational(97, 319));
  EXPECT_EQ(*theta(Rational(2)), Rational(51, 125));
  EXPECT_EQ(*theta(Rational(1, 2)), Rational(51, 125));
  EXPECT_EQ(theta.compose(QFn(Rational(2, 3))), QFn(Rational(97, 319)));
  EXPECT_TRUE(identity_check(theta, theta.compose(x().inverse())));
}

TEST(Theta, CaseTableOnGrid) {
  auto theta = build_theta(s23());
  for (long r = -30; r <= 30; ++r)
    for (long s = 1; s <= 30; ++s) {
      if (r == 0) continue;
      Rational a(r, s);
      a.canonicalize();
      Rational th = *theta(a);
      for (long p : {2L, 3L}) {
        if (vp(a, p) == 0) {
          EXPECT_GT(vp(th, p), 0) << a.get_str();
        } else {
          EXPECT_GT(vp(th - 1, p), 0) << a.get_str();
        }
      }
    }
  auto rep = verify_theta(s23(), rational_grid(20));
  EXPECT_GT(rep.checks, 0u);
  EXPECT_EQ(rep.violations, 0u);
}

TEST(Psi, IdentityAndValuations) {
  auto psi = build_psi(x(), s23());
  EXPECT_EQ(psi, parse_rational_function("x^2/(x^4+6)"));
  EXPECT_TRUE(psi_identity(x(), s23()));
  EXPECT_EQ(pow(x(), 2) * (QFn(1) - pow(x(), 2) * psi), parse_rational_function("6x^2/(x^4+6)"));
  EXPECT_EQ(vp(*psi(Rational(1)), 2), 0);
  EXPECT_EQ(*psi(Rational(2)), Rational(2, 11));
  EXPECT_EQ(vp(*psi(Rational(2)), 2), 1);
  Rng rng(8);
  for (int i = 0; i < 40; ++i) {
    auto phi = small_rational_function(rng, 4, 6);
    if (phi.is_zero()) continue;
    EXPECT_TRUE(psi_identity(phi, s23())) << to_str(phi);
  }
}

TEST(Psi, IdentityFailsForAnotherT) {
  auto psi = build_psi(x(), s23());
  auto lhs = pow(x(), 2) * (QFn(1) - pow(x(), 2) * psi);
  EXPECT_FALSE(identity_check(lhs, QFn(Rational(5)) * psi));
}

TEST(Rho, MinimumValuation) {
  auto rho = build_rho(QFn(2), QFn(3), s23());
  EXPECT_EQ(rho, QFn(Rational(929, 319)));
  EXPECT_EQ(vp(Rational(929, 319), 2), 0);
  EXPECT_EQ(vp(Rational(929, 319), 3), 0);
  auto rho49 = build_rho(QFn(4), QFn(9), s23());
  EXPECT_EQ(vp(rho49.constant(), 2), 0);
  EXPECT_EQ(vp(rho49.constant(), 3), 0);
  EXPECT_THROW(build_rho(x(), QFn(0), s23()), PreconditionError);

  Rng rng(12);
  for (int i = 0; i < 40; ++i) {
    auto f1 = small_rational_function(rng, 2, 6), f2 = small_rational_function(rng, 2, 6);
    if (f1.is_zero() || f2.is_zero()) continue;
    QFn r;
    try {
      r = build_rho(f1, f2, s23());
    } catch (const StructuralError&) {
      continue;
    }
    for (long n = -6; n <= 6; ++n) {
      Rational a(n, 5);
      auto a1 = f1(a), a2 = f2(a), ar = r(a);
      if (!a1 || !a2 || !ar || sgn(*a1) == 0 || sgn(*a2) == 0) continue;
      for (long p : {2L, 3L}) EXPECT_EQ(vp(*ar, p), std::min(vp(*a1, p), vp(*a2, p))) << to_str(f1) << ", " << to_str(f2);
    }
  }
}

TEST(Rho, CharacteristicSetIsIntersection) {
  PAdicQ p2(2);
  auto d = DomainSpec<PAdicQ>::valuation_ring(p2);
  std::vector<IdealSpec<PAdicQ>> family;
  for (long a : {0, 1, 2, 3, 4, 6, 8, 12}) family.push_back(IdealSpec<PAdicQ>::pointed(Rational(a)));
  auto f1 = parse_rational_function("x^2+2"), f2 = parse_rational_function("x+4");
  auto r = build_rho(f1, f2, s23());
  auto c1 = characteristic_set(f1, family, d), c2 = characteristic_set(f2, family, d);
  std::vector<std::size_t> both;
  std::set_intersection(c1.begin(), c1.end(), c2.begin(), c2.end(), std::back_inserter(both));
  EXPECT_EQ(characteristic_set(r, family, d), both);
}

TEST(Separator, Cases) {
  auto sep = build_separator(x(), s23());
  EXPECT_EQ(vp(*sep(Rational(2)), 2), 1);
  EXPECT_EQ(vp(*sep(Rational(1)), 2), 0);
  for (long n = 1; n <= 40; ++n) {
    Rational a(n, 7);
    auto v = sep(a);
    ASSERT_TRUE(v);
    for (long p : {2L, 3L}) EXPECT_EQ(vp(*v, p) > 0, vp(a, p) > 0) << a.get_str();
  }
  EXPECT_THROW(build_separator(QFn(0), s23()), PreconditionError);
}

TEST(Witness, FiniteResidueField) {
  T4 f(FiniteResidueField(GaloisField::get(2, 2)));
  PVDSpec<T4> d(f, Subfield::finite_subfield(1));
  std::string kind;
  auto w = notlocal_witness_function(d, &kind);
  EXPECT_EQ(kind, "finite");
  EXPECT_EQ(w, parse_function(f, "1/(x^4+x+1)"));
  for (auto& c : elements(GaloisField::get(2, 2))) {
    auto v = c * c * c * c + c + GfElem(GaloisField::get(2, 2), 1);
    EXPECT_EQ(v, GfElem(GaloisField::get(2, 2), 1));
  }
  auto at = w(parse_element(f, "1/t"));
  ASSERT_TRUE(at);
  EXPECT_EQ(f.valuation(*at).finite()[0], Rational(4));
  Rng rng(2);
  std::vector<T4::Elem> samples;
  for (int i = 0; i < 200; ++i) samples.push_back(f.sample(rng));
  auto rec = notlocal_witness(d, samples);
  EXPECT_TRUE(rec.membership.in());
  EXPECT_EQ(rec.split.violations, 0u);
  EXPECT_EQ(rec.residue_map.violations, 0u);
}

TEST(Witness, PurelyInseparable) {
  HF f(FunctionResidueField(GaloisField::get(2)));
  PVDSpec<HF> d(f, Subfield::frobenius(1));
  std::string kind;
  auto w = notlocal_witness_function(d, &kind);
  EXPECT_EQ(kind, "inseparable");
  EXPECT_EQ(w, parse_function(f, "1/(x^4-u^2)"));
  Rng rng(3);
  std::vector<HF::Elem> samples;
  for (int i = 0; i < 100; ++i) samples.push_back(f.sample(rng));
  auto rec = notlocal_witness(d, samples);
  EXPECT_TRUE(rec.membership.in());
  EXPECT_EQ(rec.split.violations, 0u);
}

TEST(Witness, SeparableInfiniteCaseIsUnsupported) {
  HF f(FunctionResidueField(GaloisField::get(2)));
  EXPECT_THROW(notlocal_witness_function(PVDSpec<HF>(f, Subfield::constants())), UnsupportedCase);
}

TEST(FieldMaps, TraceAndNorm) {
  FiniteResidueField L4(GaloisField::get(2, 2));
  auto s2 = field_map_scan(L4, Subfield::finite_subfield(1), 2, 0);
  EXPECT_TRUE(s2.contains("x^2 + x"));
  auto s3 = field_map_scan(L4, Subfield::finite_subfield(1), 3, 0);
  EXPECT_TRUE(s3.contains("x^3"));
  for (const auto& m : s3.maps) EXPECT_TRUE(m.exceptions.empty());
}

TEST(FieldMaps, WholeFieldAcceptsEverything) {
  FiniteResidueField L2(GaloisField::get(2));
  auto s = field_map_scan(L2, Subfield::whole(), 2, 2);
  EXPECT_GT(s.scanned, 0u);
  EXPECT_EQ(s.maps.size(), s.scanned);
  auto strict = field_map_scan(L2, Subfield::whole(), 2, 0);
  EXPECT_LT(strict.maps.size(), strict.scanned);
  for (const auto& m : strict.maps)
    for (const auto& v : m.values) EXPECT_NE(v, "pole") << m.function;
}

TEST(FieldMaps, ReportedMapsVerifyExhaustively) {
  const auto& F = GaloisField::get(2, 2);
  FiniteResidueField L4(F);
  auto prime = Subfield::finite_subfield(1);
  auto s = field_map_scan(L4, prime, 2, 1);
  for (const auto& m : s.maps) {
    ASSERT_EQ(m.values.size(), 4u);
    std::size_t bad = 0;
    for (const auto& v : m.values)
      if (v != "0" && v != "1") ++bad;
    EXPECT_LE(bad, 1u) << m.function;
    EXPECT_EQ(bad, m.exceptions.size()) << m.function;
  }
  EXPECT_THROW(field_map_scan(FiniteResidueField(GaloisField::get(2, 7)), prime, 2, 0), Error);
}

TEST(FieldMaps, NoCounterexampleOverFunctionField) {
  auto r = falsification_scan(FunctionResidueField(GaloisField::get(2)), Subfield::constants(), 2, 0);
  EXPECT_GT(r.scanned, 0u);
  EXPECT_TRUE(r.counterexamples.empty());
}
