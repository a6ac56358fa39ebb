#include <gtest/gtest.h>

#include <ivrf/parse.hpp>
#include <ivrf/suites.hpp>

using namespace ivrf;

namespace {

const PAdicQ P5(5);

GroupElement z(long n, long d = 1) { return GroupElement::scalar(GroupSpec::integers(1), Rational(n, d)); }

Poly<Rational, VarX> poly(const char* s) { return parse_function(P5, s).num(); }

// Minimum of v(a_i) + i*gamma computed coefficient by coefficient.
Rational direct_min(const Poly<Rational, VarX>& f, long p, const Rational& gamma) {
  std::optional<Rational> best;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    const Rational& c = f.coeffs()[i];
    if (sgn(c) == 0) continue;
    long v = 0;
    Integer n = c.get_num(), d = c.get_den();
    while (n % p == 0) n /= p, ++v;
    while (d % p == 0) d /= p, --v;
    Rational value = Rational(v) + Rational(static_cast<long>(i)) * gamma;
    if (!best || value < *best) best = value;
  }
  return *best;
}

std::vector<GfElem> coeffs(const ResiduePoly<GfElem>& p) { return p.coeffs(); }

}  // namespace

TEST(Newton, ConstantIsFlat) {
  auto pl = minval_poly(poly("50"), P5);
  ASSERT_EQ(pl.segments().size(), 1u);
  EXPECT_EQ(pl.segments()[0].slope, 0);
  EXPECT_EQ(pl.segments()[0].intercept, z(2));
}

TEST(Newton, TwoTermEnvelope) {
  auto pl = minval_poly(poly("5+x"), P5);
  ASSERT_EQ(pl.breakpoints().size(), 1u);
  EXPECT_EQ(pl.breakpoints()[0], z(1));
  EXPECT_EQ(pl.segments()[0].slope, 1);
  EXPECT_EQ(pl.segments()[1].slope, 0);
  EXPECT_EQ(pl(z(1, 2)), z(1, 2));
  EXPECT_EQ(pl(z(7)), z(1));
}

TEST(Newton, BreakpointOffTheLattice) {
  auto pl = minval_poly(poly("25+5x+x^3"), P5);
  ASSERT_EQ(pl.breakpoints().size(), 2u);
  EXPECT_EQ(pl.breakpoints()[0], z(1, 2));
  EXPECT_FALSE(pl.breakpoints()[0].in_lattice());
  EXPECT_EQ(pl.breakpoints()[1], z(1));
  EXPECT_EQ(pl(z(2, 3)), z(5, 3));
  EXPECT_EQ(pl(z(-1)), z(-3));
  EXPECT_EQ(pl(z(4)), z(2));
}

TEST(Newton, RationalFunctionEnvelope) {
  auto pl = minval_rat(parse_function(P5, "(5+x)/x"), P5);
  EXPECT_EQ(pl(z(-3)), z(0));
  EXPECT_EQ(pl(z(1)), z(0));
  EXPECT_EQ(pl(z(3)), z(-2));
  EXPECT_THROW(minval_rat(RatFunc<Rational, VarX>(0), P5), StructuralError);
}

TEST(Newton, ThetaOverTwoAdic) {
  auto theta = build_theta(singular_preset({2, 3}, 6, 2));
  auto pl = minval_rat(theta, PAdicQ(2));
  EXPECT_EQ(pl(z(0)), z(1));
  EXPECT_EQ(pl(z(1)), z(0));
  for (long g = -6; g <= 6; ++g) {
    Rational gm(g, 2);
    Rational expect = direct_min(theta.num(), 2, gm) - direct_min(theta.den(), 2, gm);
    EXPECT_EQ(pl(z(g, 2)), GroupElement::scalar(GroupSpec::integers(1), expect));
  }
}

TEST(Newton, EnvelopeMatchesDirectMinimum) {
  Rng rng(11);
  for (int k = 0; k < 300; ++k) {
    std::vector<Rational> c;
    int deg = static_cast<int>(uniform_int(rng, 0, 7));
    for (int i = 0; i <= deg; ++i) {
      long n = uniform_int(rng, -3, 3);
      long e = uniform_int(rng, -2, 3);
      c.push_back(n == 0 ? Rational(0) : Rational(n) * power(Rational(5), e));
    }
    Poly<Rational, VarX> f(c);
    if (f.is_zero()) continue;
    auto pl = minval_poly(f, P5);
    for (long g = -12; g <= 12; ++g) {
      Rational gm(g, 3);
      ASSERT_EQ(pl(z(g, 3)), GroupElement::scalar(GroupSpec::integers(1), direct_min(f, 5, gm))) << to_str(f);
    }
  }
}

TEST(Newton, EnvelopeIsConcaveAndCanonical) {
  Rng rng(5);
  for (int k = 0; k < 100; ++k) {
    auto p = random_poly(P5, rng, 6, 1);
    auto pl = minval_poly(p, P5);
    for (std::size_t i = 1; i < pl.segments().size(); ++i) EXPECT_GT(pl.segments()[i - 1].slope, pl.segments()[i].slope);
    EXPECT_EQ(pl.canonical().segments().size(), pl.segments().size());
  }
}

TEST(Newton, GaussMultiplicativity) {
  Rng rng(9);
  TAdic<FiniteResidueField> t4{FiniteResidueField(GaloisField::get(2, 2))};
  for (int k = 0; k < 100; ++k) {
    auto a = random_poly(P5, rng, 4), b = random_poly(P5, rng, 4);
    EXPECT_EQ(minval_poly(a * b, P5), minval_poly(a, P5) + minval_poly(b, P5));
    auto c = random_poly(t4, rng, 3), d = random_poly(t4, rng, 3);
    EXPECT_EQ(minval_poly(c * d, t4), minval_poly(c, t4) + minval_poly(d, t4));
  }
}

TEST(Newton, LocalPolynomial) {
  const auto& F = GaloisField::get(5);
  auto lp1 = local_poly(poly("5+x"), Rational(1), P5);
  EXPECT_EQ(coeffs(lp1), (std::vector<GfElem>{GfElem(F, 0), GfElem(F, 1)}));
  auto lp5 = local_poly(poly("5+x"), Rational(5), P5);
  EXPECT_EQ(coeffs(lp5), (std::vector<GfElem>{GfElem(F, 1), GfElem(F, 1)}));
  auto sq = local_poly(poly("x^2"), Rational(7, 25), P5);
  EXPECT_EQ(sq.degree(), 2);
  EXPECT_EQ(sq.order(), 2);
}

TEST(Newton, LocalPolynomialSupportMatchesEnvelope) {
  Rng rng(13);
  for (int k = 0; k < 200; ++k) {
    auto f = random_poly(P5, rng, 5);
    Rational t = Rational(uniform_int(rng, 1, 4)) * power(Rational(5), uniform_int(rng, -2, 2));
    auto lp = local_poly(f, t, P5);
    auto g = P5.valuation(t).finite();
    Rational m = direct_min(f, 5, g[0]);
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
      bool attains = sgn(f.coeffs()[i]) != 0 &&
                     P5.valuation(f.coeffs()[i]).finite()[0] + Rational(static_cast<long>(i)) * g[0] == m;
      EXPECT_EQ(!is_zero(lp.coeff(i)), attains);
    }
    EXPECT_TRUE(lp.lead() == GfElem(GaloisField::get(5), 1));
  }
}

TEST(Newton, Prediction) {
  auto f = parse_function(P5, "5+x");
  auto p3 = predict(f, Rational(3), P5);
  EXPECT_EQ(p3.predicted, z(0));
  EXPECT_TRUE(p3.exact);
  EXPECT_EQ(P5.valuation(*f(Rational(3))).finite(), z(0));
  auto pm5 = predict(f, Rational(-5), P5);
  EXPECT_EQ(pm5.predicted, z(1));
  EXPECT_FALSE(pm5.exact);
  EXPECT_TRUE(P5.valuation(*f(Rational(-5))).is_infinite());
  auto pc = predict(parse_function(P5, "50"), Rational(7), P5);
  EXPECT_EQ(pc.predicted, z(2));
  EXPECT_TRUE(pc.exact);
  EXPECT_THROW(predict(f, Rational(0), P5), PreconditionError);
}

TEST(Newton, PredictionSoundnessOnSamples) {
  Rng rng(17);
  for (int k = 0; k < 1000; ++k) {
    auto f = random_poly(P5, rng, 4);
    Rational a = Rational(uniform_int(rng, -12, 12)) * power(Rational(5), uniform_int(rng, -2, 2));
    if (sgn(a) == 0) continue;
    auto pr = predict(RatFunc<Rational, VarX>(f), a, P5);
    auto v = P5.valuation(f(a));
    EXPECT_GE(v, ExtValue(pr.predicted));
    EXPECT_EQ(pr.exact, v == ExtValue(pr.predicted));
  }
}

TEST(Newton, Slopes) {
  auto s = slopes_check(parse_function(P5, "5+x"), Rational(5), P5);
  EXPECT_EQ(s.left, 1);
  EXPECT_EQ(s.right, 0);
  auto x = slopes_check(parse_function(P5, "x"), Rational(3, 25), P5);
  EXPECT_EQ(x.left, 1);
  EXPECT_EQ(x.right, 1);
  auto theta = build_theta(singular_preset({2, 3}, 6, 2));
  PAdicQ P2(2);
  auto pl = minval_rat(theta, P2);
  for (long t : {2, 4, 1, 3}) {
    auto sc = slopes_check(theta, Rational(t), P2);
    auto g = P2.valuation(Rational(t)).finite();
    EXPECT_EQ(sc.left, pl.slope_left(g));
    EXPECT_EQ(sc.right, pl.slope_right(g));
  }
}
