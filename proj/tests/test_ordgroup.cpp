#include <gtest/gtest.h>

#include <ivrf/ordgroup.hpp>

using namespace ivrf;

namespace {

GroupElement z2(long a, long b) { return GroupElement(GroupSpec::integers(2), {Rational(a), Rational(b)}); }
GroupElement q1(long n, long d) { return GroupElement::scalar(GroupSpec::rationals(), Rational(n, d)); }

}  // namespace

TEST(OrdGroup, LexicographicOrder) {
  EXPECT_LT(z2(0, 5), z2(1, -100));
  EXPECT_LT(z2(1, -1), z2(1, 0));
  EXPECT_EQ(z2(2, 3), z2(2, 3));
  EXPECT_EQ(z2(0, 1).sign(), 1);
  EXPECT_EQ(z2(-1, 7).sign(), -1);
  EXPECT_TRUE(z2(0, 0).is_zero());
}

TEST(OrdGroup, OrderMatchesPairComparison) {
  for (long a = -2; a <= 2; ++a)
    for (long b = -2; b <= 2; ++b)
      for (long c = -2; c <= 2; ++c)
        for (long d = -2; d <= 2; ++d) {
          bool expect = std::pair(a, b) < std::pair(c, d);
          EXPECT_EQ(z2(a, b) < z2(c, d), expect);
        }
}

TEST(OrdGroup, Arithmetic) {
  EXPECT_EQ(z2(1, 2) + z2(3, -5), z2(4, -3));
  EXPECT_EQ(z2(1, 2) - z2(3, -5), z2(-2, 7));
  EXPECT_EQ(-z2(1, -2), z2(-1, 2));
  EXPECT_EQ(q1(1, 2).scale(Rational(2, 3)), q1(1, 3));
  EXPECT_EQ(q1(1, 3) + q1(1, 6), q1(1, 2));
}

TEST(OrdGroup, OrderIsTranslationInvariant) {
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b) {
      auto x = z2(a, b), y = z2(b, a), s = z2(2, -7);
      EXPECT_EQ(x < y, x + s < y + s);
    }
}

TEST(OrdGroup, MismatchedGroupsThrow) {
  EXPECT_THROW(z2(1, 1) + q1(1, 1), StructuralError);
  EXPECT_THROW(GroupElement(GroupSpec::integers(2), {Rational(1)}), StructuralError);
}

TEST(OrdGroup, Lattice) {
  EXPECT_TRUE(z2(3, -1).in_lattice());
  EXPECT_FALSE(GroupElement(GroupSpec::integers(1), {Rational(1, 2)}).in_lattice());
  EXPECT_TRUE(q1(1, 7).in_lattice());
  EXPECT_TRUE(GroupSpec::rationals().divisible());
  EXPECT_FALSE(GroupSpec::integers(2).divisible());
}

TEST(OrdGroup, ExtValue) {
  ExtValue inf;
  ExtValue one(q1(1, 1));
  EXPECT_TRUE(inf.is_infinite());
  EXPECT_LT(one, inf);
  EXPECT_EQ(inf + one, inf);
  EXPECT_EQ(one + one, ExtValue(q1(2, 1)));
  EXPECT_EQ(inf.str(), "inf");
  EXPECT_EQ(z2(1, -2).str(), "(1,-2)");
}

TEST(OrdGroup, LatticePointInOpenInterval) {
  const auto& z = GroupSpec::integers(1);
  auto g = [&](long n, long d = 1) { return GroupElement::scalar(z, Rational(n, d)); };
  auto p = lattice_point_in(z, Bound{g(1, 2)}, Bound{g(5, 2)});
  ASSERT_TRUE(p);
  EXPECT_TRUE(p->in_lattice());
  EXPECT_GT(*p, g(1, 2));
  EXPECT_LT(*p, g(5, 2));
  EXPECT_FALSE(lattice_point_in(z, Bound{g(1)}, Bound{g(2)}));
  auto closed = lattice_point_in(z, Bound{g(1), true}, Bound{g(2)});
  ASSERT_TRUE(closed);
  EXPECT_EQ(*closed, g(1));
  auto unbounded = lattice_point_in(z, std::nullopt, Bound{g(-7, 2)});
  ASSERT_TRUE(unbounded);
  EXPECT_LT(*unbounded, g(-7, 2));
}

TEST(OrdGroup, LatticePointRankTwo) {
  const auto& z = GroupSpec::integers(2);
  auto p = lattice_point_in(z, Bound{z2(1, 5)}, Bound{z2(1, 7)});
  ASSERT_TRUE(p);
  EXPECT_EQ(*p, z2(1, 6));
  auto q = lattice_point_in(z, Bound{z2(0, 100)}, Bound{z2(1, -100)});
  ASSERT_TRUE(q);
  EXPECT_GT(*q, z2(0, 100));
  EXPECT_LT(*q, z2(1, -100));
  EXPECT_FALSE(lattice_point_in(z, Bound{z2(1, 5)}, Bound{z2(1, 6)}));
}

TEST(OrdGroup, LatticePointDivisible) {
  const auto& q = GroupSpec::rationals();
  auto p = lattice_point_in(q, Bound{q1(1, 3)}, Bound{q1(1, 2)});
  ASSERT_TRUE(p);
  EXPECT_GT(*p, q1(1, 3));
  EXPECT_LT(*p, q1(1, 2));
}
