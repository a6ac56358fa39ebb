#include <gtest/gtest.h>

#include <algorithm>

#include <ivrf/report.hpp>
#include <ivrf/suites.hpp>

using namespace ivrf;

class SuiteRun : public ::testing::TestWithParam<std::string> {};

TEST_P(SuiteRun, SmallSamplesPassForSeveralSeeds) {
  const auto* s = find_suite(GetParam());
  ASSERT_NE(s, nullptr);
  for (std::uint64_t seed : {1, 2, 3}) {
    SuiteConfig c;
    c.seed = seed;
    c.samples = 20;
    auto r = s->run(c);
    EXPECT_GT(r.checks, 0u);
    EXPECT_TRUE(r.passed()) << GetParam() << " seed " << seed << ": " << (r.examples.empty() ? "" : r.examples.front());
  }
}

TEST_P(SuiteRun, SameSeedSameReport) {
  const auto* s = find_suite(GetParam());
  SuiteConfig c;
  c.seed = 42;
  c.samples = 10;
  EXPECT_EQ(to_json(s->run(c)).dump(), to_json(s->run(c)).dump());
}

INSTANTIATE_TEST_SUITE_P(All, SuiteRun,
                         ::testing::Values("envelope", "gauss", "predict", "slopes", "psi-identity", "theta", "rho",
                                           "mstar", "witnesses", "dichotomy", "fieldmaps"),
                         [](const auto& info) {
                           std::string n = info.param;
                           std::replace(n.begin(), n.end(), '-', '_');
                           return n;
                         });

TEST(Suites, RegistryIsComplete) {
  EXPECT_EQ(suites().size(), 11u);
  EXPECT_EQ(find_suite("nope"), nullptr);
}

TEST(Suites, SeedChangesSamples) {
  SuiteConfig a, b;
  a.samples = b.samples = 30;
  b.seed = 9;
  a.samples = b.samples = 200;
  EXPECT_NE(to_json(suite_predict(a)).dump(), to_json(suite_predict(b)).dump());
}

TEST(Suites, PredictionSuiteSeesBothOutcomes) {
  SuiteConfig c;
  c.samples = 500;
  auto r = suite_predict(c);
  EXPECT_TRUE(r.passed());
  EXPECT_GT(r.tally["local polynomial nonzero"], 0u);
  EXPECT_GT(r.tally["local polynomial vanishes"], 0u);
}

TEST(Suites, DichotomyCorpusMembersAreCertified) {
  auto corpus = dichotomy_corpus(12, 5);
  ASSERT_EQ(corpus.members.size(), 12u);
  auto d = DomainSpec<DichotomyCorpus::VF>::pvd(corpus.pvd, ESet::whole_field);
  for (const auto& phi : corpus.members) {
    EXPECT_TRUE(intr_member(phi, d).in()) << to_str(phi);
    EXPECT_NE(dichotomy_check(phi, corpus.pvd), Dichotomy::violation) << to_str(phi);
  }
}

TEST(Report, JsonShapes) {
  auto j = envelope("minval", to_json(minval_poly(Poly<Rational, VarX>(std::vector<Rational>{5, 1}), PAdicQ(5))));
  EXPECT_EQ(j["schema"], "ivrf/1");
  EXPECT_EQ(j["result"]["breakpoints"], Json::array({Json::array({"1"})}));
  EXPECT_EQ(j["result"]["segments"][0]["from"], "-inf");
  EXPECT_EQ(j["result"]["segments"][1]["to"], "inf");
  EXPECT_EQ(to_json(ExtValue()), "inf");
}
