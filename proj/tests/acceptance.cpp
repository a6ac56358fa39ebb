// One PASS/FAIL line per acceptance criterion; exits non-zero on any failure.

#include <chrono>
#include <cstdio>

#include <ivrf/suites.hpp>

using namespace ivrf;

namespace {

struct Criterion {
  int id;
  const char* title;
  const char* suite;
  double limit_seconds;
};

const Criterion kCriteria[] = {
    {1, "envelope oracle", "envelope", 5},
    {2, "Gauss multiplicativity", "gauss", 10},
    {3, "prediction soundness", "predict", 30},
    {4, "slope extraction", "slopes", 5},
    {5, "psi identity and valuation table", "psi-identity", 10},
    {6, "theta case table", "theta", 30},
    {7, "rho minimum and characteristic sets", "rho", 20},
    {8, "not-local witnesses", "witnesses", 20},
    {9, "locality dichotomy", "dichotomy", 30},
    {10, "M* ideal and primality axioms", "mstar", 10},
    {11, "field-map scan", "fieldmaps", 10},
};

}  // namespace

int main() {
  int failed = 0;
  for (const auto& c : kCriteria) {
    SuiteConfig cfg;
    SuiteReport rep;
    std::string error;
    auto t0 = std::chrono::steady_clock::now();
    try {
      rep = find_suite(c.suite)->run(cfg);
    } catch (const std::exception& e) {
      error = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = error.empty() && rep.checks > 0 && rep.passed() && secs < c.limit_seconds;
    if (!ok) ++failed;
    std::printf("%s [%2d] %-38s checks=%zu violations=%zu time=%.2fs limit=%.0fs%s%s\n", ok ? "PASS" : "FAIL", c.id,
                c.title, rep.checks, rep.violations, secs, c.limit_seconds, error.empty() ? "" : " error: ",
                error.c_str());
    for (const auto& e : rep.examples) std::printf("       %s\n", e.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(kCriteria)) - failed, std::size(kCriteria));
  return failed == 0 ? 0 : 1;
}
