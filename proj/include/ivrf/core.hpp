#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace ivrf {

using Integer = mpz_class;
using Rational = mpq_class;

// Error taxonomy. Every failure the library reports is one of these.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Malformed objects: zero denominators, group mismatches, invariant breaks.
struct StructuralError : Error {
  using Error::Error;
};
// Caller violated an operation's precondition.
struct PreconditionError : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};
// A requested enumeration exceeds the configured bounds.
struct ResourceError : Error {
  using Error::Error;
};
// A construction was asked for a case it does not cover.
struct UnsupportedCase : Error {
  using Error::Error;
};

using Rng = std::mt19937_64;

// Platform-independent draws; std distributions differ between standard libraries.
inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(rng() % span);
}

inline bool coin(Rng& rng, unsigned num = 1, unsigned den = 2) {
  return rng() % den < num;
}

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }

template <class K>
bool is_zero(const K& x) {
  return x == K(0);
}

inline std::string to_str(const Integer& z) { return z.get_str(); }
inline std::string to_str(const Rational& q) { return q.get_str(); }

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw StructuralError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

// x^e for e >= 0 in any ring with K(1); negative exponents use field inversion.
template <class K>
K power(const K& x, long e) {
  if (e < 0) return K(1) / power(x, -e);
  K result(1);
  K base = x;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

inline Rational power(const Rational& x, long e) {
  if (e < 0) return Rational(1) / power(x, -e);
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), static_cast<unsigned long>(e));
  r.canonicalize();
  return r;
}

}  // namespace ivrf
