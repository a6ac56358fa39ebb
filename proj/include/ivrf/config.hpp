#pragma once

// Text specifications of valued fields and subfields, and dispatch from a
// specification to the concrete field policy.
//
//   field    := padic(p) | tadic(R) | hahn(R) | lex2(R)
//   R        := GF(q) | GF(q)(u)
//   subfield := whole | constants | GF(q') | GF(q)(u^k)     k = p^e

#include <regex>
#include <string>

#include "fields.hpp"

namespace ivrf {

struct ResidueSpec {
  unsigned q = 2;
  bool function = false;

  std::string str() const { return "GF(" + std::to_string(q) + ")" + (function ? "(u)" : ""); }
};

struct FieldSpec {
  enum class Kind { padic, tadic, hahn, lex2 };
  Kind kind = Kind::padic;
  unsigned p = 5;
  ResidueSpec residue;

  std::string str() const {
    switch (kind) {
      case Kind::padic: return "padic(" + std::to_string(p) + ")";
      case Kind::tadic: return "tadic(" + residue.str() + ")";
      case Kind::hahn: return "hahn(" + residue.str() + ")";
      default: return "lex2(" + residue.str() + ")";
    }
  }
};

namespace detail {

inline std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (c != ' ') out += c;
  return out;
}

inline unsigned checked_prime_power(const std::string& digits, const std::string& what) {
  unsigned long q = std::stoul(digits);
  if (q < 2 || q > 1u << 16) throw ParseError(what + ": field order out of range");
  GaloisField::of_order(static_cast<unsigned>(q));  // validates prime powers
  return static_cast<unsigned>(q);
}

}  // namespace detail

inline ResidueSpec parse_residue_spec(const std::string& text) {
  static const std::regex re(R"(GF\((\d+)\)(\(u\))?)");
  std::smatch m;
  std::string s = detail::strip_spaces(text);
  if (!std::regex_match(s, m, re)) throw ParseError("malformed residue field '" + text + "'");
  try {
    return {detail::checked_prime_power(m[1], text), m[2].matched};
  } catch (const StructuralError& e) {
    throw ParseError("residue field '" + text + "': " + e.what());
  }
}

inline FieldSpec parse_field_spec(const std::string& text) {
  static const std::regex re(R"((padic|tadic|hahn|lex2)\((.*)\))");
  std::smatch m;
  std::string s = detail::strip_spaces(text);
  if (!std::regex_match(s, m, re)) throw ParseError("malformed field '" + text + "'");
  FieldSpec f;
  const std::string kind = m[1], arg = m[2];
  if (kind == "padic") {
    f.kind = FieldSpec::Kind::padic;
    if (!std::regex_match(arg, std::regex(R"(\d+)"))) throw ParseError("padic needs a prime, got '" + arg + "'");
    f.p = static_cast<unsigned>(std::stoul(arg));
    if (f.p < 2 || f.p > 1u << 16) throw ParseError("padic prime out of range");
    for (unsigned d = 2; d * d <= f.p; ++d)
      if (f.p % d == 0) throw ParseError("padic needs a prime, got " + arg);
    f.residue = {f.p, false};
    return f;
  }
  f.kind = kind == "tadic" ? FieldSpec::Kind::tadic : kind == "hahn" ? FieldSpec::Kind::hahn : FieldSpec::Kind::lex2;
  f.residue = parse_residue_spec(arg);
  return f;
}

inline const GaloisField& base_field(const ResidueSpec& r) {
  // In GF(q)(u) the variable is u, so a non-prime constant field uses a.
  return GaloisField::of_order(r.q, r.function ? "a" : "u");
}

inline Subfield parse_subfield(const std::string& text, const ResidueSpec& r) {
  std::string s = detail::strip_spaces(text);
  if (s.empty() || s == "whole") return Subfield::whole();
  if (s == "constants") {
    if (!r.function) throw ParseError("'constants' needs a residue field GF(q)(u)");
    return Subfield::constants();
  }
  std::smatch m;
  static const std::regex finite(R"(GF\((\d+)\))");
  static const std::regex frob(R"(GF\((\d+)\)\(u\^(\d+)\))");
  const auto& base = base_field(r);
  if (std::regex_match(s, m, finite)) {
    unsigned q = detail::checked_prime_power(m[1], text);
    if (r.function) {
      if (q != r.q) throw ParseError("subfields of GF(q)(u) given by order must be the constants GF(" + std::to_string(r.q) + ")");
      return Subfield::constants();
    }
    unsigned d = 0;
    for (unsigned x = 1; x < q; x *= base.characteristic()) ++d;
    if (GaloisField::of_order(q).characteristic() != base.characteristic() || base.degree() % d != 0)
      throw ParseError(text + " is not a subfield of " + r.str());
    return d == base.degree() ? Subfield::whole() : Subfield::finite_subfield(d);
  }
  if (std::regex_match(s, m, frob)) {
    if (!r.function) throw ParseError(text + " needs a residue field GF(q)(u)");
    if (std::stoul(m[1]) != r.q) throw ParseError(text + ": constants must be GF(" + std::to_string(r.q) + ")");
    unsigned long k = std::stoul(m[2]);
    unsigned e = 0;
    while (k > 1 && k % base.characteristic() == 0) {
      k /= base.characteristic();
      ++e;
    }
    if (k != 1 || e == 0) throw ParseError(text + ": the exponent of u must be a positive power of the characteristic");
    return Subfield::frobenius(e);
  }
  throw ParseError("malformed subfield '" + text + "'");
}

// Calls fn with the concrete policy described by the spec.
template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.kind == FieldSpec::Kind::padic) return fn(PAdicQ(spec.p));
  const auto& base = base_field(spec.residue);
  auto go = [&](auto residue) -> decltype(auto) {
    using R = decltype(residue);
    switch (spec.kind) {
      case FieldSpec::Kind::tadic: return fn(TAdic<R>(residue));
      case FieldSpec::Kind::hahn: return fn(Hahn<R>(residue));
      default: return fn(LexRank2<R>(residue));
    }
  };
  if (spec.residue.function) return go(FunctionResidueField(base));
  return go(FiniteResidueField(base));
}

}  // namespace ivrf
