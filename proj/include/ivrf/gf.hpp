#pragma once

// Finite fields GF(p^k) with Zech-free log/antilog tables.
//
// Elements are indices 0..q-1 whose base-p digits are the coefficients of a
// polynomial in the generator (the root of the first primitive polynomial in
// lexicographic coefficient order). A GfElem without a field pointer is an
// integer constant n*1 waiting to meet an element that knows its field; this
// lets generic code write K(0) and K(1).

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "core.hpp"

namespace ivrf {

class GaloisField {
 public:
  // Registry lookup; instances live for the program's duration.
  static const GaloisField& get(unsigned p, unsigned k = 1, const std::string& symbol = "u") {
    static std::mutex mu;
    static std::map<std::tuple<unsigned, unsigned, std::string>, std::unique_ptr<GaloisField>> registry;
    std::lock_guard lock(mu);
    auto key = std::make_tuple(p, k, symbol);
    auto it = registry.find(key);
    if (it == registry.end()) it = registry.emplace(key, std::unique_ptr<GaloisField>(new GaloisField(p, k, symbol))).first;
    return *it->second;
  }
  // GF(q) for a prime power q.
  static const GaloisField& of_order(unsigned q, const std::string& symbol = "u") {
    for (unsigned p = 2; p <= q; ++p) {
      if (q % p) continue;
      unsigned k = 0, r = q;
      while (r % p == 0) r /= p, ++k;
      if (r != 1) break;
      return get(p, k, symbol);
    }
    throw StructuralError("field order must be a prime power: " + std::to_string(q));
  }

  unsigned characteristic() const { return p_; }
  unsigned degree() const { return k_; }
  unsigned order() const { return q_; }
  const std::string& symbol() const { return symbol_; }
  // Coefficients c_0..c_{k-1} of the defining primitive polynomial x^k + ... + c_0.
  const std::vector<unsigned>& modulus() const { return modulus_; }

  unsigned add(unsigned a, unsigned b) const {
    if (k_ == 1) return (a + b) % p_;
    unsigned r = 0, place = 1;
    for (unsigned i = 0; i < k_; ++i) {
      r += ((a % p_ + b % p_) % p_) * place;
      a /= p_, b /= p_, place *= p_;
    }
    return r;
  }
  unsigned neg(unsigned a) const {
    if (k_ == 1) return (p_ - a) % p_;
    unsigned r = 0, place = 1;
    for (unsigned i = 0; i < k_; ++i) {
      r += ((p_ - a % p_) % p_) * place;
      a /= p_, place *= p_;
    }
    return r;
  }
  unsigned mul(unsigned a, unsigned b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (q_ - 1)];
  }
  unsigned inv(unsigned a) const {
    if (a == 0) throw StructuralError("division by zero in GF(" + std::to_string(q_) + ")");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }
  unsigned from_int(std::int64_t n) const {
    auto r = n % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<unsigned>(r);
  }
  unsigned generator() const { return k_ == 1 ? exp_[1] : p_; }

  std::string format(unsigned a) const {
    if (k_ == 1) return std::to_string(a);
    if (a == 0) return "0";
    std::string s;
    std::vector<unsigned> digits;
    for (unsigned i = 0, r = a; i < k_; ++i, r /= p_) digits.push_back(r % p_);
    for (int i = static_cast<int>(k_) - 1; i >= 0; --i) {
      unsigned c = digits[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      if (!s.empty()) s += "+";
      if (i == 0) {
        s += std::to_string(c);
        continue;
      }
      if (c != 1) s += std::to_string(c) + "*";
      s += symbol_;
      if (i > 1) s += "^" + std::to_string(i);
    }
    return s;
  }

 private:
  GaloisField(unsigned p, unsigned k, std::string symbol) : p_(p), k_(k), symbol_(std::move(symbol)) {
    if (p < 2 || k < 1) throw StructuralError("invalid finite field parameters");
    for (unsigned d = 2; d * d <= p; ++d)
      if (p % d == 0) throw StructuralError("characteristic must be prime: " + std::to_string(p));
    q_ = 1;
    for (unsigned i = 0; i < k; ++i) q_ *= p;
    if (q_ > (1u << 16)) throw ResourceError("finite field too large");
    if (k == 1) {
      build_prime();
    } else {
      build_extension();
    }
  }

  void build_prime() {
    log_.assign(q_, 0);
    exp_.assign(q_, 0);
    modulus_ = {};
    for (unsigned g = 1; g < q_; ++g) {
      unsigned x = 1, order = 0;
      do {
        x = (x * g) % p_;
        ++order;
      } while (x != 1);
      if (order == q_ - 1 || q_ == 2) {
        x = 1;
        for (unsigned i = 0; i < q_ - 1; ++i) {
          exp_[i] = x;
          log_[x] = i;
          x = (x * g) % p_;
        }
        exp_[q_ - 1] = 1;
        return;
      }
    }
  }

  // Multiply a (as polynomial) by the generator, reducing by the candidate modulus.
  unsigned times_x(unsigned a, const std::vector<unsigned>& mod) const {
    std::vector<unsigned> d(k_ + 1, 0);
    for (unsigned i = 0; i < k_; ++i, a /= p_) d[i + 1] = a % p_;
    unsigned top = d[k_];
    for (unsigned i = 0; i < k_; ++i) d[i] = (d[i] + (p_ - (top * mod[i]) % p_)) % p_;
    unsigned r = 0;
    for (int i = static_cast<int>(k_) - 1; i >= 0; --i) r = r * p_ + d[static_cast<std::size_t>(i)];
    return r;
  }

  void build_extension() {
    for (unsigned idx = 0; idx < q_; ++idx) {
      std::vector<unsigned> mod(k_);
      for (unsigned i = 0, r = idx; i < k_; ++i, r /= p_) mod[i] = r % p_;
      if (mod[0] == 0) continue;
      std::vector<unsigned> exp(q_, 0);
      unsigned x = 1, n = 0;
      bool primitive = true;
      do {
        exp[n++] = x;
        x = times_x(x, mod);
        if (x == 1 && n < q_ - 1) primitive = false;
      } while (primitive && n < q_ - 1);
      if (!primitive || x != 1) continue;
      modulus_ = mod;
      exp_ = exp;
      exp_[q_ - 1] = 1;
      log_.assign(q_, 0);
      for (unsigned i = 0; i < q_ - 1; ++i) log_[exp_[i]] = i;
      return;
    }
    throw StructuralError("no primitive polynomial found");
  }

  unsigned p_, k_, q_ = 0;
  std::string symbol_;
  std::vector<unsigned> modulus_;
  std::vector<unsigned> exp_, log_;
};

class GfElem {
 public:
  GfElem() = default;
  GfElem(int n) : value_(n) {}  // NOLINT: integer constants embed in every field
  GfElem(const GaloisField& f, unsigned index) : field_(&f), value_(index) {}

  const GaloisField* field() const { return field_; }
  unsigned index() const {
    if (!field_) throw StructuralError("field element without a field");
    return static_cast<unsigned>(value_);
  }

  friend GfElem operator+(const GfElem& a, const GfElem& b) {
    auto [f, x, y] = align(a, b);
    if (!f) {
      // Without a field only 0 and +-1 have a meaning in every characteristic.
      if (x + y < -1 || x + y > 1) throw StructuralError("sum of field-free constants needs a field");
      return GfElem(static_cast<int>(x + y));
    }
    return GfElem(*f, f->add(static_cast<unsigned>(x), static_cast<unsigned>(y)));
  }
  friend GfElem operator-(const GfElem& a, const GfElem& b) { return a + (-b); }
  GfElem operator-() const {
    if (!field_) return GfElem(static_cast<int>(-value_));
    return GfElem(*field_, field_->neg(static_cast<unsigned>(value_)));
  }
  friend GfElem operator*(const GfElem& a, const GfElem& b) {
    auto [f, x, y] = align(a, b);
    if (!f) return GfElem(static_cast<int>(x * y));
    return GfElem(*f, f->mul(static_cast<unsigned>(x), static_cast<unsigned>(y)));
  }
  friend GfElem operator/(const GfElem& a, const GfElem& b) {
    auto [f, x, y] = align(a, b);
    if (!f) {
      if (y != 1 && y != -1) throw StructuralError("division of field-free constants");
      return GfElem(static_cast<int>(x * y));
    }
    return GfElem(*f, f->mul(static_cast<unsigned>(x), f->inv(static_cast<unsigned>(y))));
  }
  friend bool operator==(const GfElem& a, const GfElem& b) {
    auto [f, x, y] = align(a, b);
    return x == y;
  }
  // Deterministic total order by index (fields must agree).
  friend bool operator<(const GfElem& a, const GfElem& b) {
    auto [f, x, y] = align(a, b);
    return x < y;
  }

  friend std::string to_str(const GfElem& a) {
    if (!a.field_) return std::to_string(a.value_);
    return a.field_->format(static_cast<unsigned>(a.value_));
  }

 private:
  static std::tuple<const GaloisField*, std::int64_t, std::int64_t> align(const GfElem& a, const GfElem& b) {
    if (a.field_ && b.field_ && a.field_ != b.field_) throw StructuralError("finite field mismatch");
    const GaloisField* f = a.field_ ? a.field_ : b.field_;
    if (!f) return {nullptr, a.value_, b.value_};
    auto conv = [&](const GfElem& e) -> std::int64_t { return e.field_ ? e.value_ : f->from_int(e.value_); };
    return {f, conv(a), conv(b)};
  }

  const GaloisField* field_ = nullptr;
  std::int64_t value_ = 0;
};

inline std::vector<GfElem> elements(const GaloisField& f) {
  std::vector<GfElem> out;
  out.reserve(f.order());
  for (unsigned i = 0; i < f.order(); ++i) out.emplace_back(f, i);
  return out;
}

inline GfElem generator(const GaloisField& f) { return GfElem(f, f.generator()); }

}  // namespace ivrf
