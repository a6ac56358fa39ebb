#pragma once

// Lexicographically ordered value groups Z^k (and Q as a rank-1 divisible
// group), their divisible hulls, and the extended value set Gamma u {inf}.

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"

namespace ivrf {

enum class Lattice { integral, divisible };

class GroupSpec {
 public:
  GroupSpec(std::vector<Lattice> lattice, std::string name)
      : lattice_(std::move(lattice)), name_(std::move(name)) {
    if (lattice_.empty()) throw StructuralError("group rank must be at least 1");
  }

  // Shared instances: elements compare groups by address.
  static const GroupSpec& integers(std::size_t rank = 1) {
    static const GroupSpec z1({Lattice::integral}, "Z");
    static const GroupSpec z2({Lattice::integral, Lattice::integral}, "Z^2");
    static const GroupSpec z3({Lattice::integral, Lattice::integral, Lattice::integral}, "Z^3");
    switch (rank) {
      case 1: return z1;
      case 2: return z2;
      case 3: return z3;
      default: throw StructuralError("unsupported lexicographic rank");
    }
  }
  static const GroupSpec& rationals() {
    static const GroupSpec q({Lattice::divisible}, "Q");
    return q;
  }

  std::size_t rank() const { return lattice_.size(); }
  Lattice lattice(std::size_t i) const { return lattice_[i]; }
  const std::string& name() const { return name_; }
  bool divisible() const {
    for (auto l : lattice_)
      if (l != Lattice::divisible) return false;
    return true;
  }

 private:
  std::vector<Lattice> lattice_;
  std::string name_;
};

class GroupElement {
 public:
  GroupElement() = default;
  GroupElement(const GroupSpec& g, std::vector<Rational> coords) : group_(&g), coords_(std::move(coords)) {
    if (coords_.size() != g.rank()) throw StructuralError("coordinate count does not match group rank");
  }
  static GroupElement zero(const GroupSpec& g) { return GroupElement(g, std::vector<Rational>(g.rank())); }
  // The rank-1 element (q), or (q, 0, ..., 0) in higher rank.
  static GroupElement scalar(const GroupSpec& g, const Rational& q) {
    std::vector<Rational> c(g.rank());
    c[0] = q;
    return GroupElement(g, std::move(c));
  }

  const GroupSpec& group() const { return *group_; }
  bool valid() const { return group_ != nullptr; }
  const std::vector<Rational>& coords() const { return coords_; }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }

  bool in_lattice() const {
    for (std::size_t i = 0; i < coords_.size(); ++i)
      if (group_->lattice(i) == Lattice::integral && !is_integral(coords_[i])) return false;
    return true;
  }
  bool is_zero() const {
    for (const auto& c : coords_)
      if (sgn(c) != 0) return false;
    return true;
  }
  int sign() const {
    for (const auto& c : coords_)
      if (int s = sgn(c); s != 0) return s;
    return 0;
  }

  friend GroupElement operator+(const GroupElement& a, const GroupElement& b) {
    check_same(a, b);
    GroupElement r = a;
    for (std::size_t i = 0; i < r.coords_.size(); ++i) r.coords_[i] += b.coords_[i];
    return r;
  }
  friend GroupElement operator-(const GroupElement& a, const GroupElement& b) {
    check_same(a, b);
    GroupElement r = a;
    for (std::size_t i = 0; i < r.coords_.size(); ++i) r.coords_[i] -= b.coords_[i];
    return r;
  }
  GroupElement operator-() const {
    GroupElement r = *this;
    for (auto& c : r.coords_) c = -c;
    return r;
  }
  GroupElement scale(const Rational& q) const {
    GroupElement r = *this;
    for (auto& c : r.coords_) c *= q;
    return r;
  }

  friend std::strong_ordering cmp(const GroupElement& a, const GroupElement& b) {
    check_same(a, b);
    for (std::size_t i = 0; i < a.coords_.size(); ++i) {
      int c = ::cmp(a.coords_[i], b.coords_[i]);
      if (c < 0) return std::strong_ordering::less;
      if (c > 0) return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }
  friend std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b) { return cmp(a, b); }
  friend bool operator==(const GroupElement& a, const GroupElement& b) { return cmp(a, b) == 0; }

  std::vector<std::string> to_strings() const {
    std::vector<std::string> out;
    for (const auto& c : coords_) out.push_back(to_str(c));
    return out;
  }
  std::string str() const {
    if (coords_.size() == 1) return to_str(coords_[0]);
    std::string s = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) s += (i ? "," : "") + to_str(coords_[i]);
    return s + ")";
  }

 private:
  static void check_same(const GroupElement& a, const GroupElement& b) {
    if (a.group_ != b.group_) throw StructuralError("group mismatch");
  }

  const GroupSpec* group_ = nullptr;
  std::vector<Rational> coords_;
};

inline GroupElement add(const GroupElement& a, const GroupElement& b) { return a + b; }
inline GroupElement scale(const GroupElement& a, const Rational& q) { return a.scale(q); }

// Gamma u {inf}; the valuation of zero is the infinite value.
class ExtValue {
 public:
  ExtValue() = default;  // infinity
  ExtValue(GroupElement g) : value_(std::move(g)) {}
  static ExtValue infinity() { return ExtValue(); }

  bool is_infinite() const { return !value_.has_value(); }
  const GroupElement& finite() const {
    if (!value_) throw PreconditionError("valuation is infinite");
    return *value_;
  }

  friend std::strong_ordering operator<=>(const ExtValue& a, const ExtValue& b) {
    if (a.is_infinite() || b.is_infinite()) return a.is_infinite() <=> b.is_infinite();
    return *a.value_ <=> *b.value_;
  }
  friend bool operator==(const ExtValue& a, const ExtValue& b) { return (a <=> b) == 0; }
  friend std::strong_ordering operator<=>(const ExtValue& a, const GroupElement& b) {
    if (a.is_infinite()) return std::strong_ordering::greater;
    return *a.value_ <=> b;
  }
  friend bool operator==(const ExtValue& a, const GroupElement& b) { return !a.is_infinite() && *a.value_ == b; }

  friend ExtValue operator+(const ExtValue& a, const ExtValue& b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return ExtValue(*a.value_ + *b.value_);
  }
  std::string str() const { return value_ ? value_->str() : "inf"; }

 private:
  std::optional<GroupElement> value_;
};

// A lattice point of the group strictly/weakly inside (lo, hi); absent bounds are infinite.
struct Bound {
  GroupElement at;
  bool closed = false;
};

namespace detail {

inline std::optional<std::vector<Rational>> lattice_point(const GroupSpec& g, std::size_t k,
                                                          const std::optional<Bound>& lo,
                                                          const std::optional<Bound>& hi) {
  const std::size_t rank = g.rank();
  if (k == rank) {
    // Only the empty tail remains; it equals both tails.
    if ((lo && !lo->closed) || (hi && !hi->closed)) return std::nullopt;
    return std::vector<Rational>{};
  }
  auto tail_zero = [&](Rational first) {
    std::vector<Rational> v(rank - k);
    v[0] = std::move(first);
    return v;
  };
  auto prepend = [](Rational first, std::vector<Rational> rest) {
    rest.insert(rest.begin(), std::move(first));
    return rest;
  };
  const bool integral = g.lattice(k) == Lattice::integral;
  if (!lo && !hi) return tail_zero(Rational(0));
  if (!lo) {
    const Rational& h = hi->at[k];
    if (integral) return tail_zero(Rational(ceil_of(h) - 1));
    return tail_zero(h - 1);
  }
  if (!hi) {
    const Rational& l = lo->at[k];
    if (integral) return tail_zero(Rational(floor_of(l) + 1));
    return tail_zero(l + 1);
  }
  const Rational& l = lo->at[k];
  const Rational& h = hi->at[k];
  if (l > h) return std::nullopt;
  auto sub_bound = [&](const Bound& b) {
    std::vector<Rational> rest(b.at.coords().begin() + static_cast<long>(k) + 1, b.at.coords().end());
    std::vector<Rational> full(k + 1);
    full.insert(full.end(), rest.begin(), rest.end());
    return Bound{GroupElement(g, full), b.closed};
  };
  if (l == h) {
    if (integral && !is_integral(l)) return std::nullopt;
    auto rest = lattice_point(g, k + 1, sub_bound(*lo), sub_bound(*hi));
    if (!rest) return std::nullopt;
    return prepend(l, std::move(*rest));
  }
  if (!integral) return tail_zero((l + h) / 2);
  Integer m = floor_of(l) + 1;
  if (Rational(m) < h) return tail_zero(Rational(m));
  if (is_integral(l)) {
    if (auto rest = lattice_point(g, k + 1, sub_bound(*lo), std::nullopt)) return prepend(l, std::move(*rest));
  }
  if (is_integral(h)) {
    if (auto rest = lattice_point(g, k + 1, std::nullopt, sub_bound(*hi))) return prepend(h, std::move(*rest));
  }
  return std::nullopt;
}

}  // namespace detail

inline std::optional<GroupElement> lattice_point_in(const GroupSpec& g, const std::optional<Bound>& lo,
                                                    const std::optional<Bound>& hi) {
  if (lo && hi) {
    auto c = lo->at <=> hi->at;
    if (c > 0 || (c == 0 && !(lo->closed && hi->closed))) return std::nullopt;
  }
  auto coords = detail::lattice_point(g, 0, lo, hi);
  if (!coords) return std::nullopt;
  return GroupElement(g, std::move(*coords));
}

}  // namespace ivrf
