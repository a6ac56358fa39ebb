#pragma once

// Minimum valuation functions and local polynomials.
//
// For f = sum a_i x^i the minimum valuation function is the lower envelope
// gamma -> min_i (v(a_i) + i*gamma) over Q(Gamma); for f/g it is the
// difference of the two envelopes. Both are stored as piecewise-linear
// functions with integer slopes.

#include <algorithm>
#include <utility>
#include <vector>

#include "fields.hpp"

namespace ivrf {

struct Segment {
  long slope = 0;
  GroupElement intercept;

  GroupElement at(const GroupElement& g) const { return intercept + g.scale(Rational(slope)); }
  friend bool operator==(const Segment& a, const Segment& b) {
    return a.slope == b.slope && a.intercept == b.intercept;
  }
};

class PiecewiseLinear {
 public:
  PiecewiseLinear() = default;
  // segments.size() == breakpoints.size() + 1; segment i lives on [b_{i-1}, b_i].
  PiecewiseLinear(std::vector<Segment> segments, std::vector<GroupElement> breakpoints)
      : segs_(std::move(segments)), breaks_(std::move(breakpoints)) {
    if (segs_.empty() || segs_.size() != breaks_.size() + 1) throw StructuralError("malformed piecewise-linear function");
    for (std::size_t i = 1; i < breaks_.size(); ++i)
      if (!(breaks_[i - 1] < breaks_[i])) throw StructuralError("breakpoints must increase strictly");
    for (std::size_t i = 0; i < breaks_.size(); ++i)
      if (segs_[i].at(breaks_[i]) != segs_[i + 1].at(breaks_[i])) throw StructuralError("discontinuous piecewise-linear function");
  }
  static PiecewiseLinear constant(const GroupElement& c) { return PiecewiseLinear({Segment{0, c}}, {}); }

  const std::vector<Segment>& segments() const { return segs_; }
  const std::vector<GroupElement>& breakpoints() const { return breaks_; }
  const GroupSpec& group() const { return segs_.front().intercept.group(); }

  GroupElement eval(const GroupElement& g) const { return segs_[index_left(g)].at(g); }
  GroupElement operator()(const GroupElement& g) const { return eval(g); }
  long slope_left(const GroupElement& g) const { return segs_[index_left(g)].slope; }
  long slope_right(const GroupElement& g) const {
    return segs_[static_cast<std::size_t>(std::upper_bound(breaks_.begin(), breaks_.end(), g) - breaks_.begin())].slope;
  }

  // Adjacent segments that coincide are merged.
  PiecewiseLinear canonical() const {
    std::vector<Segment> s{segs_.front()};
    std::vector<GroupElement> b;
    for (std::size_t i = 1; i < segs_.size(); ++i) {
      if (segs_[i] == s.back()) continue;
      s.push_back(segs_[i]);
      b.push_back(breaks_[i - 1]);
    }
    return PiecewiseLinear(std::move(s), std::move(b));
  }

  friend PiecewiseLinear operator+(const PiecewiseLinear& a, const PiecewiseLinear& b) { return combine(a, b, 1); }
  friend PiecewiseLinear operator-(const PiecewiseLinear& a, const PiecewiseLinear& b) { return combine(a, b, -1); }
  friend bool operator==(const PiecewiseLinear& a, const PiecewiseLinear& b) {
    auto ca = a.canonical(), cb = b.canonical();
    return ca.segs_ == cb.segs_ && ca.breaks_ == cb.breaks_;
  }

 private:
  std::size_t index_left(const GroupElement& g) const {
    return static_cast<std::size_t>(std::lower_bound(breaks_.begin(), breaks_.end(), g) - breaks_.begin());
  }

  static PiecewiseLinear combine(const PiecewiseLinear& a, const PiecewiseLinear& b, int sign) {
    std::vector<Segment> s;
    std::vector<GroupElement> br;
    std::size_t i = 0, j = 0;
    auto emit = [&] {
      const Segment& x = a.segs_[i];
      const Segment& y = b.segs_[j];
      s.push_back(sign > 0 ? Segment{x.slope + y.slope, x.intercept + y.intercept}
                           : Segment{x.slope - y.slope, x.intercept - y.intercept});
    };
    emit();
    while (i < a.breaks_.size() || j < b.breaks_.size()) {
      bool take_a = j == b.breaks_.size() || (i < a.breaks_.size() && a.breaks_[i] <= b.breaks_[j]);
      bool take_b = i == a.breaks_.size() || (j < b.breaks_.size() && b.breaks_[j] <= a.breaks_[i]);
      br.push_back(take_a ? a.breaks_[i] : b.breaks_[j]);
      if (take_a) ++i;
      if (take_b) ++j;
      emit();
    }
    return PiecewiseLinear(std::move(s), std::move(br)).canonical();
  }

  std::vector<Segment> segs_;
  std::vector<GroupElement> breaks_;
};

inline PiecewiseLinear pl_add(const PiecewiseLinear& a, const PiecewiseLinear& b) { return a + b; }
inline GroupElement pl_eval(const PiecewiseLinear& f, const GroupElement& g) { return f.eval(g); }

// Lower envelope of the lines gamma -> intercept + slope*gamma.
inline PiecewiseLinear lower_envelope(std::vector<Segment> lines) {
  if (lines.empty()) throw StructuralError("envelope of no lines");
  std::sort(lines.begin(), lines.end(), [](const Segment& x, const Segment& y) {
    if (x.slope != y.slope) return x.slope > y.slope;
    return x.intercept < y.intercept;
  });
  // Crossing of two lines with slopes sa > sb.
  auto cross = [](const Segment& x, const Segment& y) {
    return (y.intercept - x.intercept).scale(Rational(1) / Rational(x.slope - y.slope));
  };
  std::vector<Segment> hull;
  for (auto& c : lines) {
    if (!hull.empty() && hull.back().slope == c.slope) continue;  // parallel: the lower one came first
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], c) <= cross(hull[hull.size() - 2], hull.back()))
      hull.pop_back();
    hull.push_back(std::move(c));
  }
  std::vector<GroupElement> br;
  for (std::size_t i = 1; i < hull.size(); ++i) br.push_back(cross(hull[i - 1], hull[i]));
  return PiecewiseLinear(std::move(hull), std::move(br));
}

template <class VF>
PiecewiseLinear minval_poly(const Poly<typename VF::Elem, VarX>& f, const VF& field) {
  if (f.is_zero()) throw StructuralError("minimum valuation of the zero polynomial");
  std::vector<Segment> lines;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (is_zero(f.coeffs()[i])) continue;
    lines.push_back({static_cast<long>(i), field.valuation(f.coeffs()[i]).finite()});
  }
  return lower_envelope(std::move(lines));
}

template <class VF>
PiecewiseLinear minval_rat(const RatFunc<typename VF::Elem, VarX>& phi, const VF& field) {
  if (phi.is_zero()) throw StructuralError("minimum valuation of the zero function");
  return minval_poly(phi.num(), field) - minval_poly(phi.den(), field);
}

// Direct minimum over the coefficient lines, without the envelope.
template <class VF>
GroupElement minval_direct(const Poly<typename VF::Elem, VarX>& f, const VF& field, const GroupElement& g) {
  std::optional<GroupElement> best;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (is_zero(f.coeffs()[i])) continue;
    GroupElement v = field.valuation(f.coeffs()[i]).finite() + g.scale(Rational(static_cast<long>(i)));
    if (!best || v < *best) best = v;
  }
  if (!best) throw StructuralError("minimum valuation of the zero polynomial");
  return *best;
}

// loc_{f,v,t}(x) = f(tx)/(a_d t^d) mod m, d the largest index attaining the minimum.
template <class VF>
ResiduePoly<typename VF::ResElem> local_poly(const Poly<typename VF::Elem, VarX>& f, const typename VF::Elem& t,
                                              const VF& field) {
  using Elem = typename VF::Elem;
  if (f.is_zero()) throw StructuralError("local polynomial of the zero polynomial");
  if (is_zero(t)) throw PreconditionError("local polynomial at t = 0");
  GroupElement g = field.valuation(t).finite();
  GroupElement m = minval_direct(f, field, g);
  std::vector<std::size_t> attain;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (is_zero(f.coeffs()[i])) continue;
    if (field.valuation(f.coeffs()[i]).finite() + g.scale(Rational(static_cast<long>(i))) == m) attain.push_back(i);
  }
  const std::size_t d = attain.back();
  std::vector<typename VF::ResElem> c(d + 1, field.residue_field().from_int(0));
  const Elem& ad = f.coeffs()[d];
  for (auto i : attain) {
    Elem r = f.coeffs()[i] / ad * power(t, static_cast<long>(i) - static_cast<long>(d));
    c[i] = field.residue(r);
  }
  return ResiduePoly<typename VF::ResElem>(std::move(c));
}

struct Prediction {
  GroupElement predicted;
  bool exact = false;
};

// Uses t = a, so residue(a/t) = 1.
template <class VF>
Prediction predict(const RatFunc<typename VF::Elem, VarX>& phi, const typename VF::Elem& a, const VF& field) {
  if (is_zero(a)) throw PreconditionError("prediction at a = 0");
  auto one = field.residue_field().from_int(1);
  GroupElement g = field.valuation(a).finite();
  GroupElement pred = minval_direct(phi.num(), field, g) - minval_direct(phi.den(), field, g);
  bool exact = !is_zero(local_poly(phi.num(), a, field)(one)) && !is_zero(local_poly(phi.den(), a, field)(one));
  return {pred, exact};
}

struct SlopePair {
  long left = 0;   // c  = i_r - j_s
  long right = 0;  // c' = i_1 - j_1
};

template <class VF>
SlopePair slopes_check(const RatFunc<typename VF::Elem, VarX>& phi, const typename VF::Elem& t, const VF& field) {
  auto lf = local_poly(phi.num(), t, field);
  auto lg = local_poly(phi.den(), t, field);
  return {static_cast<long>(lf.degree()) - lg.degree(), static_cast<long>(lf.order()) - lg.order()};
}

}  // namespace ivrf
