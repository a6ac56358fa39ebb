#pragma once

// Certification of integer-valuedness: phi(a) in D for all a in E.
//
// The engine splits the value line at the breakpoints of minval_phi and at
// the points where minval_phi meets the target threshold. On open pieces the
// local polynomials are monomials, so v(phi(a)) = minval_phi(v(a)) exactly.
// At the remaining points each residue class of a/t is examined: classes
// that are roots of a local polynomial are refined by a = t(c + y), v(y) > 0.

#include <algorithm>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "newton.hpp"

namespace ivrf {

enum class ESet { whole_ring, whole_field, finite_list };

template <class VF>
struct DomainSpec {
  using Elem = typename VF::Elem;
  enum class Kind { valuation_ring, pvd, intersection };

  Kind kind = Kind::valuation_ring;
  std::vector<VF> components;
  std::optional<Subfield> sub;
  ESet e = ESet::whole_ring;
  std::vector<Elem> e_list;

  static DomainSpec valuation_ring(VF f, ESet e = ESet::whole_ring) {
    DomainSpec d;
    d.components.push_back(std::move(f));
    d.e = e;
    return d;
  }
  static DomainSpec pvd(const PVDSpec<VF>& p, ESet e = ESet::whole_ring) {
    DomainSpec d;
    d.kind = Kind::pvd;
    d.components.push_back(p.field);
    d.sub = p.sub;
    d.e = e;
    return d;
  }
  static DomainSpec intersection(std::vector<VF> fs, ESet e = ESet::whole_ring) {
    if (fs.empty()) throw StructuralError("empty intersection family");
    DomainSpec d;
    d.kind = Kind::intersection;
    d.components = std::move(fs);
    d.e = e;
    return d;
  }
  DomainSpec with_list(std::vector<Elem> list) const {
    DomainSpec d = *this;
    d.e = ESet::finite_list;
    d.e_list = std::move(list);
    return d;
  }

  const VF& field() const { return components.front(); }

  bool contains(const Elem& x) const {
    for (const auto& f : components) {
      auto v = f.valuation(x);
      if (v.is_infinite()) continue;
      int s = v.finite().sign();
      if (s < 0) return false;
      if (s == 0 && sub && !sub->contains(f.residue_field(), f.residue(x))) return false;
    }
    return true;
  }
  bool in_e(const Elem& a) const {
    switch (e) {
      case ESet::whole_field: return true;
      case ESet::whole_ring: return contains(a);
      default: return std::find(e_list.begin(), e_list.end(), a) != e_list.end();
    }
  }
};

enum class Verdict { certified_in, certified_out, unknown };

inline std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::certified_in: return "CertifiedIn";
    case Verdict::certified_out: return "CertifiedOut";
    default: return "Unknown";
  }
}

struct CertNode;

// Audit trail of one certification call.
struct CertEntry {
  std::string kind;  // interval, point, zero, element
  std::string from, to;
  std::string minval;  // sign of minval - threshold, or the value at a point
  std::vector<std::string> residue_cases;
  std::vector<CertNode> children;
};

struct CertNode {
  std::string substitution;  // a = alpha + beta*y
  int level = 1;
  std::string component;
  std::vector<CertEntry> entries;
};

template <class Elem>
struct MembershipVerdict {
  Verdict verdict = Verdict::unknown;
  std::optional<Elem> witness;
  std::string reason;  // pole or value, for CertifiedOut
  int depth = 1;       // deepest refinement level used
  std::vector<CertNode> certificate;

  bool in() const { return verdict == Verdict::certified_in; }
  bool out() const { return verdict == Verdict::certified_out; }
};

// Membership target on one valuation: v > tau, v >= tau, or for a PVD at tau = 0
// also residue in F when v = 0.
struct Target {
  Threshold th;
  std::optional<Subfield> sub;

  template <class VF>
  bool admits(const VF& f, const typename VF::Elem& x) const {
    auto v = f.valuation(x);
    if (v.is_infinite()) return true;
    auto c = v.finite() <=> th.tau;
    if (c != 0) return c > 0;
    if (th.strict) return false;
    if (sub) return sub->contains(f.residue_field(), f.residue(x));
    return true;
  }
};

namespace detail {

template <class VF>
class Certifier {
 public:
  using Elem = typename VF::Elem;
  using ResElem = typename VF::ResElem;
  using R = typename VF::Residue;
  using Fn = RatFunc<Elem, VarX>;

  struct Region {
    std::optional<Bound> lo;  // no upper bound; absent lo means the whole line
    bool restrict_at_zero = false;
    bool include_zero = true;
  };

  Certifier(const VF& f, Target target, int max_depth, const Fn& phi)
      : f_(f), target_(std::move(target)), max_depth_(max_depth), phi_(phi) {}

  struct Outcome {
    Verdict verdict = Verdict::certified_in;
    std::optional<Elem> witness;
    std::string reason;
    int depth = 1;
  };

  Outcome run(const Region& region, CertNode& node) {
    Outcome out;
    level(Elem(0), f_.one(), region, 1, node, out);
    return out;
  }

 private:
  const GroupElement& tau() const { return target_.th.tau; }

  void merge(Outcome& acc, Verdict v) {
    if (acc.verdict == Verdict::certified_out) return;
    if (v == Verdict::unknown) acc.verdict = Verdict::unknown;
  }

  // Records a witness a if it re-verifies; returns true when acc is now Out.
  bool offer_witness(Outcome& acc, const Elem& a) {
    auto val = phi_(a);
    std::string reason;
    if (!val) reason = "pole";
    else if (!target_.admits(f_, *val)) reason = "value";
    else {
      merge(acc, Verdict::unknown);
      return false;
    }
    acc.verdict = Verdict::certified_out;
    acc.witness = a;
    acc.reason = reason;
    return true;
  }

  static std::string bound_str(const std::optional<GroupElement>& g, const char* inf) {
    return g ? g->str() : std::string(inf);
  }

  void level(const Elem& alpha, const Elem& beta, const Region& region, int lvl, CertNode& node, Outcome& acc) {
    acc.depth = std::max(acc.depth, lvl);
    node.level = lvl;
    node.substitution = "a = " + to_str(alpha) + " + (" + to_str(beta) + ")*y";
    Fn phi = lvl == 1 ? phi_ : phi_.compose(Fn(typename Fn::poly_type(std::vector<Elem>{alpha, beta})));
    const GroupSpec& g = f_.group();
    if (phi.is_zero()) {
      node.entries.push_back({"interval", bound_str(region.lo ? std::optional(region.lo->at) : std::nullopt, "-inf"),
                              "inf", "identically zero", {}, {}});
      return;
    }
    PiecewiseLinear mv = minval_rat(phi, f_);

    // Critical values: breakpoints and crossings of the threshold.
    std::vector<GroupElement> crit = mv.breakpoints();
    const auto& segs = mv.segments();
    for (std::size_t i = 0; i < segs.size(); ++i) {
      if (segs[i].slope == 0) continue;
      GroupElement x = (tau() - segs[i].intercept).scale(Rational(1) / Rational(segs[i].slope));
      bool after = i == 0 || mv.breakpoints()[i - 1] <= x;
      bool before = i + 1 == segs.size() || x <= mv.breakpoints()[i];
      if (after && before) crit.push_back(x);
    }
    if (region.lo && region.lo->closed) crit.push_back(region.lo->at);
    std::sort(crit.begin(), crit.end());
    crit.erase(std::unique(crit.begin(), crit.end()), crit.end());
    if (region.lo) {
      auto keep = [&](const GroupElement& x) { return region.lo->closed ? x >= region.lo->at : x > region.lo->at; };
      crit.erase(std::remove_if(crit.begin(), crit.end(), [&](const GroupElement& x) { return !keep(x); }), crit.end());
    }

    // Open pieces, left to right.
    std::vector<std::pair<std::optional<GroupElement>, std::optional<GroupElement>>> pieces;
    std::optional<GroupElement> left = region.lo ? std::optional(region.lo->at) : std::nullopt;
    for (const auto& c : crit) {
      if (!left || *left < c) pieces.emplace_back(left, c);
      left = c;
    }
    pieces.emplace_back(left, std::nullopt);
    for (const auto& [lo, hi] : pieces) {
      CertEntry e{"interval", bound_str(lo, "-inf"), bound_str(hi, "inf"), "", {}, {}};
      auto lb = lo ? std::optional(Bound{*lo, false}) : std::nullopt;
      auto ub = hi ? std::optional(Bound{*hi, false}) : std::nullopt;
      auto p = lattice_point_in(g, lb, ub);
      if (!p) {
        e.minval = "no value-group point";
        node.entries.push_back(std::move(e));
        continue;
      }
      auto c = mv(*p) <=> tau();
      e.minval = c > 0 ? "+" : c < 0 ? "-" : "0";
      node.entries.push_back(std::move(e));
      if (c < 0 || (c == 0 && target_.th.strict)) {
        if (offer_witness(acc, alpha + beta * f_.element_of_value(*p))) return;
      } else if (c == 0 && target_.sub) {
        point(phi, mv, *p, alpha, beta, false, lvl, node, acc);
        if (acc.verdict == Verdict::certified_out) return;
      }
    }

    for (const auto& c : crit) {
      if (!c.in_lattice()) {
        node.entries.push_back({"point", c.str(), c.str(), "not in the value group", {}, {}});
        continue;
      }
      bool restricted = region.restrict_at_zero && c.is_zero();
      point(phi, mv, c, alpha, beta, restricted, lvl, node, acc);
      if (acc.verdict == Verdict::certified_out) return;
    }

    if (region.include_zero) {
      node.entries.push_back({"zero", "y = 0", "y = 0", "", {}, {}});
      auto val = phi_(alpha);
      if (!val || !target_.admits(f_, *val)) {
        if (offer_witness(acc, alpha)) return;
      }
    }
  }

  // Residues r that may stand for a/t: the whole residue field, or F when restricted.
  struct Classes {
    bool exhaustive = false;
    std::vector<ResElem> all;        // when exhaustive
    std::optional<std::vector<ResElem>> roots_f, roots_g;
  };

  bool allowed(const ResElem& r, bool restricted) const {
    return !restricted || target_.sub->contains(f_.residue_field(), r);
  }

  void point(const Fn& phi, const PiecewiseLinear& mv, const GroupElement& gamma, const Elem& alpha,
             const Elem& beta, bool restricted, int lvl, CertNode& node, Outcome& acc) {
    const R& L = f_.residue_field();
    Elem t = f_.element_of_value(gamma);
    auto lf = local_poly(phi.num(), t, f_);
    auto lg = local_poly(phi.den(), t, f_);
    GroupElement m = mv(gamma);
    auto c = m <=> tau();
    CertEntry entry{"point", gamma.str(), gamma.str(), m.str(), {}, {}};
    entry.residue_cases.push_back("loc_num = " + to_str(lf));
    entry.residue_cases.push_back("loc_den = " + to_str(lg));
    const bool need_f = c < 0 || (c == 0 && target_.th.strict);
    auto is_root = [](const ResiduePoly<ResElem>& p, const ResElem& r) { return is_zero(p(r)); };

    std::vector<ResElem> recurse_on;
    std::vector<ResElem> excluded;
    std::optional<ResElem> bad;
    bool unknown = false;

    // Enumerable residue sets are classified pointwise.
    std::optional<std::vector<ResElem>> universe;
    if constexpr (R::enumerable) {
      universe = restricted ? target_.sub->nonzero_elements(L) : L.nonzero();
    } else {
      if (restricted && target_.sub->is_finite(L)) universe = target_.sub->nonzero_elements(L);
    }
    if (universe) {
      for (const auto& r : *universe) {
        bool rg = is_root(lg, r), rf = is_root(lf, r);
        if (rg || (rf && need_f)) {
          recurse_on.push_back(r);
          excluded.push_back(r);
        } else if (rf) {
          excluded.push_back(r);
        } else if (need_f && !bad) {
          bad = r;
        }
      }
    } else if constexpr (!R::enumerable) {
      auto rg = L.nonzero_roots(lg);
      std::optional<std::vector<ResElem>> rf;
      if (need_f) rf = L.nonzero_roots(lf);
      if (!rg || (need_f && !rf)) {
        unknown = true;
      } else {
        for (const auto& r : *rg)
          if (allowed(r, restricted)) recurse_on.push_back(r);
        if (rf)
          for (const auto& r : *rf)
            if (allowed(r, restricted) && std::find(recurse_on.begin(), recurse_on.end(), r) == recurse_on.end())
              recurse_on.push_back(r);
        excluded = recurse_on;
      }
      if (need_f) {
        // Any residue that is not a root shows v(phi(a)) = m.
        std::vector<ResElem> cands = L.candidates();
        if (restricted) {
          std::vector<ResElem> keep;
          for (auto& r : cands)
            if (allowed(r, true)) keep.push_back(r);
          if (target_.sub->kind() == Subfield::Kind::frobenius)
            for (auto& r : L.candidates()) keep.push_back(power(r, static_cast<long>(L.characteristic())));
          cands = keep;
        }
        for (const auto& r : cands)
          if (!is_root(lf, r) && !is_root(lg, r) && allowed(r, restricted)) {
            bad = r;
            break;
          }
      }
    }

    if (bad) {
      entry.residue_cases.push_back("residue " + to_str(*bad) + ": v = " + m.str());
      node.entries.push_back(std::move(entry));
      offer_witness(acc, alpha + beta * t * f_.lift(*bad));
      return;
    }

    if (c == 0 && target_.sub && !target_.th.strict && !unknown) {
      // Residue of phi(a) at non-root classes is k * loc_num(r)/loc_den(r).
      ResElem k = f_.residue(phi.num().coeffs()[static_cast<std::size_t>(lf.degree())] *
                             power(t, static_cast<long>(lf.degree()) - static_cast<long>(lg.degree())) /
                             phi.den().coeffs()[static_cast<std::size_t>(lg.degree())]);
      RatFunc<ResElem, VarX> rf(lf.scaled(k), lg);
      std::optional<ResElem> w;
      Tri ok = target_.sub->maps_into(L, rf, restricted, excluded, &w);
      entry.residue_cases.push_back("residue map " + to_str(rf) + (ok == Tri::yes ? " lands in F" : ok == Tri::no ? " leaves F" : " undecided"));
      if (ok == Tri::no) {
        node.entries.push_back(std::move(entry));
        offer_witness(acc, alpha + beta * t * f_.lift(*w));
        return;
      }
      if (ok == Tri::unknown) unknown = true;
    }

    if (unknown) {
      entry.residue_cases.push_back("residue roots not enumerable within bounds");
      merge(acc, Verdict::unknown);
    }
    for (const auto& r : recurse_on) {
      entry.residue_cases.push_back("root " + to_str(r) + ": refine");
      if (lvl >= max_depth_) {
        entry.residue_cases.back() += " (depth exhausted)";
        merge(acc, Verdict::unknown);
        continue;
      }
      CertNode child;
      Elem tl = t * f_.lift(r);
      Region sub_region{Bound{GroupElement::zero(f_.group()), false}, false, true};
      level(alpha + beta * tl, beta * t, sub_region, lvl + 1, child, acc);
      entry.children.push_back(std::move(child));
      if (acc.verdict == Verdict::certified_out) break;
    }
    node.entries.push_back(std::move(entry));
  }

  const VF& f_;
  Target target_;
  int max_depth_;
  const Fn& phi_;
};

}  // namespace detail

// Certifies phi(a) meeting the target on one valuation, for a in the region
// described by e (whole ring of that valuation, or the whole field).
template <class VF>
MembershipVerdict<typename VF::Elem> certify_component(const RatFunc<typename VF::Elem, VarX>& phi, const VF& f,
                                                       const Target& target, ESet e, int depth,
                                                       bool restrict_residues = false) {
  using C = detail::Certifier<VF>;
  typename C::Region region;
  if (e == ESet::whole_ring) {
    region.lo = Bound{GroupElement::zero(f.group()), true};
    region.restrict_at_zero = restrict_residues;
  }
  C engine(f, target, depth, phi);
  CertNode node;
  node.component = f.name();
  auto o = engine.run(region, node);
  MembershipVerdict<typename VF::Elem> v;
  v.verdict = o.verdict;
  v.witness = o.witness;
  v.reason = o.reason;
  v.depth = o.depth;
  v.certificate.push_back(std::move(node));
  return v;
}

// phi(a) in the ideal given by the per-component thresholds, for all a in E.
template <class VF>
MembershipVerdict<typename VF::Elem> certify(const RatFunc<typename VF::Elem, VarX>& phi, const DomainSpec<VF>& d,
                                             const std::vector<Target>& targets, int depth) {
  using Elem = typename VF::Elem;
  MembershipVerdict<Elem> result;
  result.verdict = Verdict::certified_in;
  auto admits_all = [&](const Elem& x) {
    for (std::size_t i = 0; i < d.components.size(); ++i)
      if (!targets[i].admits(d.components[i], x)) return false;
    return true;
  };
  if (d.e == ESet::finite_list) {
    CertNode node;
    node.substitution = "finite list";
    for (const auto& a : d.e_list) {
      auto val = phi(a);
      bool ok = val && admits_all(*val);
      node.entries.push_back({"element", to_str(a), to_str(a), val ? to_str(*val) : "pole", {}, {}});
      if (!ok) {
        result.verdict = Verdict::certified_out;
        result.witness = a;
        result.reason = val ? "value" : "pole";
        break;
      }
    }
    result.certificate.push_back(std::move(node));
    return result;
  }
  if (phi.is_zero()) return result;
  for (std::size_t i = 0; i < d.components.size(); ++i) {
    bool restrict_residues = d.kind == DomainSpec<VF>::Kind::pvd && d.e == ESet::whole_ring;
    auto v = certify_component(phi, d.components[i], targets[i], d.e, depth, restrict_residues);
    result.depth = std::max(result.depth, v.depth);
    for (auto& n : v.certificate) result.certificate.push_back(std::move(n));
    if (v.out()) {
      if (d.components.size() > 1 && !d.in_e(*v.witness)) {
        result.verdict = Verdict::unknown;
        continue;
      }
      result.verdict = Verdict::certified_out;
      result.witness = v.witness;
      result.reason = v.reason;
      return result;
    }
    if (v.verdict == Verdict::unknown) result.verdict = Verdict::unknown;
  }
  return result;
}

template <class VF>
std::vector<Target> domain_targets(const DomainSpec<VF>& d) {
  std::vector<Target> t;
  for (const auto& f : d.components) t.push_back({{GroupElement::zero(f.group()), false}, d.sub});
  return t;
}

template <class VF>
MembershipVerdict<typename VF::Elem> intr_member(const RatFunc<typename VF::Elem, VarX>& phi, const DomainSpec<VF>& d,
                                                 int depth = 3) {
  return certify(phi, d, domain_targets(d), depth);
}

// Ideals of IntR(E, D).
template <class VF>
struct IdealSpec {
  using Elem = typename VF::Elem;
  enum class Kind { pointed, mstar, value };

  Kind kind = Kind::mstar;
  std::size_t component = 0;  // which valuation's maximal ideal, for pointed
  Elem point{};
  IdealWhich which = IdealWhich::max_ideal();

  static IdealSpec pointed(Elem a, std::size_t component = 0) {
    IdealSpec s;
    s.kind = Kind::pointed;
    s.point = std::move(a);
    s.component = component;
    return s;
  }
  static IdealSpec mstar() { return IdealSpec{}; }
  static IdealSpec value(IdealWhich w) {
    IdealSpec s;
    s.kind = Kind::value;
    s.which = w;
    return s;
  }
  std::string name() const {
    switch (kind) {
      case Kind::pointed: return "M(m" + std::to_string(component) + ", " + to_str(point) + ")";
      case Kind::mstar: return "M*";
      default: return "IntR(E, m^" + std::to_string(which.power) + ")";
    }
  }
};

// Value ideals are certified; Unknown counts as not shown to be a member.
template <class VF>
MembershipVerdict<typename VF::Elem> certify_value_ideal(const RatFunc<typename VF::Elem, VarX>& phi,
                                                        const DomainSpec<VF>& d, IdealWhich w, int depth = 3) {
  std::vector<Target> t;
  for (const auto& f : d.components) t.push_back({threshold_of(w, f.group()), std::nullopt});
  return certify(phi, d, t, depth);
}

template <class VF>
bool ideal_member(const RatFunc<typename VF::Elem, VarX>& phi, const IdealSpec<VF>& spec, const DomainSpec<VF>& d,
                  int depth = 3) {
  if (phi.is_zero()) return true;
  const VF& f = d.components.at(spec.component);
  switch (spec.kind) {
    case IdealSpec<VF>::Kind::pointed: {
      auto val = phi(spec.point);
      if (!val) throw PreconditionError("pole at the point of a pointed ideal");
      auto v = f.valuation(*val);
      return v.is_infinite() || v.finite().sign() > 0;
    }
    case IdealSpec<VF>::Kind::mstar:
      if (d.kind == DomainSpec<VF>::Kind::intersection) throw PreconditionError("M* needs a valuation ring or PVD");
      return minval_rat(phi, f)(GroupElement::zero(f.group())).sign() > 0;
    default: return certify_value_ideal(phi, d, spec.which, depth).in();
  }
}

// Indices of the ideals in the family that contain r.
template <class VF>
std::vector<std::size_t> characteristic_set(const RatFunc<typename VF::Elem, VarX>& r,
                                            const std::vector<IdealSpec<VF>>& family, const DomainSpec<VF>& d,
                                            int depth = 3) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < family.size(); ++i)
    if (ideal_member(r, family[i], d, depth)) out.push_back(i);
  return out;
}

enum class Dichotomy { zero, strictly_positive, violation };

inline std::string dichotomy_name(Dichotomy d) {
  switch (d) {
    case Dichotomy::zero: return "Zero";
    case Dichotomy::strictly_positive: return "StrictlyPositive";
    default: return "Violation";
  }
}

inline Dichotomy classify_sign_pattern(const PiecewiseLinear& pl) {
  auto c = pl.canonical();
  const auto& s = c.segments();
  if (s.size() == 1 && s[0].slope == 0 && s[0].intercept.is_zero()) return Dichotomy::zero;
  if (s.front().slope > 0 || s.back().slope < 0) return Dichotomy::violation;
  if (c.breakpoints().empty()) return s[0].intercept.sign() > 0 ? Dichotomy::strictly_positive : Dichotomy::violation;
  for (const auto& b : c.breakpoints())
    if (c(b).sign() <= 0) return Dichotomy::violation;
  return Dichotomy::strictly_positive;
}

template <class VF>
Dichotomy dichotomy_check(const RatFunc<typename VF::Elem, VarX>& phi, const PVDSpec<VF>& d) {
  if (phi.is_zero()) throw PreconditionError("dichotomy of the zero function");
  if (!d.field.group().divisible()) throw PreconditionError("dichotomy check needs a divisible value group");
  return classify_sign_pattern(minval_rat(phi, d.field));
}

}  // namespace ivrf
