#pragma once

// JSON serialization of library results. Objects use sorted keys, so equal
// results always print byte-identically.

#include <json.hpp>

#include "constructions.hpp"

namespace ivrf {

using Json = nlohmann::json;

inline constexpr const char* kSchema = "ivrf/1";

inline Json to_json(const GroupElement& g) { return g.to_strings(); }

inline Json to_json(const ExtValue& v) {
  if (v.is_infinite()) return "inf";
  return to_json(v.finite());
}

inline Json to_json(const PiecewiseLinear& pl) {
  Json segs = Json::array();
  const auto& b = pl.breakpoints();
  for (std::size_t i = 0; i < pl.segments().size(); ++i) {
    const auto& s = pl.segments()[i];
    segs.push_back({{"slope", s.slope},
                    {"intercept", to_json(s.intercept)},
                    {"from", i == 0 ? Json("-inf") : to_json(b[i - 1])},
                    {"to", i == b.size() ? Json("inf") : to_json(b[i])}});
  }
  Json br = Json::array();
  for (const auto& x : b) br.push_back(to_json(x));
  return {{"segments", segs}, {"breakpoints", br}};
}

inline Json to_json(const CertNode& n);

inline Json to_json(const CertEntry& e) {
  Json children = Json::array();
  for (const auto& c : e.children) children.push_back(to_json(c));
  return {{"kind", e.kind},   {"from", e.from},           {"to", e.to},
          {"minval", e.minval}, {"residue_cases", e.residue_cases}, {"children", children}};
}

inline Json to_json(const CertNode& n) {
  Json entries = Json::array();
  for (const auto& e : n.entries) entries.push_back(to_json(e));
  return {{"substitution", n.substitution}, {"level", n.level}, {"component", n.component}, {"entries", entries}};
}

template <class Elem>
Json to_json(const MembershipVerdict<Elem>& v, bool with_certificate = true) {
  Json j = {{"verdict", verdict_name(v.verdict)}, {"depth", v.depth}};
  if (v.witness) {
    j["witness"] = to_str(*v.witness);
    j["reason"] = v.reason;
  }
  if (with_certificate) {
    Json c = Json::array();
    for (const auto& n : v.certificate) c.push_back(to_json(n));
    j["certificate"] = c;
  }
  return j;
}

inline Json to_json(const SuiteReport& r) {
  return {{"suite", r.name},
          {"checks", r.checks},
          {"violations", r.violations},
          {"passed", r.passed()},
          {"examples", r.examples},
          {"tally", r.tally}};
}

inline Json to_json(const FieldMapReport& r) {
  Json maps = Json::array();
  for (const auto& m : r.maps)
    maps.push_back({{"function", m.function}, {"exceptions", m.exceptions}, {"values", m.values}, {"kind", m.kind}});
  return {{"source", r.source},
          {"target", r.target},
          {"degree_bound", r.degree_bound},
          {"exception_bound", r.exception_bound},
          {"scanned", r.scanned},
          {"found", r.maps.size()},
          {"distinct_induced_maps", r.distinct_induced},
          {"induced_kinds", r.kinds},
          {"constant_only_besides_trace", r.constant_only_besides_trace},
          {"maps", maps}};
}

inline Json envelope(const std::string& command, Json body) {
  return {{"schema", kSchema}, {"command", command}, {"result", std::move(body)}};
}

}  // namespace ivrf
