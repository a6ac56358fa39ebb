// ivrf: command-line front end for the valuation and integer-valuedness library.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "ivrf/config.hpp"
#include "ivrf/parse.hpp"
#include "ivrf/report.hpp"
#include "ivrf/suites.hpp"

namespace {

using namespace ivrf;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

// All options are strings; commands convert and validate what they use.
struct Options {
  std::map<std::string, std::string> v;
  std::string command, what;

  bool has(const std::string& k) const {
    auto it = v.find(k);
    return it != v.end() && !it->second.empty();
  }
  std::string get(const std::string& k, const std::string& dflt = "") const { return has(k) ? v.at(k) : dflt; }
  std::string need(const std::string& k) const {
    if (!has(k)) throw ParseError("missing --" + k);
    return v.at(k);
  }
  long integer(const std::string& k, long dflt) const {
    if (!has(k)) return dflt;
    std::size_t pos = 0;
    long x = 0;
    try {
      x = std::stol(v.at(k), &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != v.at(k).size()) throw ParseError("--" + k + " needs an integer, got '" + v.at(k) + "'");
    return x;
  }
  long non_negative(const std::string& k, long dflt) const {
    long x = integer(k, dflt);
    if (x < 0) throw ParseError("--" + k + " must be non-negative");
    return x;
  }
  SuiteConfig suite_config() const {
    SuiteConfig c;
    c.seed = static_cast<std::uint64_t>(non_negative("seed", 1));
    c.samples = static_cast<std::size_t>(non_negative("samples", 0));
    c.depth = static_cast<int>(integer("depth", 3));
    if (c.depth < 1 || c.depth > 8) throw ParseError("--depth must lie in 1..8");
    return c;
  }
};

const std::vector<std::string> kOptionNames = {
    "seed", "depth", "samples", "out", "format", "field", "sub", "f", "t", "domain", "e", "points", "primes",
    "n", "phi", "phi1", "phi2", "ideal", "source", "target", "degree", "exceptions", "from", "to", "step"};

void apply_config(const std::string& path, Options& o) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read config " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError("config " + path + ": " + e.what());
  }
  if (!j.is_object()) throw ParseError("config " + path + " must be a JSON object");
  for (const auto& [k, val] : j.items()) {
    std::string s = val.is_string() ? val.get<std::string>() : val.dump();
    if (k == "command") {
      if (o.command.empty()) o.command = s;
    } else if (k == "what" || k == "suite") {
      if (o.what.empty()) o.what = s;
    } else if (std::find(kOptionNames.begin(), kOptionNames.end(), k) != kOptionNames.end()) {
      if (!o.has(k)) o.v[k] = s;
    } else if (k != "schema") {
      throw ParseError("config " + path + ": unknown key '" + k + "'");
    }
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

struct Output {
  Json json;
  std::string csv;  // used with --format csv when the command has a table
  int code = kOk;
};

template <class VF>
using Fn = RatFunc<typename VF::Elem, VarX>;

template <class VF>
Json sweep_row(const Fn<VF>& phi, const VF& f, const PiecewiseLinear& pl, const GroupElement& g) {
  Json row = {{"gamma", g.str()}, {"minval", pl(g).str()}};
  if (!g.in_lattice()) return row;
  auto a = f.element_of_value(g);
  auto val = phi(a);
  row["observed"] = val ? f.valuation(*val).str() : "pole";
  row["exact"] = predict(phi, a, f).exact;
  return row;
}

template <class VF>
Output cmd_minval(const Options& o, const VF& f) {
  auto phi = parse_function(f, o.need("f"));
  if (phi.is_zero()) throw PreconditionError("minval of the zero function");
  auto pl = minval_rat(phi, f);
  Rational from = parse_rational_function(o.get("from", "-3")).constant();
  Rational to = parse_rational_function(o.get("to", "3")).constant();
  Rational step = parse_rational_function(o.get("step", f.group().divisible() ? "1/2" : "1")).constant();
  if (sgn(step) <= 0 || from > to) throw ParseError("sweep needs from <= to and step > 0");
  if ((to - from) / step > 10000) throw ResourceError("sweep longer than 10000 rows");
  Json sweep = Json::array();
  std::string csv = "gamma,minval,observed,exact\n";
  for (Rational x = from; x <= to; x += step) {
    Json row = sweep_row(phi, f, pl, GroupElement::scalar(f.group(), x));
    csv += row["gamma"].get<std::string>() + "," + row["minval"].get<std::string>() + "," +
           (row.contains("observed") ? row["observed"].get<std::string>() : "") + "," +
           (row.contains("exact") ? (row["exact"].get<bool>() ? "true" : "false") : "") + "\n";
    sweep.push_back(std::move(row));
  }
  Json j = {{"field", f.name()},
            {"function", to_str(phi)},
            {"minval", to_json(pl)},
            {"numerator", to_json(minval_poly(phi.num(), f))},
            {"denominator", to_json(minval_poly(phi.den(), f))},
            {"sweep", sweep}};
  return {j, csv, kOk};
}

template <class VF>
Output cmd_locpoly(const Options& o, const VF& f) {
  auto phi = parse_function(f, o.need("f"));
  auto t = parse_element(f, o.need("t"));
  if (phi.is_zero()) throw PreconditionError("local polynomial of the zero function");
  auto g = f.valuation(t);
  if (g.is_infinite()) throw PreconditionError("local polynomial at t = 0");
  auto lf = local_poly(phi.num(), t, f), lg = local_poly(phi.den(), t, f);
  auto s = slopes_check(phi, t, f);
  Json j = {{"field", f.name()},
            {"function", to_str(phi)},
            {"t", to_str(t)},
            {"gamma", to_json(g)},
            {"minval", to_json(minval_rat(phi, f)(g.finite()))},
            {"numerator", to_str(lf)},
            {"numerator_degree", lf.degree()},
            {"denominator", to_str(lg)},
            {"slopes", {{"left", s.left}, {"right", s.right}}}};
  return {j, "", kOk};
}

template <class VF>
DomainSpec<VF> domain_from(const Options& o, const VF& f) {
  std::string e = o.get("e", "ring");
  ESet es = e == "ring" ? ESet::whole_ring : e == "field" ? ESet::whole_field : ESet::finite_list;
  if (e != "ring" && e != "field" && e != "list") throw ParseError("--e must be ring, field or list");
  std::string kind = o.get("domain", o.has("sub") ? "pvd" : "ring");
  DomainSpec<VF> d;
  if (kind == "ring") {
    d = DomainSpec<VF>::valuation_ring(f, es);
  } else if (kind == "pvd") {
    ResidueSpec r = parse_field_spec(o.get("field", "padic(5)")).residue;
    d = DomainSpec<VF>::pvd(PVDSpec<VF>(f, parse_subfield(o.get("sub", "whole"), r)), es);
  } else if (kind == "intersection") {
    if constexpr (std::is_same_v<VF, PAdicQ>) {
      std::vector<PAdicQ> comps;
      for (const auto& p : split_list(o.need("primes"))) comps.emplace_back(parse_field_spec("padic(" + p + ")").p);
      d = DomainSpec<VF>::intersection(comps, es);
    } else {
      throw ParseError("intersections are available over padic fields, with --primes");
    }
  } else {
    throw ParseError("--domain must be ring, pvd or intersection");
  }
  if (es == ESet::finite_list) {
    std::vector<typename VF::Elem> pts;
    for (const auto& s : split_list(o.need("points"))) pts.push_back(parse_element(f, s));
    d = d.with_list(pts);
  }
  return d;
}

std::string domain_name(ESet e) { return e == ESet::whole_ring ? "ring" : e == ESet::whole_field ? "field" : "list"; }

template <class VF>
Output cmd_member(const Options& o, const VF& f) {
  auto phi = parse_function(f, o.need("f"));
  auto d = domain_from(o, f);
  auto v = intr_member(phi, d, o.suite_config().depth);
  Json j = to_json(v);
  j["function"] = to_str(phi);
  j["field"] = f.name();
  j["e"] = domain_name(d.e);
  return {j, "", kOk};
}

template <class VF>
Output cmd_ideal(const Options& o, const VF& f) {
  auto phi = parse_function(f, o.need("f"));
  auto d = domain_from(o, f);
  std::string spec = o.need("ideal");
  const int depth = o.suite_config().depth;
  IdealSpec<VF> ideal;
  Json j = {{"function", to_str(phi)}, {"field", f.name()}};
  if (spec == "mstar") {
    ideal = IdealSpec<VF>::mstar();
    j["minval_at_0"] = minval_rat(phi, f)(GroupElement::zero(f.group())).str();
  } else if (spec.rfind("pointed:", 0) == 0) {
    std::string rest = spec.substr(8);
    std::size_t comp = 0;
    if (auto at = rest.find('@'); at != std::string::npos) {
      comp = static_cast<std::size_t>(std::stoul(rest.substr(at + 1)));
      rest = rest.substr(0, at);
      if (comp >= d.components.size()) throw ParseError("pointed ideal component out of range");
    }
    ideal = IdealSpec<VF>::pointed(parse_element(f, rest), comp);
  } else if (spec == "m" || spec == "m_d") {
    ideal = IdealSpec<VF>::value(spec == "m" ? IdealWhich::max_ideal() : IdealWhich::max_ideal_of_d());
  } else if (spec.rfind("m^", 0) == 0) {
    long k = std::stol(spec.substr(2));
    if (k < 1) throw ParseError("m^k needs k >= 1");
    ideal = IdealSpec<VF>::value(IdealWhich::m_pow(static_cast<unsigned>(k)));
  } else {
    throw ParseError("--ideal must be mstar, pointed:<a>[@i], m, m_d or m^k");
  }
  j["ideal"] = ideal.name();
  if (ideal.kind == IdealSpec<VF>::Kind::value) {
    auto v = certify_value_ideal(phi, d, ideal.which, depth);
    j["certificate"] = to_json(v);
    j["member"] = v.in();
  } else {
    j["member"] = ideal_member(phi, ideal, d, depth);
  }
  return {j, "", kOk};
}

template <class VF>
Output cmd_dichotomy(const Options& o, const VF& f) {
  if constexpr (std::is_same_v<VF, PAdicQ>) {
    throw ParseError("the dichotomy check needs a divisible value group (hahn)");
  } else {
    auto phi = parse_function(f, o.need("f"));
    PVDSpec<VF> p(f, parse_subfield(o.get("sub", "whole"), parse_field_spec(o.get("field", "padic(5)")).residue));
    auto k = dichotomy_check(phi, p);
    auto v = intr_member(phi, DomainSpec<VF>::pvd(p, ESet::whole_field), o.suite_config().depth);
    Json j = {{"function", to_str(phi)},
              {"field", f.name()},
              {"subfield", p.sub.name(f.residue_field())},
              {"classification", dichotomy_name(k)},
              {"minval", to_json(minval_rat(phi, f))},
              {"membership", to_json(v, false)}};
    return {j, "", kOk};
  }
}

SingularData<PAdicQ> singular_from(const Options& o) {
  std::vector<unsigned> primes;
  for (const auto& p : split_list(o.get("primes", "2,3"))) primes.push_back(parse_field_spec("padic(" + p + ")").p);
  long t = o.integer("t", 6), n = o.integer("n", 2);
  if (n < 1 || n > 16) throw ParseError("--n must lie in 1..16");
  return singular_preset(primes, t, static_cast<unsigned>(n));
}

std::vector<Rational> sample_rationals(const SuiteConfig& c, std::size_t dflt) {
  Rng rng(c.seed);
  std::vector<Rational> out;
  for (std::size_t i = 0, n = c.n(dflt); i < n; ++i)
    out.push_back(small_rational(rng) * power(Rational(6), uniform_int(rng, -2, 2)));
  return out;
}

Output cmd_construct(const Options& o) {
  const SuiteConfig c = o.suite_config();
  Output out;
  if (o.what == "witness") {
    auto spec = parse_field_spec(o.get("field", "tadic(GF(4))"));
    with_field(spec, [&](auto f) {
      using VF = decltype(f);
      if constexpr (std::is_same_v<VF, PAdicQ>) {
        throw ParseError("witness needs a residue field with a proper subfield");
      } else {
        PVDSpec<VF> p(f, parse_subfield(o.get("sub", spec.residue.function ? "constants" : "whole"), spec.residue));
        Rng rng(c.seed);
        std::vector<typename VF::Elem> smp;
        for (std::size_t i = 0, n = c.n(1000); i < n; ++i) smp.push_back(f.sample(rng));
        try {
          auto w = notlocal_witness(p, smp, c.depth);
          out.json = {{"field", f.name()},          {"subfield", p.sub.name(f.residue_field())},
                      {"function", to_str(w.w)},    {"kind", w.kind},
                      {"membership", to_json(w.membership, false)},
                      {"residue_map", to_json(w.residue_map)}, {"split", to_json(w.split)}};
          bool ok = w.membership.in() && w.residue_map.passed() && w.split.passed();
          out.code = ok ? kOk : kViolation;
        } catch (const UnsupportedCase& e) {
          out.json = {{"field", f.name()}, {"subfield", p.sub.name(f.residue_field())}, {"function", nullptr}, {"reason", e.what()}};
        }
      }
    });
    return out;
  }
  auto s = singular_from(o);
  auto samples = sample_rationals(c, 1000);
  SuiteReport rep{o.what};
  RatFunc<Rational, VarX> fn;
  if (o.what == "theta") {
    fn = build_theta(s);
    long h = static_cast<long>(c.n(200));
    if (h > 2000) throw ResourceError("theta grid height above 2000");
    auto grid = rational_grid(h);
    rep = verify_theta(s, grid);
    out.csv = "a,theta";
    for (const auto& v : s.valuations) out.csv += ",v_" + std::to_string(v.prime());
    out.csv += "\n";
    for (const auto& a : grid) {
      auto val = fn(a);
      out.csv += to_str(a) + "," + (val ? to_str(*val) : "pole");
      for (const auto& v : s.valuations) out.csv += "," + (val ? v.valuation(*val).str() : "");
      out.csv += "\n";
    }
  } else if (o.what == "psi") {
    auto phi = parse_rational_function(o.get("phi", "x"));
    fn = build_psi(phi, s);
    rep.check(psi_identity(phi, s), "phi^n (1 - phi^n psi) != t psi");
    for (const auto& a : samples) psi_cases(phi, fn, s, a, rep);
  } else if (o.what == "rho") {
    auto phi1 = parse_rational_function(o.need("phi1")), phi2 = parse_rational_function(o.need("phi2"));
    fn = build_rho(phi1, phi2, s);
    for (const auto& a : samples) rho_cases(phi1, phi2, fn, s, a, rep);
  } else if (o.what == "separator") {
    auto phi = parse_rational_function(o.get("phi", "x"));
    fn = build_separator(phi, s);
    for (const auto& a : samples) separator_cases(phi, fn, s, a, rep);
  } else {
    throw ParseError("construct needs theta, psi, rho, separator or witness");
  }
  Json primes = Json::array();
  for (const auto& v : s.valuations) primes.push_back(v.prime());
  out.json = {{"construction", o.what}, {"primes", primes}, {"t", to_str(s.t)}, {"n", s.n},
              {"function", to_str(fn)},  {"check", to_json(rep)}};
  out.code = rep.passed() ? kOk : kViolation;
  return out;
}

Output cmd_scan(const Options& o) {
  if (o.what != "fieldmaps") throw ParseError("scan supports fieldmaps");
  auto src = parse_residue_spec(o.get("source", "GF(4)"));
  auto sub = parse_subfield(o.get("target", "GF(2)"), src);
  long b = o.non_negative("degree", 2), k = o.non_negative("exceptions", 0);
  Output out;
  if (src.function) {
    FunctionResidueField L(base_field(src));
    auto r = falsification_scan(L, sub, static_cast<unsigned>(b), static_cast<unsigned>(k));
    out.json = {{"source", L.name()},
                {"target", sub.name(L)},
                {"degree_bound", b},
                {"exception_bound", k},
                {"scanned", r.scanned},
                {"counterexamples", r.counterexamples},
                {"outcome", r.counterexamples.empty() ? "no counterexample found within bounds" : "counterexample found"}};
    out.code = r.counterexamples.empty() ? kOk : kViolation;
  } else {
    FiniteResidueField L(base_field(src));
    out.json = to_json(field_map_scan(L, sub, static_cast<unsigned>(b), static_cast<unsigned>(k)));
  }
  return out;
}

Output cmd_verify(const Options& o) {
  const SuiteConfig c = o.suite_config();
  std::vector<const SuiteEntry*> run;
  if (o.what == "all") {
    for (const auto& s : suites()) run.push_back(&s);
  } else if (const auto* s = find_suite(o.what)) {
    run.push_back(s);
  } else {
    std::string names;
    for (const auto& s : suites()) names += " " + s.name;
    throw ParseError("unknown suite '" + o.what + "'; available: all" + names);
  }
  Output out;
  Json reports = Json::array();
  for (const auto* s : run) {
    auto r = s->run(c);
    if (!r.passed()) out.code = kViolation;
    reports.push_back(to_json(r));
  }
  out.json = {{"seed", c.seed}, {"suites", reports}, {"passed", out.code == kOk}};
  return out;
}

Output dispatch(const Options& o) {
  const std::string& cmd = o.command;
  if (cmd == "construct") return cmd_construct(o);
  if (cmd == "scan") return cmd_scan(o);
  if (cmd == "verify") return cmd_verify(o);
  auto spec = parse_field_spec(o.get("field", "padic(5)"));
  return with_field(spec, [&](auto f) -> Output {
    if (cmd == "minval") return cmd_minval(o, f);
    if (cmd == "locpoly") return cmd_locpoly(o, f);
    if (cmd == "member") return cmd_member(o, f);
    if (cmd == "ideal") return cmd_ideal(o, f);
    if (cmd == "dichotomy") return cmd_dichotomy(o, f);
    throw ParseError(cmd.empty() ? "no command given" : "unknown command '" + cmd + "'");
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact valuations, minimum valuation functions and integer-valued rational functions"};
  app.require_subcommand(0, 1);
  Options o;
  std::string config;
  app.add_option("--config", config, "JSON file with default option values");
  const std::map<std::string, std::string> help = {
      {"seed", "RNG seed (default 1)"},
      {"depth", "certification depth, 1..8 (default 3)"},
      {"samples", "sample count; 0 keeps each suite's default"},
      {"out", "write output to this file"},
      {"format", "json or csv"},
      {"field", "padic(p), tadic(R), lex2(R) or hahn(R); R is GF(q) or GF(q)(u)"},
      {"sub", "residue subfield M of a PVD: GF(q), whole, constants or GF(q)(u^(p^e))"},
      {"f", "rational function in x"},
      {"t", "field element for locpoly, or the constant t for constructions"},
      {"domain", "ring, pvd or intersection"},
      {"e", "ring, field or list"},
      {"points", "comma-separated points when --e list"},
      {"primes", "comma-separated primes"},
      {"n", "exponent n for constructions (default 2)"},
      {"phi", "rational function over Q for psi and separator"},
      {"phi1", "first rational function for rho"},
      {"phi2", "second rational function for rho"},
      {"ideal", "mstar, pointed:<a>[@i], m, m_d or m^k"},
      {"source", "residue field L for scan (default GF(4))"},
      {"target", "subfield M for scan (default GF(2))"},
      {"degree", "degree bound for scan (default 2)"},
      {"exceptions", "allowed exceptional points for scan (default 0)"},
      {"from", "sweep start (default -3)"},
      {"to", "sweep end (default 3)"},
      {"step", "sweep step"}};
  for (const auto& name : kOptionNames) app.add_option("--" + name, o.v[name], help.at(name));
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"minval", "minimum valuation function of --f, with a sweep"},
      {"locpoly", "local polynomials of --f at --t"},
      {"member", "certify --f in IntR(E, D)"},
      {"ideal", "membership of --f in --ideal"},
      {"dichotomy", "sign pattern of minval on a Hahn PVD"},
      {"construct", "theta | psi | rho | separator | witness"},
      {"scan", "fieldmaps"},
      {"verify", "run a verification suite, or all"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help)->fallthrough();
    if (name == "construct" || name == "scan" || name == "verify") sub->add_option("what", o.what, "target")->required();
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }
  for (auto* sub : app.get_subcommands()) o.command = sub->get_name();

  try {
    if (!config.empty()) apply_config(config, o);
    std::string format = o.get("format", "json");
    if (format != "json" && format != "csv") throw ParseError("--format must be json or csv");
    Output out = dispatch(o);
    std::string text;
    if (format == "csv") {
      if (out.csv.empty()) throw ParseError("command '" + o.command + "' has no CSV output");
      text = out.csv;
    } else {
      text = envelope(o.command + (o.what.empty() ? "" : " " + o.what), out.json).dump(2) + "\n";
    }
    if (o.has("out")) {
      std::ofstream f(o.get("out"));
      if (!f) throw ParseError("cannot write " + o.get("out"));
      f << text;
    } else {
      std::cout << text;
    }
    if (out.code == kViolation) std::cerr << "violation found; see the report\n";
    return out.code;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: invalid number: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: number out of range: " << e.what() << "\n";
    return kUsage;
  }
}
