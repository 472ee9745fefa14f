#include "serialize.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>

#include "error.hpp"

namespace propermap {

namespace {

json pair_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx pair_from(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(ErrorCode::InvalidArgument, std::string(what) + " must be a pair of numbers");
  return {j[0].get<double>(), j[1].get<double>()};
}

double number(const json& obj, const char* key) {
  if (!obj.contains(key) || !obj[key].is_number())
    fail(ErrorCode::InvalidArgument, std::string("missing numeric field \"") + key + "\"");
  return obj[key].get<double>();
}

CurveSpec curve_from_json(const json& c) {
  if (!c.is_object() || !c.contains("kind") || !c["kind"].is_string())
    fail(ErrorCode::InvalidDomain, "every curve needs a \"kind\"");
  const std::string kind = c["kind"].get<std::string>();
  if (kind == "circle") {
    Circle out{pair_from(c.value("center", json::array({0.0, 0.0})), "center"), number(c, "radius")};
    if (!(out.radius > 0)) fail(ErrorCode::InvalidDomain, "circle radius must be positive");
    return out;
  }
  if (kind == "ellipse") {
    if (!c.contains("semi_axes")) fail(ErrorCode::InvalidArgument, "ellipse needs \"semi_axes\"");
    const cplx ax = pair_from(c["semi_axes"], "semi_axes");
    Ellipse out{pair_from(c.value("center", json::array({0.0, 0.0})), "center"), ax.real(), ax.imag()};
    if (!(out.semi_x > 0 && out.semi_y > 0)) fail(ErrorCode::InvalidDomain, "ellipse semi-axes must be positive");
    return out;
  }
  if (kind == "trig") {
    if (!c.contains("coeffs") || !c["coeffs"].is_array() || c["coeffs"].empty())
      fail(ErrorCode::InvalidArgument, "trig curve needs a nonempty \"coeffs\" list");
    TrigCurve out;
    for (const auto& e : c["coeffs"]) {
      if (!e.contains("k") || !e["k"].is_number_integer())
        fail(ErrorCode::InvalidArgument, "trig coefficient needs an integer \"k\"");
      out.coeffs.emplace_back(e["k"].get<int>(), pair_from(e.at("c"), "c"));
    }
    std::sort(out.coeffs.begin(), out.coeffs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < out.coeffs.size(); ++i)
      if (out.coeffs[i].first == out.coeffs[i - 1].first)
        fail(ErrorCode::InvalidArgument, "duplicate trig coefficient index");
    return out;
  }
  fail(ErrorCode::InvalidDomain, "unknown curve kind \"" + kind + "\"");
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

json complex_list(const std::vector<cplx>& v) {
  json out = json::array();
  for (const cplx& z : v) out.push_back(pair_json(z));
  return out;
}

json term_json(const GrunskyMap& f, double coeff) {
  json marked = json::array();
  for (const auto& p : f.marked()) marked.push_back(point_to_json(p));
  return {{"marked", marked},
          {"base", base_to_json(f.base())},
          {"scale", f.gauge().scale},
          {"shift", f.gauge().shift},
          {"coeff", coeff},
          {"weights", f.coefficients().a}};
}

json samples_json(const HolomorphicMap& f) {
  json out = json::array();
  for (const cplx z : fingerprint_points(f.domain()))
    out.push_back({{"z", pair_json(z)}, {"F", pair_json(f.value(z))}});
  return out;
}

json decomposition_json(const std::vector<WeightedPoint>& w) {
  json out = json::array();
  for (const auto& p : w) out.push_back({{"curve", p.point.curve + 1}, {"t", p.point.t}, {"weight", p.weight}});
  return out;
}

}  // namespace

DomainFile parse_domain(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidArgument, std::string("domain file is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("curves") || !j["curves"].is_array() || j["curves"].empty())
    fail(ErrorCode::InvalidDomain, "domain file needs a nonempty \"curves\" list");
  DomainFile out;
  for (const auto& c : j["curves"]) out.curves.push_back(curve_from_json(c));
  if (j.contains("nodes")) {
    if (!j["nodes"].is_number_integer()) fail(ErrorCode::InvalidArgument, "\"nodes\" must be an integer");
    out.nodes = j["nodes"].get<int>();
  }
  out.hash = domain_hash(out.curves);
  return out;
}

json curve_to_json(const CurveSpec& c) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Circle>) {
          return {{"kind", "circle"}, {"center", pair_json(v.center)}, {"radius", v.radius}};
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          return {{"kind", "ellipse"}, {"center", pair_json(v.center)}, {"semi_axes", {v.semi_x, v.semi_y}}};
        } else {
          auto sorted = v.coeffs;
          std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
          json coeffs = json::array();
          for (const auto& [k, c] : sorted) coeffs.push_back({{"k", k}, {"c", pair_json(c)}});
          return {{"kind", "trig"}, {"coeffs", coeffs}};
        }
      },
      c);
}

std::string domain_hash(const std::vector<CurveSpec>& curves) {
  json list = json::array();
  for (const auto& c : curves) list.push_back(curve_to_json(c));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, fnv1a(list.dump()));
  return buf;
}

json domain_summary(const Domain& d, const std::string& hash) {
  json curves = json::array();
  for (int k = 0; k < d.curve_count(); ++k) {
    json c = curve_to_json(d.curve(k));
    c["index"] = k + 1;
    c["perimeter"] = d.perimeter(k);
    c["reach"] = d.reach(k);
    c["role"] = k == d.outer_curve() ? "outer" : "inner";
    curves.push_back(c);
  }
  const auto bb = d.bounding_box();
  return {{"domain_hash", hash},
          {"nodes", d.nodes_per_curve()},
          {"connectivity", d.curve_count()},
          {"curves", curves},
          {"diameter", d.diameter()},
          {"bounding_box", {bb[0], bb[1], bb[2], bb[3]}},
          {"reference_point", pair_json(d.reference_point())}};
}

json point_to_json(const BoundaryPoint& p) { return {{"curve", p.curve + 1}, {"t", p.t}}; }

BoundaryPoint point_from_json(const json& j) {
  if (!j.is_object() || !j.contains("curve") || !j["curve"].is_number_integer())
    fail(ErrorCode::InvalidArgument, "boundary point needs an integer \"curve\"");
  return {j["curve"].get<int>() - 1, number(j, "t")};
}

json base_to_json(const BasePoint& b) {
  if (b.kind == BaseKind::Interior) return {{"kind", "interior"}, {"point", pair_json(b.point)}};
  return {{"kind", "boundary"}, {"curve", b.boundary.curve + 1}, {"t", b.boundary.t}};
}

BasePoint base_from_json(const json& j) {
  BasePoint b;
  const std::string kind = j.value("kind", "");
  if (kind == "interior") {
    b.kind = BaseKind::Interior;
    b.point = pair_from(j.at("point"), "point");
  } else if (kind == "boundary") {
    b.kind = BaseKind::Boundary;
    b.boundary = point_from_json(j);
  } else {
    fail(ErrorCode::InvalidArgument, "base kind must be \"interior\" or \"boundary\"");
  }
  return b;
}

json map_to_json(const GrunskyMap& f, const std::string& hash) {
  return {{"format", "propermap-map"},
          {"version", 1},
          {"kind", "grunsky"},
          {"domain_hash", hash},
          {"nodes", f.domain().nodes_per_curve()},
          {"terms", json::array({term_json(f, 1.0)})},
          {"poisson_scale", f.poisson_scale()},
          {"szego_zeros", complex_list(f.szego_zeros())},
          {"samples", samples_json(f)}};
}

json map_to_json(const ProperMap& f, const std::string& hash) {
  json terms = json::array();
  for (const auto& t : f.terms()) terms.push_back(term_json(*t.map, t.coeff));
  return {{"format", "propermap-map"},
          {"version", 1},
          {"kind", "proper"},
          {"domain_hash", hash},
          {"nodes", f.domain().nodes_per_curve()},
          {"terms", terms},
          {"decomposition", decomposition_json(f.decomposition())},
          {"samples", samples_json(f)}};
}

MapSpec parse_map(const json& j) {
  if (!j.is_object() || j.value("format", "") != "propermap-map")
    fail(ErrorCode::InvalidArgument, "not a map artifact");
  MapSpec s;
  const std::string kind = j.value("kind", "");
  if (kind != "grunsky" && kind != "proper") fail(ErrorCode::InvalidArgument, "unknown map kind");
  s.proper = kind == "proper";
  s.domain_hash = j.value("domain_hash", "");
  s.nodes = j.value("nodes", 0);
  if (!j.contains("terms") || !j["terms"].is_array() || j["terms"].empty())
    fail(ErrorCode::InvalidArgument, "map needs a nonempty \"terms\" list");
  for (const auto& t : j["terms"]) {
    TermSpec term;
    for (const auto& p : t.at("marked")) term.marked.push_back(point_from_json(p));
    term.base = base_from_json(t.at("base"));
    term.gauge.scale = number(t, "scale");
    term.gauge.shift = number(t, "shift");
    term.coeff = t.contains("coeff") ? number(t, "coeff") : 1.0;
    if (t.contains("weights"))
      for (const auto& w : t["weights"]) term.weights.push_back(w.get<double>());
    s.terms.push_back(std::move(term));
  }
  if (!s.proper && s.terms.size() != 1) fail(ErrorCode::InvalidArgument, "a Grunsky artifact has one term");
  if (j.contains("decomposition"))
    for (const auto& p : j["decomposition"]) s.decomposition.push_back({point_from_json(p), number(p, "weight")});
  if (j.contains("samples"))
    for (const auto& p : j["samples"])
      s.samples.emplace_back(pair_from(p.at("z"), "z"), pair_from(p.at("F"), "F"));
  return s;
}

RebuiltMap rebuild(const ContextPtr& ctx, const MapSpec& spec) {
  RebuiltMap out;
  std::vector<Term> terms;
  for (const auto& t : spec.terms) {
    if (!(t.gauge.scale > 0)) fail(ErrorCode::InvalidArgument, "term scale must be positive");
    terms.push_back({GrunskyMap::build(ctx, t.marked, t.base, t.gauge), t.coeff});
  }
  if (!spec.proper) {
    out.grunsky = terms.front().map;
    out.map = out.grunsky;
  } else {
    out.proper = combine_or_throw(terms);
    out.map = out.proper;
  }
  return out;
}

std::vector<cplx> fingerprint_points(const Domain& d) { return interior_sample_points(d, 8, 0.5); }

json report_to_json(const PropernessReport& r) {
  json poles = json::array();
  for (const auto& p : r.poles)
    poles.push_back({{"curve", p.point.curve + 1}, {"t", p.point.t}, {"inverse_modulus", p.inverse_modulus}});
  return {{"passed", r.passed()},
          {"boundary_real", r.boundary_real},
          {"median_modulus", r.median_modulus},
          {"poles", poles},
          {"degree", r.degree},
          {"degree_raw", r.degree_raw},
          {"degree_offset", r.degree_offset},
          {"degree_boundary", r.degree_boundary},
          {"expected_degree", r.expected_degree},
          {"multiplicities", r.multiplicities},
          {"expected_multiplicities", r.expected_multiplicities},
          {"period_residuals", r.period_residuals},
          {"failures", r.failures}};
}

json combine_report_to_json(const CombineReport& r) {
  return {{"valid", r.valid}, {"weights", decomposition_json(r.weights)}, {"violations", r.violations}};
}

json certificate_to_json(const PrimitivePairCertificate& c) {
  json first = json::array(), second = json::array();
  for (const auto& p : c.first) first.push_back(point_to_json(p));
  for (const auto& p : c.second) second.push_back(point_to_json(p));
  return {{"first", first},
          {"second", second},
          {"values", complex_list(c.values)},
          {"min_distance", c.min_distance},
          {"separated", c.separated}};
}

void apply_threshold(Thresholds& th, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) fail(ErrorCode::InvalidArgument, "threshold must be key=value: " + assignment);
  const std::string key = assignment.substr(0, eq);
  double value = 0.0;
  try {
    std::size_t used = 0;
    value = std::stod(assignment.substr(eq + 1), &used);
    if (used != assignment.size() - eq - 1) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    fail(ErrorCode::InvalidArgument, "threshold value is not a number: " + assignment);
  }
  if (!(value > 0)) fail(ErrorCode::InvalidArgument, "threshold must be positive: " + assignment);
  if (key == "exclusion")
    th.exclusion = value;
  else if (key == "boundary_real")
    th.boundary_real = value;
  else if (key == "pole")
    th.pole = value;
  else if (key == "period")
    th.period = value;
  else
    fail(ErrorCode::InvalidArgument, "unknown threshold \"" + key + "\"");
}

}  // namespace propermap
