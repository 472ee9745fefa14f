#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "grunsky.hpp"
#include "semigroup.hpp"
#include "verify.hpp"

namespace propermap {

using json = nlohmann::json;

struct DomainFile {
  std::vector<CurveSpec> curves;
  std::optional<int> nodes;
  std::string hash;
};

/// Parses {"curves":[...], "nodes": N}. Curve kinds: circle (center, radius),
/// ellipse (center, semi_axes), trig (coeffs: [{"k":k, "c":[re,im]}]).
DomainFile parse_domain(const std::string& text);

/// FNV-1a 64 of the canonical JSON of the curve list, as 16 hex digits.
/// Insensitive to whitespace, key order and the node count.
std::string domain_hash(const std::vector<CurveSpec>& curves);

json curve_to_json(const CurveSpec& c);
json domain_summary(const Domain& d, const std::string& hash);

json point_to_json(const BoundaryPoint& p);  // 1-based curve
BoundaryPoint point_from_json(const json& j);
json base_to_json(const BasePoint& b);
BasePoint base_from_json(const json& j);

/// Enough to rebuild a map on the same domain and N.
struct TermSpec {
  std::vector<BoundaryPoint> marked;
  BasePoint base;
  Gauge gauge;
  double coeff = 1.0;
  std::vector<double> weights;  // canonical a_j as stored
};

struct MapSpec {
  bool proper = false;
  std::string domain_hash;
  int nodes = 0;
  std::vector<TermSpec> terms;
  std::vector<WeightedPoint> decomposition;
  std::vector<std::pair<cplx, cplx>> samples;  // (z, F(z)) fingerprints
};

json map_to_json(const GrunskyMap& f, const std::string& hash);
json map_to_json(const ProperMap& f, const std::string& hash);
MapSpec parse_map(const json& j);

using MapPtr = std::shared_ptr<const HolomorphicMap>;

struct RebuiltMap {
  MapPtr map;
  GrunskyPtr grunsky;  // set for single Grunsky maps
  ProperPtr proper;    // set for combinations
};

RebuiltMap rebuild(const ContextPtr& ctx, const MapSpec& spec);

/// Interior points at which maps record their values for later comparison.
std::vector<cplx> fingerprint_points(const Domain& d);

json report_to_json(const PropernessReport& r);
json combine_report_to_json(const CombineReport& r);
json certificate_to_json(const PrimitivePairCertificate& c);

/// Sets one threshold from "key=value"; keys: exclusion, boundary_real, pole,
/// period.
void apply_threshold(Thresholds& th, const std::string& assignment);

}  // namespace propermap
