#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "context.hpp"
#include "grunsky.hpp"
#include "semigroup.hpp"

namespace propermap {

struct Thresholds {
  double exclusion = 0.2;        // half-width (radians) of the arcs skipped around poles
  double boundary_real = 1e-6;   // scale-free max |Re F| on the boundary
  double pole = 0.05;            // max |1/F| at the nodes next to a pole
  double period = 1e-8;          // scale-free Im-F period per cycle
};

struct PoleIndicator {
  BoundaryPoint point;
  double inverse_modulus = 0.0;  // max |1/F| at the two neighbouring nodes
};

struct PropernessReport {
  double boundary_real = 0.0;  // max |Re F| / median |F| outside exclusion arcs
  double median_modulus = 0.0;
  std::vector<PoleIndicator> poles;
  int degree = 0;
  double degree_raw = 0.0;
  int degree_offset = -1;    // count on the offset cycles (a lower bound)
  int degree_boundary = -1;  // count on the boundary
  int expected_degree = 0;
  std::vector<int> multiplicities;
  std::vector<int> expected_multiplicities;
  std::vector<double> period_residuals;  // one per curve
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

PropernessReport certify(const HolomorphicMap& f, const Thresholds& thresholds = {});

/// max |Re F| over boundary nodes outside the exclusion arcs divided by the
/// median |F| over the same nodes.
double reflection_real_check(const HolomorphicMap& f, double exclusion = 0.2, double* median = nullptr);

/// |Im of the increase of F around the offset cycle of each curve| divided by
/// the median boundary |F|, with F' from the analytic derivative.
std::vector<double> period_residuals(const HolomorphicMap& f);

struct PrimitivePairCertificate {
  std::vector<BoundaryPoint> first;   // marked points of F1
  std::vector<BoundaryPoint> second;  // marked points of F2
  std::vector<cplx> values;           // F1 at the marked points of F2
  double min_distance = 0.0;
  bool separated = false;
};

/// Re-evaluates F1 at the given points and records their separation.
PrimitivePairCertificate certify_primitive_pair(const GrunskyMap& f1, const std::vector<BoundaryPoint>& second);

struct PrimitivePair {
  GrunskyPtr second;
  PrimitivePairCertificate certificate;
};

/// Searches one marked point per curve (64 seeded candidates each) so that the
/// values of F1 there are finite and maximally separated, then builds F2.
PrimitivePair primitive_pair(const GrunskyMap& f1, std::uint64_t seed = 1, double exclusion = 0.2);

/// max over j of max_m |Im(F_j'/F_1')| on the boundary nodes.
double double_quotient_check(const MapContext& ctx);

}  // namespace propermap
