#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "grunsky.hpp"

namespace propermap {

struct WeightedPoint {
  BoundaryPoint point;
  double weight = 0.0;
};

struct Term {
  GrunskyPtr map;
  double coeff = 1.0;
};

struct CombineReport {
  std::vector<WeightedPoint> weights;  // merged, sorted by (curve, t)
  bool valid = false;
  std::vector<std::string> violations;
};

/// Merged Poisson weights of sum_k c_k F_k: c_k * poisson_scale_k * a_j at
/// each marked point, coincident points merged.
CombineReport merge_weights(const std::vector<Term>& terms);

class ProperMap;
using ProperPtr = std::shared_ptr<const ProperMap>;

struct CombineResult {
  ProperPtr map;  // null when the report is invalid
  CombineReport report;
};

CombineResult combine(const std::vector<Term>& terms);

/// Real linear combination of Grunsky maps that is proper onto the right half
/// plane: every merged weight positive and every curve covered.
class ProperMap : public HolomorphicMap {
 public:
  const ContextPtr& context() const override { return ctx_; }
  cplx value(cplx z) const override;
  cplx derivative(cplx z) const override;
  cplx boundary_value(const BoundaryPoint& z) const override;
  std::vector<cplx> boundary_values_at_nodes() const override;
  std::vector<BoundaryPoint> poles() const override;
  std::vector<BoundaryPoint> singular_points() const override;

  const std::vector<Term>& terms() const { return terms_; }
  const std::vector<WeightedPoint>& decomposition() const { return decomposition_; }
  std::vector<WeightedPoint> points_on_curve(int curve) const;

 private:
  friend CombineResult combine(const std::vector<Term>& terms);
  ProperMap() = default;

  ContextPtr ctx_;
  std::vector<Term> terms_;
  std::vector<WeightedPoint> decomposition_;
};

/// Like combine() but throws InvalidCombination with the report's violations.
ProperPtr combine_or_throw(const std::vector<Term>& terms);

/// Base used for Grunsky maps built on the fly by add_point/remove_point.
BasePoint default_base(const ProperMap& f);

/// Adds beta as a new pole: a Grunsky map through beta and one existing
/// decomposition point on every other curve, with coefficient c3 > 0.
ProperPtr add_point(const ProperMap& f, const BoundaryPoint& beta, double c3);

struct RemoveResult {
  ProperPtr map;
  double c0 = 0.0;
  double c = 0.0;
  int doublings = 0;
};

/// F + c0 F0 - c f with zero weight at b, F0 a proper map with poles at the
/// remaining points and f a Grunsky map through b.
RemoveResult remove_point(const ProperMap& f, const BoundaryPoint& b);

struct Multiplicity {
  int winding = 0;       // winding of the Cayley image along the curve
  int poles = 0;         // decomposition points on the curve
  int pole_crossings = 0;  // jumps of Im F from -inf to +inf
};

/// Covering multiplicity of the boundary curve under F.
Multiplicity boundary_multiplicity(const HolomorphicMap& f, int curve);

}  // namespace propermap
