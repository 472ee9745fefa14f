#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "context.hpp"
#include "periods.hpp"
#include "szego.hpp"

namespace propermap {

/// A holomorphic map of the domain into the closed right half plane whose
/// boundary poles are known.
class HolomorphicMap {
 public:
  virtual ~HolomorphicMap() = default;

  virtual const ContextPtr& context() const = 0;
  virtual cplx value(cplx z) const = 0;
  virtual cplx derivative(cplx z) const = 0;
  /// Boundary value; infinite at a pole.
  virtual cplx boundary_value(const BoundaryPoint& z) const = 0;
  virtual std::vector<cplx> boundary_values_at_nodes() const = 0;
  virtual std::vector<BoundaryPoint> poles() const = 0;
  /// Poles plus boundary points where individual terms are singular even if
  /// the sum is not.
  virtual std::vector<BoundaryPoint> singular_points() const { return poles(); }

  const Domain& domain() const { return context()->domain(); }
  int expected_degree() const { return static_cast<int>(poles().size()); }
};

enum class BaseKind { Interior, Boundary };

struct BasePoint {
  BaseKind kind = BaseKind::Interior;
  cplx point;             // interior base
  BoundaryPoint boundary;  // boundary base
};

/// F = scale * G + i * shift, G the raw kernel expression.
struct Gauge {
  double scale = 1.0;
  double shift = 0.0;
};

/// n-to-one map onto the right half plane sending the marked point b_j of
/// each boundary curve to infinity.
///
/// Interior base a:
///   G(z) = sum_j 2 a_j S(z,b_j) L(b_j,a) / L(z,a) + a_j |S(b_j,a)|^2 / S(a,a)
/// Boundary base a0 (so that F(a0) = 0):
///   G(z) = sum_j 2 a_j S(z,b_j) S(b_j,a0) / S(z,a0)
class GrunskyMap : public HolomorphicMap {
 public:
  /// Without a gauge, F is normalized by F(reference point) = 1.
  static std::shared_ptr<const GrunskyMap> build_interior(ContextPtr ctx, std::vector<BoundaryPoint> b,
                                                          cplx a, std::optional<Gauge> gauge = std::nullopt);
  static std::shared_ptr<const GrunskyMap> build_boundary(ContextPtr ctx, std::vector<BoundaryPoint> b,
                                                          BoundaryPoint a0,
                                                          std::optional<Gauge> gauge = std::nullopt);
  static std::shared_ptr<const GrunskyMap> build(ContextPtr ctx, std::vector<BoundaryPoint> b,
                                                 const BasePoint& base, std::optional<Gauge> gauge = std::nullopt);

  const ContextPtr& context() const override { return ctx_; }
  cplx value(cplx z) const override;
  cplx derivative(cplx z) const override;
  cplx boundary_value(const BoundaryPoint& z) const override;
  std::vector<cplx> boundary_values_at_nodes() const override;
  std::vector<BoundaryPoint> poles() const override { return marked_; }

  const std::vector<BoundaryPoint>& marked() const { return marked_; }
  const BasePoint& base() const { return base_; }
  const Gauge& gauge() const { return gauge_; }
  const PeriodMatrix& periods() const { return periods_; }
  const CoefficientVector& coefficients() const { return coefficients_; }
  /// Interior zeros of S(., a) (interior base only).
  const std::vector<cplx>& szego_zeros() const { return zeros_; }
  /// Factor k with Re F = k * sum_j a_j |S(z,b_j)|^2 / S(z,z); the Poisson
  /// mass of F at b_j is k * a_j.
  double poisson_scale() const { return poisson_scale_; }

  cplx raw_value(cplx z) const;
  cplx raw_derivative(cplx z) const;
  cplx raw_boundary_value(const BoundaryPoint& z) const;

  const SzegoSolution* interior_solution() const { return interior_.get(); }

 private:
  GrunskyMap() = default;
  void prepare(ContextPtr ctx, std::vector<BoundaryPoint> b);
  void fix_gauge(std::optional<Gauge> gauge);
  cplx base_factor(cplx z) const;
  cplx base_factor_derivative(cplx z) const;
  cplx base_factor_boundary(const BoundaryPoint& z) const;

  ContextPtr ctx_;
  std::vector<BoundaryPoint> marked_;
  BasePoint base_;
  Gauge gauge_;
  PeriodMatrix periods_;
  CoefficientVector coefficients_;
  std::vector<BoundarySzego> kernels_;
  std::vector<cplx> weights_;  // multiplies S(z, b_j) * base_factor(z)
  double constant_ = 0.0;
  std::shared_ptr<const SzegoSolution> interior_;
  std::optional<BoundarySzego> boundary_base_;
  std::vector<cplx> zeros_;
  double poisson_scale_ = 1.0;
};

using GrunskyPtr = std::shared_ptr<const GrunskyMap>;

/// Cayley transform (w - 1)/(w + 1) from the right half plane to the disc.
cplx cayley(cplx w);

struct MapSample {
  cplx z;
  cplx rhp;
  cplx disc;
  bool near_pole = false;
};

MapSample evaluate(const HolomorphicMap& f, cplx z);
MapSample evaluate(const HolomorphicMap& f, const BoundaryPoint& z);
/// Interior evaluation over many points on a worker pool. Points outside the
/// domain yield NaN samples.
std::vector<MapSample> evaluate_many(const HolomorphicMap& f, std::span<const cplx> points,
                                     unsigned threads = 0);

/// sum_j a_j |S(z,b_j)|^2 / S(z,z), from Szego solves based at z.
double poisson_sum(const GrunskyMap& f, cplx z);

/// max over points of |Re F(z) - k * poisson_sum(z)|, k = poisson_scale().
double real_part_identity_check(const GrunskyMap& f, std::span<const cplx> points);

struct DegreeResult {
  int degree = 0;
  double raw = 0.0;     // unrounded argument-principle value
  double offset = 0.0;  // offset distance used (outer curve)
  int attempts = 0;
  cplx w0;
  int offset_count = -1;    // best integral count on the offset cycles
  int boundary_count = -1;  // count on the boundary itself
};

/// Argument-principle count of solutions of F = w0 inside the offset cycles.
DegreeResult degree(const HolomorphicMap& f, cplx w0 = cplx(1.0, 0.3));

/// Preimages of w0 lying between an offset cycle and the boundary are not
/// counted, so each offset count is a lower bound for the degree. Scans w0
/// over magnitudes around the median |F| on the cycles, at the default offset
/// and three shrunken ones, and keeps the largest integral count. The limit on
/// the boundary itself is the winding of (F - r)/(F + r) along the boundary,
/// which is bounded at the poles; the degree is the larger of the two.
DegreeResult mapping_degree(const HolomorphicMap& f);

struct BoundaryWinding {
  double turns = 0.0;  // winding of (F - r)/(F + r) along the curve
  double r = 0.0;
  int pole_crossings = 0;  // jumps of Im F from -inf to +inf
};

/// Winding along one curve in the standard orientation, sampled at 4N
/// points off the singular points and bisected where the argument jumps.
/// r <= 0 takes the median |F| on the curve.
BoundaryWinding boundary_winding(const HolomorphicMap& f, int curve, double r = 0.0);

/// Default certification offset for a curve: 4 node spacings, capped at
/// half the reach.
double certification_offset(const Domain& d, int curve);

}  // namespace propermap
