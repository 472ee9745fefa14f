#pragma once

#include <array>
#include <complex>
#include <memory>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace propermap {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr cplx kI{0.0, 1.0};

struct Circle {
  cplx center;
  double radius = 1.0;
};

struct Ellipse {
  cplx center;
  double semi_x = 1.0;
  double semi_y = 1.0;
};

/// z(t) = sum_k c_k e^{ikt}
struct TrigCurve {
  std::vector<std::pair<int, cplx>> coeffs;
};

using CurveSpec = std::variant<Circle, Ellipse, TrigCurve>;

cplx curve_point(const CurveSpec& c, double t);
cplx curve_derivative(const CurveSpec& c, double t);
cplx curve_second_derivative(const CurveSpec& c, double t);

/// A point on boundary curve `curve` (0-based; the last curve is outermost)
/// at parameter t in [0, 2pi).
struct BoundaryPoint {
  int curve = 0;
  double t = 0.0;
};

/// Wraps t into [0, 2pi).
double wrap_parameter(double t);
/// Signed parameter difference a - b folded into (-pi, pi].
double parameter_distance(double a, double b);

bool same_point(const BoundaryPoint& a, const BoundaryPoint& b, double tol = 1e-9);

struct Quadrature {
  std::vector<double> t;
  std::vector<cplx> nodes;
  std::vector<double> weights;  // arc-length weights (2pi/N)|z'(t)|
};

/// Closed curve obtained by moving a boundary curve inward along its normal.
/// `derivs` are d/dt along the stored (counterclockwise) parametrization and
/// `orientation` is +1 for the outer curve, -1 for inner curves.
struct Cycle {
  int curve = 0;
  double offset = 0.0;
  double orientation = 1.0;
  std::vector<double> t;
  std::vector<cplx> nodes;
  std::vector<cplx> derivs;
};

/// Bounded n-connected domain. Curves are stored with counterclockwise
/// parametrizations; the standard orientation (domain on the left) is applied
/// when tangents are formed, which reverses the inner curves.
class Domain {
 public:
  static std::shared_ptr<const Domain> create(std::vector<CurveSpec> curves, int nodes);

  int curve_count() const { return static_cast<int>(curves_.size()); }
  int nodes_per_curve() const { return nodes_; }
  std::size_t node_count() const { return points_.size(); }
  int outer_curve() const { return curve_count() - 1; }
  double orientation(int curve) const { return curve == outer_curve() ? 1.0 : -1.0; }
  const CurveSpec& curve(int k) const { return curves_.at(static_cast<std::size_t>(k)); }
  const std::vector<CurveSpec>& curves() const { return curves_; }

  // Flattened node data, curve-major: index = curve * N + m.
  std::span<const cplx> points() const { return points_; }
  std::span<const cplx> derivatives() const { return derivs_; }
  std::span<const cplx> tangents() const { return tangents_; }
  std::span<const double> weights() const { return weights_; }
  std::span<const double> curvatures() const { return curvatures_; }
  std::size_t node_index(int curve, int m) const {
    return static_cast<std::size_t>(curve) * static_cast<std::size_t>(nodes_) +
           static_cast<std::size_t>(m);
  }
  int node_curve(std::size_t idx) const { return static_cast<int>(idx / static_cast<std::size_t>(nodes_)); }
  double node_parameter(std::size_t idx) const;
  std::span<const cplx> curve_points(int k) const;

  cplx point(int curve, double t) const;
  cplx derivative(int curve, double t) const;
  cplx second_derivative(int curve, double t) const;
  /// Unit tangent in the standard orientation.
  cplx tangent(int curve, double t) const;
  /// Signed curvature with respect to the standard orientation (T' = i k T).
  double curvature(int curve, double t) const;

  std::pair<cplx, cplx> point_and_tangent(const BoundaryPoint& b) const;
  Quadrature quadrature(int curve) const;

  double perimeter(int curve) const { return perimeters_.at(static_cast<std::size_t>(curve)); }
  double node_spacing(int curve) const { return perimeter(curve) / nodes_; }
  double min_node_spacing() const;
  double diameter() const { return diameter_; }
  std::array<double, 4> bounding_box() const { return bbox_; }
  double signed_area(int curve) const;

  double distance_to_curve(int curve, cplx z, double* t_nearest = nullptr) const;
  double distance_to_boundary(cplx z, BoundaryPoint* nearest = nullptr) const;
  /// Membership by winding numbers; throws NearBoundary within 1e-10*diameter.
  bool contains(cplx z) const;
  /// Like contains() but returns false instead of throwing near the boundary.
  bool contains_strict(cplx z) const;
  int winding_number(int curve, cplx z) const;

  double reach(int curve) const;
  Cycle offset_cycle(int curve, double eps, int samples = 0) const;

  /// A fixed point inside each hole (inner curve), used for log sources.
  cplx hole_point(int curve) const { return hole_points_.at(static_cast<std::size_t>(curve)); }
  /// Deterministic interior point far from the boundary.
  cplx reference_point() const { return reference_point_; }

 private:
  Domain() = default;
  void sample();
  void validate() const;
  void locate_hole_points();
  void locate_reference_point();

  std::vector<CurveSpec> curves_;
  int nodes_ = 0;
  std::vector<cplx> points_, derivs_, tangents_;
  std::vector<double> weights_, curvatures_;
  std::vector<double> perimeters_;
  std::vector<cplx> hole_points_;
  cplx reference_point_;
  double diameter_ = 0.0;
  std::array<double, 4> bbox_{};
};

using DomainPtr = std::shared_ptr<const Domain>;

}  // namespace propermap
