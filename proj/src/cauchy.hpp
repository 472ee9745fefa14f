#pragma once

#include <vector>

#include "geom.hpp"
#include "spectral.hpp"

namespace propermap {

/// Samples of a density on every boundary node together with the Cauchy
/// integral (1/2 pi i) \oint phi(w) dw / (w - z) over the positively oriented
/// boundary, discretized with the trapezoid rule.
class CauchyDensity {
 public:
  CauchyDensity() = default;
  CauchyDensity(DomainPtr domain, std::vector<cplx> values);

  const Domain& domain() const { return *domain_; }
  const std::vector<cplx>& values() const { return values_; }

  cplx interior(cplx z) const;
  cplx interior_derivative(cplx z) const;

  /// Trigonometric interpolation of the density itself.
  cplx boundary_value(int curve, double t) const;
  /// d(phi)/dw along the boundary.
  cplx boundary_w_derivative(int curve, double t) const;

  /// Limit of the Cauchy integral as z approaches the boundary point from the
  /// domain. Equals the density when the density is the trace of a function
  /// holomorphic in the domain.
  cplx boundary_limit(int curve, double t) const;
  std::vector<cplx> boundary_limit_at_nodes() const;

 private:
  DomainPtr domain_;
  std::vector<cplx> values_;
  std::vector<cplx> dw_;  // T_l * w_l / (2 pi i)
  std::vector<TrigInterpolant> interp_;
  std::vector<cplx> w_derivative_nodes_;
};

}  // namespace propermap
