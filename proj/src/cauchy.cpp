#include "cauchy.hpp"

#include <cmath>

#include "error.hpp"

namespace propermap {

CauchyDensity::CauchyDensity(DomainPtr domain, std::vector<cplx> values)
    : domain_(std::move(domain)), values_(std::move(values)) {
  const auto& d = *domain_;
  if (values_.size() != d.node_count())
    fail(ErrorCode::InvalidArgument, "density size does not match the node count");
  dw_.resize(values_.size());
  const auto tang = d.tangents();
  const auto w = d.weights();
  for (std::size_t l = 0; l < values_.size(); ++l) dw_[l] = tang[l] * w[l] / (kTwoPi * kI);

  const auto n = static_cast<std::size_t>(d.nodes_per_curve());
  interp_.reserve(static_cast<std::size_t>(d.curve_count()));
  w_derivative_nodes_.resize(values_.size());
  const auto dz = d.derivatives();
  for (int k = 0; k < d.curve_count(); ++k) {
    const std::span<const cplx> seg(values_.data() + d.node_index(k, 0), n);
    interp_.emplace_back(seg);
    const auto dt = interp_.back().derivative_at_nodes();
    for (std::size_t m = 0; m < n; ++m) {
      const std::size_t i = d.node_index(k, static_cast<int>(m));
      w_derivative_nodes_[i] = dt[m] / dz[i];
    }
  }
}

cplx CauchyDensity::interior(cplx z) const {
  const auto pts = domain_->points();
  cplx sum = 0.0;
  for (std::size_t l = 0; l < values_.size(); ++l) sum += values_[l] * dw_[l] / (pts[l] - z);
  return sum;
}

cplx CauchyDensity::interior_derivative(cplx z) const {
  const auto pts = domain_->points();
  cplx sum = 0.0;
  for (std::size_t l = 0; l < values_.size(); ++l) {
    const cplx r = 1.0 / (pts[l] - z);
    sum += values_[l] * dw_[l] * r * r;
  }
  return sum;
}

cplx CauchyDensity::boundary_value(int curve, double t) const {
  return interp_.at(static_cast<std::size_t>(curve)).value(t);
}

cplx CauchyDensity::boundary_w_derivative(int curve, double t) const {
  return interp_.at(static_cast<std::size_t>(curve)).derivative(t) / domain_->derivative(curve, t);
}

cplx CauchyDensity::boundary_limit(int curve, double t) const {
  const auto& d = *domain_;
  const auto pts = d.points();
  const cplx z0 = d.point(curve, t);
  const cplx phi0 = boundary_value(curve, t);
  const double h = kTwoPi / d.nodes_per_curve();
  cplx sum = 0.0;
  for (std::size_t l = 0; l < values_.size(); ++l) {
    cplx g;
    if (d.node_curve(l) == curve) {
      const double tl = d.node_parameter(l);
      const double dt = parameter_distance(tl, t);
      if (std::abs(dt) < 1e-6 * h) {
        // difference quotient -> derivative at the midpoint (second order)
        g = boundary_w_derivative(curve, t + 0.5 * dt);
        sum += g * dw_[l];
        continue;
      }
    }
    g = (values_[l] - phi0) / (pts[l] - z0);
    sum += g * dw_[l];
  }
  return phi0 + sum;
}

std::vector<cplx> CauchyDensity::boundary_limit_at_nodes() const {
  const auto pts = domain_->points();
  const std::size_t total = values_.size();
  std::vector<cplx> out(total);
  for (std::size_t m = 0; m < total; ++m) {
    const cplx z0 = pts[m];
    const cplx phi0 = values_[m];
    cplx sum = w_derivative_nodes_[m] * dw_[m];
    for (std::size_t l = 0; l < total; ++l) {
      if (l == m) continue;
      sum += (values_[l] - phi0) / (pts[l] - z0) * dw_[l];
    }
    out[m] = phi0 + sum;
  }
  return out;
}

}  // namespace propermap
