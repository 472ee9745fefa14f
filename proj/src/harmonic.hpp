#pragma once

#include <Eigen/Dense>

#include <memory>
#include <vector>

#include "cauchy.hpp"
#include "geom.hpp"
#include "spectral.hpp"

namespace propermap {

/// Bordered Nystrom system for the interior Dirichlet problem written as
/// u = Re C[mu] + sum_k s_k log|z - c_k|, c_k a point inside hole k. The
/// double-layer operator has an (n-1)-dimensional kernel on multiply connected
/// domains; the side conditions int_{gamma_k} mu ds = 0 on the inner curves
/// remove it. One LU factorization serves every boundary datum.
class HarmonicSystem {
 public:
  explicit HarmonicSystem(DomainPtr domain);

  const Domain& domain() const { return *domain_; }
  const DomainPtr& domain_ptr() const { return domain_; }
  double condition_estimate() const { return condition_; }

  /// Solves for (mu, s) with the given real boundary data at the nodes.
  /// Returns the relative residual.
  double solve(const std::vector<double>& data, std::vector<double>& mu, std::vector<double>& sources) const;

 private:
  DomainPtr domain_;
  Eigen::MatrixXd matrix_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  double condition_ = 0.0;
};

/// Harmonic measure of one boundary curve: 1 on that curve, 0 on the others.
class HarmonicMeasure {
 public:
  HarmonicMeasure(const HarmonicSystem& system, int curve);

  int curve() const { return curve_; }
  const Domain& domain() const { return *domain_; }
  const DomainPtr& domain_ptr() const { return domain_; }
  const std::vector<double>& density() const { return mu_; }
  const std::vector<double>& sources() const { return sources_; }
  double residual() const { return residual_; }

  double value(cplx z) const;
  /// max_m |trace(z_m) - indicator(z_m)| using the boundary limit of the
  /// representation.
  double trace_defect() const;

  /// F' = 2 d(omega)/dz = C[d mu/dw](z) + sum_k s_k / (z - c_k).
  cplx f_prime(cplx z) const;
  cplx f_prime_boundary(const BoundaryPoint& z) const;
  std::vector<cplx> f_prime_at_nodes() const;

 private:
  DomainPtr domain_;
  int curve_;
  std::vector<double> mu_;
  std::vector<double> sources_;
  CauchyDensity mu_density_;
  CauchyDensity mu_derivative_;  // d mu / dw
  double residual_ = 0.0;
};

/// Boundary samples of F_j' with trigonometric interpolation between nodes.
class FPrimeField {
 public:
  FPrimeField() = default;
  explicit FPrimeField(const HarmonicMeasure& h);

  int curve() const { return curve_; }
  const std::vector<cplx>& samples() const { return samples_; }
  cplx at(const BoundaryPoint& b) const;

  /// max_m |F'T + conj(F'T)|: F'T must be purely imaginary.
  double imaginary_defect() const;
  double min_modulus() const;

 private:
  DomainPtr domain_;
  int curve_ = 0;
  std::vector<cplx> samples_;
  std::vector<TrigInterpolant> interp_;
};

/// max_m |Im(F_j'(z_m) / F_1'(z_m))|.
double reflection_quotient_check(const FPrimeField& f1, const FPrimeField& fj);

/// max_m |sum_j F_j'(z_m)|.
double f_prime_sum_defect(const std::vector<FPrimeField>& fields);

}  // namespace propermap
