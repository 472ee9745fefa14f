#pragma once

#include <Eigen/Dense>

#include <memory>
#include <string>
#include <vector>

#include "cauchy.hpp"
#include "geom.hpp"

namespace propermap {

struct Diagnostics {
  std::vector<std::string> warnings;
  void warn(std::string message) { warnings.push_back(std::move(message)); }
};

/// Cauchy kernel H(z, w) = T(w) / (2 pi i (w - z)).
inline cplx cauchy_kernel(cplx z, cplx w, cplx tangent_w) {
  return tangent_w / (kTwoPi * kI * (w - z));
}

/// Nystrom discretization of the Kerzman-Stein operator A(z,w) =
/// H(z,w) - conj(H(w,z)) on the trapezoid nodes. The unknowns are scaled by
/// sqrt(arc-length weight) so the discrete A is exactly skew-hermitian and
/// I - A is invertible. One LU factorization serves every base point: interior
/// bases solve (I - A) s = conj(H(a, .)), boundary bases solve the adjoint
/// system (I + A) phi = -A(., b).
class SzegoSystem {
 public:
  explicit SzegoSystem(DomainPtr domain);

  const Domain& domain() const { return *domain_; }
  const DomainPtr& domain_ptr() const { return domain_; }
  std::size_t size() const { return domain_->node_count(); }

  /// Reciprocal-condition based estimate of cond(I - A) in the 1-norm.
  double condition_estimate() const { return condition_; }
  /// max |A + A^*| of the scaled discrete operator (zero by construction).
  double skew_defect() const;

  /// A(w_m, b) for a boundary point b given by location and tangent.
  cplx kernel_column(std::size_t m, cplx b, cplx tangent_b, bool coincident) const;

  Eigen::VectorXcd solve(const Eigen::VectorXcd& rhs) const;
  Eigen::VectorXcd solve_adjoint(const Eigen::VectorXcd& rhs) const;
  double relative_residual(const Eigen::VectorXcd& x, const Eigen::VectorXcd& rhs) const;

  const Eigen::VectorXd& sqrt_weights() const { return sqrt_w_; }

 private:
  DomainPtr domain_;
  Eigen::MatrixXcd matrix_;  // I - D A D
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
  Eigen::VectorXd sqrt_w_;
  double condition_ = 0.0;
};

using SzegoSystemPtr = std::shared_ptr<const SzegoSystem>;

/// Boundary data of S(., a) and L(., a) for an interior base point a.
struct SzegoSolution {
  DomainPtr domain;
  cplx base;
  std::vector<cplx> szego;       // S(z_m, a)
  std::vector<cplx> garabedian;  // L(z_m, a)
  CauchyDensity szego_density;
  CauchyDensity garabedian_regular;  // L(., a) - 1/(2 pi (. - a))
  double szego_aa = 0.0;             // S(a, a) via the reproducing property
  double residual = 0.0;
  double condition = 0.0;
  std::vector<std::string> warnings;
};

SzegoSolution solve_szego_boundary(const SzegoSystem& system, cplx a);

/// L(z_m, a) = i conj(S(z_m, a)) conj(T(z_m)).
std::vector<cplx> garabedian_boundary(const Domain& domain, const std::vector<cplx>& szego);

cplx szego_boundary(const SzegoSolution& s, const BoundaryPoint& z);
cplx garabedian_boundary_at(const SzegoSolution& s, const BoundaryPoint& z);

cplx szego_interior(const SzegoSolution& s, cplx z, Diagnostics* diag = nullptr);
cplx szego_interior_derivative(const SzegoSolution& s, cplx z);
cplx garabedian_interior(const SzegoSolution& s, cplx z, Diagnostics* diag = nullptr);
/// 1/L(z, a), holomorphic across z = a.
cplx inverse_garabedian(const SzegoSolution& s, cplx z);
cplx inverse_garabedian_derivative(const SzegoSolution& s, cplx z);

/// f_a = S(., a) / L(., a).
cplx ahlfors_map(const SzegoSolution& s, cplx z);
cplx ahlfors_map(const SzegoSolution& s, const BoundaryPoint& z);
/// f_a'(a) = 2 pi S(a, a).
double ahlfors_derivative_at_base(const SzegoSolution& s);

/// The n-1 interior zeros of S(., a). Throws InadmissibleBase when the count is
/// wrong or the zeros are not simple and distinct.
std::vector<cplx> find_szego_zeros(const SzegoSolution& s);

/// Zero count of S(., a) by the argument principle on the boundary.
double szego_zero_count(const SzegoSolution& s);

/// S(., b) for a boundary point b: H(., b) plus the Cauchy integral of a smooth
/// density phi_b solving (I + A) phi_b = -A(., b).
class BoundarySzego {
 public:
  BoundarySzego(const SzegoSystem& system, const BoundaryPoint& b);

  const BoundaryPoint& point() const { return point_; }
  cplx location() const { return location_; }
  cplx tangent() const { return tangent_; }

  cplx interior(cplx z) const;
  cplx interior_derivative(cplx z) const;
  /// 1/S(z, b), regular at z = b.
  cplx inverse_interior(cplx z) const;
  cplx inverse_interior_derivative(cplx z) const;
  /// S(z0, b) for a boundary point z0; infinite at z0 = b.
  cplx boundary(const BoundaryPoint& z0) const;
  cplx inverse_boundary(const BoundaryPoint& z0) const;
  std::vector<cplx> boundary_at_nodes() const;

  const CauchyDensity& density() const { return phi_; }

 private:
  BoundaryPoint point_;
  cplx location_, tangent_;
  CauchyDensity phi_;
};

/// sigma_{n+1}/sigma_1 of M[z,w] = (1 - f(z) conj f(w)) S(z,w) on p x q
/// interior points.
struct RankCheck {
  std::vector<double> singular_values;
  double ratio = 0.0;
};
RankCheck szego_rank_check(const SzegoSystem& system, const SzegoSolution& base, int p, int q);

/// Interior points spread over the domain, at least `min_fraction` of the
/// reference point's boundary distance away from the boundary.
std::vector<cplx> interior_sample_points(const Domain& d, std::size_t count, double min_fraction,
                                         std::size_t offset = 0);

}  // namespace propermap
