#include "szego.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "error.hpp"

namespace propermap {

namespace {

constexpr double kCoincidentParameter = 1e-9;

bool coincident_with_node(const Domain& d, const BoundaryPoint& b, std::size_t idx) {
  return d.node_curve(idx) == b.curve &&
         std::abs(parameter_distance(d.node_parameter(idx), b.t)) < kCoincidentParameter;
}

}  // namespace

SzegoSystem::SzegoSystem(DomainPtr domain) : domain_(std::move(domain)) {
  const auto& d = *domain_;
  const auto n = static_cast<Eigen::Index>(d.node_count());
  const auto pts = d.points();
  const auto tang = d.tangents();
  const auto w = d.weights();
  sqrt_w_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) sqrt_w_(i) = std::sqrt(w[static_cast<std::size_t>(i)]);

  matrix_ = Eigen::MatrixXcd::Identity(n, n);
  for (Eigen::Index m = 0; m < n; ++m) {
    const auto mm = static_cast<std::size_t>(m);
    for (Eigen::Index l = m + 1; l < n; ++l) {
      const auto ll = static_cast<std::size_t>(l);
      const cplx a = cauchy_kernel(pts[mm], pts[ll], tang[ll]) -
                     std::conj(cauchy_kernel(pts[ll], pts[mm], tang[mm]));
      const cplx scaled = sqrt_w_(m) * a * sqrt_w_(l);
      matrix_(m, l) = -scaled;
      matrix_(l, m) = std::conj(scaled);
    }
  }
  lu_.compute(matrix_);
  const double rc = lu_.rcond();
  condition_ = rc > 0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
  if (!(rc > 1e-12)) {
    std::ostringstream os;
    os << "Szego system is ill-conditioned (condition estimate " << condition_ << ")";
    fail(ErrorCode::IllConditioned, os.str());
  }
}

double SzegoSystem::skew_defect() const {
  const Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(matrix_.rows(), matrix_.cols()) - matrix_;
  return (a + a.adjoint()).cwiseAbs().maxCoeff();
}

cplx SzegoSystem::kernel_column(std::size_t m, cplx b, cplx tangent_b, bool coincident) const {
  if (coincident) return 0.0;
  const auto pts = domain_->points();
  const auto tang = domain_->tangents();
  return cauchy_kernel(pts[m], b, tangent_b) - std::conj(cauchy_kernel(b, pts[m], tang[m]));
}

Eigen::VectorXcd SzegoSystem::solve(const Eigen::VectorXcd& rhs) const { return lu_.solve(rhs); }

Eigen::VectorXcd SzegoSystem::solve_adjoint(const Eigen::VectorXcd& rhs) const {
  return lu_.adjoint().solve(rhs);
}

double SzegoSystem::relative_residual(const Eigen::VectorXcd& x, const Eigen::VectorXcd& rhs) const {
  const double scale = std::max(rhs.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
  return (matrix_ * x - rhs).cwiseAbs().maxCoeff() / scale;
}

SzegoSolution solve_szego_boundary(const SzegoSystem& system, cplx a) {
  const auto& d = system.domain();
  if (!d.contains(a)) fail(ErrorCode::InvalidArgument, "base point is not inside the domain");

  SzegoSolution s;
  s.domain = system.domain_ptr();
  s.base = a;
  const double dist = d.distance_to_boundary(a);
  if (dist < 5.0 * d.min_node_spacing()) {
    std::ostringstream os;
    os << "base point is " << dist / d.min_node_spacing()
       << " node spacings from the boundary; accuracy degraded";
    s.warnings.push_back(os.str());
  }

  const auto n = static_cast<Eigen::Index>(d.node_count());
  const auto pts = d.points();
  const auto tang = d.tangents();
  const auto& sw = system.sqrt_weights();
  Eigen::VectorXcd rhs(n);
  for (Eigen::Index m = 0; m < n; ++m) {
    const auto mm = static_cast<std::size_t>(m);
    rhs(m) = sw(m) * std::conj(cauchy_kernel(a, pts[mm], tang[mm]));
  }
  const Eigen::VectorXcd u = system.solve(rhs);
  s.residual = system.relative_residual(u, rhs);
  s.condition = system.condition_estimate();
  if (s.residual > 1e-10) {
    std::ostringstream os;
    os << "Szego solve residual " << s.residual << " (condition estimate " << s.condition << ")";
    fail(ErrorCode::IllConditioned, os.str());
  }

  s.szego.resize(static_cast<std::size_t>(n));
  const auto w = d.weights();
  double norm2 = 0.0;
  for (Eigen::Index m = 0; m < n; ++m) {
    const auto mm = static_cast<std::size_t>(m);
    s.szego[mm] = u(m) / sw(m);
    norm2 += std::norm(s.szego[mm]) * w[mm];
  }
  s.szego_aa = norm2;
  s.garabedian = garabedian_boundary(d, s.szego);

  std::vector<cplx> regular(s.garabedian.size());
  for (std::size_t m = 0; m < regular.size(); ++m)
    regular[m] = s.garabedian[m] - 1.0 / (kTwoPi * (pts[m] - a));
  s.szego_density = CauchyDensity(s.domain, s.szego);
  s.garabedian_regular = CauchyDensity(s.domain, std::move(regular));
  return s;
}

std::vector<cplx> garabedian_boundary(const Domain& domain, const std::vector<cplx>& szego) {
  const auto tang = domain.tangents();
  std::vector<cplx> out(szego.size());
  for (std::size_t m = 0; m < szego.size(); ++m) out[m] = kI * std::conj(szego[m]) * std::conj(tang[m]);
  return out;
}

cplx szego_boundary(const SzegoSolution& s, const BoundaryPoint& z) {
  return s.szego_density.boundary_value(z.curve, z.t);
}

cplx garabedian_boundary_at(const SzegoSolution& s, const BoundaryPoint& z) {
  const cplx sv = szego_boundary(s, z);
  return kI * std::conj(sv) * std::conj(s.domain->tangent(z.curve, z.t));
}

namespace {
void check_interior(const SzegoSolution& s, cplx z, Diagnostics* diag) {
  if (!diag) return;
  const double dist = s.domain->distance_to_boundary(z);
  if (dist < 3.0 * s.domain->min_node_spacing()) {
    std::ostringstream os;
    os << "evaluation point " << z << " is within 3 node spacings of the boundary";
    diag->warn(os.str());
  }
}
}  // namespace

cplx szego_interior(const SzegoSolution& s, cplx z, Diagnostics* diag) {
  check_interior(s, z, diag);
  return s.szego_density.interior(z);
}

cplx szego_interior_derivative(const SzegoSolution& s, cplx z) {
  return s.szego_density.interior_derivative(z);
}

cplx garabedian_interior(const SzegoSolution& s, cplx z, Diagnostics* diag) {
  if (std::abs(z - s.base) < 1e-12 * s.domain->diameter())
    fail(ErrorCode::InvalidArgument, "Garabedian kernel evaluated at its pole");
  check_interior(s, z, diag);
  return 1.0 / (kTwoPi * (z - s.base)) + s.garabedian_regular.interior(z);
}

cplx inverse_garabedian(const SzegoSolution& s, cplx z) {
  const cplx dz = z - s.base;
  return dz / (1.0 / kTwoPi + dz * s.garabedian_regular.interior(z));
}

cplx inverse_garabedian_derivative(const SzegoSolution& s, cplx z) {
  const cplx dz = z - s.base;
  const cplx r = s.garabedian_regular.interior(z);
  const cplx rp = s.garabedian_regular.interior_derivative(z);
  const cplx den = 1.0 / kTwoPi + dz * r;
  return (1.0 / kTwoPi - dz * dz * rp) / (den * den);
}

cplx ahlfors_map(const SzegoSolution& s, cplx z) {
  return szego_interior(s, z) * inverse_garabedian(s, z);
}

cplx ahlfors_map(const SzegoSolution& s, const BoundaryPoint& z) {
  return szego_boundary(s, z) / garabedian_boundary_at(s, z);
}

double ahlfors_derivative_at_base(const SzegoSolution& s) { return kTwoPi * s.szego_aa; }

double szego_zero_count(const SzegoSolution& s) {
  const auto& d = *s.domain;
  const auto tang = d.tangents();
  const auto w = d.weights();
  const auto dz = d.derivatives();
  const auto n = static_cast<std::size_t>(d.nodes_per_curve());
  cplx sum = 0.0;
  for (int k = 0; k < d.curve_count(); ++k) {
    const std::span<const cplx> seg(s.szego.data() + d.node_index(k, 0), n);
    const auto dt = spectral_derivative(seg);
    for (std::size_t m = 0; m < n; ++m) {
      const std::size_t i = d.node_index(k, static_cast<int>(m));
      sum += (dt[m] / dz[i]) / s.szego[i] * tang[i] * w[i];
    }
  }
  return (sum / (kTwoPi * kI)).real();
}

std::vector<cplx> find_szego_zeros(const SzegoSolution& s) {
  const auto& d = *s.domain;
  const int expected = d.curve_count() - 1;
  const double count = szego_zero_count(s);
  const long rounded = std::lround(count);
  if (std::abs(count - static_cast<double>(rounded)) > 1e-3 || rounded != expected) {
    std::ostringstream os;
    os << "argument principle counts " << count << " zeros of S(., a), expected " << expected
       << "; choose a different base point";
    fail(ErrorCode::InadmissibleBase, os.str());
  }
  if (expected == 0) return {};

  // Power sums (1/2 pi i) \oint (z - c)^p S'/S dz, then Newton's identities.
  const cplx center = d.reference_point();
  const auto tang = d.tangents();
  const auto w = d.weights();
  const auto dz = d.derivatives();
  const auto pts = d.points();
  const auto n = static_cast<std::size_t>(d.nodes_per_curve());
  std::vector<cplx> power(static_cast<std::size_t>(expected) + 1, 0.0);
  for (int k = 0; k < d.curve_count(); ++k) {
    const std::span<const cplx> seg(s.szego.data() + d.node_index(k, 0), n);
    const auto dt = spectral_derivative(seg);
    for (std::size_t m = 0; m < n; ++m) {
      const std::size_t i = d.node_index(k, static_cast<int>(m));
      const cplx f = (dt[m] / dz[i]) / s.szego[i] * tang[i] * w[i] / (kTwoPi * kI);
      cplx zp = 1.0;
      for (auto& p : power) {
        p += zp * f;
        zp *= (pts[i] - center);
      }
    }
  }
  const auto m = static_cast<std::size_t>(expected);
  std::vector<cplx> e(m + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t k = 1; k <= m; ++k) {
    cplx acc = 0.0;
    for (std::size_t i = 1; i <= k; ++i) {
      const double sign = (i % 2 == 1) ? 1.0 : -1.0;
      acc += sign * e[k - i] * power[i];
    }
    e[k] = acc / static_cast<double>(k);
  }
  // z^m - e1 z^{m-1} + e2 z^{m-2} - ... via companion matrix
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (std::size_t k = 1; k <= m; ++k) {
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    companion(0, static_cast<Eigen::Index>(k - 1)) = sign * e[k];
  }
  for (std::size_t r = 1; r < m; ++r) companion(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r - 1)) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(companion);
  std::vector<cplx> zeros;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) zeros.push_back(eig.eigenvalues()(i) + center);

  const double tol = 1e-12 * d.diameter();
  double scale = 0.0;
  for (const cplx& v : s.szego) scale = std::max(scale, std::abs(v));
  for (auto& z : zeros) {
    for (int it = 0; it < 20; ++it) {
      if (!d.contains_strict(z)) break;
      const cplx f = s.szego_density.interior(z);
      const cplx fp = s.szego_density.interior_derivative(z);
      if (std::abs(fp) == 0.0) break;
      const cplx step = f / fp;
      z -= step;
      if (std::abs(step) < tol) break;
    }
    if (!d.contains_strict(z)) fail(ErrorCode::InadmissibleBase, "a zero of S(., a) left the domain during refinement");
    const double deriv = std::abs(s.szego_density.interior_derivative(z));
    if (!(deriv > 1e-8 * scale / d.diameter()))
      fail(ErrorCode::InadmissibleBase, "zero of S(., a) is not simple; choose a different base point");
  }
  for (std::size_t i = 0; i < zeros.size(); ++i)
    for (std::size_t j = i + 1; j < zeros.size(); ++j)
      if (std::abs(zeros[i] - zeros[j]) < 1e-6 * d.diameter())
        fail(ErrorCode::InadmissibleBase, "zeros of S(., a) are clustered; choose a different base point");
  return zeros;
}

BoundarySzego::BoundarySzego(const SzegoSystem& system, const BoundaryPoint& b) : point_(b) {
  const auto& d = system.domain();
  if (b.curve < 0 || b.curve >= d.curve_count())
    fail(ErrorCode::InvalidArgument, "invalid curve index " + std::to_string(b.curve + 1));
  point_.t = wrap_parameter(b.t);
  std::tie(location_, tangent_) = d.point_and_tangent(point_);
  const auto n = static_cast<Eigen::Index>(d.node_count());
  const auto& sw = system.sqrt_weights();
  Eigen::VectorXcd rhs(n);
  for (Eigen::Index m = 0; m < n; ++m) {
    const auto mm = static_cast<std::size_t>(m);
    rhs(m) = -sw(m) * system.kernel_column(mm, location_, tangent_, coincident_with_node(d, point_, mm));
  }
  const Eigen::VectorXcd v = system.solve_adjoint(rhs);
  std::vector<cplx> phi(static_cast<std::size_t>(n));
  for (Eigen::Index m = 0; m < n; ++m) phi[static_cast<std::size_t>(m)] = v(m) / sw(m);
  phi_ = CauchyDensity(system.domain_ptr(), std::move(phi));
}

cplx BoundarySzego::interior(cplx z) const {
  return cauchy_kernel(z, location_, tangent_) + phi_.interior(z);
}

cplx BoundarySzego::interior_derivative(cplx z) const {
  const cplx r = location_ - z;
  return tangent_ / (kTwoPi * kI * r * r) + phi_.interior_derivative(z);
}

cplx BoundarySzego::inverse_interior(cplx z) const {
  const cplx r = location_ - z;
  return r / (tangent_ / (kTwoPi * kI) + r * phi_.interior(z));
}

cplx BoundarySzego::inverse_interior_derivative(cplx z) const {
  const cplx s = interior(z);
  return -interior_derivative(z) / (s * s);
}

cplx BoundarySzego::boundary(const BoundaryPoint& z0) const {
  if (same_point(z0, point_, kCoincidentParameter))
    return {std::numeric_limits<double>::infinity(), 0.0};
  const cplx z = phi_.domain().point(z0.curve, z0.t);
  return cauchy_kernel(z, location_, tangent_) + phi_.boundary_limit(z0.curve, z0.t);
}

cplx BoundarySzego::inverse_boundary(const BoundaryPoint& z0) const {
  if (same_point(z0, point_, kCoincidentParameter)) return 0.0;
  const cplx z = phi_.domain().point(z0.curve, z0.t);
  const cplx r = location_ - z;
  return r / (tangent_ / (kTwoPi * kI) + r * phi_.boundary_limit(z0.curve, z0.t));
}

std::vector<cplx> BoundarySzego::boundary_at_nodes() const {
  const auto& d = phi_.domain();
  auto out = phi_.boundary_limit_at_nodes();
  const auto pts = d.points();
  for (std::size_t m = 0; m < out.size(); ++m) {
    if (coincident_with_node(d, point_, m))
      out[m] = {std::numeric_limits<double>::infinity(), 0.0};
    else
      out[m] += cauchy_kernel(pts[m], location_, tangent_);
  }
  return out;
}

std::vector<cplx> interior_sample_points(const Domain& d, std::size_t count, double min_fraction,
                                         std::size_t offset) {
  const double dref = d.distance_to_boundary(d.reference_point());
  const auto box = d.bounding_box();
  constexpr int grid = 41;
  std::vector<cplx> candidates;
  for (int iy = 1; iy < grid - 1; ++iy) {
    for (int ix = 1; ix < grid - 1; ++ix) {
      const cplx z(box[0] + (box[1] - box[0]) * ix / (grid - 1), box[2] + (box[3] - box[2]) * iy / (grid - 1));
      if (d.contains_strict(z) && d.distance_to_boundary(z) >= min_fraction * dref) candidates.push_back(z);
    }
  }
  if (candidates.size() < count)
    fail(ErrorCode::InvalidArgument, "not enough interior sample points");
  std::vector<cplx> out;
  out.reserve(count);
  const double stride = static_cast<double>(candidates.size()) / static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto idx = (static_cast<std::size_t>(std::floor(stride * static_cast<double>(i))) + offset) % candidates.size();
    out.push_back(candidates[idx]);
  }
  return out;
}

RankCheck szego_rank_check(const SzegoSystem& system, const SzegoSolution& base, int p, int q) {
  const auto& d = system.domain();
  const int n = d.curve_count();
  if (p < n + 3 || q < n + 3) fail(ErrorCode::InvalidArgument, "rank check grid too small");
  const auto zs = interior_sample_points(d, static_cast<std::size_t>(p), 0.3, 0);
  const auto ws = interior_sample_points(d, static_cast<std::size_t>(q), 0.3, 1);
  Eigen::MatrixXcd mat(p, q);
  std::vector<cplx> fz(zs.size());
  for (std::size_t i = 0; i < zs.size(); ++i) fz[i] = ahlfors_map(base, zs[i]);
  for (std::size_t j = 0; j < ws.size(); ++j) {
    const SzegoSolution sw = solve_szego_boundary(system, ws[j]);
    const cplx fw = ahlfors_map(base, ws[j]);
    for (std::size_t i = 0; i < zs.size(); ++i) {
      mat(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          (1.0 - fz[i] * std::conj(fw)) * szego_interior(sw, zs[i]);
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(mat);
  RankCheck rc;
  const auto& sv = svd.singularValues();
  rc.singular_values.assign(sv.data(), sv.data() + sv.size());
  rc.ratio = sv(n) / sv(0);
  return rc;
}

}  // namespace propermap
