#include "harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "error.hpp"

namespace propermap {

HarmonicSystem::HarmonicSystem(DomainPtr domain) : domain_(std::move(domain)) {
  const auto& d = *domain_;
  const auto m_nodes = static_cast<Eigen::Index>(d.node_count());
  const int holes = d.curve_count() - 1;
  const Eigen::Index size = m_nodes + holes;
  const auto pts = d.points();
  const auto tang = d.tangents();
  const auto w = d.weights();
  const auto kappa = d.curvatures();

  std::vector<cplx> dw(static_cast<std::size_t>(m_nodes));
  for (std::size_t l = 0; l < dw.size(); ++l) dw[l] = tang[l] * w[l] / (kTwoPi * kI);

  matrix_ = Eigen::MatrixXd::Zero(size, size);
  for (Eigen::Index m = 0; m < m_nodes; ++m) {
    const auto mm = static_cast<std::size_t>(m);
    for (Eigen::Index l = 0; l < m_nodes; ++l) {
      const auto ll = static_cast<std::size_t>(l);
      if (l == m)
        matrix_(m, l) = 0.5 + kappa[mm] * w[mm] / (2.0 * kTwoPi);
      else
        matrix_(m, l) = (dw[ll] / (pts[ll] - pts[mm])).real();
    }
    for (int k = 0; k < holes; ++k) matrix_(m, m_nodes + k) = std::log(std::abs(pts[mm] - d.hole_point(k)));
  }
  for (int k = 0; k < holes; ++k) {
    for (int j = 0; j < d.nodes_per_curve(); ++j) {
      const std::size_t idx = d.node_index(k, j);
      matrix_(m_nodes + k, static_cast<Eigen::Index>(idx)) = w[idx];
    }
  }
  lu_.compute(matrix_);
  const double rc = lu_.rcond();
  condition_ = rc > 0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
  if (!(rc > 1e-13)) {
    std::ostringstream os;
    os << "harmonic measure system is ill-conditioned (condition estimate " << condition_ << ")";
    fail(ErrorCode::IllConditioned, os.str());
  }
}

double HarmonicSystem::solve(const std::vector<double>& data, std::vector<double>& mu,
                             std::vector<double>& sources) const {
  const auto& d = *domain_;
  const auto m_nodes = static_cast<Eigen::Index>(d.node_count());
  if (data.size() != d.node_count()) fail(ErrorCode::InvalidArgument, "boundary data size mismatch");
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(matrix_.rows());
  for (Eigen::Index m = 0; m < m_nodes; ++m) rhs(m) = data[static_cast<std::size_t>(m)];
  const Eigen::VectorXd x = lu_.solve(rhs);
  const double scale = std::max(rhs.cwiseAbs().maxCoeff(), 1.0);
  const double residual = (matrix_ * x - rhs).cwiseAbs().maxCoeff() / scale;
  mu.assign(x.data(), x.data() + m_nodes);
  sources.assign(x.data() + m_nodes, x.data() + x.size());
  return residual;
}

HarmonicMeasure::HarmonicMeasure(const HarmonicSystem& system, int curve)
    : domain_(system.domain_ptr()), curve_(curve) {
  const auto& d = *domain_;
  if (curve < 0 || curve >= d.curve_count())
    fail(ErrorCode::InvalidArgument, "invalid curve index " + std::to_string(curve + 1));
  std::vector<double> data(d.node_count(), 0.0);
  for (std::size_t i = 0; i < data.size(); ++i)
    if (d.node_curve(i) == curve) data[i] = 1.0;
  residual_ = system.solve(data, mu_, sources_);
  if (residual_ > 1e-10) {
    std::ostringstream os;
    os << "harmonic measure solve residual " << residual_;
    fail(ErrorCode::IllConditioned, os.str());
  }

  std::vector<cplx> mu(mu_.begin(), mu_.end());
  std::vector<cplx> dmu(mu.size());
  const auto dz = d.derivatives();
  const auto n = static_cast<std::size_t>(d.nodes_per_curve());
  for (int k = 0; k < d.curve_count(); ++k) {
    const std::size_t off = d.node_index(k, 0);
    const auto dt = spectral_derivative(std::span<const cplx>(mu.data() + off, n));
    for (std::size_t m = 0; m < n; ++m) dmu[off + m] = dt[m] / dz[off + m];
  }
  mu_density_ = CauchyDensity(domain_, std::move(mu));
  mu_derivative_ = CauchyDensity(domain_, std::move(dmu));
}

double HarmonicMeasure::value(cplx z) const {
  double v = mu_density_.interior(z).real();
  for (std::size_t k = 0; k < sources_.size(); ++k)
    v += sources_[k] * std::log(std::abs(z - domain_->hole_point(static_cast<int>(k))));
  return v;
}

double HarmonicMeasure::trace_defect() const {
  const auto& d = *domain_;
  const auto limit = mu_density_.boundary_limit_at_nodes();
  const auto pts = d.points();
  double worst = 0.0;
  for (std::size_t m = 0; m < limit.size(); ++m) {
    double v = limit[m].real();
    for (std::size_t k = 0; k < sources_.size(); ++k)
      v += sources_[k] * std::log(std::abs(pts[m] - d.hole_point(static_cast<int>(k))));
    const double target = d.node_curve(m) == curve_ ? 1.0 : 0.0;
    worst = std::max(worst, std::abs(v - target));
  }
  return worst;
}

cplx HarmonicMeasure::f_prime(cplx z) const {
  cplx v = mu_derivative_.interior(z);
  for (std::size_t k = 0; k < sources_.size(); ++k)
    v += sources_[k] / (z - domain_->hole_point(static_cast<int>(k)));
  return v;
}

cplx HarmonicMeasure::f_prime_boundary(const BoundaryPoint& b) const {
  const cplx z = domain_->point(b.curve, b.t);
  cplx v = mu_derivative_.boundary_limit(b.curve, b.t);
  for (std::size_t k = 0; k < sources_.size(); ++k)
    v += sources_[k] / (z - domain_->hole_point(static_cast<int>(k)));
  return v;
}

std::vector<cplx> HarmonicMeasure::f_prime_at_nodes() const {
  auto out = mu_derivative_.boundary_limit_at_nodes();
  const auto pts = domain_->points();
  for (std::size_t m = 0; m < out.size(); ++m)
    for (std::size_t k = 0; k < sources_.size(); ++k)
      out[m] += sources_[k] / (pts[m] - domain_->hole_point(static_cast<int>(k)));
  return out;
}

FPrimeField::FPrimeField(const HarmonicMeasure& h)
    : domain_(h.domain_ptr()), curve_(h.curve()), samples_(h.f_prime_at_nodes()) {
  const auto& d = *domain_;
  const auto n = static_cast<std::size_t>(d.nodes_per_curve());
  for (int k = 0; k < d.curve_count(); ++k)
    interp_.emplace_back(std::span<const cplx>(samples_.data() + d.node_index(k, 0), n));
}

cplx FPrimeField::at(const BoundaryPoint& b) const {
  if (b.curve < 0 || b.curve >= domain_->curve_count())
    fail(ErrorCode::InvalidArgument, "invalid curve index " + std::to_string(b.curve + 1));
  return interp_[static_cast<std::size_t>(b.curve)].value(b.t);
}

double FPrimeField::imaginary_defect() const {
  const auto tang = domain_->tangents();
  double worst = 0.0;
  for (std::size_t m = 0; m < samples_.size(); ++m) {
    const cplx v = samples_[m] * tang[m];
    worst = std::max(worst, std::abs(v + std::conj(v)));
  }
  return worst;
}

double FPrimeField::min_modulus() const {
  double lo = std::numeric_limits<double>::infinity();
  for (const cplx& v : samples_) lo = std::min(lo, std::abs(v));
  return lo;
}

double reflection_quotient_check(const FPrimeField& f1, const FPrimeField& fj) {
  const auto& a = f1.samples();
  const auto& b = fj.samples();
  if (a.size() != b.size()) fail(ErrorCode::InvalidArgument, "fields belong to different domains");
  double worst = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) worst = std::max(worst, std::abs((b[m] / a[m]).imag()));
  return worst;
}

double f_prime_sum_defect(const std::vector<FPrimeField>& fields) {
  if (fields.empty()) return 0.0;
  double worst = 0.0;
  for (std::size_t m = 0; m < fields.front().samples().size(); ++m) {
    cplx sum = 0.0;
    for (const auto& f : fields) sum += f.samples()[m];
    worst = std::max(worst, std::abs(sum));
  }
  return worst;
}

}  // namespace propermap
