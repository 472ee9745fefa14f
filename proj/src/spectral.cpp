#include "spectral.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>

#include "error.hpp"

namespace propermap {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::vector<cplx> fourier_coefficients(std::span<const cplx> samples) {
  std::vector<cplx> in(samples.begin(), samples.end());
  std::vector<cplx> out;
  Eigen::FFT<double> fft;
  fft.fwd(out, in);
  const double scale = 1.0 / static_cast<double>(in.size());
  for (auto& c : out) c *= scale;
  return out;
}

TrigInterpolant::TrigInterpolant(std::span<const cplx> samples)
    : n_(samples.size()) {
  if (n_ < 2 || n_ % 2 != 0)
    fail(ErrorCode::InvalidArgument, "trig interpolation needs an even sample count");
  coeffs_ = fourier_coefficients(samples);
}

cplx TrigInterpolant::eval(double t, int order) const {
  const auto n = static_cast<long>(n_);
  const long half = n / 2;
  auto factor = [order](double k) -> cplx {
    switch (order) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, k};
      default: return {-k * k, 0.0};
    }
  };
  cplx sum = 0.0;
  // positive frequencies 0..half-1 and negative frequencies -1..-(half-1),
  // with the phase re-anchored every block to bound recurrence drift
  constexpr long block = 64;
  const cplx step = std::polar(1.0, t);
  const cplx step_neg = std::conj(step);
  cplx e_pos = 1.0, e_neg = 1.0;
  for (long k = 0; k < half; ++k) {
    if (k % block == 0) {
      e_pos = std::polar(1.0, static_cast<double>(k) * t);
      e_neg = std::conj(e_pos);
    }
    sum += factor(static_cast<double>(k)) * coeffs_[k] * e_pos;
    if (k > 0) sum += factor(-static_cast<double>(k)) * coeffs_[n - k] * e_neg;
    e_pos *= step;
    e_neg *= step_neg;
  }
  // Nyquist term c*cos(half*t) and its derivatives
  const double h = static_cast<double>(half);
  const cplx c = coeffs_[half];
  switch (order) {
    case 0: sum += c * std::cos(h * t); break;
    case 1: sum += -c * h * std::sin(h * t); break;
    default: sum += -c * h * h * std::cos(h * t); break;
  }
  return sum;
}

cplx TrigInterpolant::value(double t) const { return eval(t, 0); }
cplx TrigInterpolant::derivative(double t) const { return eval(t, 1); }
cplx TrigInterpolant::second_derivative(double t) const { return eval(t, 2); }

std::vector<cplx> TrigInterpolant::derivative_at_nodes() const {
  const auto n = static_cast<long>(n_);
  std::vector<cplx> spec(coeffs_.size());
  for (long j = 0; j < n; ++j) {
    long k = j <= n / 2 ? j : j - n;
    spec[j] = (j == n / 2) ? cplx(0.0) : coeffs_[j] * cplx(0.0, static_cast<double>(k));
  }
  std::vector<cplx> out;
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  fft.inv(out, spec);
  return out;
}

std::vector<cplx> spectral_derivative(std::span<const cplx> samples) {
  return TrigInterpolant(samples).derivative_at_nodes();
}

}  // namespace propermap
