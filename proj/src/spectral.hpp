#pragma once

#include <complex>
#include <span>
#include <vector>

namespace propermap {

using cplx = std::complex<double>;

/// Trigonometric interpolant of N equispaced samples f(2*pi*m/N) of a
/// 2*pi-periodic function. The Nyquist mode is split symmetrically so the
/// interpolant of real data is real.
class TrigInterpolant {
 public:
  TrigInterpolant() = default;
  explicit TrigInterpolant(std::span<const cplx> samples);

  std::size_t size() const { return n_; }

  cplx value(double t) const;
  cplx derivative(double t) const;
  cplx second_derivative(double t) const;

  /// d/dt at the interpolation nodes (Nyquist mode dropped).
  std::vector<cplx> derivative_at_nodes() const;

 private:
  cplx eval(double t, int order) const;

  std::size_t n_ = 0;
  std::vector<cplx> coeffs_;  // FFT order: k = 0..N/2, then -N/2+1..-1
};

/// Spectral derivative d/dt of periodic samples.
std::vector<cplx> spectral_derivative(std::span<const cplx> samples);

/// Forward DFT normalised by 1/N.
std::vector<cplx> fourier_coefficients(std::span<const cplx> samples);

bool is_power_of_two(std::size_t n);

}  // namespace propermap
