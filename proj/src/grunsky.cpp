#include "grunsky.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "error.hpp"
#include "spectral.hpp"

namespace propermap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_pole(const std::vector<BoundaryPoint>& poles, const BoundaryPoint& z) {
  return std::any_of(poles.begin(), poles.end(), [&](const BoundaryPoint& p) { return same_point(p, z); });
}

}  // namespace

void GrunskyMap::prepare(ContextPtr ctx, std::vector<BoundaryPoint> b) {
  ctx_ = std::move(ctx);
  const auto& d = ctx_->domain();
  check_marked_points(d, b);
  for (auto& p : b) p.t = wrap_parameter(p.t);
  marked_ = std::move(b);
  periods_ = period_matrix(d, ctx_->f_prime_fields(), marked_);
  coefficients_ = solve_coefficients(periods_);
  kernels_.reserve(marked_.size());
  for (const auto& p : marked_) kernels_.emplace_back(ctx_->szego(), p);
}

std::shared_ptr<const GrunskyMap> GrunskyMap::build_interior(ContextPtr ctx, std::vector<BoundaryPoint> b,
                                                             cplx a, std::optional<Gauge> gauge) {
  std::shared_ptr<GrunskyMap> f(new GrunskyMap());
  const auto& d = ctx->domain();
  if (!d.contains(a)) fail(ErrorCode::InvalidArgument, "base point is not inside the domain");
  f->prepare(std::move(ctx), std::move(b));
  f->base_.kind = BaseKind::Interior;
  f->base_.point = a;
  f->interior_ = std::make_shared<const SzegoSolution>(solve_szego_boundary(f->ctx_->szego(), a));
  const auto& s = *f->interior_;
  f->zeros_ = find_szego_zeros(s);

  double lmax = 0.0;
  for (const cplx& v : s.garabedian) lmax = std::max(lmax, std::abs(v));
  for (std::size_t j = 0; j < f->marked_.size(); ++j) {
    const double aj = f->coefficients_.a[j];
    const cplx lb = garabedian_boundary_at(s, f->marked_[j]);
    if (!(std::abs(lb) > 1e-12 * lmax))
      fail(ErrorCode::InadmissibleBase, "L(., a) vanishes at a marked point; choose a different base point");
    f->weights_.push_back(2.0 * aj * lb);
    f->constant_ += aj * std::norm(szego_boundary(s, f->marked_[j])) / s.szego_aa;
  }
  f->fix_gauge(gauge);
  f->poisson_scale_ = f->gauge_.scale;
  return f;
}

std::shared_ptr<const GrunskyMap> GrunskyMap::build_boundary(ContextPtr ctx, std::vector<BoundaryPoint> b,
                                                             BoundaryPoint a0, std::optional<Gauge> gauge) {
  std::shared_ptr<GrunskyMap> f(new GrunskyMap());
  const auto& d = ctx->domain();
  if (a0.curve < 0 || a0.curve >= d.curve_count())
    fail(ErrorCode::InvalidArgument, "invalid curve index " + std::to_string(a0.curve + 1));
  a0.t = wrap_parameter(a0.t);
  f->prepare(std::move(ctx), std::move(b));
  if (is_pole(f->marked_, a0)) fail(ErrorCode::InvalidArgument, "boundary base point coincides with a marked point");
  f->base_.kind = BaseKind::Boundary;
  f->base_.boundary = a0;
  f->base_.point = d.point(a0.curve, a0.t);
  f->boundary_base_.emplace(f->ctx_->szego(), a0);

  std::vector<cplx> sb;
  double smax = 0.0;
  for (const auto& p : f->marked_) {
    sb.push_back(f->boundary_base_->boundary(p));
    smax = std::max(smax, std::abs(sb.back()));
  }
  for (std::size_t j = 0; j < f->marked_.size(); ++j) {
    if (!(std::abs(sb[j]) > 1e-12 * smax))
      fail(ErrorCode::InadmissibleBase, "S(b_j, a0) vanishes; choose a different boundary base point");
    f->weights_.push_back(2.0 * f->coefficients_.a[j] * sb[j]);
  }

  const cplx zref = d.reference_point();
  const double k = f->raw_value(zref).real() / poisson_sum(*f, zref);
  if (!(k > 0)) fail(ErrorCode::Numerical, "boundary-based map has non-positive real part at the reference point");
  f->fix_gauge(gauge);
  f->poisson_scale_ = f->gauge_.scale * k;
  return f;
}

std::shared_ptr<const GrunskyMap> GrunskyMap::build(ContextPtr ctx, std::vector<BoundaryPoint> b,
                                                    const BasePoint& base, std::optional<Gauge> gauge) {
  if (base.kind == BaseKind::Interior) return build_interior(std::move(ctx), std::move(b), base.point, gauge);
  return build_boundary(std::move(ctx), std::move(b), base.boundary, gauge);
}

void GrunskyMap::fix_gauge(std::optional<Gauge> gauge) {
  if (gauge) {
    if (!(gauge->scale > 0)) fail(ErrorCode::InvalidArgument, "scale must be positive");
    gauge_ = *gauge;
    return;
  }
  const cplx zref = ctx_->domain().reference_point();
  const cplx g = raw_value(zref);
  double re = g.real();
  if (!(re > 1e-9 * std::abs(g)) && interior_) {
    // Re G lost to cancellation; it equals the Poisson sum for an interior base.
    re = poisson_sum(*this, zref);
  }
  if (!(re > 0)) fail(ErrorCode::Numerical, "Re G at the reference point is not positive");
  gauge_.scale = 1.0 / re;
  gauge_.shift = -gauge_.scale * g.imag();
}

cplx GrunskyMap::base_factor(cplx z) const {
  if (interior_) return inverse_garabedian(*interior_, z);
  return boundary_base_->inverse_interior(z);
}

cplx GrunskyMap::base_factor_derivative(cplx z) const {
  if (interior_) return inverse_garabedian_derivative(*interior_, z);
  return boundary_base_->inverse_interior_derivative(z);
}

cplx GrunskyMap::base_factor_boundary(const BoundaryPoint& z) const {
  if (interior_) return 1.0 / garabedian_boundary_at(*interior_, z);
  return boundary_base_->inverse_boundary(z);
}

cplx GrunskyMap::raw_value(cplx z) const {
  cplx sum = 0.0;
  for (std::size_t j = 0; j < kernels_.size(); ++j) sum += weights_[j] * kernels_[j].interior(z);
  return sum * base_factor(z) + constant_;
}

cplx GrunskyMap::raw_derivative(cplx z) const {
  cplx s = 0.0, sp = 0.0;
  for (std::size_t j = 0; j < kernels_.size(); ++j) {
    s += weights_[j] * kernels_[j].interior(z);
    sp += weights_[j] * kernels_[j].interior_derivative(z);
  }
  return sp * base_factor(z) + s * base_factor_derivative(z);
}

cplx GrunskyMap::raw_boundary_value(const BoundaryPoint& z) const {
  if (is_pole(marked_, z)) return {kInf, 0.0};
  cplx sum = 0.0;
  for (std::size_t j = 0; j < kernels_.size(); ++j) sum += weights_[j] * kernels_[j].boundary(z);
  return sum * base_factor_boundary(z) + constant_;
}

cplx GrunskyMap::value(cplx z) const { return gauge_.scale * raw_value(z) + kI * gauge_.shift; }

cplx GrunskyMap::derivative(cplx z) const { return gauge_.scale * raw_derivative(z); }

cplx GrunskyMap::boundary_value(const BoundaryPoint& z) const {
  const cplx g = raw_boundary_value(z);
  if (!std::isfinite(g.real()) || !std::isfinite(g.imag())) return {kInf, 0.0};
  return gauge_.scale * g + kI * gauge_.shift;
}

std::vector<cplx> GrunskyMap::boundary_values_at_nodes() const {
  const auto& d = ctx_->domain();
  const std::size_t total = d.node_count();
  std::vector<cplx> factor(total);
  if (interior_) {
    for (std::size_t m = 0; m < total; ++m) factor[m] = 1.0 / interior_->garabedian[m];
  } else {
    const auto sa = boundary_base_->boundary_at_nodes();
    for (std::size_t m = 0; m < total; ++m) factor[m] = std::isfinite(sa[m].real()) ? 1.0 / sa[m] : 0.0;
  }
  std::vector<cplx> sum(total, 0.0);
  std::vector<bool> pole(total, false);
  for (std::size_t j = 0; j < kernels_.size(); ++j) {
    const auto sj = kernels_[j].boundary_at_nodes();
    for (std::size_t m = 0; m < total; ++m) {
      if (!std::isfinite(sj[m].real()))
        pole[m] = true;
      else
        sum[m] += weights_[j] * sj[m];
    }
  }
  std::vector<cplx> out(total);
  for (std::size_t m = 0; m < total; ++m)
    out[m] = pole[m] ? cplx(kInf, 0.0) : gauge_.scale * (sum[m] * factor[m] + constant_) + kI * gauge_.shift;
  return out;
}

cplx cayley(cplx w) {
  if (!std::isfinite(w.real()) || !std::isfinite(w.imag()) || std::abs(w) > 1e12) return 1.0;
  return (w - 1.0) / (w + 1.0);
}

namespace {

bool near_any_pole(const HolomorphicMap& f, cplx z) {
  const auto& d = f.domain();
  const double tol = 3.0 * d.min_node_spacing();
  for (const auto& p : f.poles())
    if (std::abs(d.point(p.curve, p.t) - z) < tol) return true;
  return false;
}

}  // namespace

MapSample evaluate(const HolomorphicMap& f, cplx z) {
  if (!f.domain().contains(z)) fail(ErrorCode::InvalidArgument, "evaluation point is outside the domain");
  MapSample s;
  s.z = z;
  s.rhp = f.value(z);
  s.disc = cayley(s.rhp);
  s.near_pole = near_any_pole(f, z);
  return s;
}

MapSample evaluate(const HolomorphicMap& f, const BoundaryPoint& z) {
  const auto& d = f.domain();
  if (z.curve < 0 || z.curve >= d.curve_count())
    fail(ErrorCode::InvalidArgument, "invalid curve index " + std::to_string(z.curve + 1));
  MapSample s;
  s.z = d.point(z.curve, z.t);
  s.rhp = f.boundary_value(z);
  s.disc = cayley(s.rhp);
  s.near_pole = near_any_pole(f, s.z);
  return s;
}

std::vector<MapSample> evaluate_many(const HolomorphicMap& f, std::span<const cplx> points, unsigned threads) {
  std::vector<MapSample> out(points.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(points.size(), 1)));
  const double nan = std::numeric_limits<double>::quiet_NaN();
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      try {
        out[i] = evaluate(f, points[i]);
      } catch (const Error&) {
        out[i] = MapSample{points[i], {nan, nan}, {nan, nan}, false};
      }
    }
  };
  if (threads <= 1) {
    work(0, points.size());
    return out;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (points.size() + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(points.size(), begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(work, begin, end);
  }
  for (auto& th : pool) th.join();
  return out;
}

double poisson_sum(const GrunskyMap& f, cplx z) {
  const SzegoSolution s = solve_szego_boundary(f.context()->szego(), z);
  double sum = 0.0;
  for (std::size_t j = 0; j < f.marked().size(); ++j)
    sum += f.coefficients().a[j] * std::norm(szego_boundary(s, f.marked()[j])) / s.szego_aa;
  return sum;
}

double real_part_identity_check(const GrunskyMap& f, std::span<const cplx> points) {
  double worst = 0.0;
  for (const cplx& z : points)
    worst = std::max(worst, std::abs(f.value(z).real() - f.poisson_scale() * poisson_sum(f, z)));
  return worst;
}

namespace {

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

}  // namespace

BoundaryWinding boundary_winding(const HolomorphicMap& f, int curve, double r) {
  const auto& d = f.domain();
  if (curve < 0 || curve >= d.curve_count())
    fail(ErrorCode::InvalidArgument, "invalid curve index " + std::to_string(curve + 1));
  BoundaryWinding m;
  const auto singular = f.singular_points();

  const int samples = 4 * d.nodes_per_curve();
  const double h = kTwoPi / samples;
  // Shift the sample grid off every singular point on this curve.
  double shift = 0.5 * h;
  for (int attempt = 0; attempt < 8; ++attempt) {
    bool clash = false;
    for (const auto& p : singular) {
      if (p.curve != curve) continue;
      const double r = std::fmod(p.t - shift + 10.0 * kTwoPi, h);
      if (std::min(r, h - r) < 1e-3 * h) clash = true;
    }
    if (!clash) break;
    shift += 0.37 * h;
  }

  const double sigma = d.orientation(curve);
  auto at = [&](double s) { return f.boundary_value({curve, wrap_parameter(sigma * s)}); };
  std::vector<cplx> w(static_cast<std::size_t>(samples));
  std::vector<double> mods;
  for (int i = 0; i < samples; ++i) {
    // walk the curve in the standard orientation
    w[static_cast<std::size_t>(i)] = at(shift + i * h);
    if (finite(w[static_cast<std::size_t>(i)])) mods.push_back(std::abs(w[static_cast<std::size_t>(i)]));
  }
  std::nth_element(mods.begin(), mods.begin() + static_cast<std::ptrdiff_t>(mods.size() / 2), mods.end());
  if (!(r > 0)) r = mods.empty() || !(mods[mods.size() / 2] > 0) ? 1.0 : mods[mods.size() / 2];
  m.r = r;
  // Cayley transform scaled by r; its winding along the curve is the covering
  // multiplicity for every r > 0.
  auto scaled = [r](cplx v) { return finite(v) && std::abs(v) < 1e12 * r ? (v - r) / (v + r) : cplx(1.0); };
  std::function<double(double, double, cplx, cplx, int)> turn = [&](double sa, double sb, cplx a, cplx b,
                                                                    int depth) -> double {
    const double step = std::arg(scaled(b) / scaled(a));
    if (std::abs(step) < 0.25 * std::numbers::pi || depth == 0) return step;
    const double sm = 0.5 * (sa + sb);
    const cplx mid = at(sm);
    return turn(sa, sm, a, mid, depth - 1) + turn(sm, sb, mid, b, depth - 1);
  };
  double total = 0.0;
  for (int i = 0; i < samples; ++i) {
    const cplx a = w[static_cast<std::size_t>(i)];
    const cplx b = w[static_cast<std::size_t>((i + 1) % samples)];
    total += turn(shift + i * h, shift + (i + 1) * h, a, b, 16);
    // Im F decreases along the curve; it jumps from -inf to +inf at a pole.
    if (finite(a) && finite(b) && a.imag() < 0 && b.imag() > 0) ++m.pole_crossings;
  }
  m.turns = total / kTwoPi;
  return m;
}

double certification_offset(const Domain& d, int curve) {
  return std::min(4.0 * d.node_spacing(curve), 0.5 * d.reach(curve));
}

namespace {

struct CycleSamples {
  std::vector<std::vector<cplx>> values, derivs;
  std::vector<double> orientation;
  double offset = 0.0;
};

CycleSamples sample_cycles(const HolomorphicMap& f, double factor) {
  const auto& d = f.domain();
  const int samples = 4 * d.nodes_per_curve();
  CycleSamples cs;
  for (int k = 0; k < d.curve_count(); ++k) {
    const double eps = factor * certification_offset(d, k);
    cs.offset = eps;
    const Cycle c = d.offset_cycle(k, eps, samples);
    std::vector<cplx> vals(c.nodes.size());
    for (std::size_t m = 0; m < vals.size(); ++m) vals[m] = f.value(c.nodes[m]);
    cs.derivs.push_back(spectral_derivative(vals));
    cs.values.push_back(std::move(vals));
    cs.orientation.push_back(c.orientation);
  }
  return cs;
}

cplx count_preimages(const CycleSamples& cs, cplx w0) {
  cplx total = 0.0;
  for (std::size_t k = 0; k < cs.values.size(); ++k) {
    const auto& v = cs.values[k];
    const auto& dv = cs.derivs[k];
    cplx sum = 0.0;
    for (std::size_t m = 0; m < v.size(); ++m) sum += dv[m] / (v[m] - w0);
    total += cs.orientation[k] * sum * (kTwoPi / static_cast<double>(v.size()));
  }
  return total / (kTwoPi * kI);
}

bool integral(cplx count) {
  return std::abs(count.real() - std::round(count.real())) < 1e-3 && std::abs(count.imag()) < 1e-3;
}

}  // namespace

DegreeResult degree(const HolomorphicMap& f, cplx w0) {
  if (!(w0.real() > 0)) fail(ErrorCode::InvalidArgument, "w0 must lie in the open right half plane");
  DegreeResult r;
  double factor = 1.0;
  for (int attempt = 0; attempt < 4; ++attempt, factor *= 0.75) {
    r.attempts = attempt + 1;
    const auto cs = sample_cycles(f, factor);
    r.offset = cs.offset;
    const cplx count = count_preimages(cs, w0);
    r.raw = count.real();
    r.degree = static_cast<int>(std::lround(r.raw));
    r.w0 = w0;
    if (integral(count)) return r;
  }
  std::ostringstream os;
  os << "argument-principle count " << r.raw << " is not an integer";
  fail(ErrorCode::Numerical, os.str());
}

DegreeResult mapping_degree(const HolomorphicMap& f) {
  DegreeResult best;
  best.degree = -1;
  double factor = 1.0;
  for (int attempt = 0; attempt < 4; ++attempt, factor *= 0.75) {
    const auto cs = sample_cycles(f, factor);
    std::vector<double> mods;
    for (const auto& v : cs.values)
      for (const cplx& x : v) mods.push_back(std::abs(x));
    std::nth_element(mods.begin(), mods.begin() + static_cast<std::ptrdiff_t>(mods.size() / 2), mods.end());
    const double rho = mods[mods.size() / 2];
    for (int e = -12; e <= 12; ++e) {
      const cplx w0 = rho * std::ldexp(1.0, e) * cplx(1.0, 0.1);
      const cplx count = count_preimages(cs, w0);
      if (!integral(count)) continue;
      const int deg = static_cast<int>(std::lround(count.real()));
      if (deg > best.offset_count) {
        best.offset_count = deg;
        best.raw = count.real();
        best.w0 = w0;
        best.offset = cs.offset;
        best.attempts = attempt + 1;
      }
    }
  }

  std::vector<double> mods;
  for (const cplx& v : f.boundary_values_at_nodes())
    if (finite(v)) mods.push_back(std::abs(v));
  double r = 1.0;
  if (!mods.empty()) {
    std::nth_element(mods.begin(), mods.begin() + static_cast<std::ptrdiff_t>(mods.size() / 2), mods.end());
    if (mods[mods.size() / 2] > 0) r = mods[mods.size() / 2];
  }
  double turns = 0.0;
  for (int k = 0; k < f.domain().curve_count(); ++k) turns += boundary_winding(f, k, r).turns;
  if (std::abs(turns - std::round(turns)) < 1e-2) best.boundary_count = static_cast<int>(std::lround(turns));

  best.degree = std::max(best.offset_count, best.boundary_count);
  if (best.degree < 0) fail(ErrorCode::Numerical, "argument-principle count is never an integer");
  return best;
}

}  // namespace propermap
