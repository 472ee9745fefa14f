#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "error.hpp"

namespace propermap {

namespace {

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

bool excluded(const std::vector<BoundaryPoint>& singular, int curve, double t, double exclusion) {
  return std::any_of(singular.begin(), singular.end(), [&](const BoundaryPoint& p) {
    return p.curve == curve && std::abs(parameter_distance(t, p.t)) < exclusion;
  });
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

double boundary_median(const HolomorphicMap& f, const std::vector<cplx>& values, double exclusion) {
  const auto& d = f.domain();
  const auto singular = f.singular_points();
  std::vector<double> mods;
  for (std::size_t m = 0; m < values.size(); ++m)
    if (finite(values[m]) && !excluded(singular, d.node_curve(m), d.node_parameter(m), exclusion))
      mods.push_back(std::abs(values[m]));
  return median(std::move(mods));
}

}  // namespace

double reflection_real_check(const HolomorphicMap& f, double exclusion, double* median_out) {
  const auto& d = f.domain();
  const auto values = f.boundary_values_at_nodes();
  const auto singular = f.singular_points();
  double worst = 0.0;
  for (std::size_t m = 0; m < values.size(); ++m) {
    if (excluded(singular, d.node_curve(m), d.node_parameter(m), exclusion)) continue;
    if (!finite(values[m])) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, std::abs(values[m].real()));
  }
  const double med = boundary_median(f, values, exclusion);
  if (median_out) *median_out = med;
  return med > 0 ? worst / med : std::numeric_limits<double>::infinity();
}

std::vector<double> period_residuals(const HolomorphicMap& f) {
  const auto& d = f.domain();
  const double med = boundary_median(f, f.boundary_values_at_nodes(), 0.2);
  const int samples = 4 * d.nodes_per_curve();
  std::vector<double> out;
  for (int k = 0; k < d.curve_count(); ++k) {
    const Cycle c = d.offset_cycle(k, certification_offset(d, k), samples);
    cplx sum = 0.0;
    for (std::size_t m = 0; m < c.nodes.size(); ++m) sum += f.derivative(c.nodes[m]) * c.derivs[m];
    sum *= kTwoPi / samples;
    out.push_back(std::abs(sum.imag()) / med);
  }
  return out;
}

PropernessReport certify(const HolomorphicMap& f, const Thresholds& th) {
  const auto& d = f.domain();
  PropernessReport r;
  auto failure = [&](auto&&... parts) {
    std::ostringstream msg;
    (msg << ... << parts);
    r.failures.push_back(msg.str());
  };

  r.boundary_real = reflection_real_check(f, th.exclusion, &r.median_modulus);
  if (!(r.boundary_real < th.boundary_real))
    failure("boundary |Re F| residual ", r.boundary_real, " exceeds ", th.boundary_real);

  const auto values = f.boundary_values_at_nodes();
  const int n_nodes = d.nodes_per_curve();
  const double h = kTwoPi / n_nodes;
  for (const auto& p : f.poles()) {
    const int below = static_cast<int>(std::floor(p.t / h + 1e-9));
    const bool on_node = std::abs(p.t - below * h) < 1e-9;
    const int lo = on_node ? below - 1 : below;
    const int hi = below + 1;
    PoleIndicator ind{p, 0.0};
    for (int m : {lo, hi}) {
      const int mm = ((m % n_nodes) + n_nodes) % n_nodes;
      const cplx v = values[d.node_index(p.curve, mm)];
      ind.inverse_modulus = std::max(ind.inverse_modulus, finite(v) ? 1.0 / std::abs(v) : 0.0);
    }
    if (!(ind.inverse_modulus < th.pole))
      failure("pole at curve ", p.curve + 1, " t=", p.t, ": |1/F| = ", ind.inverse_modulus);
    r.poles.push_back(ind);
  }

  r.expected_degree = f.expected_degree();
  try {
    const auto deg = mapping_degree(f);
    r.degree = deg.degree;
    r.degree_raw = deg.raw;
    r.degree_offset = deg.offset_count;
    r.degree_boundary = deg.boundary_count;
  } catch (const Error& e) {
    r.degree = -1;
    failure("degree: ", e.what());
  }
  if (r.degree != r.expected_degree) failure("degree ", r.degree, " differs from pole count ", r.expected_degree);

  for (int k = 0; k < d.curve_count(); ++k) {
    int expected = 0;
    for (const auto& p : f.poles()) expected += p.curve == k ? 1 : 0;
    r.expected_multiplicities.push_back(expected);
    try {
      r.multiplicities.push_back(boundary_multiplicity(f, k).winding);
    } catch (const Error& e) {
      r.multiplicities.push_back(-1);
      failure("multiplicity of curve ", k + 1, ": ", e.what());
    }
    if (r.multiplicities.back() != expected)
      failure("curve ", k + 1, " covered ", r.multiplicities.back(), " times, expected ", expected);
  }

  r.period_residuals = period_residuals(f);
  for (std::size_t k = 0; k < r.period_residuals.size(); ++k)
    if (!(r.period_residuals[k] < th.period))
      failure("period of curve ", k + 1, " is ", r.period_residuals[k]);
  return r;
}

PrimitivePairCertificate certify_primitive_pair(const GrunskyMap& f1, const std::vector<BoundaryPoint>& second) {
  PrimitivePairCertificate c;
  c.first = f1.marked();
  c.second = second;
  bool all_finite = true;
  for (const auto& p : second) {
    c.values.push_back(f1.boundary_value(p));
    all_finite = all_finite && finite(c.values.back());
  }
  c.min_distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < c.values.size(); ++i)
    for (std::size_t j = i + 1; j < c.values.size(); ++j)
      c.min_distance = std::min(c.min_distance, std::abs(c.values[i] - c.values[j]));
  if (!all_finite) c.min_distance = 0.0;
  c.separated = all_finite && c.min_distance > 1e-6;
  return c;
}

PrimitivePair primitive_pair(const GrunskyMap& f1, std::uint64_t seed, double exclusion) {
  const auto& d = f1.domain();
  const int n = d.curve_count();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, kTwoPi);
  std::vector<std::vector<BoundaryPoint>> cand(static_cast<std::size_t>(n));
  std::vector<std::vector<cplx>> vals(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < 64; ++i) {
      const double t = unif(rng);
      if (excluded(f1.marked(), k, t, exclusion)) continue;
      const cplx v = f1.boundary_value({k, t});
      if (!finite(v)) continue;
      cand[static_cast<std::size_t>(k)].push_back({k, t});
      vals[static_cast<std::size_t>(k)].push_back(v);
    }
    if (cand[static_cast<std::size_t>(k)].empty())
      fail(ErrorCode::Numerical, "no admissible candidate on curve " + std::to_string(k + 1));
  }

  auto score = [&](const std::vector<std::size_t>& pick) {
    double s = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        s = std::min(s, std::abs(vals[static_cast<std::size_t>(i)][pick[static_cast<std::size_t>(i)]] -
                                 vals[static_cast<std::size_t>(j)][pick[static_cast<std::size_t>(j)]]));
    return s;
  };

  std::vector<std::size_t> best(static_cast<std::size_t>(n), 0);
  double best_score = score(best);
  if (n <= 3) {
    std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
    while (true) {
      const double s = score(pick);
      if (s > best_score) {
        best_score = s;
        best = pick;
      }
      int k = 0;
      while (k < n && ++pick[static_cast<std::size_t>(k)] == cand[static_cast<std::size_t>(k)].size()) {
        pick[static_cast<std::size_t>(k)] = 0;
        ++k;
      }
      if (k == n) break;
    }
  } else {
    for (int sweep = 0; sweep < 20; ++sweep) {
      bool improved = false;
      for (int k = 0; k < n; ++k) {
        auto pick = best;
        for (std::size_t i = 0; i < cand[static_cast<std::size_t>(k)].size(); ++i) {
          pick[static_cast<std::size_t>(k)] = i;
          const double s = score(pick);
          if (s > best_score) {
            best_score = s;
            best = pick;
            improved = true;
          }
        }
      }
      if (!improved) break;
    }
  }

  std::vector<BoundaryPoint> chosen;
  for (int k = 0; k < n; ++k) chosen.push_back(cand[static_cast<std::size_t>(k)][best[static_cast<std::size_t>(k)]]);
  BasePoint base = f1.base();
  if (base.kind != BaseKind::Interior) {
    base.kind = BaseKind::Interior;
    base.point = d.reference_point();
  }
  PrimitivePair out;
  out.second = GrunskyMap::build(f1.context(), chosen, base);
  out.certificate = certify_primitive_pair(f1, out.second->marked());
  if (!out.certificate.separated)
    fail(ErrorCode::Numerical, "primitive pair search did not separate the poles");
  return out;
}

double double_quotient_check(const MapContext& ctx) {
  const auto& fields = ctx.f_prime_fields();
  double worst = 0.0;
  for (std::size_t j = 1; j < fields.size(); ++j)
    worst = std::max(worst, reflection_quotient_check(fields.front(), fields[j]));
  return worst;
}

}  // namespace propermap
