#include "semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "error.hpp"

namespace propermap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCancelled = 1e-10;

bool finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

std::string describe(const BoundaryPoint& p) {
  std::ostringstream os;
  os.precision(17);
  os << "curve " << p.curve + 1 << " t=" << p.t;
  return os.str();
}

}  // namespace

CombineReport merge_weights(const std::vector<Term>& terms) {
  CombineReport r;
  if (terms.empty()) {
    r.violations.push_back("no terms");
    return r;
  }
  const auto& ctx = terms.front().map->context();
  for (const auto& term : terms) {
    if (!term.map) fail(ErrorCode::InvalidArgument, "null Grunsky map in term list");
    if (term.map->context().get() != ctx.get() && &term.map->domain() != &ctx->domain())
      fail(ErrorCode::InvalidArgument, "terms are defined on different domains");
    if (!std::isfinite(term.coeff)) fail(ErrorCode::InvalidArgument, "non-finite term coefficient");
  }
  for (const auto& term : terms) {
    const auto& f = *term.map;
    for (std::size_t j = 0; j < f.marked().size(); ++j) {
      const double w = term.coeff * f.poisson_scale() * f.coefficients().a[j];
      const auto& p = f.marked()[j];
      auto it = std::find_if(r.weights.begin(), r.weights.end(),
                             [&](const WeightedPoint& q) { return same_point(q.point, p); });
      if (it == r.weights.end())
        r.weights.push_back({p, w});
      else
        it->weight += w;
    }
  }
  double scale = 0.0;
  for (const auto& w : r.weights) scale = std::max(scale, std::abs(w.weight));
  std::erase_if(r.weights, [&](const WeightedPoint& w) { return std::abs(w.weight) <= kCancelled * scale; });
  std::sort(r.weights.begin(), r.weights.end(), [](const WeightedPoint& a, const WeightedPoint& b) {
    return a.point.curve != b.point.curve ? a.point.curve < b.point.curve : a.point.t < b.point.t;
  });

  for (const auto& w : r.weights) {
    if (!(w.weight > 0)) {
      std::ostringstream os;
      os << "non-positive merged weight " << w.weight << " at " << describe(w.point);
      r.violations.push_back(os.str());
    }
  }
  const int n = ctx->domain().curve_count();
  for (int k = 0; k < n; ++k) {
    const bool covered = std::any_of(r.weights.begin(), r.weights.end(),
                                     [&](const WeightedPoint& w) { return w.point.curve == k && w.weight > 0; });
    if (!covered) r.violations.push_back("curve " + std::to_string(k + 1) + " carries no pole");
  }
  r.valid = r.violations.empty();
  return r;
}

CombineResult combine(const std::vector<Term>& terms) {
  CombineResult out;
  out.report = merge_weights(terms);
  if (!out.report.valid) return out;
  std::shared_ptr<ProperMap> f(new ProperMap());
  f->ctx_ = terms.front().map->context();
  f->terms_ = terms;
  f->decomposition_ = out.report.weights;
  out.map = f;
  return out;
}

ProperPtr combine_or_throw(const std::vector<Term>& terms) {
  auto r = combine(terms);
  if (!r.map) {
    std::string msg = "invalid combination:";
    for (const auto& v : r.report.violations) msg += " " + v + ";";
    fail(ErrorCode::InvalidCombination, msg);
  }
  return r.map;
}

cplx ProperMap::value(cplx z) const {
  cplx sum = 0.0;
  for (const auto& t : terms_) sum += t.coeff * t.map->value(z);
  return sum;
}

cplx ProperMap::derivative(cplx z) const {
  cplx sum = 0.0;
  for (const auto& t : terms_) sum += t.coeff * t.map->derivative(z);
  return sum;
}

cplx ProperMap::boundary_value(const BoundaryPoint& z) const {
  for (const auto& w : decomposition_)
    if (same_point(w.point, z)) return {kInf, 0.0};
  cplx sum = 0.0;
  for (const auto& t : terms_) sum += t.coeff * t.map->boundary_value(z);
  return sum;
}

std::vector<cplx> ProperMap::boundary_values_at_nodes() const {
  const auto& d = ctx_->domain();
  std::vector<cplx> sum(d.node_count(), 0.0);
  for (const auto& t : terms_) {
    const auto v = t.map->boundary_values_at_nodes();
    for (std::size_t m = 0; m < sum.size(); ++m) sum[m] += t.coeff * v[m];
  }
  for (std::size_t m = 0; m < sum.size(); ++m) {
    const BoundaryPoint p{d.node_curve(m), d.node_parameter(m)};
    bool pole = false;
    for (const auto& w : decomposition_) pole = pole || same_point(w.point, p);
    if (pole)
      sum[m] = {kInf, 0.0};
    else if (!finite(sum[m]))
      sum[m] = {std::numeric_limits<double>::quiet_NaN(), 0.0};
  }
  return sum;
}

std::vector<BoundaryPoint> ProperMap::poles() const {
  std::vector<BoundaryPoint> out;
  for (const auto& w : decomposition_) out.push_back(w.point);
  return out;
}

std::vector<BoundaryPoint> ProperMap::singular_points() const {
  std::vector<BoundaryPoint> out;
  for (const auto& t : terms_)
    for (const auto& p : t.map->marked())
      if (std::none_of(out.begin(), out.end(), [&](const BoundaryPoint& q) { return same_point(p, q); }))
        out.push_back(p);
  return out;
}

std::vector<WeightedPoint> ProperMap::points_on_curve(int curve) const {
  std::vector<WeightedPoint> out;
  for (const auto& w : decomposition_)
    if (w.point.curve == curve) out.push_back(w);
  return out;
}

BasePoint default_base(const ProperMap& f) {
  for (const auto& t : f.terms())
    if (t.map->base().kind == BaseKind::Interior) return t.map->base();
  BasePoint b;
  b.point = f.domain().reference_point();
  return b;
}

ProperPtr add_point(const ProperMap& f, const BoundaryPoint& beta_in, double c3) {
  const auto& d = f.domain();
  if (beta_in.curve < 0 || beta_in.curve >= d.curve_count())
    fail(ErrorCode::InvalidArgument, "invalid curve index " + std::to_string(beta_in.curve + 1));
  if (!(c3 > 0)) fail(ErrorCode::InvalidArgument, "coefficient of the added term must be positive");
  const BoundaryPoint beta{beta_in.curve, wrap_parameter(beta_in.t)};
  for (const auto& p : f.singular_points())
    if (same_point(p, beta)) fail(ErrorCode::InvalidArgument, describe(beta) + " is already a pole");
  std::vector<BoundaryPoint> marked;
  for (int k = 0; k < d.curve_count(); ++k) {
    if (k == beta.curve) {
      marked.push_back(beta);
      continue;
    }
    const auto pts = f.points_on_curve(k);
    marked.push_back(pts.front().point);
  }
  auto g = GrunskyMap::build(f.context(), marked, default_base(f));
  auto terms = f.terms();
  terms.push_back({g, c3});
  return combine_or_throw(terms);
}

RemoveResult remove_point(const ProperMap& f, const BoundaryPoint& b_in) {
  const auto& d = f.domain();
  const auto& dec = f.decomposition();
  auto hit = std::find_if(dec.begin(), dec.end(), [&](const WeightedPoint& w) { return same_point(w.point, b_in); });
  if (hit == dec.end()) fail(ErrorCode::InvalidArgument, describe(b_in) + " is not a pole of the map");
  const WeightedPoint target = *hit;
  if (f.points_on_curve(target.point.curve).size() < 2)
    fail(ErrorCode::InvalidArgument, "curve " + std::to_string(target.point.curve + 1) +
                                         " must keep at least one pole");

  // Remaining poles grouped by curve.
  std::vector<std::vector<BoundaryPoint>> rest(static_cast<std::size_t>(d.curve_count()));
  for (const auto& w : dec)
    if (!same_point(w.point, target.point)) rest[static_cast<std::size_t>(w.point.curve)].push_back(w.point);
  std::size_t layers = 0;
  for (const auto& r : rest) layers = std::max(layers, r.size());

  const BasePoint base = default_base(f);
  std::vector<Term> f0;
  for (std::size_t i = 0; i < layers; ++i) {
    std::vector<BoundaryPoint> marked;
    for (const auto& r : rest) marked.push_back(r[std::min(i, r.size() - 1)]);
    f0.push_back({GrunskyMap::build(f.context(), marked, base), 1.0});
  }
  std::vector<BoundaryPoint> through;
  for (int k = 0; k < d.curve_count(); ++k)
    through.push_back(k == target.point.curve ? target.point : rest[static_cast<std::size_t>(k)].front());
  auto g = GrunskyMap::build(f.context(), through, base);
  const double wg = g->poisson_scale() * g->coefficients().a[static_cast<std::size_t>(target.point.curve)];

  RemoveResult out;
  out.c = target.weight / wg;
  out.c0 = 1.0;
  std::string last;
  for (out.doublings = 0; out.doublings <= 60; ++out.doublings) {
    auto terms = f.terms();
    for (const auto& t : f0) terms.push_back({t.map, out.c0 * t.coeff});
    terms.push_back({g, -out.c});
    auto r = combine(terms);
    const bool removed = std::none_of(r.report.weights.begin(), r.report.weights.end(),
                                      [&](const WeightedPoint& w) { return same_point(w.point, target.point); });
    if (r.map && removed) {
      out.map = r.map;
      return out;
    }
    last = r.report.violations.empty() ? "weight at the removed point did not cancel" : r.report.violations.front();
    out.c0 *= 2.0;
  }
  fail(ErrorCode::Infeasible, "no feasible c0 after 60 doublings: " + last);
}

Multiplicity boundary_multiplicity(const HolomorphicMap& f, int curve) {
  const auto& d = f.domain();
  if (curve < 0 || curve >= d.curve_count())
    fail(ErrorCode::InvalidArgument, "invalid curve index " + std::to_string(curve + 1));
  Multiplicity m;
  for (const auto& p : f.poles()) m.poles += p.curve == curve ? 1 : 0;
  const BoundaryWinding w = boundary_winding(f, curve);
  m.winding = static_cast<int>(std::lround(w.turns));
  m.pole_crossings = w.pole_crossings;
  if (std::abs(w.turns - m.winding) > 1e-2)
    fail(ErrorCode::Numerical, "boundary winding is ambiguous; increase the node count");
  return m;
}

}  // namespace propermap
