#include "geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "error.hpp"
#include "spectral.hpp"

namespace propermap {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

cplx trig_eval(const TrigCurve& c, double t, int order) {
  cplx sum = 0.0;
  for (const auto& [k, ck] : c.coeffs) {
    const double kk = static_cast<double>(k);
    cplx f = 1.0;
    if (order == 1) f = cplx(0.0, kk);
    if (order == 2) f = cplx(-kk * kk, 0.0);
    sum += f * ck * std::polar(1.0, kk * t);
  }
  return sum;
}

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

bool segments_cross(cplx p1, cplx p2, cplx q1, cplx q2) {
  const double d1 = cross(p2 - p1, q1 - p1);
  const double d2 = cross(p2 - p1, q2 - p1);
  const double d3 = cross(q2 - q1, p1 - q1);
  const double d4 = cross(q2 - q1, p2 - q1);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 &&
         d3 != 0 && d4 != 0;
}

struct Segment {
  cplx a, b;
  double xmin, xmax, ymin, ymax;
};

std::vector<Segment> polygon_segments(const std::vector<cplx>& pts) {
  std::vector<Segment> segs(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const cplx a = pts[i], b = pts[(i + 1) % pts.size()];
    segs[i] = {a, b, std::min(a.real(), b.real()), std::max(a.real(), b.real()),
               std::min(a.imag(), b.imag()), std::max(a.imag(), b.imag())};
  }
  return segs;
}

bool boxes_overlap(const Segment& s, const Segment& q) {
  return s.xmin <= q.xmax && q.xmin <= s.xmax && s.ymin <= q.ymax && q.ymin <= s.ymax;
}

}  // namespace

cplx curve_point(const CurveSpec& c, double t) {
  return std::visit(
      overloaded{
          [t](const Circle& s) { return s.center + s.radius * std::polar(1.0, t); },
          [t](const Ellipse& s) {
            return s.center + cplx(s.semi_x * std::cos(t), s.semi_y * std::sin(t));
          },
          [t](const TrigCurve& s) { return trig_eval(s, t, 0); },
      },
      c);
}

cplx curve_derivative(const CurveSpec& c, double t) {
  return std::visit(
      overloaded{
          [t](const Circle& s) { return s.radius * kI * std::polar(1.0, t); },
          [t](const Ellipse& s) { return cplx(-s.semi_x * std::sin(t), s.semi_y * std::cos(t)); },
          [t](const TrigCurve& s) { return trig_eval(s, t, 1); },
      },
      c);
}

cplx curve_second_derivative(const CurveSpec& c, double t) {
  return std::visit(
      overloaded{
          [t](const Circle& s) { return -s.radius * std::polar(1.0, t); },
          [t](const Ellipse& s) { return cplx(-s.semi_x * std::cos(t), -s.semi_y * std::sin(t)); },
          [t](const TrigCurve& s) { return trig_eval(s, t, 2); },
      },
      c);
}

double wrap_parameter(double t) {
  double r = std::fmod(t, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double parameter_distance(double a, double b) {
  double d = std::remainder(a - b, kTwoPi);
  if (d <= -kTwoPi / 2) d += kTwoPi;
  return d;
}

bool same_point(const BoundaryPoint& a, const BoundaryPoint& b, double tol) {
  return a.curve == b.curve && std::abs(parameter_distance(a.t, b.t)) < tol;
}

std::shared_ptr<const Domain> Domain::create(std::vector<CurveSpec> curves, int nodes) {
  if (curves.empty()) fail(ErrorCode::InvalidDomain, "domain has no boundary curves");
  if (nodes < 8 || !is_power_of_two(static_cast<std::size_t>(nodes)))
    fail(ErrorCode::InvalidArgument, "node count must be a power of two >= 8");
  for (const auto& c : curves) {
    if (const auto* circ = std::get_if<Circle>(&c); circ && !(circ->radius > 0))
      fail(ErrorCode::InvalidDomain, "circle radius must be positive");
    if (const auto* ell = std::get_if<Ellipse>(&c); ell && !(ell->semi_x > 0 && ell->semi_y > 0))
      fail(ErrorCode::InvalidDomain, "ellipse semi-axes must be positive");
    if (const auto* tc = std::get_if<TrigCurve>(&c); tc && tc->coeffs.empty())
      fail(ErrorCode::InvalidDomain, "trig curve has no coefficients");
  }
  std::shared_ptr<Domain> d(new Domain());
  d->curves_ = std::move(curves);
  d->nodes_ = nodes;
  d->sample();
  d->validate();
  d->locate_hole_points();
  d->locate_reference_point();
  return d;
}

void Domain::sample() {
  const int n = curve_count();
  const std::size_t total = static_cast<std::size_t>(n) * static_cast<std::size_t>(nodes_);
  points_.resize(total);
  derivs_.resize(total);
  tangents_.resize(total);
  weights_.resize(total);
  curvatures_.resize(total);
  perimeters_.assign(static_cast<std::size_t>(n), 0.0);
  const double h = kTwoPi / nodes_;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (int k = 0; k < n; ++k) {
    for (int m = 0; m < nodes_; ++m) {
      const double t = h * m;
      const std::size_t i = node_index(k, m);
      points_[i] = curve_point(curves_[static_cast<std::size_t>(k)], t);
      derivs_[i] = curve_derivative(curves_[static_cast<std::size_t>(k)], t);
      const double speed = std::abs(derivs_[i]);
      if (!(speed > 0))
        fail(ErrorCode::InvalidDomain, "curve " + std::to_string(k + 1) + " has a singular parametrization");
      tangents_[i] = orientation(k) * derivs_[i] / speed;
      weights_[i] = h * speed;
      curvatures_[i] = curvature(k, t);
      perimeters_[static_cast<std::size_t>(k)] += weights_[i];
      xmin = std::min(xmin, points_[i].real());
      xmax = std::max(xmax, points_[i].real());
      ymin = std::min(ymin, points_[i].imag());
      ymax = std::max(ymax, points_[i].imag());
    }
  }
  bbox_ = {xmin, xmax, ymin, ymax};
  diameter_ = std::hypot(xmax - xmin, ymax - ymin);
}

void Domain::validate() const {
  const int n = curve_count();
  const int fine = std::max(4 * nodes_, 1024);
  for (int k = 0; k < n; ++k) {
    double max_speed = 0.0, min_speed = std::numeric_limits<double>::infinity();
    for (int m = 0; m < fine; ++m) {
      const double s = std::abs(derivative(k, kTwoPi * m / fine));
      max_speed = std::max(max_speed, s);
      min_speed = std::min(min_speed, s);
    }
    if (!(min_speed > 1e-12 * max_speed))
      fail(ErrorCode::InvalidDomain, "curve " + std::to_string(k + 1) + " has a vanishing derivative");
    if (!(signed_area(k) > 0))
      fail(ErrorCode::InvalidDomain, "curve " + std::to_string(k + 1) + " is not counterclockwise");
  }

  // Sampled self- and cross-intersection test with bounding-box pruning.
  const int samples = std::min(std::max(nodes_, 256), 1024);
  std::vector<std::vector<Segment>> segs(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    std::vector<cplx> pts(static_cast<std::size_t>(samples));
    for (int m = 0; m < samples; ++m) pts[static_cast<std::size_t>(m)] = point(k, kTwoPi * m / samples);
    segs[static_cast<std::size_t>(k)] = polygon_segments(pts);
  }
  for (int k = 0; k < n; ++k) {
    const auto& sk = segs[static_cast<std::size_t>(k)];
    for (int l = k; l < n; ++l) {
      const auto& sl = segs[static_cast<std::size_t>(l)];
      for (std::size_t i = 0; i < sk.size(); ++i) {
        for (std::size_t j = (k == l ? i + 2 : 0); j < sl.size(); ++j) {
          if (k == l && i == 0 && j == sl.size() - 1) continue;
          if (!boxes_overlap(sk[i], sl[j])) continue;
          if (segments_cross(sk[i].a, sk[i].b, sl[j].a, sl[j].b)) {
            std::ostringstream os;
            if (k == l)
              os << "curve " << k + 1 << " intersects itself";
            else
              os << "curves " << k + 1 << " and " << l + 1 << " intersect";
            fail(ErrorCode::InvalidDomain, os.str());
          }
        }
      }
    }
  }

  // Nesting: inner curves inside the outer one and mutually exterior.
  const int outer = outer_curve();
  for (int k = 0; k < outer; ++k) {
    const cplx p = point(k, 0.0);
    if (winding_number(outer, p) != 1)
      fail(ErrorCode::InvalidDomain,
           "curve " + std::to_string(k + 1) + " is not enclosed by the outer curve (the outer curve must be listed last)");
    for (int l = 0; l < outer; ++l) {
      if (l != k && winding_number(l, p) != 0)
        fail(ErrorCode::InvalidDomain,
             "curves " + std::to_string(k + 1) + " and " + std::to_string(l + 1) + " are nested");
    }
  }
}

void Domain::locate_hole_points() {
  hole_points_.assign(static_cast<std::size_t>(curve_count()), cplx(0.0));
  for (int k = 0; k < outer_curve(); ++k) {
    cplx centroid = 0.0;
    for (const cplx& z : curve_points(k)) centroid += z;
    centroid /= static_cast<double>(nodes_);
    if (winding_number(k, centroid) != 1)
      fail(ErrorCode::InvalidDomain,
           "node centroid of curve " + std::to_string(k + 1) + " lies outside its hole");
    hole_points_[static_cast<std::size_t>(k)] = centroid;
  }
}

void Domain::locate_reference_point() {
  // Area centroid of the domain when it lies well inside, otherwise the grid
  // point farthest from the boundary.
  auto region = [this](int k, double& area, cplx& moment) {
    area = 0.0;
    moment = 0.0;
    const auto pts = curve_points(k);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const cplx a = pts[i], b = pts[(i + 1) % pts.size()];
      const double c = cross(a, b);
      area += 0.5 * c;
      moment += (a + b) * c / 6.0;
    }
  };
  double area = 0.0;
  cplx moment = 0.0;
  region(outer_curve(), area, moment);
  for (int k = 0; k < outer_curve(); ++k) {
    double a = 0.0;
    cplx mo = 0.0;
    region(k, a, mo);
    area -= a;
    moment -= mo;
  }
  const cplx centroid = moment / area;

  constexpr int grid = 49;
  double best = -1.0;
  cplx best_point = centroid;
  for (int iy = 0; iy < grid; ++iy) {
    for (int ix = 0; ix < grid; ++ix) {
      const cplx z(bbox_[0] + (bbox_[1] - bbox_[0]) * ix / (grid - 1),
                   bbox_[2] + (bbox_[3] - bbox_[2]) * iy / (grid - 1));
      if (!contains_strict(z)) continue;
      const double d = distance_to_boundary(z);
      if (d > best + 1e-12) {
        best = d;
        best_point = z;
      }
    }
  }
  if (best < 0) fail(ErrorCode::InvalidDomain, "domain has no interior grid points");
  reference_point_ = best_point;
  if (contains_strict(centroid) && distance_to_boundary(centroid) >= 0.5 * best)
    reference_point_ = centroid;
}

double Domain::node_parameter(std::size_t idx) const {
  return kTwoPi * static_cast<double>(idx % static_cast<std::size_t>(nodes_)) / nodes_;
}

std::span<const cplx> Domain::curve_points(int k) const {
  return std::span<const cplx>(points_).subspan(node_index(k, 0), static_cast<std::size_t>(nodes_));
}

cplx Domain::point(int curve, double t) const { return curve_point(this->curve(curve), t); }
cplx Domain::derivative(int curve, double t) const { return curve_derivative(this->curve(curve), t); }
cplx Domain::second_derivative(int curve, double t) const {
  return curve_second_derivative(this->curve(curve), t);
}

cplx Domain::tangent(int curve, double t) const {
  const cplx d = derivative(curve, t);
  return orientation(curve) * d / std::abs(d);
}

double Domain::curvature(int curve, double t) const {
  const cplx d1 = derivative(curve, t);
  const cplx d2 = second_derivative(curve, t);
  const double s = std::abs(d1);
  return orientation(curve) * cross(d1, d2) / (s * s * s);
}

std::pair<cplx, cplx> Domain::point_and_tangent(const BoundaryPoint& b) const {
  if (b.curve < 0 || b.curve >= curve_count())
    fail(ErrorCode::InvalidArgument, "invalid curve index " + std::to_string(b.curve + 1));
  return {point(b.curve, b.t), tangent(b.curve, b.t)};
}

Quadrature Domain::quadrature(int curve) const {
  if (curve < 0 || curve >= curve_count())
    fail(ErrorCode::InvalidArgument, "invalid curve index " + std::to_string(curve + 1));
  Quadrature q;
  q.t.resize(static_cast<std::size_t>(nodes_));
  q.nodes.resize(static_cast<std::size_t>(nodes_));
  q.weights.resize(static_cast<std::size_t>(nodes_));
  for (int m = 0; m < nodes_; ++m) {
    const std::size_t i = node_index(curve, m);
    q.t[static_cast<std::size_t>(m)] = node_parameter(i);
    q.nodes[static_cast<std::size_t>(m)] = points_[i];
    q.weights[static_cast<std::size_t>(m)] = weights_[i];
  }
  return q;
}

double Domain::min_node_spacing() const {
  double h = std::numeric_limits<double>::infinity();
  for (int k = 0; k < curve_count(); ++k) h = std::min(h, node_spacing(k));
  return h;
}

double Domain::signed_area(int curve) const {
  // Trapezoid rule is spectrally accurate for the periodic integrand.
  double area = 0.0;
  for (int m = 0; m < nodes_; ++m) {
    const std::size_t i = node_index(curve, m);
    area += cross(points_[i], derivs_[i]);
  }
  return 0.5 * area * kTwoPi / nodes_;
}

double Domain::distance_to_curve(int curve, cplx z, double* t_nearest) const {
  const auto pts = curve_points(curve);
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < pts.size(); ++m) {
    const double d = std::norm(pts[m] - z);
    if (d < best_d) {
      best_d = d;
      best = m;
    }
  }
  // Newton on g(t) = Re(conj(z(t) - z) z'(t)).
  double t = kTwoPi * static_cast<double>(best) / nodes_;
  const double h = kTwoPi / nodes_;
  for (int it = 0; it < 30; ++it) {
    const cplx r = point(curve, t) - z;
    const cplx d1 = derivative(curve, t);
    const cplx d2 = second_derivative(curve, t);
    const double g = (std::conj(r) * d1).real();
    const double gp = std::norm(d1) + (std::conj(r) * d2).real();
    if (!(gp > 0)) break;
    double step = g / gp;
    step = std::clamp(step, -h, h);
    t -= step;
    if (std::abs(step) < 1e-15) break;
  }
  const double dn = std::abs(point(curve, t) - z);
  const double d0 = std::sqrt(best_d);
  if (dn <= d0) {
    if (t_nearest) *t_nearest = wrap_parameter(t);
    return dn;
  }
  if (t_nearest) *t_nearest = kTwoPi * static_cast<double>(best) / nodes_;
  return d0;
}

double Domain::distance_to_boundary(cplx z, BoundaryPoint* nearest) const {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < curve_count(); ++k) {
    double t = 0.0;
    const double d = distance_to_curve(k, z, &t);
    if (d < best) {
      best = d;
      if (nearest) *nearest = {k, t};
    }
  }
  return best;
}

int Domain::winding_number(int curve, cplx z) const {
  double t = 0.0;
  const double d = distance_to_curve(curve, z, &t);
  if (d > 4.0 * node_spacing(curve)) {
    cplx sum = 0.0;
    for (int m = 0; m < nodes_; ++m) {
      const std::size_t i = node_index(curve, m);
      sum += derivs_[i] / (points_[i] - z);
    }
    const double w = (sum / kI).real() / nodes_;
    return static_cast<int>(std::lround(w));
  }
  // Close to the curve: side of the local tangent (left of a counterclockwise
  // curve is inside).
  const double side = cross(derivative(curve, t), z - point(curve, t));
  return side > 0 ? 1 : 0;
}

bool Domain::contains_strict(cplx z) const {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  if (distance_to_boundary(z) < 1e-10 * diameter_) return false;
  if (winding_number(outer_curve(), z) != 1) return false;
  for (int k = 0; k < outer_curve(); ++k)
    if (winding_number(k, z) != 0) return false;
  return true;
}

bool Domain::contains(cplx z) const {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    fail(ErrorCode::InvalidArgument, "non-finite point");
  if (distance_to_boundary(z) < 1e-10 * diameter_)
    fail(ErrorCode::NearBoundary, "point is within tolerance of the boundary");
  return contains_strict(z);
}

double Domain::reach(int curve) const {
  double r = std::numeric_limits<double>::infinity();
  for (int m = 0; m < nodes_; ++m) {
    const double kappa = curvatures_[node_index(curve, m)];
    if (kappa > 0) r = std::min(r, 1.0 / kappa);
  }
  const auto pts = curve_points(curve);
  for (int l = 0; l < curve_count(); ++l) {
    if (l == curve) continue;
    for (const cplx& p : pts) r = std::min(r, 0.5 * distance_to_curve(l, p));
  }
  return r;
}

Cycle Domain::offset_cycle(int curve, double eps, int samples) const {
  if (curve < 0 || curve >= curve_count())
    fail(ErrorCode::InvalidArgument, "invalid curve index " + std::to_string(curve + 1));
  if (!(eps > 0)) fail(ErrorCode::InvalidArgument, "offset must be positive");
  const double r = reach(curve);
  if (eps >= r) {
    std::ostringstream os;
    os << "offset " << eps << " exceeds the reach " << r << " of curve " << curve + 1;
    fail(ErrorCode::InvalidArgument, os.str());
  }
  if (samples <= 0) samples = nodes_;
  Cycle c;
  c.curve = curve;
  c.offset = eps;
  c.orientation = orientation(curve);
  c.t.resize(static_cast<std::size_t>(samples));
  c.nodes.resize(static_cast<std::size_t>(samples));
  c.derivs.resize(static_cast<std::size_t>(samples));
  const double sigma = orientation(curve);
  for (int m = 0; m < samples; ++m) {
    const double t = kTwoPi * m / samples;
    const cplx d1 = derivative(curve, t);
    const cplx d2 = second_derivative(curve, t);
    const double s = std::abs(d1);
    const cplx tang = sigma * d1 / s;
    const cplx dtang = sigma * (d2 / s - d1 * (std::conj(d1) * d2).real() / (s * s * s));
    c.t[static_cast<std::size_t>(m)] = t;
    c.nodes[static_cast<std::size_t>(m)] = point(curve, t) + eps * kI * tang;
    c.derivs[static_cast<std::size_t>(m)] = d1 + eps * kI * dtang;
  }
  for (const cplx& z : c.nodes) {
    if (!contains_strict(z)) {
      std::ostringstream os;
      os << "offset " << eps << " leaves the domain on curve " << curve + 1;
      fail(ErrorCode::InvalidArgument, os.str());
    }
  }
  return c;
}

}  // namespace propermap
