#include <doctest.h>

#include <cmath>
#include <numbers>

#include "error.hpp"
#include "fixtures.hpp"
#include "spectral.hpp"

using namespace propermap;
using doctest::Approx;

TEST_CASE("point and tangent follow the standard orientation") {
  auto ann = fixtures::annulus(0.5);
  auto [z, t] = ann->point_and_tangent({1, 0.0});
  CHECK(std::abs(z - 1.0) < 1e-15);
  CHECK(std::abs(t - kI) < 1e-15);

  const double s = 1.1;
  auto [zi, ti] = ann->point_and_tangent({0, s});
  CHECK(std::abs(ti - (-kI * zi / std::abs(zi))) < 1e-14);

  auto ell = Domain::create({Ellipse{0.0, 2.0, 1.0}}, 64);
  auto [ze, te] = ell->point_and_tangent({0, std::numbers::pi / 2});
  CHECK(std::abs(ze - kI) < 1e-15);
  CHECK(std::abs(te - (-1.0)) < 1e-15);
}

TEST_CASE("quadrature integrates smooth periodic integrands") {
  auto d = Domain::create({Circle{cplx(0.3, -0.2), 1.7}}, 64);
  const auto q = d->quadrature(0);
  double length = 0.0;
  for (double w : q.weights) length += w;
  CHECK(length == Approx(kTwoPi * 1.7).epsilon(1e-14));

  auto disc = fixtures::disc(64);
  const auto qd = disc->quadrature(0);
  double c2 = 0.0;
  for (std::size_t m = 0; m < qd.t.size(); ++m) c2 += std::pow(std::cos(qd.t[m]), 2) * qd.weights[m];
  CHECK(c2 == Approx(std::numbers::pi).epsilon(1e-14));
}

TEST_CASE("quadrature error decays faster than any power when N doubles") {
  // perimeter of an ellipse against a fine reference
  auto perimeter = [](int n) { return Domain::create({Ellipse{0.0, 2.0, 1.0}}, n)->perimeter(0); };
  const double ref = perimeter(512);
  const double e8 = std::abs(perimeter(8) - ref);
  const double e16 = std::abs(perimeter(16) - ref);
  const double e64 = std::abs(perimeter(64) - ref);
  CHECK(e16 < e8 / 20);
  CHECK(e64 < 1e-13);
}

TEST_CASE("offset cycles") {
  auto disc = fixtures::disc(64);
  const Cycle c = disc->offset_cycle(0, 0.1);
  for (const cplx z : c.nodes) CHECK(std::abs(z) == Approx(0.9).epsilon(1e-14));
  CHECK(c.orientation == 1.0);

  auto ann = fixtures::annulus(0.5, 64);
  const Cycle inner = ann->offset_cycle(0, 0.1);
  for (const cplx z : inner.nodes) CHECK(std::abs(z) == Approx(0.6).epsilon(1e-14));
  CHECK(inner.orientation == -1.0);

  auto ell = Domain::create({Ellipse{0.0, 2.0, 1.0}}, 64);
  CHECK_THROWS_AS(ell->offset_cycle(0, 2.0), Error);
}

TEST_CASE("domain validation") {
  CHECK_THROWS_AS(Domain::create({Circle{0.0, 1.0}, Circle{0.0, 0.5}}, 64), Error);  // outer curve last
  CHECK_THROWS_AS(Domain::create({Circle{0.0, 0.5}, Circle{0.4, 0.5}, Circle{0.0, 2.0}}, 64), Error);
  CHECK_THROWS_AS(Domain::create({Circle{0.0, 1.0}}, 100), Error);
  // figure-eight trig curve
  CHECK_THROWS_AS(Domain::create({TrigCurve{{{1, cplx(1.0, 0)}, {2, cplx(1.5, 0)}}}}, 64), Error);
  // clockwise parametrization
  CHECK_THROWS_AS(Domain::create({TrigCurve{{{-1, cplx(1.0, 0)}}}}, 64), Error);
}

TEST_CASE("areas of the stored parametrizations") {
  auto ann = fixtures::annulus(0.5, 64);
  CHECK(ann->signed_area(1) == Approx(std::numbers::pi).epsilon(1e-14));
  CHECK(ann->signed_area(0) == Approx(0.25 * std::numbers::pi).epsilon(1e-14));
  CHECK(ann->orientation(0) == -1.0);
  CHECK(ann->orientation(1) == 1.0);
}

TEST_CASE("membership") {
  auto ann = fixtures::annulus(0.5, 64);
  CHECK(ann->contains(cplx(0.75, 0.0)));
  CHECK_FALSE(ann->contains(cplx(0.1, 0.1)));
  CHECK_FALSE(ann->contains(cplx(1.5, 0.0)));
  CHECK_THROWS_AS(ann->contains(cplx(1.0, 0.0)), Error);
  CHECK_FALSE(ann->contains_strict(cplx(1.0, 0.0)));
  CHECK(ann->contains(ann->reference_point()));
}

TEST_CASE("trig curves are periodic and smooth") {
  auto w = fixtures::wavy(64);
  for (double t : {0.0, 0.7, 2.9}) {
    auto [z0, t0] = w->point_and_tangent({1, t});
    auto [z1, t1] = w->point_and_tangent({1, t + kTwoPi});
    CHECK(std::abs(z0 - z1) < 1e-14);
    CHECK(std::abs(t0 - t1) < 1e-14);
    CHECK(std::abs(std::abs(t0) - 1.0) < 1e-15);
  }
}

TEST_CASE("parameter helpers") {
  CHECK(wrap_parameter(-0.5) == Approx(kTwoPi - 0.5));
  CHECK(wrap_parameter(kTwoPi + 0.25) == Approx(0.25));
  CHECK(parameter_distance(0.1, kTwoPi - 0.1) == Approx(0.2));
  CHECK(same_point({1, 0.0}, {1, kTwoPi}));
  CHECK_FALSE(same_point({1, 0.0}, {0, 0.0}));
}

TEST_CASE("spectral derivative of a trigonometric polynomial") {
  std::vector<cplx> v(32);
  for (int m = 0; m < 32; ++m) {
    const double t = kTwoPi * m / 32;
    v[static_cast<std::size_t>(m)] = std::exp(3.0 * kI * t) + 0.5 * std::cos(5 * t);
  }
  const auto dv = spectral_derivative(v);
  for (int m = 0; m < 32; ++m) {
    const double t = kTwoPi * m / 32;
    const cplx exact = 3.0 * kI * std::exp(3.0 * kI * t) - 2.5 * std::sin(5 * t);
    CHECK(std::abs(dv[static_cast<std::size_t>(m)] - exact) < 1e-12);
  }
  TrigInterpolant p(v);
  CHECK(std::abs(p.value(0.3) - (std::exp(0.9 * kI) + 0.5 * std::cos(1.5))) < 1e-13);
}
