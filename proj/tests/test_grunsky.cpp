#include <doctest.h>

#include <cmath>
#include <numbers>

#include "error.hpp"
#include "fixtures.hpp"
#include "grunsky.hpp"

using namespace propermap;
using fixtures::context;
using fixtures::marks;

TEST_CASE("disc with base 0 and pole at 1 gives the Cayley inverse") {
  auto ctx = context("disc");
  auto f = GrunskyMap::build_interior(ctx, marks("disc"), 0.0, Gauge{1.0, 0.0});
  CHECK(f->coefficients().a == std::vector<double>{1.0});
  for (const cplx z : {cplx(0.1, 0.2), cplx(-0.7, 0.3), cplx(0.5, -0.6)}) {
    const cplx exact = (1.0 + z) / (kTwoPi * (1.0 - z));
    CHECK(std::abs(f->value(z) - exact) < 1e-10 * std::abs(exact));
    const cplx dexact = 2.0 / (kTwoPi * (1.0 - z) * (1.0 - z));
    CHECK(std::abs(f->derivative(z) - dexact) < 1e-9 * std::abs(dexact));
  }
  CHECK(f->poisson_scale() == 1.0);
}

TEST_CASE("default gauge sends the reference point to 1") {
  for (const std::string name : {"annulus", "three", "wavy"}) {
    auto ctx = context(name);
    auto f = GrunskyMap::build_interior(ctx, marks(name), ctx->domain().reference_point());
    CHECK(std::abs(f->value(ctx->domain().reference_point()) - 1.0) < 1e-10);
    CHECK(f->gauge().scale > 0);
  }
}

TEST_CASE("boundary values are imaginary away from the poles") {
  auto ctx = context("three");
  auto f = GrunskyMap::build_interior(ctx, marks("three"), ctx->domain().reference_point());
  const auto& d = ctx->domain();
  const auto bv = f->boundary_values_at_nodes();
  double worst = 0.0, scale = 0.0;
  for (std::size_t m = 0; m < d.node_count(); ++m) {
    const BoundaryPoint p{d.node_curve(m), d.node_parameter(m)};
    bool near = false;
    for (const auto& b : f->poles())
      near = near || (b.curve == p.curve && std::abs(parameter_distance(b.t, p.t)) < 0.2);
    if (near) continue;
    worst = std::max(worst, std::abs(bv[m].real()));
    scale = std::max(scale, std::abs(bv[m]));
  }
  CHECK(worst < 1e-8 * scale);
  CHECK(std::isinf(std::abs(f->boundary_value(marks("three")[1]))));
}

TEST_CASE("real part equals the scaled Poisson sum") {
  auto ctx = context("annulus", 512);
  auto f = GrunskyMap::build_interior(ctx, marks("annulus"), ctx->domain().reference_point(), Gauge{1.0, 0.0});
  const auto pts = interior_sample_points(ctx->domain(), 10, 0.3);
  CHECK(real_part_identity_check(*f, pts) < 1e-11);
  for (const cplx z : pts) CHECK(f->value(z).real() > 0);
}

TEST_CASE("derivative matches a centred difference") {
  auto ctx = context("three");
  auto f = GrunskyMap::build_interior(ctx, marks("three"), ctx->domain().reference_point());
  const cplx z(0.1, 0.4);
  const double h = 1e-5;
  const cplx fd = (f->value(z + h) - f->value(z - h)) / (2 * h);
  CHECK(std::abs(f->derivative(z) - fd) < 1e-6 * std::max(1.0, std::abs(fd)));
}

TEST_CASE("boundary base point is sent to zero") {
  auto ctx = context("annulus");
  const BoundaryPoint a0{1, 4.0};
  auto f = GrunskyMap::build_boundary(ctx, marks("annulus"), a0, Gauge{1.0, 0.0});
  CHECK(std::abs(f->boundary_value(a0)) < 1e-8);
  // the default gauge adds i * shift
  auto g = GrunskyMap::build_boundary(ctx, marks("annulus"), a0);
  CHECK(std::abs(g->value(ctx->domain().reference_point()) - 1.0) < 1e-10);
  CHECK(std::abs(g->boundary_value(a0) - kI * g->gauge().shift) < 1e-8);
  CHECK(f->base().kind == BaseKind::Boundary);
  CHECK(f->poisson_scale() > 0);
  CHECK_THROWS_AS(GrunskyMap::build_boundary(ctx, marks("annulus"), marks("annulus")[0]), Error);
}

TEST_CASE("disc with boundary base -1 is a multiple of (1+z)/(1-z)") {
  auto ctx = context("disc");
  auto f = GrunskyMap::build_boundary(ctx, marks("disc"), BoundaryPoint{0, std::numbers::pi}, Gauge{1.0, 0.0});
  const cplx z0(0.2, 0.1);
  const cplx k = f->value(z0) * (1.0 - z0) / (1.0 + z0);
  CHECK(std::abs(k.imag()) < 1e-10 * std::abs(k));
  CHECK(k.real() > 0);
  for (const cplx z : {cplx(-0.5, 0.4), cplx(0.7, -0.2)})
    CHECK(std::abs(f->value(z) - k * (1.0 + z) / (1.0 - z)) < 1e-9 * std::abs(f->value(z)));
}

TEST_CASE("degree equals the number of curves") {
  for (const std::string name : {"disc", "annulus", "three"}) {
    auto ctx = context(name);
    auto f = GrunskyMap::build_interior(ctx, marks(name), ctx->domain().reference_point());
    const auto r = mapping_degree(*f);
    CHECK(r.degree == ctx->domain().curve_count());
    CHECK(r.boundary_count == ctx->domain().curve_count());
    CHECK(f->expected_degree() == ctx->domain().curve_count());
  }
}

TEST_CASE("each curve winds once") {
  auto ctx = context("three");
  auto f = GrunskyMap::build_interior(ctx, marks("three"), ctx->domain().reference_point());
  for (int k = 0; k < 3; ++k) {
    const auto w = boundary_winding(*f, k);
    CHECK(std::abs(w.turns - 1.0) < 1e-6);
    CHECK(w.pole_crossings == 1);
  }
}

TEST_CASE("evaluation helpers") {
  CHECK(std::abs(cayley(1.0)) == 0.0);
  CHECK(std::abs(cayley(kI) - kI) < 1e-15);
  auto ctx = context("annulus");
  auto f = GrunskyMap::build_interior(ctx, marks("annulus"), ctx->domain().reference_point());
  const std::vector<cplx> pts{cplx(0.7, 0.1), cplx(0.0, 0.0), cplx(-0.2, 0.8)};
  const auto s = evaluate_many(*f, pts, 2);
  REQUIRE(s.size() == 3);
  CHECK(std::abs(s[0].rhp - f->value(pts[0])) < 1e-14);
  CHECK(std::isnan(s[1].rhp.real()));
  CHECK(std::abs(s[2].disc) < 1.0);
  const auto near = evaluate(*f, BoundaryPoint{1, 2.0 + 1e-9});
  CHECK(near.near_pole);
}

TEST_CASE("argument checks") {
  auto ctx = context("annulus");
  CHECK_THROWS_AS(GrunskyMap::build_interior(ctx, {{1, 2.0}}, 0.75), Error);
  CHECK_THROWS_AS(GrunskyMap::build_interior(ctx, marks("annulus"), 0.1), Error);
  CHECK_THROWS_AS(GrunskyMap::build_interior(ctx, marks("annulus"), 0.75, Gauge{-1.0, 0.0}), Error);
}
