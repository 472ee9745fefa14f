#include <doctest.h>

#include <cmath>

#include "error.hpp"
#include "fixtures.hpp"
#include "szego.hpp"

using namespace propermap;
using fixtures::context;

namespace {

cplx disc_szego(cplx z, cplx a) { return 1.0 / (kTwoPi * (1.0 - z * std::conj(a))); }

/// Winding of g along the boundary nodes in the standard orientation.
double boundary_winding(const Domain& d, const std::vector<cplx>& g) {
  double total = 0.0;
  const int n = d.nodes_per_curve();
  for (int k = 0; k < d.curve_count(); ++k) {
    const double sigma = d.orientation(k);
    for (int m = 0; m < n; ++m) {
      const cplx a = g[d.node_index(k, m)];
      const cplx b = g[d.node_index(k, (m + 1) % n)];
      total += sigma * std::arg(b / a);
    }
  }
  return total / kTwoPi;
}

}  // namespace

TEST_CASE("disc kernel at the centre") {
  auto ctx = context("disc");
  const auto s = solve_szego_boundary(ctx->szego(), 0.0);
  for (const cplx v : s.szego) CHECK(std::abs(v - 1.0 / kTwoPi) < 1e-13);
  CHECK(s.szego_aa == doctest::Approx(1.0 / kTwoPi).epsilon(1e-13));
  CHECK(std::abs(szego_interior(s, 0.5) - 1.0 / kTwoPi) < 1e-13);
  // L(z, 0) = 1 / (2 pi z)
  for (const cplx z : {cplx(0.3, 0.1), cplx(-0.5, 0.4)})
    CHECK(std::abs(garabedian_interior(s, z) - 1.0 / (kTwoPi * z)) < 1e-10);
  for (std::size_t m = 0; m < s.szego.size(); ++m)
    CHECK(std::abs(std::abs(s.garabedian[m]) - std::abs(s.szego[m])) < 1e-15);
}

TEST_CASE("disc kernel off centre matches the closed form") {
  auto ctx = context("disc");
  const cplx a(0.3, 0.0);
  const auto s = solve_szego_boundary(ctx->szego(), a);
  const auto& d = ctx->domain();
  double worst = 0.0;
  for (std::size_t m = 0; m < d.node_count(); ++m) {
    const cplx exact = disc_szego(d.points()[m], a);
    worst = std::max(worst, std::abs(s.szego[m] - exact) / std::abs(exact));
  }
  CHECK(worst < 1e-8);
  // reproducing property with h(z) = z^2
  cplx integral = 0.0;
  for (std::size_t m = 0; m < d.node_count(); ++m)
    integral += d.points()[m] * d.points()[m] * std::conj(s.szego[m]) * d.weights()[m];
  CHECK(std::abs(integral - 0.09) < 1e-8);
}

TEST_CASE("integral equation residual on the annulus") {
  auto ctx = context("annulus", 512);
  const auto s = solve_szego_boundary(ctx->szego(), ctx->domain().reference_point());
  CHECK(s.residual < 1e-10);
  CHECK(ctx->szego().skew_defect() < 1e-14);
  for (const cplx v : s.szego) CHECK(std::abs(v) > 0);
}

TEST_CASE("boundary identity conj(S) = L T / i holds at the nodes") {
  auto ctx = context("three");
  const auto& d = ctx->domain();
  const auto s = solve_szego_boundary(ctx->szego(), d.reference_point());
  double worst = 0.0;
  for (std::size_t m = 0; m < d.node_count(); ++m) {
    worst = std::max(worst, std::abs(std::conj(s.szego[m]) - s.garabedian[m] * d.tangents()[m] / kI));
    CHECK(std::abs(s.garabedian[m]) > 0);
  }
  CHECK(worst < 1e-15);
}

TEST_CASE("hermitian symmetry across independent solves") {
  auto ctx = context("three");
  const auto pts = interior_sample_points(ctx->domain(), 6, 0.4);
  double worst = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto si = solve_szego_boundary(ctx->szego(), pts[i]);
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (i == j) continue;
      const auto sj = solve_szego_boundary(ctx->szego(), pts[j]);
      worst = std::max(worst, std::abs(szego_interior(si, pts[j]) - std::conj(szego_interior(sj, pts[i]))));
    }
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("Garabedian kernel has residue 1/(2 pi) at the base and no zeros") {
  auto ctx = context("annulus");
  const cplx a = ctx->domain().reference_point();
  const auto s = solve_szego_boundary(ctx->szego(), a);
  // Richardson extrapolation of (z - a) L(z, a) along a ray
  auto g = [&](double h) { return h * garabedian_interior(s, a + h); };
  const cplx r1 = g(1e-3), r2 = g(5e-4);
  CHECK(std::abs(2.0 * r2 - r1 - 1.0 / kTwoPi) < 1e-6);
  for (const cplx z : interior_sample_points(ctx->domain(), 40, 0.2))
    if (std::abs(z - a) > 1e-3) CHECK(std::abs(garabedian_interior(s, z)) > 1e-3);
}

TEST_CASE("Ahlfors map") {
  SUBCASE("identity on the disc") {
    auto ctx = context("disc");
    const auto s = solve_szego_boundary(ctx->szego(), 0.0);
    for (const cplx z : {cplx(0.2, 0.3), cplx(-0.6, 0.1), cplx(0.0, -0.8)})
      CHECK(std::abs(ahlfors_map(s, z) - z) < 1e-10);
  }
  SUBCASE("unimodular boundary values, zero and positive derivative at the base") {
    for (const std::string name : {"annulus", "three"}) {
      auto ctx = context(name);
      const auto& d = ctx->domain();
      const cplx a = d.reference_point();
      const auto s = solve_szego_boundary(ctx->szego(), a);
      for (std::size_t m = 0; m < d.node_count(); m += 7)
        CHECK(std::abs(std::abs(ahlfors_map(s, BoundaryPoint{d.node_curve(m), d.node_parameter(m)})) - 1.0) < 1e-8);
      CHECK(std::abs(ahlfors_map(s, a)) < 1e-10);
      CHECK(ahlfors_derivative_at_base(s) > 0);
    }
  }
  SUBCASE("n-to-one on a 3-connected domain") {
    auto ctx = context("three");
    const auto& d = ctx->domain();
    const auto s = solve_szego_boundary(ctx->szego(), d.reference_point());
    const cplx w0(0.2, -0.1);
    std::vector<cplx> g(d.node_count());
    for (std::size_t m = 0; m < d.node_count(); ++m)
      g[m] = ahlfors_map(s, BoundaryPoint{d.node_curve(m), d.node_parameter(m)}) - w0;
    CHECK(std::lround(boundary_winding(d, g)) == 3);
  }
}

TEST_CASE("zeros of S(., a)") {
  SUBCASE("none on the disc") {
    auto ctx = context("disc");
    CHECK(find_szego_zeros(solve_szego_boundary(ctx->szego(), 0.2)).empty());
  }
  SUBCASE("annulus with real base: one zero on the opposite axis") {
    auto ctx = context("annulus");
    const auto z = find_szego_zeros(solve_szego_boundary(ctx->szego(), 0.7));
    REQUIRE(z.size() == 1);
    CHECK(std::abs(z[0].imag()) < 1e-10);
    CHECK(z[0].real() < 0);
  }
  SUBCASE("3-connected: two distinct zeros") {
    auto ctx = context("three");
    const auto s = solve_szego_boundary(ctx->szego(), ctx->domain().reference_point());
    const auto z = find_szego_zeros(s);
    REQUIRE(z.size() == 2);
    CHECK(std::abs(z[0] - z[1]) > 1e-3);
    CHECK(szego_zero_count(s) == doctest::Approx(2.0).epsilon(1e-6));
    for (const cplx w : z) CHECK(std::abs(szego_interior(s, w)) < 1e-10);
  }
}

TEST_CASE("rank of (1 - f(z) conj f(w)) S(z, w)") {
  for (const auto& [name, tol] : {std::pair{"disc", 1e-8}, std::pair{"annulus", 1e-6}, std::pair{"three", 1e-6}}) {
    auto ctx = context(name);
    const auto s = solve_szego_boundary(ctx->szego(), ctx->domain().reference_point());
    const auto rc = szego_rank_check(ctx->szego(), s, 12, 12);
    CHECK(rc.ratio < tol);
  }
  auto ctx = context("annulus");
  const auto s = solve_szego_boundary(ctx->szego(), ctx->domain().reference_point());
  CHECK_THROWS_AS(szego_rank_check(ctx->szego(), s, 3, 3), Error);
}

TEST_CASE("base point checks") {
  auto ctx = context("annulus");
  CHECK_THROWS_AS(solve_szego_boundary(ctx->szego(), 0.1), Error);
  const double h = ctx->domain().node_spacing(1);
  const auto s = solve_szego_boundary(ctx->szego(), cplx(1.0 - 2.0 * h, 0.0));
  CHECK_FALSE(s.warnings.empty());
}

TEST_CASE("boundary-based kernel S(., b)") {
  auto ctx = context("disc");
  const BoundaryPoint b{0, 0.0};
  BoundarySzego sb(ctx->szego(), b);
  for (const cplx z : {cplx(0.1, 0.2), cplx(-0.5, -0.3)})
    CHECK(std::abs(sb.interior(z) - disc_szego(z, 1.0)) < 1e-10 * std::abs(disc_szego(z, 1.0)));
  CHECK(std::isinf(std::abs(sb.boundary(b))));
}
