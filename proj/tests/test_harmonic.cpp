#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"

using namespace propermap;
using fixtures::context;

namespace {

// harmonic measure of the outer circle of {q < |z| < 1}
double annulus_outer(double q, cplx z) { return std::log(std::abs(z) / q) / std::log(1.0 / q); }

}  // namespace

TEST_CASE("disc: the single measure is identically one") {
  auto ctx = context("disc");
  const auto& h = ctx->measure(0);
  for (const cplx z : {cplx(0.0), cplx(0.3, -0.4), cplx(-0.85, 0.1)}) CHECK(std::abs(h.value(z) - 1.0) < 1e-12);
  CHECK(std::abs(h.f_prime(cplx(0.2, 0.1))) < 1e-10);
}

TEST_CASE("annulus: closed form in log|z|") {
  const double q = 0.5;
  auto ctx = context("annulus");
  const auto& outer = ctx->measure(1);
  const auto& inner = ctx->measure(0);
  for (const cplx z : {cplx(0.75, 0.0), cplx(0.0, 0.6), cplx(-0.5, -0.5), cplx(0.55, 0.3)}) {
    CHECK(std::abs(outer.value(z) - annulus_outer(q, z)) < 1e-10);
    CHECK(std::abs(inner.value(z) + outer.value(z) - 1.0) < 1e-10);
    // F' = 2 d(omega)/dz = 1 / (z log(1/q))
    CHECK(std::abs(outer.f_prime(z) - 1.0 / (z * std::log(1.0 / q))) < 1e-9);
  }
  CHECK(outer.residual() < 1e-12);
  CHECK(outer.trace_defect() < 1e-10);
}

TEST_CASE("boundary traces are indicators") {
  for (const std::string name : {"three", "wavy"}) {
    auto ctx = context(name);
    for (int k = 0; k < ctx->domain().curve_count(); ++k) CHECK(ctx->measure(k).trace_defect() < 1e-8);
  }
}

TEST_CASE("F_j' identities on the boundary") {
  auto ctx = context("three");
  const auto& fields = ctx->f_prime_fields();
  REQUIRE(fields.size() == 3);
  CHECK(f_prime_sum_defect(fields) < 1e-9);
  for (const auto& f : fields) {
    CHECK(f.imaginary_defect() < 1e-9);
    CHECK(f.min_modulus() > 0);
  }
  CHECK(reflection_quotient_check(fields[0], fields[1]) < 1e-8);
  CHECK(reflection_quotient_check(fields[0], fields[2]) < 1e-8);
}

TEST_CASE("interpolated F' agrees with the direct boundary limit") {
  auto ctx = context("three");
  const auto& h = ctx->measure(1);
  const auto& field = ctx->f_prime_fields()[1];
  for (const BoundaryPoint b : {BoundaryPoint{0, 0.37}, BoundaryPoint{1, 2.2}, BoundaryPoint{2, 5.9}}) {
    const cplx direct = h.f_prime_boundary(b);
    CHECK(std::abs(field.at(b) - direct) < 1e-8 * std::max(1.0, std::abs(direct)));
  }
}

TEST_CASE("interior F' matches a centred difference of omega") {
  auto ctx = context("wavy", 512);
  const auto& h = ctx->measure(1);
  const cplx z(-0.5, 0.3);
  const double e = 1e-5;
  const double ux = (h.value(z + e) - h.value(z - e)) / (2 * e);
  const double uy = (h.value(z + kI * e) - h.value(z - kI * e)) / (2 * e);
  CHECK(std::abs(h.f_prime(z) - cplx(ux, -uy)) < 1e-6);
}

TEST_CASE("Dirichlet solve reproduces a harmonic polynomial") {
  auto ctx = context("three");
  const auto& d = ctx->domain();
  std::vector<double> data(d.node_count());
  for (std::size_t m = 0; m < d.node_count(); ++m) {
    const cplx z = d.points()[m];
    data[m] = (z * z).real() + z.imag();
  }
  std::vector<double> mu, sources;
  const double res = ctx->harmonic().solve(data, mu, sources);
  CHECK(res < 1e-12);
  CHECK(sources.size() == 2);
  for (const double s : sources) CHECK(std::abs(s) < 1e-8);
}
