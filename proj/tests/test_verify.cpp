#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "verify.hpp"

using namespace propermap;
using fixtures::context;
using fixtures::marks;

namespace {

/// F + shift: still holomorphic with the same poles, but Re != 0 on the boundary.
class Shifted : public HolomorphicMap {
 public:
  Shifted(GrunskyPtr f, cplx shift) : f_(std::move(f)), shift_(shift) {}
  const ContextPtr& context() const override { return f_->context(); }
  cplx value(cplx z) const override { return f_->value(z) + shift_; }
  cplx derivative(cplx z) const override { return f_->derivative(z); }
  cplx boundary_value(const BoundaryPoint& z) const override { return f_->boundary_value(z) + shift_; }
  std::vector<cplx> boundary_values_at_nodes() const override {
    auto v = f_->boundary_values_at_nodes();
    for (auto& x : v) x += shift_;
    return v;
  }
  std::vector<BoundaryPoint> poles() const override { return f_->poles(); }

 private:
  GrunskyPtr f_;
  cplx shift_;
};

GrunskyPtr build(const std::string& name) {
  auto ctx = context(name);
  return GrunskyMap::build_interior(ctx, marks(name), ctx->domain().reference_point());
}

}  // namespace

TEST_CASE("a Grunsky map certifies") {
  for (const std::string name : {"annulus", "three"}) {
    auto f = build(name);
    const auto r = certify(*f);
    CHECK(r.passed());
    CHECK(r.degree == r.expected_degree);
    CHECK(r.degree_boundary == r.expected_degree);
    CHECK(r.degree_offset <= r.degree);
    CHECK(r.multiplicities == r.expected_multiplicities);
    CHECK(r.boundary_real < 1e-8);
    for (const auto& p : r.poles) CHECK(p.inverse_modulus < 0.05);
    for (const double p : r.period_residuals) CHECK(p < 1e-8);
  }
}

TEST_CASE("a real shift breaks the boundary condition") {
  auto f = build("annulus");
  double median = 0.0;
  reflection_real_check(*f, 0.2, &median);
  const Shifted g(f, 1e-3 * median);
  const auto r = certify(g);
  CHECK_FALSE(r.passed());
  CHECK(r.boundary_real > 5e-4);
  // an imaginary shift keeps the map proper
  const Shifted h(f, cplx(0.0, 0.3));
  CHECK(certify(h).passed());
}

TEST_CASE("thresholds are honoured") {
  auto f = build("three");
  Thresholds th;
  th.boundary_real = 1e-30;
  const auto r = certify(*f, th);
  CHECK_FALSE(r.passed());
  CHECK(r.failures.size() == 1);
}

TEST_CASE("reflection check ignores the exclusion arcs only") {
  auto f = build("annulus");
  double median = 0.0;
  const double wide = reflection_real_check(*f, 0.2, &median);
  CHECK(median > 0);
  CHECK(wide < 1e-8);
}

TEST_CASE("primitive pair") {
  auto f1 = build("three");
  const auto p = primitive_pair(*f1, 7);
  REQUIRE(p.second);
  CHECK(p.certificate.separated);
  CHECK(p.certificate.min_distance > 0);
  CHECK(p.certificate.values.size() == 3);
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(p.certificate.second[j].curve == static_cast<int>(j));
    CHECK(std::isfinite(std::abs(p.certificate.values[j])));
    CHECK(std::abs(p.certificate.values[j] - f1->boundary_value(p.certificate.second[j])) < 1e-12);
  }
  // same seed, same pair
  const auto q = primitive_pair(*f1, 7);
  CHECK(q.certificate.second[1].t == p.certificate.second[1].t);
}

TEST_CASE("double quotient is real on the boundary") {
  CHECK(double_quotient_check(*context("three")) < 1e-7);
  CHECK(double_quotient_check(*context("annulus")) < 1e-10);
}
