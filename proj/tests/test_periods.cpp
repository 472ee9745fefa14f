#include <doctest.h>

#include <cmath>

#include "error.hpp"
#include "fixtures.hpp"
#include "periods.hpp"

using namespace propermap;
using fixtures::context;
using fixtures::marks;

TEST_CASE("annulus period matrix in closed form") {
  // F_outer' = 1/(z log(1/q)) = -F_inner'
  for (const double q : {0.3, 0.5}) {
    auto ctx = context("annulus", 256, q);
    const double l = std::log(1.0 / q);
    const auto p = period_matrix(ctx->domain(), ctx->f_prime_fields(), {{0, 0.4}, {1, 4.0}});
    CHECK(p.lambda(0, 0) == doctest::Approx(1.0 / (q * l)).epsilon(1e-10));
    CHECK(p.lambda(1, 0) == doctest::Approx(-1.0 / (q * l)).epsilon(1e-10));
    CHECK(p.lambda(0, 1) == doctest::Approx(-1.0 / l).epsilon(1e-10));
    CHECK(p.lambda(1, 1) == doctest::Approx(1.0 / l).epsilon(1e-10));
    CHECK(p.max_imaginary < 1e-10);
    CHECK(p.column_sum_defect < 1e-10);
    const auto c = solve_coefficients(p);
    REQUIRE(c.a.size() == 2);
    CHECK(c.a[0] == doctest::Approx(q).epsilon(1e-10));
    CHECK(c.a[1] == 1.0);
  }
}

TEST_CASE("disc: a single unit coefficient") {
  auto ctx = context("disc");
  const auto p = period_matrix(ctx->domain(), ctx->f_prime_fields(), marks("disc"));
  const auto c = solve_coefficients(p);
  REQUIRE(c.a.size() == 1);
  CHECK(c.a[0] == 1.0);
}

TEST_CASE("three-connected: sign pattern, positive solution, LU equals Cramer") {
  auto ctx = context("three");
  const auto p = period_matrix(ctx->domain(), ctx->f_prime_fields(), marks("three"));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) CHECK(p.lambda(i, j) < 0);
  CHECK_NOTHROW(check_lemma_hypotheses(p));
  const auto lu = solve_coefficients(p);
  const auto cr = cramer_coefficients(p);
  CHECK(lu.residual < 1e-12);
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(lu.a[j] > 0);
    CHECK(std::abs(lu.a[j] - cr.a[j]) < 1e-12 * std::abs(lu.a[j]));
  }
  // sum_j a_j lambda_ij = 0 for every row but the last is the defining system;
  // the columns summing to zero makes the last row hold as well
  const Eigen::VectorXd a = Eigen::Map<const Eigen::VectorXd>(lu.a.data(), 3);
  CHECK((p.lambda * a).cwiseAbs().maxCoeff() < 1e-10 * p.lambda.cwiseAbs().maxCoeff());
}

TEST_CASE("determinant against a hand-expanded 3x3") {
  Eigen::MatrixXd m(3, 3);
  m << 2, -1, 0.5, 0.3, 4, -2, 1, 1, 3;
  const double expected = 2 * (4 * 3 - (-2) * 1) - (-1) * (0.3 * 3 - (-2) * 1) + 0.5 * (0.3 * 1 - 4 * 1);
  CHECK(determinant(m) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("marked point validation") {
  auto ctx = context("three");
  const auto& d = ctx->domain();
  CHECK_THROWS_AS(check_marked_points(d, {{0, 1.0}, {2, 3.0}}), Error);
  CHECK_THROWS_AS(check_marked_points(d, {{0, 1.0}, {0, 2.0}, {2, 3.0}}), Error);
  CHECK_THROWS_AS(check_marked_points(d, {{1, 1.0}, {0, 2.0}, {2, 3.0}}), Error);
  CHECK_THROWS_AS(check_marked_points(d, {{0, 1.0}, {1, 2.0}, {3, 3.0}}), Error);
  try {
    check_marked_points(d, {{0, 1.0}, {2, 3.0}});
  } catch (const Error& e) {
    CHECK(std::string(e.what()) == "curve 2 has no marked point");
  }
}

TEST_CASE("hypothesis violations are reported with the entry") {
  PeriodMatrix p;
  p.lambda.resize(3, 3);
  p.lambda << 2, 0.1, -1, -1, 2, -1, -1, -2.1, 2;
  p.column_sum_defect = 0;
  try {
    check_lemma_hypotheses(p);
    FAIL("no violation reported");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::HypothesisViolation);
    CHECK(std::string(e.what()).find("(1, 2)") != std::string::npos);
  }
}
