// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "fixtures.hpp"
#include "grunsky.hpp"
#include "periods.hpp"
#include "semigroup.hpp"
#include "szego.hpp"
#include "verify.hpp"

using namespace propermap;
using fixtures::context;
using fixtures::marks;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok) { pass = pass && ok; }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

GrunskyPtr grunsky(const std::string& name, int n = 256) {
  auto ctx = context(name, n);
  return GrunskyMap::build_interior(ctx, marks(name), ctx->domain().reference_point());
}

// 1. Disc reduction against the Moebius map (1 + z)/(1 - z).
void disc_reduction(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  auto ctx = MapContext::create(fixtures::disc(256));
  auto f = GrunskyMap::build_interior(ctx, {{0, 0.0}}, 0.0);
  const cplx f0 = f->value(0.0);
  double worst = 0.0;
  int points = 0;
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) {
      const cplx z(-0.95 + 1.9 * (i + 0.5) / 20, -0.95 + 1.9 * (j + 0.5) / 20);
      if (std::abs(z) > 0.9) continue;
      ++points;
      worst = std::max(worst, std::abs(f->value(z) / f0 - (1.0 + z) / (1.0 - z)));
    }
  const double secs = seconds_since(t0);
  o.require(worst < 1e-8 && secs < 5.0);
  o.detail << "sup error " << worst << " over " << points << " grid points (< 1e-8), " << secs << " s (< 5 s)";
}

// 2. Annulus coefficient a_1 = q.
void annulus_coefficients(Outcome& o) {
  for (double q : {0.3, 0.5, 0.7}) {
    const auto t0 = std::chrono::steady_clock::now();
    auto ctx = MapContext::create(fixtures::annulus(q, 256));
    const auto p = period_matrix(ctx->domain(), ctx->f_prime_fields(), {{0, 0.5}, {1, 2.0}});
    const double a1 = solve_coefficients(p).a[0];
    const double secs = seconds_since(t0);
    o.require(std::abs(a1 - q) < 1e-6 && secs < 10.0);
    o.detail << "q=" << q << ": |a1-q|=" << std::abs(a1 - q) << " (" << secs << " s); ";
  }
}

// 3. Period residuals at N = 512.
void period_vanishing(Outcome& o) {
  for (const std::string name : {"annulus", "three"}) {
    const auto res = period_residuals(*grunsky(name, 512));
    double worst = 0.0;
    for (double r : res) worst = std::max(worst, r);
    o.require(worst < 1e-8);
    o.detail << name << " max " << worst << "; ";
  }
  o.detail << "(< 1e-8)";
}

// 4. Argument-principle degree and boundary multiplicity.
void degree_counts(Outcome& o) {
  int expected = 1;
  for (const std::string name : {"disc", "annulus", "three"}) {
    const auto d = mapping_degree(*grunsky(name));
    o.require(d.degree == expected && d.offset_count == expected && d.boundary_count == expected);
    o.detail << name << " " << d.offset_count << "/" << d.boundary_count << " (want " << expected << "); ";
    ++expected;
  }
  for (const std::string name : {"annulus", "three"}) {
    auto ctx = context(name);
    auto b2 = marks(name);
    b2.back().t += 2.0;
    auto f1 = grunsky(name);
    auto f2 = GrunskyMap::build_interior(ctx, b2, ctx->domain().reference_point());
    auto sum = combine_or_throw({{f1, 1.0}, {f2, 1.0}});
    const int n = ctx->domain().curve_count();
    const auto d = mapping_degree(*sum);
    const int m = boundary_multiplicity(*sum, n - 1).winding;
    o.require(d.degree == n + 1 && d.offset_count == n + 1 && m == 2);
    o.detail << name << " F1+F2: " << d.offset_count << "/" << d.boundary_count << " (want " << n + 1
             << "), outer multiplicity " << m << "; ";
  }
  o.detail << "(offset cycles / boundary)";
}

// 5. Scale-free boundary Re F at N = 256 and 512.
void properness_residual(Outcome& o) {
  // Below this both levels are roundoff and their ratio carries no information.
  constexpr double kFloor = 1e-10;
  bool decreasing_somewhere = false;
  for (const std::string name : {"disc", "annulus", "three", "wavy"}) {
    const double r256 = reflection_real_check(*grunsky(name, 256));
    const double r512 = reflection_real_check(*grunsky(name, 512));
    const bool at_floor = r256 < kFloor && r512 < kFloor;
    const bool ok = r512 < 1e-6 && (r256 >= 10.0 * r512 || at_floor);
    decreasing_somewhere = decreasing_somewhere || (!at_floor && r256 >= 10.0 * r512);
    o.require(ok);
    o.detail << name << " " << r256 << " -> " << r512 << (at_floor ? " (roundoff)" : "") << "; ";
  }
  o.require(decreasing_somewhere);
  o.detail << "(N=512 < 1e-6, ratio >= 10 unless both < " << kFloor << ")";
}

// 6. Kernel identities, Ahlfors map, rank structure.
void kernel_identities(Outcome& o) {
  // (a) L from an N = 256 solve against S from an independent N = 512 solve,
  // and the boundary limit of the Cauchy integral of L - 1/(2 pi (z - a)).
  {
    auto c256 = context("three", 256);
    auto c512 = context("three", 512);
    const cplx a = c256->domain().reference_point();
    const auto s256 = solve_szego_boundary(c256->szego(), a);
    const auto s512 = solve_szego_boundary(c512->szego(), a);
    const auto& d = c256->domain();
    double cross = 0.0, scale = 0.0;
    for (std::size_t m = 0; m < d.node_count(); ++m) {
      const int k = d.node_curve(m);
      const int j = static_cast<int>(m % static_cast<std::size_t>(d.nodes_per_curve()));
      const cplx s_fine = s512.szego[c512->domain().node_index(k, 2 * j)];
      cross = std::max(cross, std::abs(std::conj(s_fine) - s256.garabedian[m] * d.tangents()[m] / kI));
      scale = std::max(scale, std::abs(s_fine));
    }
    double holo = 0.0;
    const auto lim = s256.garabedian_regular.boundary_limit_at_nodes();
    for (std::size_t m = 0; m < d.node_count(); ++m) {
      const cplx regular = s256.garabedian[m] - 1.0 / (kTwoPi * (d.points()[m] - a));
      holo = std::max(holo, std::abs(lim[m] - regular));
    }
    o.require(cross < 1e-8 && holo < 1e-8);
    o.detail << "(a) cross-solve " << cross << " (|S| up to " << scale << "), Cauchy limit of L " << holo
             << "; ";
  }
  // (b) Ahlfors map.
  for (const std::string name : {"annulus", "three"}) {
    auto ctx = context(name);
    const auto& d = ctx->domain();
    const cplx a = d.reference_point();
    const auto s = solve_szego_boundary(ctx->szego(), a);
    double modulus = 0.0;
    for (std::size_t m = 0; m < d.node_count(); ++m)
      modulus = std::max(modulus, std::abs(std::abs(ahlfors_map(s, BoundaryPoint{d.node_curve(m), d.node_parameter(m)})) - 1.0));
    const double at_base = std::abs(ahlfors_map(s, a));
    // f = S * (1/L), differentiated term by term.
    const cplx fp = szego_interior_derivative(s, a) * inverse_garabedian(s, a) +
                    szego_interior(s, a) * inverse_garabedian_derivative(s, a);
    const bool ok = modulus < 1e-8 && at_base < 1e-10 && fp.real() > 0 && std::abs(fp.imag()) < 1e-8 * fp.real();
    o.require(ok);
    o.detail << "(b) " << name << " ||f|-1| " << modulus << ", |f(a)| " << at_base << ", f'(a) " << fp.real()
             << (fp.imag() >= 0 ? "+" : "") << fp.imag() << "i; ";
  }
  // (c) rank of (1 - f(z) conj f(w)) S(z,w).
  for (const std::string name : {"disc", "annulus", "three"}) {
    auto ctx = context(name);
    const auto s = solve_szego_boundary(ctx->szego(), ctx->domain().reference_point());
    const auto rc = szego_rank_check(ctx->szego(), s, 12, 12);
    o.require(rc.ratio < 1e-6);
    o.detail << "(c) " << name << " " << rc.ratio << "; ";
  }
}

// 7. Re F against c * sum_j a_j |S(z,b_j)|^2 / S(z,z), c the map's own scale.
void real_part_identity(Outcome& o) {
  for (const std::string name : {"annulus", "three"}) {
    auto f = grunsky(name, 512);
    const auto pts = interior_sample_points(f->domain(), 20, 0.3);
    const double dev = real_part_identity_check(*f, pts);
    o.require(dev < 1e-6);
    o.detail << name << " " << dev << " over " << pts.size() << " points (c = " << f->poisson_scale() << "); ";
  }
  o.detail << "N=512 (< 1e-6)";
}

// 8. Two interior bases and a boundary base give the same map after gauge
// fixing (each normalized to F = 1 at the reference point).
void uniqueness(Outcome& o) {
  for (const std::string name : {"annulus", "three"}) {
    auto ctx = context(name);
    const auto& d = ctx->domain();
    const auto b = marks(name);
    const auto pts = interior_sample_points(d, 30, 0.3);
    auto f1 = GrunskyMap::build_interior(ctx, b, d.reference_point());
    auto f2 = GrunskyMap::build_interior(ctx, b, pts[7]);
    auto f3 = GrunskyMap::build_boundary(ctx, b, {d.outer_curve(), b.back().t + 3.0});
    double worst = 0.0;
    for (const cplx z : pts) {
      const cplx v = f1->value(z);
      const double scale = std::max(1.0, std::abs(v));
      worst = std::max({worst, std::abs(f2->value(z) - v) / scale, std::abs(f3->value(z) - v) / scale});
    }
    o.require(worst < 1e-6);
    o.detail << name << " " << worst << "; ";
  }
  o.detail << "(max |F_k - F_1| / max(1, |F_1|) < 1e-6)";
}

// 9. Randomized coefficient positivity.
void positivity(Outcome& o) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> unif(0.0, kTwoPi);
  int failures = 0;
  double worst_sum = 0.0, min_a = 1e300;
  for (const std::string name : {"annulus", "three"}) {
    auto ctx = context(name);
    const int n = ctx->domain().curve_count();
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<BoundaryPoint> b;
      for (int k = 0; k < n; ++k) b.push_back({k, unif(rng)});
      try {
        const auto p = period_matrix(ctx->domain(), ctx->f_prime_fields(), b);
        check_lemma_hypotheses(p);
        const auto c = solve_coefficients(p);
        for (double a : c.a) min_a = std::min(min_a, a);
        worst_sum = std::max(worst_sum, p.column_sum_defect);
        if (p.column_sum_defect >= 1e-8) ++failures;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            if (i != j && !(p.lambda(i, j) < 0)) ++failures;
      } catch (const Error& e) {
        ++failures;
        o.detail << "[" << e.what() << "] ";
      }
    }
  }
  o.require(failures == 0 && min_a > 0);
  o.detail << "100 trials, failures " << failures << ", min a_j " << min_a << ", max column sum " << worst_sum;
}

// 10. Primitive pair.
void primitive(Outcome& o) {
  for (const std::string name : {"annulus", "three"}) {
    auto f1 = grunsky(name);
    const auto pair = primitive_pair(*f1, 7);
    const auto again = certify_primitive_pair(*f1, pair.second->marked());
    const bool ok = pair.certificate.min_distance > 1e-3 && again.separated &&
                    std::abs(again.min_distance - pair.certificate.min_distance) <=
                        1e-12 * pair.certificate.min_distance;
    o.require(ok);
    o.detail << name << " separation " << pair.certificate.min_distance << (again.separated ? " revalidated" : " NOT revalidated")
             << "; ";
  }
}

// 11. Reflection proxy for the double.
void double_extension(Outcome& o) {
  const double r = double_quotient_check(*context("three"));
  o.require(r < 1e-7);
  o.detail << "max |Im(F_j'/F_1')| " << r << " (< 1e-7)";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "disc reduction", disc_reduction},
      {2, "annulus coefficients", annulus_coefficients},
      {3, "period vanishing", period_vanishing},
      {4, "degree", degree_counts},
      {5, "properness residual", properness_residual},
      {6, "kernel identities", kernel_identities},
      {7, "real-part identity", real_part_identity},
      {8, "uniqueness gauge", uniqueness},
      {9, "coefficient positivity", positivity},
      {10, "primitive pair", primitive},
      {11, "double-extension proxy", double_extension},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    o.detail.precision(3);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "threw: " << e.what();
    }
    std::printf("%s %2d %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.str().c_str(),
                seconds_since(t0));
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
