#pragma once

#include <map>
#include <mutex>
#include <tuple>
#include <utility>

#include "context.hpp"

namespace fixtures {

using namespace propermap;

inline DomainPtr disc(int n = 256) { return Domain::create({Circle{0.0, 1.0}}, n); }

inline DomainPtr annulus(double q = 0.5, int n = 256) { return Domain::create({Circle{0.0, q}, Circle{0.0, 1.0}}, n); }

inline DomainPtr three(int n = 256) {
  return Domain::create({Circle{cplx(-0.4, 0.1), 0.2}, Ellipse{cplx(0.35, -0.1), 0.18, 0.25}, Ellipse{0.0, 1.2, 0.9}},
                        n);
}

/// Off-center hole inside a three-lobed outer curve; N = 256 is visibly short
/// of convergence here.
inline DomainPtr wavy(int n = 256) {
  return Domain::create({Circle{cplx(0.1, 0.05), 0.3}, TrigCurve{{{1, cplx(1.0, 0.0)}, {-3, cplx(0.18, 0.0)}}}}, n);
}

/// Contexts are expensive; tests share them by (name, q, N).
inline ContextPtr context(const std::string& name, int n = 256, double q = 0.5) {
  static std::mutex mutex;
  static std::map<std::tuple<std::string, int, double>, ContextPtr> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{name, n, q}];
  if (!slot) {
    DomainPtr d;
    if (name == "disc")
      d = disc(n);
    else if (name == "annulus")
      d = annulus(q, n);
    else if (name == "three")
      d = three(n);
    else
      d = wavy(n);
    slot = MapContext::create(d);
  }
  return slot;
}

/// One marked point per curve used throughout the tests.
inline std::vector<BoundaryPoint> marks(const std::string& name) {
  if (name == "disc") return {{0, 0.0}};
  if (name == "annulus") return {{0, 0.5}, {1, 2.0}};
  if (name == "three") return {{0, 1.0}, {1, 2.0}, {2, 3.0}};
  return {{0, 1.0}, {1, 2.5}};
}

}  // namespace fixtures
