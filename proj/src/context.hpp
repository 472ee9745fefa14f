#pragma once

#include <memory>
#include <vector>

#include "geom.hpp"
#include "harmonic.hpp"
#include "szego.hpp"

namespace propermap {

/// Everything that depends only on the domain and N: the factored Szego
/// system, the factored harmonic-measure system and the F_j' fields.
/// Immutable after construction and shared by all maps on the domain.
class MapContext {
 public:
  static std::shared_ptr<const MapContext> create(DomainPtr domain);

  const Domain& domain() const { return *domain_; }
  const DomainPtr& domain_ptr() const { return domain_; }
  const SzegoSystem& szego() const { return *szego_; }
  const HarmonicSystem& harmonic() const { return *harmonic_; }
  const HarmonicMeasure& measure(int curve) const { return measures_.at(static_cast<std::size_t>(curve)); }
  const std::vector<FPrimeField>& f_prime_fields() const { return fields_; }

 private:
  MapContext() = default;

  DomainPtr domain_;
  std::unique_ptr<SzegoSystem> szego_;
  std::unique_ptr<HarmonicSystem> harmonic_;
  std::vector<HarmonicMeasure> measures_;
  std::vector<FPrimeField> fields_;
};

using ContextPtr = std::shared_ptr<const MapContext>;

}  // namespace propermap
