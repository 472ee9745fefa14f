#include "context.hpp"

namespace propermap {

std::shared_ptr<const MapContext> MapContext::create(DomainPtr domain) {
  std::shared_ptr<MapContext> ctx(new MapContext());
  ctx->domain_ = std::move(domain);
  ctx->szego_ = std::make_unique<SzegoSystem>(ctx->domain_);
  ctx->harmonic_ = std::make_unique<HarmonicSystem>(ctx->domain_);
  for (int j = 0; j < ctx->domain_->curve_count(); ++j) {
    ctx->measures_.emplace_back(*ctx->harmonic_, j);
    ctx->fields_.emplace_back(ctx->measures_.back());
  }
  return ctx;
}

}  // namespace propermap
