#include "propermap/propermap.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <string>

#include "error.hpp"
#include "serialize.hpp"

using namespace propermap;

struct pm_domain {
  DomainPtr domain;
  std::string hash;
  ContextPtr context() const {
    std::lock_guard<std::mutex> lock(mutex);
    if (!ctx) ctx = MapContext::create(domain);
    return ctx;
  }
  mutable std::mutex mutex;
  mutable ContextPtr ctx;
};

struct pm_map {
  ContextPtr ctx;
  std::string hash;
  GrunskyPtr grunsky;
  ProperPtr proper;
  const HolomorphicMap& map() const {
    if (grunsky) return *grunsky;
    return *proper;
  }
};

struct pm_ahlfors {
  ContextPtr ctx;
  SzegoSolution solution;
  std::vector<cplx> zeros;
};

namespace {

thread_local std::string last_error;

pm_status status_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument:
      return PM_ERR_INVALID_ARGUMENT;
    case ErrorCode::InvalidDomain:
    case ErrorCode::NearBoundary:
      return PM_ERR_DOMAIN;
    case ErrorCode::InadmissibleBase:
      return PM_ERR_INADMISSIBLE_BASE;
    case ErrorCode::InvalidCombination:
    case ErrorCode::Infeasible:
      return PM_ERR_INVALID_COMBINATION;
    case ErrorCode::StaleArtifact:
      return PM_ERR_STALE;
    case ErrorCode::IllConditioned:
    case ErrorCode::HypothesisViolation:
    case ErrorCode::Numerical:
      return PM_ERR_NUMERICAL;
  }
  return PM_ERR_INTERNAL;
}

template <class Fn>
pm_status guarded(Fn&& fn) {
  last_error.clear();
  try {
    fn();
    return PM_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const json::exception& e) {
    last_error = std::string("malformed JSON: ") + e.what();
    return PM_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    last_error = e.what();
    return PM_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return PM_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) fail(ErrorCode::InvalidArgument, what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const json& j) {
  if (out) *out = dup_string(j.dump(2));
}

BoundaryPoint to_point(pm_boundary_point p) { return {p.curve - 1, p.t}; }

pm_sample to_sample(const MapSample& s, bool inside) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  pm_sample out{s.z.real(), s.z.imag(), nan, nan, nan, nan, 0, inside ? 1 : 0};
  if (inside) {
    out.re = s.rhp.real();
    out.im = s.rhp.imag();
    out.disc_re = s.disc.real();
    out.disc_im = s.disc.imag();
    out.near_pole = s.near_pole ? 1 : 0;
  }
  return out;
}

pm_map* wrap(const ContextPtr& ctx, const std::string& hash, GrunskyPtr g, ProperPtr p) {
  auto* m = new pm_map;
  m->ctx = ctx;
  m->hash = hash;
  m->grunsky = std::move(g);
  m->proper = std::move(p);
  return m;
}

BasePoint resolve_base(const Domain& d, const pm_base* base) {
  BasePoint b;
  if (!base || base->kind == PM_BASE_AUTO) {
    b.point = d.reference_point();
  } else if (base->kind == PM_BASE_INTERIOR) {
    b.point = {base->x, base->y};
  } else if (base->kind == PM_BASE_BOUNDARY) {
    b.kind = BaseKind::Boundary;
    b.boundary = to_point(base->boundary);
  } else {
    fail(ErrorCode::InvalidArgument, "unknown base kind");
  }
  return b;
}

pm_domain* load_domain(const std::string& text, int nodes) {
  const DomainFile file = parse_domain(text);
  const int n = nodes > 0 ? nodes : file.nodes.value_or(256);
  auto* d = new pm_domain;
  try {
    d->domain = Domain::create(file.curves, n);
  } catch (...) {
    delete d;
    throw;
  }
  d->hash = file.hash;
  return d;
}

double relative_gap(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

extern "C" {

const char* pm_version(void) { return "0.1.0"; }

const char* pm_last_error(void) { return last_error.c_str(); }

const char* pm_status_name(pm_status status) {
  switch (status) {
    case PM_OK:
      return "ok";
    case PM_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case PM_ERR_DOMAIN:
      return "invalid domain";
    case PM_ERR_INADMISSIBLE_BASE:
      return "inadmissible base point";
    case PM_ERR_NUMERICAL:
      return "numerical failure";
    case PM_ERR_INVALID_COMBINATION:
      return "invalid combination";
    case PM_ERR_STALE:
      return "stale artifact";
    case PM_ERR_IO:
      return "i/o error";
    case PM_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

void pm_string_free(char* s) { std::free(s); }

void pm_thresholds_default(pm_thresholds* out) {
  if (!out) return;
  const Thresholds th;
  *out = {th.exclusion, th.boundary_real, th.pole, th.period};
}

pm_status pm_thresholds_set(pm_thresholds* th, const char* assignment) {
  return guarded([&] {
    require(th && assignment, "null argument");
    Thresholds t{th->exclusion, th->boundary_real, th->pole, th->period};
    apply_threshold(t, assignment);
    *th = {t.exclusion, t.boundary_real, t.pole, t.period};
  });
}

pm_status pm_domain_load_json(const char* text, int nodes, pm_domain** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = load_domain(text, nodes);
  });
}

pm_status pm_domain_load_file(const char* path, int nodes, pm_domain** out) {
  last_error.clear();
  if (!path || !out) {
    last_error = "null argument";
    return PM_ERR_INVALID_ARGUMENT;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    last_error = std::string("cannot read ") + path;
    return PM_ERR_IO;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  return pm_domain_load_json(text.c_str(), nodes, out);
}

void pm_domain_free(pm_domain* d) { delete d; }

int pm_domain_curve_count(const pm_domain* d) { return d ? d->domain->curve_count() : 0; }

int pm_domain_nodes(const pm_domain* d) { return d ? d->domain->nodes_per_curve() : 0; }

const char* pm_domain_hash(const pm_domain* d) { return d ? d->hash.c_str() : ""; }

pm_status pm_domain_summary_json(const pm_domain* d, char** out) {
  return guarded([&] {
    require(d && out, "null argument");
    emit(out, domain_summary(*d->domain, d->hash));
  });
}

pm_status pm_domain_contains(const pm_domain* d, double x, double y, int* inside) {
  return guarded([&] {
    require(d && inside, "null argument");
    *inside = d->domain->contains(cplx(x, y)) ? 1 : 0;
  });
}

pm_status pm_domain_bbox(const pm_domain* d, double out[4]) {
  return guarded([&] {
    require(d && out, "null argument");
    const auto bb = d->domain->bounding_box();
    for (int i = 0; i < 4; ++i) out[i] = bb[static_cast<std::size_t>(i)];
  });
}

pm_status pm_domain_reference_point(const pm_domain* d, double* x, double* y) {
  return guarded([&] {
    require(d && x && y, "null argument");
    *x = d->domain->reference_point().real();
    *y = d->domain->reference_point().imag();
  });
}

pm_status pm_domain_double_quotient(const pm_domain* d, double* out) {
  return guarded([&] {
    require(d && out, "null argument");
    *out = double_quotient_check(*d->context());
  });
}

pm_status pm_ahlfors_build(const pm_domain* d, double ax, double ay, pm_ahlfors** out) {
  return guarded([&] {
    require(d && out, "null argument");
    const cplx a(ax, ay);
    if (!d->domain->contains(a)) fail(ErrorCode::InvalidArgument, "base point lies outside the domain");
    auto ctx = d->context();
    auto f = std::make_unique<pm_ahlfors>();
    f->ctx = ctx;
    f->solution = solve_szego_boundary(ctx->szego(), a);
    f->zeros = find_szego_zeros(f->solution);
    *out = f.release();
  });
}

void pm_ahlfors_free(pm_ahlfors* f) { delete f; }

pm_status pm_ahlfors_eval(const pm_ahlfors* f, double x, double y, double* re, double* im) {
  return guarded([&] {
    require(f && re && im, "null argument");
    const cplx z(x, y);
    if (!f->ctx->domain().contains(z)) fail(ErrorCode::InvalidArgument, "point lies outside the domain");
    const cplx v = ahlfors_map(f->solution, z);
    *re = v.real();
    *im = v.imag();
  });
}

pm_status pm_ahlfors_eval_boundary(const pm_ahlfors* f, pm_boundary_point z, double* re, double* im) {
  return guarded([&] {
    require(f && re && im, "null argument");
    const BoundaryPoint p = to_point(z);
    require(p.curve >= 0 && p.curve < f->ctx->domain().curve_count(), "curve index out of range");
    const cplx v = ahlfors_map(f->solution, p);
    *re = v.real();
    *im = v.imag();
  });
}

pm_status pm_ahlfors_info_json(const pm_ahlfors* f, char** out) {
  return guarded([&] {
    require(f && out, "null argument");
    const auto& s = f->solution;
    const auto& d = f->ctx->domain();
    double modulus_defect = 0.0;
    for (std::size_t m = 0; m < d.node_count(); ++m)
      modulus_defect = std::max(
          modulus_defect, std::abs(std::abs(ahlfors_map(s, BoundaryPoint{d.node_curve(m), d.node_parameter(m)})) - 1.0));
    json zeros = json::array();
    for (const cplx z : f->zeros) zeros.push_back({z.real(), z.imag()});
    const cplx fa = ahlfors_map(s, s.base);
    emit(out, {{"base", {s.base.real(), s.base.imag()}},
               {"szego_aa", s.szego_aa},
               {"derivative_at_base", ahlfors_derivative_at_base(s)},
               {"value_at_base", {fa.real(), fa.imag()}},
               {"zeros", zeros},
               {"residual", s.residual},
               {"condition", s.condition},
               {"boundary_modulus_defect", modulus_defect},
               {"warnings", s.warnings}});
  });
}

pm_status pm_grunsky_build(const pm_domain* d, const pm_boundary_point* marked, size_t count, const pm_base* base,
                           pm_map** out) {
  return guarded([&] {
    require(d && out && (marked || count == 0), "null argument");
    std::vector<BoundaryPoint> b;
    for (std::size_t i = 0; i < count; ++i) b.push_back(to_point(marked[i]));
    check_marked_points(*d->domain, b);
    const BasePoint bp = resolve_base(*d->domain, base);
    auto ctx = d->context();
    *out = wrap(ctx, d->hash, GrunskyMap::build(ctx, b, bp), nullptr);
  });
}

void pm_map_free(pm_map* f) { delete f; }

int pm_map_is_grunsky(const pm_map* f) { return f && f->grunsky ? 1 : 0; }

int pm_map_pole_count(const pm_map* f) { return f ? f->map().expected_degree() : 0; }

pm_status pm_map_poles(const pm_map* f, pm_boundary_point* out, double* weights, size_t capacity, size_t* count) {
  return guarded([&] {
    require(f && count, "null argument");
    std::vector<WeightedPoint> w;
    if (f->proper) {
      w = f->proper->decomposition();
    } else {
      const auto& a = f->grunsky->coefficients().a;
      for (std::size_t j = 0; j < a.size(); ++j)
        w.push_back({f->grunsky->marked()[j], a[j] * f->grunsky->poisson_scale()});
    }
    *count = w.size();
    for (std::size_t i = 0; i < w.size() && i < capacity; ++i) {
      if (out) out[i] = {w[i].point.curve + 1, w[i].point.t};
      if (weights) weights[i] = w[i].weight;
    }
  });
}

pm_status pm_map_coefficients(const pm_map* f, double* out, size_t capacity, size_t* count) {
  return guarded([&] {
    require(f && count, "null argument");
    if (!f->grunsky) fail(ErrorCode::InvalidArgument, "coefficients exist for Grunsky maps only");
    const auto& a = f->grunsky->coefficients().a;
    *count = a.size();
    for (std::size_t i = 0; i < a.size() && i < capacity && out; ++i) out[i] = a[i];
  });
}

pm_status pm_map_eval(const pm_map* f, double x, double y, pm_sample* out) {
  return guarded([&] {
    require(f && out, "null argument");
    const cplx z(x, y);
    const bool inside = f->ctx->domain().contains_strict(z);
    *out = to_sample(inside ? evaluate(f->map(), z) : MapSample{z, {}, {}, false}, inside);
  });
}

pm_status pm_map_eval_many(const pm_map* f, const double* xy, size_t count, pm_sample* out) {
  return guarded([&] {
    require(f && (count == 0 || (xy && out)), "null argument");
    std::vector<cplx> pts(count);
    for (std::size_t i = 0; i < count; ++i) pts[i] = {xy[2 * i], xy[2 * i + 1]};
    const auto samples = evaluate_many(f->map(), pts);
    for (std::size_t i = 0; i < count; ++i) {
      const bool ok = std::isfinite(samples[i].rhp.real()) && std::isfinite(samples[i].rhp.imag());
      out[i] = to_sample(samples[i], ok);
    }
  });
}

pm_status pm_map_eval_boundary(const pm_map* f, pm_boundary_point z, double* re, double* im) {
  return guarded([&] {
    require(f && re && im, "null argument");
    const BoundaryPoint p = to_point(z);
    require(p.curve >= 0 && p.curve < f->ctx->domain().curve_count(), "curve index out of range");
    const cplx v = f->map().boundary_value({p.curve, wrap_parameter(p.t)});
    *re = v.real();
    *im = v.imag();
  });
}

pm_status pm_map_degree(const pm_map* f, int* degree) {
  return guarded([&] {
    require(f && degree, "null argument");
    *degree = mapping_degree(f->map()).degree;
  });
}

pm_status pm_map_multiplicity(const pm_map* f, int curve, int* multiplicity) {
  return guarded([&] {
    require(f && multiplicity, "null argument");
    require(curve >= 1 && curve <= f->ctx->domain().curve_count(), "curve index out of range");
    *multiplicity = boundary_multiplicity(f->map(), curve - 1).winding;
  });
}

pm_status pm_map_certify(const pm_map* f, const pm_thresholds* th, int* passed, char** report_json) {
  return guarded([&] {
    require(f && passed, "null argument");
    Thresholds t;
    if (th) t = {th->exclusion, th->boundary_real, th->pole, th->period};
    const auto report = certify(f->map(), t);
    *passed = report.passed() ? 1 : 0;
    json j = report_to_json(report);
    j["domain_hash"] = f->hash;
    j["nodes"] = f->ctx->domain().nodes_per_curve();
    emit(report_json, j);
  });
}

pm_status pm_map_to_json(const pm_map* f, char** out) {
  return guarded([&] {
    require(f && out, "null argument");
    emit(out, f->grunsky ? map_to_json(*f->grunsky, f->hash) : map_to_json(*f->proper, f->hash));
  });
}

pm_status pm_map_from_json(const pm_domain* d, const char* text, pm_map** out) {
  return guarded([&] {
    require(d && text && out, "null argument");
    const MapSpec spec = parse_map(json::parse(text));
    if (spec.domain_hash != d->hash)
      fail(ErrorCode::StaleArtifact, "artifact domain hash " + spec.domain_hash + " does not match " + d->hash);
    auto ctx = d->context();
    const RebuiltMap r = rebuild(ctx, spec);
    *out = wrap(ctx, d->hash, r.grunsky, r.proper);
  });
}

pm_status pm_semigroup_combine(const pm_map* const* maps, const double* coeffs, size_t count, pm_map** out,
                               char** report_json) {
  if (report_json) *report_json = nullptr;
  return guarded([&] {
    require(maps && coeffs && out && count > 0, "null argument");
    std::vector<Term> terms;
    for (std::size_t i = 0; i < count; ++i) {
      require(maps[i] != nullptr, "null map");
      if (maps[i]->ctx != maps[0]->ctx) fail(ErrorCode::InvalidArgument, "maps live on different domains");
      if (maps[i]->grunsky) {
        terms.push_back({maps[i]->grunsky, coeffs[i]});
      } else {
        for (const auto& t : maps[i]->proper->terms()) terms.push_back({t.map, coeffs[i] * t.coeff});
      }
    }
    const CombineResult r = combine(terms);
    emit(report_json, combine_report_to_json(r.report));
    if (!r.map) {
      std::string msg = "invalid combination:";
      for (const auto& v : r.report.violations) msg += " " + v + ";";
      fail(ErrorCode::InvalidCombination, msg);
    }
    *out = wrap(maps[0]->ctx, maps[0]->hash, nullptr, r.map);
  });
}

namespace {

ProperPtr as_proper(const pm_map* f) {
  if (f->proper) return f->proper;
  return combine_or_throw({{f->grunsky, 1.0}});
}

}  // namespace

pm_status pm_semigroup_add_point(const pm_map* f, pm_boundary_point beta, double c3, pm_map** out) {
  return guarded([&] {
    require(f && out, "null argument");
    require(c3 > 0, "c3 must be positive");
    *out = wrap(f->ctx, f->hash, nullptr, add_point(*as_proper(f), to_point(beta), c3));
  });
}

pm_status pm_semigroup_remove_point(const pm_map* f, pm_boundary_point b, pm_map** out, double* c0, double* c) {
  return guarded([&] {
    require(f && out, "null argument");
    const RemoveResult r = remove_point(*as_proper(f), to_point(b));
    if (c0) *c0 = r.c0;
    if (c) *c = r.c;
    *out = wrap(f->ctx, f->hash, nullptr, r.map);
  });
}

pm_status pm_primitive_pair(const pm_map* f, uint64_t seed, pm_map** second, char** certificate_json) {
  return guarded([&] {
    require(f && second, "null argument");
    if (!f->grunsky) fail(ErrorCode::InvalidArgument, "primitive pairs are formed from a Grunsky map");
    const PrimitivePair pair = primitive_pair(*f->grunsky, seed);
    emit(certificate_json, certificate_to_json(pair.certificate));
    *second = wrap(f->ctx, f->hash, pair.second, nullptr);
  });
}

pm_status pm_verify_json(const pm_domain* d, const char* text, const pm_thresholds* th, int* passed,
                         char** report_json) {
  return guarded([&] {
    require(d && text && passed, "null argument");
    const MapSpec spec = parse_map(json::parse(text));
    if (spec.domain_hash != d->hash)
      fail(ErrorCode::StaleArtifact, "artifact domain hash " + spec.domain_hash + " does not match " + d->hash);
    auto ctx = d->context();
    const RebuiltMap r = rebuild(ctx, spec);
    Thresholds t;
    if (th) t = {th->exclusion, th->boundary_real, th->pole, th->period};
    PropernessReport report = certify(*r.map, t);

    const bool same_n = spec.nodes == d->domain->nodes_per_curve();
    const double tol = same_n ? 1e-9 : 1e-4;
    auto check_weight = [&](const std::string& what, double stored, double fresh) {
      if (!(stored > 0) || std::abs(stored - fresh) > tol * std::abs(fresh))
        report.failures.push_back(what + ": stored " + std::to_string(stored) + ", rebuilt " + std::to_string(fresh));
    };
    for (std::size_t k = 0; k < spec.terms.size(); ++k) {
      const auto& fresh = r.grunsky ? r.grunsky->coefficients().a : r.proper->terms()[k].map->coefficients().a;
      const auto& stored = spec.terms[k].weights;
      if (stored.size() != fresh.size()) {
        report.failures.push_back("term " + std::to_string(k + 1) + " stores the wrong number of weights");
        continue;
      }
      for (std::size_t j = 0; j < stored.size(); ++j)
        check_weight("term " + std::to_string(k + 1) + " weight " + std::to_string(j + 1), stored[j], fresh[j]);
    }
    if (r.proper) {
      const auto& fresh = r.proper->decomposition();
      if (spec.decomposition.size() != fresh.size()) {
        report.failures.push_back("stored decomposition has the wrong number of points");
      } else {
        for (std::size_t j = 0; j < fresh.size(); ++j) {
          if (!same_point(spec.decomposition[j].point, fresh[j].point))
            report.failures.push_back("decomposition point " + std::to_string(j + 1) + " moved");
          check_weight("decomposition weight " + std::to_string(j + 1), spec.decomposition[j].weight,
                       fresh[j].weight);
        }
      }
    }
    double delta = 0.0;
    for (const auto& [z, v] : spec.samples) delta = std::max(delta, relative_gap(v, r.map->value(z)));
    if (same_n && !(delta < 1e-9))
      report.failures.push_back("stored sample values differ from the rebuilt map by " + std::to_string(delta));

    *passed = report.passed() ? 1 : 0;
    json j = report_to_json(report);
    j["passed"] = report.passed();
    j["domain_hash"] = d->hash;
    j["nodes"] = d->domain->nodes_per_curve();
    j["stored_nodes"] = spec.nodes;
    j["convergence_delta"] = delta;
    emit(report_json, j);
  });
}

}  // extern "C"
