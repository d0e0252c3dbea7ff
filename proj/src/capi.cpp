#include "frobtrace.h"

#include <ios>
#include <stdexcept>
#include <string>
#include <vector>

#include "io.hpp"
#include "ops.hpp"

struct ft_session {
  frobtrace::OpContext ctx;
  std::string last_error;
};

struct ft_catalog {
  frobtrace::Catalog cat;
};

struct ft_buffer {
  std::string text;
};

namespace {

template <typename Fn>
ft_status guarded(ft_session* s, Fn&& fn) {
  if (!s) return FT_EINVAL;
  s->last_error.clear();
  try {
    return fn();
  } catch (const frobtrace::SizeGuardError& e) {
    s->last_error = e.what();
    return FT_ESIZE_GUARD;
  } catch (const frobtrace::InfeasibleScheduleError& e) {
    s->last_error = e.what();
    return FT_EINFEASIBLE;
  } catch (const std::ios_base::failure& e) {
    s->last_error = e.what();
    return FT_EIO;
  } catch (const std::invalid_argument& e) {
    s->last_error = e.what();
    return FT_EINVAL;
  } catch (const std::domain_error& e) {
    s->last_error = e.what();
    return FT_EINVAL;
  } catch (const std::exception& e) {
    s->last_error = e.what();
    return FT_EINTERNAL;
  } catch (...) {
    s->last_error = "unknown error";
    return FT_EINTERNAL;
  }
}

ft_status invalid(ft_session* s, const char* message) {
  if (s) s->last_error = message;
  return FT_EINVAL;
}

ft_buffer* make_buffer(std::string text) { return new ft_buffer{std::move(text)}; }

}  // namespace

extern "C" {

const char* ft_status_name(ft_status s) {
  switch (s) {
    case FT_OK: return "FT_OK";
    case FT_EINVAL: return "FT_EINVAL";
    case FT_ESIZE_GUARD: return "FT_ESIZE_GUARD";
    case FT_EINFEASIBLE: return "FT_EINFEASIBLE";
    case FT_EIO: return "FT_EIO";
    case FT_EINTERNAL: return "FT_EINTERNAL";
  }
  return "FT_???";
}

const char* ft_version(void) { return frobtrace::kToolVersion; }

ft_session* ft_session_new(void) { return new ft_session(); }

void ft_session_free(ft_session* s) { delete s; }

const char* ft_last_error(const ft_session* s) {
  return s ? s->last_error.c_str() : "null session";
}

ft_status ft_session_set_seed(ft_session* s, uint64_t seed) {
  if (!s) return FT_EINVAL;
  s->last_error.clear();
  s->ctx.seed = seed;
  return FT_OK;
}

ft_status ft_session_set_threads(ft_session* s, int threads) {
  if (!s) return FT_EINVAL;
  s->last_error.clear();
  if (threads < 1 || threads > 64)
    return invalid(s, "threads must be between 1 and 64");
  s->ctx.threads = threads;
  return FT_OK;
}

ft_status ft_session_set_cache_path(ft_session* s, const char* path) {
  if (!s) return FT_EINVAL;
  s->last_error.clear();
  s->ctx.cache_path = path ? path : "";
  return FT_OK;
}

ft_status ft_session_set_timing(ft_session* s, int enabled) {
  if (!s) return FT_EINVAL;
  s->last_error.clear();
  s->ctx.timing = enabled != 0;
  return FT_OK;
}

ft_status ft_session_set_config_echo(ft_session* s, const char* const* lines,
                                     size_t count) {
  if (!s) return FT_EINVAL;
  s->last_error.clear();
  if (count > 0 && !lines) return invalid(s, "null config lines");
  std::vector<std::string> copy;
  copy.reserve(count);
  for (size_t i = 0; i < count; ++i)
    copy.emplace_back(lines[i] ? lines[i] : "");
  s->ctx.config_lines = std::move(copy);
  return FT_OK;
}

ft_status ft_catalog_parse(ft_session* s, const char* text, const char* origin,
                           ft_catalog** out) {
  if (!s) return FT_EINVAL;
  if (!text || !out) return invalid(s, "null argument");
  return guarded(s, [&]() {
    frobtrace::Catalog cat = frobtrace::parse_catalog_text(
        text, origin ? origin : "catalog");
    *out = new ft_catalog{std::move(cat)};
    return FT_OK;
  });
}

void ft_catalog_free(ft_catalog* c) { delete c; }

size_t ft_catalog_count(const ft_catalog* c) {
  return c ? c->cat.curves.size() : 0;
}

uint64_t ft_catalog_hash(const ft_catalog* c) { return c ? c->cat.hash : 0; }

const char* ft_catalog_label(const ft_catalog* c, size_t index) {
  if (!c || index >= c->cat.curves.size()) return nullptr;
  return c->cat.curves[index].label.c_str();
}

const char* ft_buffer_data(const ft_buffer* b) {
  return b ? b->text.c_str() : "";
}

size_t ft_buffer_size(const ft_buffer* b) { return b ? b->text.size() : 0; }

void ft_buffer_free(ft_buffer* b) { delete b; }

ft_status ft_group_verify(ft_session* s, const ft_group_verify_opts* opts,
                          ft_buffer** out_json, int* pass_out) {
  if (!s) return FT_EINVAL;
  if (!opts || !opts->lemma || !out_json) return invalid(s, "null argument");
  return guarded(s, [&]() {
    frobtrace::GroupVerifyQuery q;
    q.lemma = opts->lemma;
    q.ell = opts->ell;
    q.g = opts->g;
    if (opts->has_t) q.t = opts->t;
    if (opts->has_z) q.z = opts->z;
    if (opts->has_xi) q.xi = opts->xi;
    q.cap = opts->cap;
    bool pass = false;
    std::string doc = frobtrace::op_group_verify(s->ctx, q, &pass);
    *out_json = make_buffer(std::move(doc));
    if (pass_out) *pass_out = pass ? 1 : 0;
    return FT_OK;
  });
}

ft_status ft_trace(ft_session* s, const ft_catalog* cat,
                   const ft_trace_opts* opts, ft_buffer** out_json) {
  if (!s) return FT_EINVAL;
  if (!cat || !opts || !out_json) return invalid(s, "null argument");
  return guarded(s, [&]() {
    frobtrace::TraceQuery q;
    q.p = opts->p;
    q.method = opts->method;
    *out_json = make_buffer(frobtrace::op_trace(s->ctx, cat->cat, q));
    return FT_OK;
  });
}

ft_status ft_survey(ft_session* s, const ft_catalog* cat,
                    const ft_survey_opts* opts, ft_buffer** out_json,
                    ft_buffer** out_csv) {
  if (!s) return FT_EINVAL;
  if (!cat || !opts || !out_json) return invalid(s, "null argument");
  return guarded(s, [&]() {
    frobtrace::SurveyQuery q;
    q.x = opts->x;
    if (opts->has_t) q.t = opts->t;
    if (opts->has_z) q.z = opts->z;
    if (opts->has_ell) q.ell = opts->ell;
    switch (opts->range_mode) {
      case 0: q.range_mode = frobtrace::EllRangeMode::None; break;
      case 1: q.range_mode = frobtrace::EllRangeMode::Explicit; break;
      case 2: q.range_mode = frobtrace::EllRangeMode::Strict; break;
      case 3: q.range_mode = frobtrace::EllRangeMode::Clamped; break;
      default: throw std::invalid_argument("unknown range mode");
    }
    q.ell_y = opts->ell_y;
    q.ell_u = opts->ell_u;
    q.inert = opts->inert != 0;
    if (opts->epsilon) q.epsilon = opts->epsilon;
    q.probe = opts->probe;
    frobtrace::SurveyOutput out = frobtrace::op_survey(s->ctx, cat->cat, q);
    *out_json = make_buffer(std::move(out.json));
    if (out_csv) *out_csv = make_buffer(std::move(out.csv));
    return FT_OK;
  });
}

ft_status ft_bounds(ft_session* s, const ft_bounds_opts* opts,
                    ft_buffer** out_csv) {
  if (!s) return FT_EINVAL;
  if (!opts || !out_csv) return invalid(s, "null argument");
  return guarded(s, [&]() {
    frobtrace::BoundsQuery q;
    q.x_lo = opts->x_lo;
    q.x_hi = opts->x_hi;
    q.steps = opts->steps;
    q.g = opts->g;
    q.t_is_zero = opts->t_is_zero != 0;
    q.constant = opts->constant > 0 ? opts->constant : 1.0;
    q.epsilon = opts->epsilon > 0 ? opts->epsilon : 0.1;
    *out_csv = make_buffer(frobtrace::op_bounds(s->ctx, q));
    return FT_OK;
  });
}

ft_status ft_report(ft_session* s, const ft_report_opts* opts,
                    ft_buffer** out_csv) {
  if (!s) return FT_EINVAL;
  if (!opts || !out_csv) return invalid(s, "null argument");
  if (opts->survey_count > 0 && !opts->survey_jsons)
    return invalid(s, "null survey inputs");
  return guarded(s, [&]() {
    frobtrace::ReportQuery q;
    for (size_t i = 0; i < opts->survey_count; ++i)
      q.survey_jsons.emplace_back(opts->survey_jsons[i] ? opts->survey_jsons[i]
                                                        : "");
    if (opts->bounds_csv) q.bounds_csv = opts->bounds_csv;
    q.constant = opts->constant > 0 ? opts->constant : 1.0;
    *out_csv = make_buffer(frobtrace::op_report(s->ctx, q));
    return FT_OK;
  });
}

}  // extern "C"
