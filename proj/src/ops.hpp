#pragma once

#include <optional>
#include <string>
#include <vector>

#include "io.hpp"

namespace frobtrace {

// Session-level knobs shared by every op; mirrors the C API session.
struct OpContext {
  u64 seed = 0;
  int threads = 1;
  bool timing = false;     // when off, manifests report wall_clock 0 for byte-stable output
  std::string cache_path;  // empty disables the trace cache
  std::vector<std::string> config_lines;
};

struct GroupVerifyQuery {
  std::string lemma;  // a known verifier id, or "all"
  u64 ell = 0;
  u32 g = 1;
  std::optional<i64> t;
  std::optional<double> z;
  std::optional<u64> xi;
  u64 cap = 0;
};

// JSON document with one report per verifier run. *pass_out (optional)
// receives the conjunction of the report verdicts.
std::string op_group_verify(const OpContext& ctx, const GroupVerifyQuery& q,
                            bool* pass_out);

struct TraceQuery {
  u64 p = 0;
  int method = 0;  // 0 auto, 1 exhaustive, 2 bsgs
};

std::string op_trace(const OpContext& ctx, const Catalog& cat,
                     const TraceQuery& q);

enum class EllRangeMode { None, Explicit, Strict, Clamped };

struct SurveyQuery {
  u64 x = 0;
  std::optional<i64> t;
  std::optional<double> z;
  std::optional<u64> ell;
  EllRangeMode range_mode = EllRangeMode::None;
  double ell_y = 0;
  double ell_u = 0;
  bool inert = false;
  std::string epsilon = "0.1";
  u64 probe = 1000;  // sanity-check bound; 0 skips the screens
};

struct SurveyOutput {
  std::string json;
  std::string csv;  // histogram (t,count) or per-ell (ell,pi_ell_t) table
};

SurveyOutput op_survey(const OpContext& ctx, const Catalog& cat,
                       const SurveyQuery& q);

struct BoundsQuery {
  double x_lo = 0;
  double x_hi = 0;
  u32 steps = 1;
  u32 g = 1;
  bool t_is_zero = false;
  double constant = 1.0;
  double epsilon = 0.1;
};

std::string op_bounds(const OpContext& ctx, const BoundsQuery& q);

struct ReportQuery {
  std::vector<std::string> survey_jsons;  // file contents, ascending x
  std::string bounds_csv;                 // optional; empty computes bounds inline
  double constant = 1.0;
};

std::string op_report(const OpContext& ctx, const ReportQuery& q);

}  // namespace frobtrace
