#pragma once

#include <string>
#include <utility>
#include <vector>

#include "curves.hpp"
#include "trace_cache.hpp"
#include "util.hpp"

namespace frobtrace {

// Traces of one good prime across the whole tuple of curves. a1p is minus
// the sum of the per-curve traces, which is the trace statistic of the
// product variety.
struct TraceRecord {
  u64 p = 0;
  std::vector<i64> ap;
  i64 a1p = 0;
  bool used_bsgs = false;
  bool exhaustive_fallback = false;
};

struct SurveyOptions {
  u64 x = 0;
  int threads = 1;
  u64 seed = 0;
  TraceCache* cache = nullptr;  // optional; new traces are appended after the run
};

// One record per prime p <= x that is good for every curve, in ascending p.
// The output is a pure function of (curves, x, seed); the thread count only
// changes wall time. Work is partitioned into fixed prime blocks claimed by
// workers and merged in block order.
std::vector<TraceRecord> batch_traces(const std::vector<Curve>& curves,
                                      const SurveyOptions& opt);

// #{records : a1p == t}.
u64 pi_t(const std::vector<TraceRecord>& records, i64 t);

enum class SplitType { Split, Inert, Ramified };
const char* split_type_name(SplitType s);

// Behaviour of ell in Q(sqrt(ap^2 - 4p)), decided by the Legendre symbol of
// ap^2 - 4p mod ell. Requires ell an odd prime different from p.
SplitType splits_completely(i64 ap, u64 p, u64 ell);

// #{records : p != ell, a1p == t, and ell splits for every curve}. Requires
// ell an odd prime good for every curve.
u64 pi_ell_t(const std::vector<TraceRecord>& records,
             const std::vector<Curve>& curves, u64 ell, i64 t);

// Same with the inert condition in place of split.
u64 pi_ns_ell_t(const std::vector<TraceRecord>& records,
                const std::vector<Curve>& curves, u64 ell, i64 t);

struct EllCount {
  u64 ell = 0;
  u64 count = 0;
};

struct MaxSurveyResult {
  std::vector<EllCount> per_ell;  // every odd good prime in [y, y+u], ascending
  u64 best_ell = 0;
  u64 best_count = 0;
  u64 pi_t_value = 0;
  double ratio = 0.0;  // pi_t / best_count; 0 when pi_t == 0, inf when only the max is 0
};

// Evaluates pi_ell_t at every odd prime in [y, y+u] that is good for all
// curves and reports the maximum. Throws std::domain_error when the window
// contains no eligible prime.
MaxSurveyResult max_survey(const std::vector<TraceRecord>& records,
                           const std::vector<Curve>& curves, double y, double u,
                           i64 t);

// #{records : a1p != t} / pi_x.
double nonlacunarity(const std::vector<TraceRecord>& records, u64 pi_x, i64 t);

// Exact nonnegative rational num/den with den > 0.
struct Rational {
  i64 num = 0;
  u64 den = 1;
};

// Parses a plain decimal like "0.05" into a reduced fraction. At most 12
// fractional digits; no exponent notation.
Rational parse_decimal_rational(const std::string& text);

// #{records : |a1p| > p^(1/(3g+1) - eps)} / pi_x. The threshold test is
// exact: with alpha = num/den it compares |a1p|^den against p^num in big
// integers whenever a long-double gap test cannot already certify the
// answer. eps must be positive.
double large_trace_ratio(const std::vector<TraceRecord>& records, u64 pi_x,
                         u64 g, Rational eps);

// Heuristic screens for the standing hypotheses: warns ISOGENY-SUSPECT when
// two curves share every trace at good p <= probe_bound, and CM-SUSPECT when
// a curve has a_p = 0 at more than 60% of its good p <= probe_bound.
// probe_bound must be >= 100.
std::vector<std::string> sanity_checks(const std::vector<Curve>& curves,
                                       u64 probe_bound, u64 seed = 0);

// Ascending (a1p value, count) pairs over the records.
std::vector<std::pair<i64, u64>> trace_histogram(
    const std::vector<TraceRecord>& records);

}  // namespace frobtrace
