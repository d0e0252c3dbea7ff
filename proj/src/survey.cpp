#include "survey.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "modarith.hpp"
#include "sieve.hpp"

namespace frobtrace {

namespace {

// Fixed partition width so the block layout (and hence the merged output)
// never depends on the worker count.
constexpr u64 kBlockWidth = 1u << 14;

std::unordered_set<u64> bad_prime_union(const std::vector<Curve>& curves) {
  std::unordered_set<u64> bad;
  for (const Curve& c : curves)
    for (u64 q : bad_primes(c)) bad.insert(q);
  return bad;
}

}  // namespace

std::vector<TraceRecord> batch_traces(const std::vector<Curve>& curves,
                                      const SurveyOptions& opt) {
  if (curves.empty()) throw std::invalid_argument("need at least one curve");
  if (opt.x < 3) throw std::invalid_argument("survey bound x must be >= 3");
  for (const Curve& c : curves) validate_curve(c);

  const std::unordered_set<u64> bad = bad_prime_union(curves);
  const std::vector<u64> base = small_primes(isqrt(opt.x));
  const u64 nblocks = opt.x / kBlockWidth + 1;

  std::vector<std::vector<TraceRecord>> blocks(nblocks);
  std::atomic<u64> next_block{0};
  std::mutex fail_mutex;
  std::exception_ptr failure;

  auto worker = [&]() {
    try {
      for (;;) {
        u64 b = next_block.fetch_add(1);
        if (b >= nblocks) return;
        u64 lo = std::max<u64>(b * kBlockWidth, 2);
        u64 hi = std::min(opt.x, (b + 1) * kBlockWidth - 1);
        if (lo > hi) continue;
        std::vector<TraceRecord>& out = blocks[b];
        for (u64 p : primes_in_segment(lo, hi, base)) {
          if (bad.count(p)) continue;
          TraceRecord rec;
          rec.p = p;
          rec.ap.reserve(curves.size());
          i64 sum = 0;
          for (const Curve& c : curves) {
            i64 ap;
            std::optional<i64> hit =
                opt.cache ? opt.cache->lookup(c.label, p) : std::nullopt;
            if (hit) {
              ap = *hit;
            } else {
              TraceResult tr = trace(c, p, TraceMethod::Auto, opt.seed);
              ap = tr.ap;
              rec.used_bsgs |= tr.used_bsgs;
              rec.exhaustive_fallback |= tr.exhaustive_fallback;
            }
            rec.ap.push_back(ap);
            sum += ap;
          }
          rec.a1p = -sum;
          out.push_back(std::move(rec));
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(fail_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  int nthreads = std::clamp(opt.threads, 1, 64);
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<TraceRecord> records;
  for (std::vector<TraceRecord>& blk : blocks)
    for (TraceRecord& rec : blk) records.push_back(std::move(rec));

  if (opt.cache) {
    for (const TraceRecord& rec : records)
      for (std::size_t i = 0; i < curves.size(); ++i)
        if (!opt.cache->lookup(curves[i].label, rec.p))
          opt.cache->append(curves[i].label, rec.p, rec.ap[i]);
    opt.cache->flush();
  }
  return records;
}

u64 pi_t(const std::vector<TraceRecord>& records, i64 t) {
  u64 n = 0;
  for (const TraceRecord& rec : records)
    if (rec.a1p == t) ++n;
  return n;
}

const char* split_type_name(SplitType s) {
  switch (s) {
    case SplitType::Split: return "split";
    case SplitType::Inert: return "inert";
    case SplitType::Ramified: return "ramified";
  }
  return "?";
}

SplitType splits_completely(i64 ap, u64 p, u64 ell) {
  if (ell == 2 || !is_prime(ell))
    throw std::domain_error("ell must be an odd prime");
  if (ell == p) throw std::domain_error("ell must differ from p");
  i128 disc = static_cast<i128>(ap) * ap - static_cast<i128>(4) * p;
  i128 m = static_cast<i128>(ell);
  u64 r = static_cast<u64>(((disc % m) + m) % m);
  if (r == 0) return SplitType::Ramified;
  return legendre(r, ell) == 1 ? SplitType::Split : SplitType::Inert;
}

namespace {

u64 pi_ell_t_impl(const std::vector<TraceRecord>& records,
                  const std::vector<Curve>& curves, u64 ell, i64 t,
                  SplitType want) {
  if (ell == 2 || !is_prime(ell))
    throw std::domain_error("ell must be an odd prime");
  for (const Curve& c : curves)
    if (!good_at(c, ell))
      throw std::domain_error("ell is a bad prime for curve '" + c.label + "'");
  u64 n = 0;
  for (const TraceRecord& rec : records) {
    if (rec.p == ell || rec.a1p != t) continue;
    bool all = true;
    for (std::size_t i = 0; i < curves.size() && all; ++i)
      all = splits_completely(rec.ap[i], rec.p, ell) == want;
    if (all) ++n;
  }
  return n;
}

}  // namespace

u64 pi_ell_t(const std::vector<TraceRecord>& records,
             const std::vector<Curve>& curves, u64 ell, i64 t) {
  return pi_ell_t_impl(records, curves, ell, t, SplitType::Split);
}

u64 pi_ns_ell_t(const std::vector<TraceRecord>& records,
                const std::vector<Curve>& curves, u64 ell, i64 t) {
  return pi_ell_t_impl(records, curves, ell, t, SplitType::Inert);
}

MaxSurveyResult max_survey(const std::vector<TraceRecord>& records,
                           const std::vector<Curve>& curves, double y, double u,
                           i64 t) {
  if (!(u >= 0)) throw std::invalid_argument("window length u must be >= 0");
  u64 lo = y <= 3 ? 3 : static_cast<u64>(std::ceil(y));
  double top = y + u;
  if (top < static_cast<double>(lo)) throw std::domain_error("empty prime window");
  u64 hi = static_cast<u64>(std::floor(top));

  MaxSurveyResult res;
  for (u64 ell : small_primes(hi)) {
    if (ell < lo || ell == 2) continue;
    bool good = true;
    for (const Curve& c : curves) good = good && good_at(c, ell);
    if (!good) continue;
    u64 count = pi_ell_t(records, curves, ell, t);
    res.per_ell.push_back({ell, count});
    if (res.per_ell.size() == 1 || count > res.best_count) {
      res.best_ell = ell;
      res.best_count = count;
    }
  }
  if (res.per_ell.empty())
    throw std::domain_error("no odd prime good for all curves in the window");
  res.pi_t_value = pi_t(records, t);
  if (res.pi_t_value == 0)
    res.ratio = 0.0;
  else if (res.best_count == 0)
    res.ratio = std::numeric_limits<double>::infinity();
  else
    res.ratio = static_cast<double>(res.pi_t_value) /
                static_cast<double>(res.best_count);
  return res;
}

double nonlacunarity(const std::vector<TraceRecord>& records, u64 pi_x, i64 t) {
  if (pi_x == 0) return 0.0;
  u64 n = 0;
  for (const TraceRecord& rec : records)
    if (rec.a1p != t) ++n;
  return static_cast<double>(n) / static_cast<double>(pi_x);
}

Rational parse_decimal_rational(const std::string& text) {
  std::size_t i = 0;
  std::string digits;
  u64 frac = 0;
  bool seen_dot = false, seen_digit = false;
  for (; i < text.size(); ++i) {
    char ch = text[i];
    if (ch == '.') {
      if (seen_dot) throw std::invalid_argument("malformed decimal: " + text);
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
      seen_digit = true;
      if (seen_dot) ++frac;
    } else {
      throw std::invalid_argument("malformed decimal: " + text);
    }
  }
  if (!seen_digit) throw std::invalid_argument("malformed decimal: " + text);
  if (frac > 12) throw std::invalid_argument("at most 12 fractional digits: " + text);
  if (digits.size() > 18) throw std::invalid_argument("decimal too large: " + text);
  i64 num = 0;
  for (char ch : digits) num = num * 10 + (ch - '0');
  u64 den = 1;
  for (u64 k = 0; k < frac; ++k) den *= 10;
  u64 gc = std::gcd(static_cast<u64>(num), den);
  if (gc > 1) {
    num /= static_cast<i64>(gc);
    den /= gc;
  }
  return {num, den};
}

namespace {

// Decides |a| > p^(num/den) for num, den > 0. A long-double comparison of
// ln|a|/ln p against num/den settles almost every prime; the residual margin
// (1e-12, far above the ~1e-17 log error) falls through to the exact big
// integer cross-multiplication |a|^den vs p^num.
bool exceeds_power(u64 a, u64 p, u64 num, u64 den) {
  if (a == 0) return false;
  if (a == 1) return false;  // p^positive > 1 always
  long double lhs = std::log(static_cast<long double>(a)) /
                    std::log(static_cast<long double>(p));
  long double rhs = static_cast<long double>(num) / static_cast<long double>(den);
  if (lhs > rhs + 1e-12L) return true;
  if (lhs < rhs - 1e-12L) return false;
  BigNat left = BigNat::pow(a, den);
  BigNat right = BigNat::pow(p, num);
  return left.compare(right) > 0;
}

}  // namespace

double large_trace_ratio(const std::vector<TraceRecord>& records, u64 pi_x,
                         u64 g, Rational eps) {
  if (g == 0) throw std::invalid_argument("g must be >= 1");
  if (eps.num <= 0 || eps.den == 0)
    throw std::invalid_argument("epsilon must be positive");
  // alpha = 1/(3g+1) - eps = (den - num*(3g+1)) / (den*(3g+1))
  i128 k = static_cast<i128>(3) * g + 1;
  i128 anum = static_cast<i128>(eps.den) - static_cast<i128>(eps.num) * k;
  i128 aden = static_cast<i128>(eps.den) * k;

  u64 count = 0;
  if (anum <= 0) {
    // Threshold p^alpha <= 1: integral traces exceed it iff |a1p| >= 1
    // (strictly alpha < 0) or >= 2 (alpha == 0).
    i64 cut = anum == 0 ? 1 : 0;
    for (const TraceRecord& rec : records)
      if (rec.a1p > cut || rec.a1p < -cut) ++count;
  } else {
    i128 gc = anum;
    i128 b = aden;
    while (b != 0) {
      i128 r = gc % b;
      gc = b;
      b = r;
    }
    u64 num = static_cast<u64>(anum / gc);
    u64 den = static_cast<u64>(aden / gc);
    for (const TraceRecord& rec : records) {
      u64 mag = rec.a1p < 0 ? static_cast<u64>(-rec.a1p) : static_cast<u64>(rec.a1p);
      if (exceeds_power(mag, rec.p, num, den)) ++count;
    }
  }
  if (pi_x == 0) return 0.0;
  return static_cast<double>(count) / static_cast<double>(pi_x);
}

std::vector<std::string> sanity_checks(const std::vector<Curve>& curves,
                                       u64 probe_bound, u64 seed) {
  if (probe_bound < 100)
    throw std::invalid_argument("probe bound must be >= 100");
  for (const Curve& c : curves) validate_curve(c);

  // Per-curve trace tables over each curve's own good primes.
  std::vector<std::map<u64, i64>> table(curves.size());
  for (std::size_t i = 0; i < curves.size(); ++i) {
    for_each_prime(2, probe_bound, [&](u64 p) {
      if (!good_at(curves[i], p)) return;
      table[i][p] = trace(curves[i], p, TraceMethod::Auto, seed).ap;
    });
  }

  std::vector<std::string> warnings;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    for (std::size_t j = i + 1; j < curves.size(); ++j) {
      bool same = true;
      u64 common = 0;
      for (const auto& [p, ap] : table[i]) {
        auto it = table[j].find(p);
        if (it == table[j].end()) continue;
        ++common;
        if (it->second != ap) {
          same = false;
          break;
        }
      }
      if (same && common > 0)
        warnings.push_back("ISOGENY-SUSPECT: curves '" + curves[i].label +
                           "' and '" + curves[j].label +
                           "' have identical traces at all " +
                           std::to_string(common) + " common good p <= " +
                           std::to_string(probe_bound));
    }
  }
  for (std::size_t i = 0; i < curves.size(); ++i) {
    if (table[i].empty()) continue;
    u64 zero = 0;
    for (const auto& [p, ap] : table[i])
      if (ap == 0) ++zero;
    double frac = static_cast<double>(zero) / static_cast<double>(table[i].size());
    if (frac > 0.6) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.1f%%", frac * 100.0);
      warnings.push_back("CM-SUSPECT: curve '" + curves[i].label + "' has a_p = 0 at " +
                         buf + " of good p <= " + std::to_string(probe_bound));
    }
  }
  return warnings;
}

std::vector<std::pair<i64, u64>> trace_histogram(
    const std::vector<TraceRecord>& records) {
  std::map<i64, u64> hist;
  for (const TraceRecord& rec : records) ++hist[rec.a1p];
  return {hist.begin(), hist.end()};
}

}  // namespace frobtrace
