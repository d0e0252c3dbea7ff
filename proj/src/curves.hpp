#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modarith.hpp"
#include "util.hpp"

namespace frobtrace {

// Integral long Weierstrass model y^2 + a1*x*y + a3*y = x^3 + a2*x^2 +
// a4*x + a6. Coefficients are capped at |ai| <= 10^4 so the discriminant
// stays factorable by trial division plus Pollard rho.
struct Curve {
  std::string label;
  i64 a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
};

inline constexpr i64 kMaxCoefficient = 10'000;

// Validates the model: coefficient bound and nonzero discriminant.
void validate_curve(const Curve& c);

i128 discriminant(const Curve& c);

// Sorted distinct prime divisors of |disc|; the support of the discriminant
// stands in for the conductor support when excluding bad primes.
std::vector<u64> bad_primes(const Curve& c);

bool good_at(const Curve& c, u64 p);

// |E(F_p)| including the point at infinity, by exhaustive counting:
// direct (x, y) scans at p = 2, 3 on the long model, a square-completion
// residue table for p >= 5. Throws std::invalid_argument for non-prime p
// and std::domain_error for bad reduction.
u64 count_points(const Curve& c, u64 p);

enum class TraceMethod { Auto, Exhaustive, Bsgs };

// Exhaustive counting below this threshold, group-order search above.
inline constexpr u64 kBsgsThreshold = 1u << 14;

struct TraceResult {
  i64 ap = 0;
  bool used_bsgs = false;
  // Set when the group-order search stayed ambiguous after the retry and
  // twist passes and the answer came from exhaustive counting.
  bool exhaustive_fallback = false;
};

// Frobenius trace a_p = p + 1 - |E(F_p)|. Deterministic for fixed
// (curve, p, seed): retry points come from a stream seeded by all three.
TraceResult trace(const Curve& c, u64 p, TraceMethod method = TraceMethod::Auto,
                  u64 seed = 0);

// Group-order search on the short model (p >= 5): baby-step/giant-step over
// the interval p + 1 +- 2*sqrt(p), retrying with fresh random points and the
// quadratic twist until one candidate order survives.
TraceResult bsgs_trace(const Curve& c, u64 p, u64 seed);

}  // namespace frobtrace
