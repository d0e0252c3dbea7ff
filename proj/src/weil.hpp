#pragma once

#include <vector>

#include "util.hpp"

namespace frobtrace {

// Local factors attached to Frobenius traces. Integer polynomials are stored
// low-to-high; all are monic.

// X^2 - ap*X + p. Throws std::invalid_argument when |ap| > 2*sqrt(p).
std::vector<i64> weil_poly(i64 ap, u64 p);

// The same polynomial reduced mod m; m must be coprime to p.
std::vector<u64> weil_poly_mod(i64 ap, u64 p, u64 m);

// Product of the per-curve quadratics at one shared prime: degree 2g with
// 128-bit coefficients.
std::vector<i128> product_weil_poly(const std::vector<i64>& aps, u64 p);

std::vector<u64> product_weil_poly_mod(const std::vector<i64>& aps, u64 p,
                                       u64 m);

// Leading Frobenius statistic of the product: minus the trace sum.
i64 product_trace_stat(const std::vector<i64>& aps);

// ap^2 - 4p, the discriminant of the local quadratic (always negative).
i64 frobenius_disc(i64 ap, u64 p);

}  // namespace frobtrace
