#include "weil.hpp"

#include <numeric>
#include <stdexcept>

#include "modarith.hpp"

namespace frobtrace {

namespace {

void require_hasse(i64 ap, u64 p) {
  if (static_cast<i128>(ap) * ap > static_cast<i128>(4) * static_cast<i128>(p)) {
    throw std::invalid_argument("trace violates the Hasse bound");
  }
}

}  // namespace

std::vector<i64> weil_poly(i64 ap, u64 p) {
  require_hasse(ap, p);
  return {static_cast<i64>(p), -ap, 1};
}

std::vector<u64> weil_poly_mod(i64 ap, u64 p, u64 m) {
  require_hasse(ap, p);
  if (m < 2) throw std::invalid_argument("modulus must be at least 2");
  if (std::gcd(m, p) != 1) {
    throw std::domain_error("modulus must be coprime to p");
  }
  return {p % m, reduce_mod(-ap, m), 1 % m};
}

std::vector<i128> product_weil_poly(const std::vector<i64>& aps, u64 p) {
  if (aps.empty()) throw std::invalid_argument("need at least one trace");
  std::vector<i128> poly{1};
  for (i64 ap : aps) {
    require_hasse(ap, p);
    std::vector<i128> next(poly.size() + 2, 0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 2] += poly[i];
      next[i + 1] -= static_cast<i128>(ap) * poly[i];
      next[i] += static_cast<i128>(p) * poly[i];
    }
    poly = std::move(next);
  }
  return poly;
}

std::vector<u64> product_weil_poly_mod(const std::vector<i64>& aps, u64 p,
                                       u64 m) {
  if (aps.empty()) throw std::invalid_argument("need at least one trace");
  if (m < 2) throw std::invalid_argument("modulus must be at least 2");
  if (std::gcd(m, p) != 1) {
    throw std::domain_error("modulus must be coprime to p");
  }
  std::vector<u64> poly{1 % m};
  for (i64 ap : aps) {
    require_hasse(ap, p);
    u64 ap_m = reduce_mod(ap, m);
    std::vector<u64> next(poly.size() + 2, 0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 2] = addmod(next[i + 2], poly[i], m);
      next[i + 1] = submod(next[i + 1], mulmod(ap_m, poly[i], m), m);
      next[i] = addmod(next[i], mulmod(p % m, poly[i], m), m);
    }
    poly = std::move(next);
  }
  return poly;
}

i64 product_trace_stat(const std::vector<i64>& aps) {
  i64 sum = 0;
  for (i64 ap : aps) sum += ap;
  return -sum;
}

i64 frobenius_disc(i64 ap, u64 p) {
  require_hasse(ap, p);
  return ap * ap - 4 * static_cast<i64>(p);
}

}  // namespace frobtrace
