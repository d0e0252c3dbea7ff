#include "sieve.hpp"

#include <algorithm>
#include <stdexcept>

#include "modarith.hpp"

namespace frobtrace {

std::vector<u64> small_primes(u64 x) {
  std::vector<u64> out;
  if (x < 2) return out;
  std::vector<bool> composite(x + 1, false);
  for (u64 i = 2; i * i <= x; ++i) {
    if (composite[i]) continue;
    for (u64 j = i * i; j <= x; j += i) composite[j] = true;
  }
  for (u64 i = 2; i <= x; ++i)
    if (!composite[i]) out.push_back(i);
  return out;
}

std::vector<u64> primes_in_segment(u64 lo, u64 hi, const std::vector<u64>& base) {
  std::vector<u64> out;
  if (hi < 2 || lo > hi) return out;
  lo = std::max<u64>(lo, 2);
  std::vector<bool> composite(hi - lo + 1, false);
  for (u64 q : base) {
    if (q * q > hi) break;
    u64 start = std::max(q * q, ((lo + q - 1) / q) * q);
    for (u64 j = start; j <= hi; j += q) composite[j - lo] = true;
  }
  for (u64 v = lo; v <= hi; ++v)
    if (!composite[v - lo]) out.push_back(v);
  return out;
}

void for_each_prime(u64 lo, u64 hi, const std::function<void(u64)>& fn) {
  if (hi < 2 || lo > hi) return;
  lo = std::max<u64>(lo, 2);
  const u64 kSegment = 1u << 16;
  std::vector<u64> base = small_primes(isqrt(hi));
  for (u64 seg = lo; seg <= hi; ) {
    u64 seg_hi = std::min(hi, seg + kSegment - 1);
    for (u64 p : primes_in_segment(seg, seg_hi, base)) fn(p);
    if (seg_hi == hi) break;
    seg = seg_hi + 1;
  }
}

u64 count_primes(u64 x) {
  u64 n = 0;
  for_each_prime(2, x, [&](u64) { ++n; });
  return n;
}

}  // namespace frobtrace
