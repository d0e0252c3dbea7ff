#pragma once

#include <optional>

#include "util.hpp"

namespace frobtrace {

// Modular arithmetic over word-sized moduli. All functions expect m >= 1 and
// reduce their arguments; 128-bit intermediates keep products exact.

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

inline u64 addmod(u64 a, u64 b, u64 m) {
  a %= m;
  b %= m;
  u64 s = a + b;
  if (s >= m || s < a) s -= m;
  return s;
}

inline u64 submod(u64 a, u64 b, u64 m) {
  a %= m;
  b %= m;
  return a >= b ? a - b : a + m - b;
}

// Reduces a signed value into [0, m).
inline u64 reduce_mod(i64 a, u64 m) {
  i64 r = a % static_cast<i64>(m);
  if (r < 0) r += static_cast<i64>(m);
  return static_cast<u64>(r);
}

u64 powmod(u64 base, u64 exp, u64 m);

// Inverse mod m via extended Euclid; throws std::domain_error if gcd != 1.
u64 invmod(u64 a, u64 m);

// Legendre symbol (a|p) for odd prime p: -1, 0, +1.
int legendre(i64 a, u64 p);

// Square root mod odd prime p (Tonelli-Shanks); nullopt if a is a non-residue.
std::optional<u64> sqrtmod(u64 a, u64 p);

// Deterministic Miller-Rabin, valid for all 64-bit n.
bool is_prime(u64 n);

// Floor of the integer square root.
u64 isqrt(u64 n);

// Smallest quadratic non-residue mod odd prime p.
u64 least_nonresidue(u64 p);

// Smallest generator of the multiplicative group mod odd prime p.
u64 primitive_root(u64 p);

}  // namespace frobtrace
