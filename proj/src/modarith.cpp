#include "modarith.hpp"

#include <cmath>
#include <stdexcept>

namespace frobtrace {

u64 powmod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 acc = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) acc = mulmod(acc, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return acc;
}

u64 invmod(u64 a, u64 m) {
  a %= m;
  if (a == 0) throw std::domain_error("invmod: zero has no inverse");
  // Extended Euclid on (a, m); track only the coefficient of a.
  i64 t0 = 0, t1 = 1;
  u64 r0 = m, r1 = a;
  while (r1 != 0) {
    u64 q = r0 / r1;
    i64 t2 = t0 - static_cast<i64>(q) * t1;
    t0 = t1;
    t1 = t2;
    u64 r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
  }
  if (r0 != 1) throw std::domain_error("invmod: argument not coprime to modulus");
  return reduce_mod(t0, m);
}

int legendre(i64 a, u64 p) {
  if (p == 2 || !is_prime(p)) {
    throw std::domain_error("legendre: modulus must be an odd prime");
  }
  u64 r = reduce_mod(a, p);
  if (r == 0) return 0;
  u64 e = powmod(r, (p - 1) / 2, p);
  return e == 1 ? 1 : -1;
}

std::optional<u64> sqrtmod(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  if (p == 2) return a;
  if (legendre(static_cast<i64>(a), p) != 1) return std::nullopt;
  if (p % 4 == 3) {
    u64 r = powmod(a, (p + 1) / 4, p);
    return r;
  }
  // Tonelli-Shanks: write p-1 = q * 2^s with q odd.
  u64 q = p - 1;
  u64 s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  u64 z = least_nonresidue(p);
  u64 m = s;
  u64 c = powmod(z, q, p);
  u64 t = powmod(a, q, p);
  u64 r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    // Find least i in (0, m) with t^(2^i) == 1.
    u64 i = 0;
    u64 t2 = t;
    while (t2 != 1) {
      t2 = mulmod(t2, t2, p);
      ++i;
      if (i == m) throw std::logic_error("sqrtmod: non-residue slipped through");
    }
    u64 b = powmod(c, u64{1} << (m - i - 1), p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return r;
}

namespace {

bool miller_rabin_witness(u64 n, u64 a, u64 d, int s) {
  u64 x = powmod(a % n, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;  // a witnesses compositeness
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This base set is deterministic for all 64-bit integers.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (miller_rabin_witness(n, a, d, s)) return false;
  }
  return true;
}

u64 isqrt(u64 n) {
  if (n == 0) return 0;
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r > n / r) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

u64 least_nonresidue(u64 p) {
  if (p == 2 || !is_prime(p)) {
    throw std::domain_error("least_nonresidue: modulus must be an odd prime");
  }
  for (u64 z = 2; z < p; ++z) {
    if (legendre(static_cast<i64>(z), p) == -1) return z;
  }
  throw std::logic_error("least_nonresidue: none found");
}

u64 primitive_root(u64 p) {
  if (p == 2 || !is_prime(p)) {
    throw std::domain_error("primitive_root: modulus must be an odd prime");
  }
  // Distinct prime factors of p-1 by trial division; p is word-sized and the
  // lab only calls this for small moduli.
  u64 n = p - 1;
  std::vector<u64> factors;
  for (u64 q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      factors.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) factors.push_back(n);
  for (u64 g = 2; g < p; ++g) {
    bool ok = true;
    for (u64 q : factors) {
      if (powmod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::logic_error("primitive_root: none found");
}

}  // namespace frobtrace
