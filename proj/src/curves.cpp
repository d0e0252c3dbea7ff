#include "curves.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace frobtrace {

namespace {

struct BInvariants {
  i128 b2, b4, b6, b8;
};

BInvariants b_invariants(const Curve& c) {
  const i128 a1 = c.a1, a2 = c.a2, a3 = c.a3, a4 = c.a4, a6 = c.a6;
  BInvariants b;
  b.b2 = a1 * a1 + 4 * a2;
  b.b4 = 2 * a4 + a1 * a3;
  b.b6 = a3 * a3 + 4 * a6;
  b.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  return b;
}

u64 reduce_i128(i128 v, u64 m) {
  i128 r = v % static_cast<i128>(m);
  if (r < 0) r += static_cast<i128>(m);
  return static_cast<u64>(r);
}

// Pollard rho with Brent cycling; n must be odd, composite, not a prime power
// detection is left to the caller loop.
u64 pollard_rho(u64 n, SplitMix64& rng) {
  if (n % 2 == 0) return 2;
  while (true) {
    u64 x = rng.below(n - 2) + 2;
    u64 y = x;
    u64 cst = rng.below(n - 1) + 1;
    u64 d = 1;
    while (d == 1) {
      x = (mulmod(x, x, n) + cst) % n;
      y = (mulmod(y, y, n) + cst) % n;
      y = (mulmod(y, y, n) + cst) % n;
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_u64(u64 n, std::vector<u64>& out) {
  if (n <= 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  SplitMix64 rng(n ^ 0xfac70e5);
  u64 d = pollard_rho(n, rng);
  factor_u64(d, out);
  factor_u64(n / d, out);
}

}  // namespace

void validate_curve(const Curve& c) {
  for (i64 a : {c.a1, c.a2, c.a3, c.a4, c.a6}) {
    if (a < -kMaxCoefficient || a > kMaxCoefficient) {
      throw std::invalid_argument("curve coefficient exceeds the bound of 1e4");
    }
  }
  if (discriminant(c) == 0) {
    throw std::invalid_argument("curve is singular (discriminant zero)");
  }
}

i128 discriminant(const Curve& c) {
  auto [b2, b4, b6, b8] = b_invariants(c);
  return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

std::vector<u64> bad_primes(const Curve& c) {
  i128 disc = discriminant(c);
  if (disc == 0) throw std::invalid_argument("curve is singular");
  u128 n = disc < 0 ? static_cast<u128>(-disc) : static_cast<u128>(disc);

  std::vector<u64> primes;
  for (u64 q = 2; q <= 1'000'000 && static_cast<u128>(q) * q <= n; ++q) {
    if (n % q == 0) {
      primes.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) {
    if (n > ~u64{0}) {
      throw std::runtime_error(
          "discriminant cofactor too large to factor; reduce coefficients");
    }
    factor_u64(static_cast<u64>(n), primes);
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

bool good_at(const Curve& c, u64 p) { return reduce_i128(discriminant(c), p) != 0; }

u64 count_points(const Curve& c, u64 p) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (!good_at(c, p)) {
    throw std::domain_error("curve has bad reduction at " + std::to_string(p));
  }

  if (p <= 3) {
    // Direct scan of the long model.
    u64 a1 = reduce_mod(c.a1, p), a2 = reduce_mod(c.a2, p),
        a3 = reduce_mod(c.a3, p), a4 = reduce_mod(c.a4, p),
        a6 = reduce_mod(c.a6, p);
    u64 count = 1;  // infinity
    for (u64 x = 0; x < p; ++x) {
      u64 rhs = addmod(mulmod(addmod(mulmod(addmod(x, a2, p), x, p), a4, p), x, p),
                       a6, p);
      for (u64 y = 0; y < p; ++y) {
        u64 lhs = addmod(mulmod(y, y, p),
                         addmod(mulmod(mulmod(a1, x, p), y, p), mulmod(a3, y, p), p),
                         p);
        if (lhs == rhs) ++count;
      }
    }
    return count;
  }

  // Complete the square: z = 2y + a1*x + a3 turns the count into the number
  // of solutions of z^2 = 4*x^3 + b2*x^2 + 2*b4*x + b6.
  auto b = b_invariants(c);
  u64 c2 = reduce_i128(b.b2, p);
  u64 c1 = reduce_i128(2 * b.b4, p);
  u64 c0 = reduce_i128(b.b6, p);

  std::vector<unsigned char> is_square(p, 0);
  for (u64 z = 0; z <= p / 2; ++z) is_square[mulmod(z, z, p)] = 1;

  u64 count = 1;
  for (u64 x = 0; x < p; ++x) {
    u64 v = addmod(mulmod(addmod(mulmod(addmod(mulmod(4, x, p), c2, p), x, p),
                                 c1, p),
                          x, p),
                   c0, p);
    if (v == 0) {
      count += 1;
    } else if (is_square[v]) {
      count += 2;
    }
  }
  return count;
}

TraceResult trace(const Curve& c, u64 p, TraceMethod method, u64 seed) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (!good_at(c, p)) {
    throw std::domain_error("curve has bad reduction at " + std::to_string(p));
  }
  TraceResult res;
  bool use_bsgs = method == TraceMethod::Bsgs ||
                  (method == TraceMethod::Auto && p >= kBsgsThreshold);
  if (use_bsgs && p < 5) {
    throw std::invalid_argument("the group-order search requires p >= 5");
  }
  if (use_bsgs) {
    res = bsgs_trace(c, p, seed);
  } else {
    res.ap = static_cast<i64>(p) + 1 - static_cast<i64>(count_points(c, p));
  }
  // Hasse bound: |a_p| <= 2*sqrt(p).
  if (static_cast<i128>(res.ap) * res.ap > static_cast<i128>(4) * static_cast<i128>(p)) {
    throw std::logic_error("computed trace violates the Hasse bound");
  }
  return res;
}

}  // namespace frobtrace
