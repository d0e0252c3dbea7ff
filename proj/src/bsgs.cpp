#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "curves.hpp"

namespace frobtrace {

namespace {

// Affine point arithmetic on y^2 = x^3 + A*x + B over F_p.
struct ShortCurve {
  u64 p, A, B;
};

struct Pt {
  u64 x = 0, y = 0;
  bool inf = true;
};

bool eq(const Pt& a, const Pt& b) {
  if (a.inf || b.inf) return a.inf == b.inf;
  return a.x == b.x && a.y == b.y;
}

Pt add(const ShortCurve& e, const Pt& a, const Pt& b) {
  if (a.inf) return b;
  if (b.inf) return a;
  const u64 p = e.p;
  u64 lam;
  if (a.x == b.x) {
    if (addmod(a.y, b.y, p) == 0) return Pt{};  // a == -b
    // Doubling: lambda = (3x^2 + A) / 2y.
    u64 num = addmod(mulmod(3, mulmod(a.x, a.x, p), p), e.A, p);
    lam = mulmod(num, invmod(addmod(a.y, a.y, p), p), p);
  } else {
    lam = mulmod(submod(b.y, a.y, p), invmod(submod(b.x, a.x, p), p), p);
  }
  u64 x3 = submod(submod(mulmod(lam, lam, p), a.x, p), b.x, p);
  u64 y3 = submod(mulmod(lam, submod(a.x, x3, p), p), a.y, p);
  return Pt{x3, y3, false};
}

Pt mul(const ShortCurve& e, u64 k, Pt base) {
  Pt acc;
  while (k > 0) {
    if (k & 1) acc = add(e, acc, base);
    base = add(e, base, base);
    k >>= 1;
  }
  return acc;
}

u64 key_of(const Pt& pt, u64 p) { return pt.inf ? p * p : pt.x * p + pt.y; }

// All n in [lo, hi] with n * base == infinity. These are exactly the
// multiples of the point order inside the window.
std::vector<u64> annihilators(const ShortCurve& e, const Pt& base, u64 lo,
                              u64 hi) {
  const u64 len = hi - lo + 1;
  u64 m = isqrt(len);
  if (m * m < len) ++m;

  std::unordered_map<u64, std::vector<u64>> baby;
  baby.reserve(m * 2);
  Pt cur;  // 0 * base
  for (u64 j = 0; j < m; ++j) {
    baby[key_of(cur, e.p)].push_back(j);
    cur = add(e, cur, base);
  }

  std::set<u64> hits;
  Pt giant_step = mul(e, m, base);
  Pt r = mul(e, lo, base);
  const u64 kmax = (len - 1 + m - 1) / m + 1;
  for (u64 k = 0; k <= kmax; ++k) {
    auto it = baby.find(key_of(r, e.p));
    if (it != baby.end()) {
      for (u64 j : it->second) {
        // r == j*base, so (lo + k*m - j) annihilates base.
        Pt jp = mul(e, j, base);
        if (eq(jp, r)) {
          u64 n = lo + k * m;
          if (n >= j && n - j >= lo && n - j <= hi) hits.insert(n - j);
        }
      }
    }
    r = add(e, r, giant_step);
  }
  return {hits.begin(), hits.end()};
}

struct OrderSearch {
  const ShortCurve e;
  u64 lo, hi;
  SplitMix64 rng;

  Pt random_point() {
    for (int tries = 0; tries < 4096; ++tries) {
      u64 x = rng.below(e.p);
      u64 v = addmod(mulmod(addmod(mulmod(x, x, e.p), e.A, e.p), x, e.p), e.B,
                     e.p);
      if (v == 0) return Pt{x, 0, false};
      auto y = sqrtmod(v, e.p);
      if (y) return Pt{x, *y, false};
    }
    throw std::logic_error("no affine point found");
  }

  // Returns the group order if one annihilator window pass pins it down;
  // otherwise records the point order into `divisor` and returns nullopt.
  std::optional<u64> probe(u64& divisor) {
    Pt pt = random_point();
    auto hits = annihilators(e, pt, lo, hi);
    if (hits.empty()) {
      throw std::logic_error("group order not found in the Hasse window");
    }
    if (hits.size() == 1) return hits[0];
    // Consecutive annihilators differ by exactly the point order.
    u64 ord = hits[1] - hits[0];
    for (std::size_t i = 2; i < hits.size(); ++i) {
      ord = std::gcd(ord, hits[i] - hits[i - 1]);
    }
    divisor = std::lcm(divisor, ord);
    return std::nullopt;
  }
};

std::vector<u64> multiples_in(u64 d, u64 lo, u64 hi) {
  std::vector<u64> out;
  for (u64 n = (lo + d - 1) / d * d; n <= hi; n += d) out.push_back(n);
  return out;
}

}  // namespace

TraceResult bsgs_trace(const Curve& c, u64 p, u64 seed) {
  if (p < 5) throw std::invalid_argument("the group-order search requires p >= 5");
  if (!good_at(c, p)) {
    throw std::domain_error("curve has bad reduction at " + std::to_string(p));
  }

  // Short model y^2 = x^3 - 27*c4*x - 54*c6, isomorphic over F_p for p >= 5.
  const i128 a1 = c.a1, a2 = c.a2, a3 = c.a3, a4 = c.a4, a6 = c.a6;
  const i128 b2 = a1 * a1 + 4 * a2;
  const i128 b4 = 2 * a4 + a1 * a3;
  const i128 b6 = a3 * a3 + 4 * a6;
  const i128 c4 = b2 * b2 - 24 * b4;
  const i128 c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
  auto red = [&](i128 v) {
    i128 r = v % static_cast<i128>(p);
    if (r < 0) r += static_cast<i128>(p);
    return static_cast<u64>(r);
  };
  const ShortCurve e{p, red(-27 * c4), red(-54 * c6)};

  const u64 s = isqrt(4 * p);
  const u64 lo = p + 1 - s, hi = p + 1 + s;
  const u64 order_sum = 2 * p + 2;  // |E| + |twist|

  // The retry stream is a pure function of (curve, p, seed).
  SplitMix64 rng(seed ^ fnv1a64(c.label) ^ (p * 0x9e3779b97f4a7c15ull));
  OrderSearch base{e, lo, hi, SplitMix64(rng.next())};

  const u64 d = least_nonresidue(p);
  const ShortCurve twisted{
      p, mulmod(e.A, mulmod(d, d, p), p),
      mulmod(e.B, mulmod(d, mulmod(d, d, p), p), p)};
  OrderSearch twist{twisted, order_sum - hi, order_sum - lo,
                    SplitMix64(rng.next())};

  u64 base_div = 1, twist_div = 1;
  TraceResult res;
  res.used_bsgs = true;
  auto finish = [&](u64 order) {
    res.ap = static_cast<i64>(p) + 1 - static_cast<i64>(order);
    return res;
  };

  for (int attempt = 0; attempt < 8; ++attempt) {
    if (attempt % 2 == 0) {
      if (auto n = base.probe(base_div)) return finish(*n);
    } else {
      if (auto n = twist.probe(twist_div)) return finish(order_sum - *n);
    }
    // Orders of sampled points divide the group orders; intersect the
    // congruence information from both curves.
    std::vector<u64> cands;
    for (u64 n : multiples_in(base_div, lo, hi)) {
      if ((order_sum - n) % twist_div == 0) cands.push_back(n);
    }
    if (cands.size() == 1) return finish(cands[0]);
    if (cands.empty()) {
      throw std::logic_error("order constraints eliminated every candidate");
    }
  }

  // Ambiguity survived: fall back to exhaustive counting and record it.
  res.exhaustive_fallback = true;
  if (p > 100'000'000) {
    throw std::runtime_error(
        "group-order search stayed ambiguous and p is too large for the "
        "exhaustive fallback");
  }
  return finish(count_points(c, p));
}

}  // namespace frobtrace
