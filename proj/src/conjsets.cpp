#include "conjsets.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>

namespace frobtrace {

const char* conj_set_kind_name(ConjSetKind k) {
  switch (k) {
    case ConjSetKind::C: return "C";
    case ConjSetKind::CBorel: return "CBorel";
    case ConjSetKind::CTorus: return "CTorus";
    case ConjSetKind::CHatBorel: return "CHatBorel";
    case ConjSetKind::CHatPrimeBorel: return "CHatPrimeBorel";
    case ConjSetKind::CRange: return "CRange";
    case ConjSetKind::CBorelRange: return "CBorelRange";
    case ConjSetKind::CHatBorelRange: return "CHatBorelRange";
    case ConjSetKind::CNs: return "CNs";
  }
  return "?";
}

namespace {

// Per-determinant, per-trace buckets of component matrices.
using Pools = std::vector<std::vector<std::vector<u64>>>;

Pools make_pools(u64 ell) {
  return Pools(ell, std::vector<std::vector<u64>>(ell));
}

// Invertible matrices whose characteristic polynomial splits over F_ell.
Pools split_pools(u64 ell) {
  Pools pools = make_pools(ell);
  u64 total = ell * ell * ell * ell;
  for (u64 code = 0; code < total; ++code) {
    Gl2Mat m = Gl2Mat::decode(ell, code);
    u64 det = m.det();
    if (det == 0) continue;
    u64 tr = m.trace();
    u64 disc = submod(mulmod(tr, tr, ell), mulmod(4, det, ell), ell);
    if (disc != 0 && legendre(static_cast<i64>(disc), ell) != 1) continue;
    pools[det][tr].push_back(code);
  }
  return pools;
}

Pools borel_pools(u64 ell) {
  Pools pools = make_pools(ell);
  for (u64 det = 1; det < ell; ++det) {
    for (u64 code : borel_codes_with_det(ell, det)) {
      pools[det][Gl2Mat::decode(ell, code).trace()].push_back(code);
    }
  }
  return pools;
}

Pools torus_pools(u64 ell) {
  Pools pools = make_pools(ell);
  for (u64 a = 1; a < ell; ++a) {
    for (u64 d = 1; d < ell; ++d) {
      Gl2Mat m = Gl2Mat::diag(ell, a, d);
      pools[m.det()][m.trace()].push_back(m.encode());
    }
  }
  return pools;
}

Pools cartan_pools(u64 ell, u64 xi) {
  Pools pools = make_pools(ell);
  for (u64 det = 1; det < ell; ++det) {
    for (u64 code : cartan_codes_with_det(ell, xi, det)) {
      pools[det][Gl2Mat::decode(ell, code).trace()].push_back(code);
    }
  }
  return pools;
}

// Appends every g-tuple drawn from one determinant class of `pools` whose
// traces sum to `target`, guarding the output size against `cap`.
void collect_with_trace_sum(const Pools& pools, u64 ell, u32 g, u64 target,
                            u64 cap, std::vector<GTuple>& out) {
  for (u64 det = 1; det < ell; ++det) {
    const auto& by_trace = pools[det];
    std::vector<Gl2Mat> stack;
    stack.reserve(g);
    // Depth-first over the first g-1 components; the last component is
    // drawn from the bucket that completes the trace sum.
    std::function<void(u32, u64)> rec = [&](u32 depth, u64 partial) {
      if (depth == g - 1) {
        u64 need = submod(target, partial, ell);
        for (u64 code : by_trace[need]) {
          stack.push_back(Gl2Mat::decode(ell, code));
          out.emplace_back(stack);
          if (out.size() > cap) {
            throw SizeGuardError(
                "conjugacy set exceeds the cap of " + std::to_string(cap) +
                " elements");
          }
          stack.pop_back();
        }
        return;
      }
      for (u64 tr = 0; tr < ell; ++tr) {
        for (u64 code : by_trace[tr]) {
          stack.push_back(Gl2Mat::decode(ell, code));
          rec(depth + 1, addmod(partial, tr, ell));
          stack.pop_back();
        }
      }
    };
    rec(0, 0);
  }
}

// Distinct target residues -t mod ell for integer t with |t| <= floor(z).
std::vector<u64> range_targets(double z, u64 ell) {
  if (!(z >= 0)) throw std::invalid_argument("z must be non-negative");
  std::set<u64> targets;
  i64 fz = static_cast<i64>(std::floor(z));
  for (i64 t = -fz; t <= fz; ++t) {
    targets.insert(reduce_mod(-t, ell));
  }
  return {targets.begin(), targets.end()};
}

std::vector<GTuple> build_with_targets(const Pools& pools, u64 ell, u32 g,
                                       const std::vector<u64>& targets,
                                       u64 cap) {
  std::vector<GTuple> out;
  for (u64 target : targets) {
    collect_with_trace_sum(pools, ell, g, target, cap, out);
  }
  std::sort(out.begin(), out.end());
  return out;
}

GTuple diagonal_part(const GTuple& t) {
  std::vector<Gl2Mat> mats;
  mats.reserve(t.g());
  for (const auto& m : t.mats) mats.push_back(Gl2Mat::diag(m.ell, m.a, m.d));
  return GTuple(std::move(mats));
}

std::vector<GTuple> dedupe_sorted(std::vector<GTuple> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

bool in_conj_set_c(const GTuple& tup, i64 t) {
  u64 ell = tup.modulus();
  u64 d0 = tup.mats[0].det();
  if (d0 == 0) return false;
  for (const auto& m : tup.mats) {
    if (m.det() != d0) return false;
    if (char_poly(m).kind == EigKind::NonSplit) return false;
  }
  return tup.trace_sum() == reduce_mod(-t, ell);
}

ConjSet conj_set(const ConjQuery& q, u64 ell, u32 g, u64 cap) {
  require_odd_prime(ell);
  if (g < 1) throw std::invalid_argument("g must be at least 1");
  if (cap == 0) cap = kDefaultSizeGuard;

  ConjSet out;
  out.kind = q.kind;
  out.ell = ell;
  out.g = g;

  const std::vector<u64> single_target{reduce_mod(-q.t, ell)};

  switch (q.kind) {
    case ConjSetKind::C:
      out.elems = build_with_targets(split_pools(ell), ell, g, single_target, cap);
      return out;
    case ConjSetKind::CRange:
      out.elems = build_with_targets(split_pools(ell), ell, g,
                                     range_targets(q.z, ell), cap);
      return out;
    case ConjSetKind::CBorel:
      out.elems = build_with_targets(borel_pools(ell), ell, g, single_target, cap);
      return out;
    case ConjSetKind::CBorelRange:
      out.elems = build_with_targets(borel_pools(ell), ell, g,
                                     range_targets(q.z, ell), cap);
      return out;
    case ConjSetKind::CTorus:
      out.elems = build_with_targets(torus_pools(ell), ell, g, single_target, cap);
      return out;
    case ConjSetKind::CNs: {
      Subgroup sg{SubgroupKind::NonSplitCartan, q.xi};
      u64 xi = sg.resolved_xi(ell);
      out.elems = build_with_targets(cartan_pools(ell, xi), ell, g,
                                     single_target, cap);
      return out;
    }
    case ConjSetKind::CHatBorel:
    case ConjSetKind::CHatBorelRange: {
      auto targets = q.kind == ConjSetKind::CHatBorel
                         ? single_target
                         : range_targets(q.z, ell);
      auto borel = build_with_targets(borel_pools(ell), ell, g, targets, cap);
      std::vector<GTuple> reps;
      reps.reserve(borel.size());
      for (const auto& m : borel) reps.push_back(diagonal_part(m));
      out.cosets = true;
      out.coset_size = group_order({SubgroupKind::U, {}}, ell, g);
      out.elems = dedupe_sorted(std::move(reps));
      return out;
    }
    case ConjSetKind::CHatPrimeBorel: {
      if (reduce_mod(-q.t, ell) != 0) {
        throw std::invalid_argument(
            "CHatPrimeBorel is defined only for t = 0 mod ell");
      }
      auto borel = build_with_targets(borel_pools(ell), ell, g, {0}, cap);
      auto uprime = enumerate_all({SubgroupKind::Uprime, {}}, ell, g, cap);
      std::vector<GTuple> reps;
      reps.reserve(borel.size());
      for (const auto& m : borel) {
        // Canonical representative: lexicographically least tuple in m*U'.
        GTuple best = m;
        for (const auto& u : uprime) {
          GTuple cand = m.mul(u);
          if (cand < best) best = cand;
        }
        reps.push_back(std::move(best));
      }
      out.cosets = true;
      out.coset_size = group_order({SubgroupKind::Uprime, {}}, ell, g);
      out.elems = dedupe_sorted(std::move(reps));
      return out;
    }
  }
  throw std::logic_error("unknown conjugacy set kind");
}

Gl2Mat borel_conjugator(const Gl2Mat& m) {
  if (!m.invertible()) throw std::domain_error("matrix is singular");
  CharPoly2 cp = char_poly(m);
  if (cp.kind == EigKind::NonSplit) {
    throw std::domain_error(
        "characteristic polynomial does not split over the prime field");
  }
  const u64 ell = m.ell;
  // Kernel vector of m - lambda*I is an eigenvector.
  u64 p = submod(m.a, cp.lambda1, ell);
  u64 q = m.b;
  u64 r = m.c;
  u64 s = submod(m.d, cp.lambda1, ell);
  u64 vx, vy;
  if (p != 0 || q != 0) {
    vx = q;
    vy = submod(0, p, ell);
  } else if (r != 0 || s != 0) {
    vx = s;
    vy = submod(0, r, ell);
  } else {
    vx = 1;  // m is scalar; anything is an eigenvector
    vy = 0;
  }
  // Extend (vx, vy) to a basis and invert the basis matrix.
  u64 wx, wy;
  if (vy != 0) {
    wx = 1;
    wy = 0;
  } else {
    wx = 0;
    wy = 1;
  }
  Gl2Mat basis(ell, vx, wx, vy, wy);
  Gl2Mat n0 = basis.inverse();
  // Rescale to determinant one; left-multiplying by a diagonal matrix keeps
  // the conjugate upper triangular.
  u64 corr = invmod(n0.det(), ell);
  Gl2Mat n(ell, mulmod(corr, n0.a, ell), mulmod(corr, n0.b, ell), n0.c, n0.d);
  if (n.mul(m).mul(n.inverse()).c != 0 || n.det() != 1) {
    throw std::logic_error("borel_conjugator produced a bad conjugator");
  }
  return n;
}

GTuple borel_conjugator(const GTuple& t) {
  std::vector<Gl2Mat> out;
  out.reserve(t.g());
  for (const auto& m : t.mats) out.push_back(borel_conjugator(m));
  return GTuple(std::move(out));
}

}  // namespace frobtrace
