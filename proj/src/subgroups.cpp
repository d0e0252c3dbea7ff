#include "subgroups.hpp"

#include <stdexcept>

namespace frobtrace {

const char* subgroup_kind_name(SubgroupKind k) {
  switch (k) {
    case SubgroupKind::Gl2: return "Gl2";
    case SubgroupKind::FullProduct: return "FullProduct";
    case SubgroupKind::G: return "G";
    case SubgroupKind::BorelProduct: return "BorelProduct";
    case SubgroupKind::B: return "B";
    case SubgroupKind::U: return "U";
    case SubgroupKind::Uprime: return "Uprime";
    case SubgroupKind::T: return "T";
    case SubgroupKind::NonSplitCartan: return "NonSplitCartan";
  }
  return "?";
}

std::optional<SubgroupKind> parse_subgroup_kind(const std::string& name) {
  for (SubgroupKind k :
       {SubgroupKind::Gl2, SubgroupKind::FullProduct, SubgroupKind::G,
        SubgroupKind::BorelProduct, SubgroupKind::B, SubgroupKind::U,
        SubgroupKind::Uprime, SubgroupKind::T, SubgroupKind::NonSplitCartan}) {
    if (name == subgroup_kind_name(k)) return k;
  }
  return std::nullopt;
}

u64 Subgroup::resolved_xi(u64 ell) const {
  if (!xi) return least_nonresidue(ell);
  u64 x = *xi % ell;
  if (x == 0 || legendre(static_cast<i64>(x), ell) != -1) {
    throw std::invalid_argument("xi must be a quadratic non-residue mod ell");
  }
  return x;
}

namespace {

u128 ipow_u128(u128 base, u32 exp) {
  u128 acc = 1;
  for (u32 i = 0; i < exp; ++i) acc = checked_mul_u128(acc, base);
  return acc;
}

void validate_params(u64 ell, u32 g) {
  require_odd_prime(ell);
  if (g < 1) throw std::invalid_argument("g must be at least 1");
}

}  // namespace

u128 group_order(const Subgroup& sg, u64 ell, u32 g) {
  validate_params(ell, g);
  const u128 L = ell;
  const u128 gl2 = (L - 1) * L * (L * L - 1);
  switch (sg.kind) {
    case SubgroupKind::Gl2:
      return gl2;
    case SubgroupKind::FullProduct:
      return ipow_u128(gl2, g);
    case SubgroupKind::G:
      return checked_mul_u128(L - 1, ipow_u128(L * (L * L - 1), g));
    case SubgroupKind::BorelProduct:
      return ipow_u128((L - 1) * (L - 1) * L, g);
    case SubgroupKind::B:
      return checked_mul_u128(ipow_u128(L - 1, g + 1), ipow_u128(L, g));
    case SubgroupKind::U:
      return ipow_u128(L, g);
    case SubgroupKind::Uprime:
      return checked_mul_u128(L - 1, ipow_u128(L, g));
    case SubgroupKind::T:
      return ipow_u128(L - 1, g + 1);
    case SubgroupKind::NonSplitCartan:
      sg.resolved_xi(ell);  // validate when explicit
      return checked_mul_u128(L * L - 1, ipow_u128(L + 1, g - 1));
  }
  throw std::logic_error("unknown subgroup kind");
}

bool is_member(const GTuple& t, const Subgroup& sg, u64 ell, u32 g) {
  validate_params(ell, g);
  u32 want_g = sg.kind == SubgroupKind::Gl2 ? 1 : g;
  if (t.modulus() != ell) throw std::invalid_argument("tuple modulus mismatch");
  if (t.g() != want_g) throw std::invalid_argument("tuple length mismatch");

  auto common_det = [&]() -> bool {
    u64 d0 = t.mats[0].det();
    if (d0 == 0) return false;
    for (const auto& m : t.mats) {
      if (m.det() != d0) return false;
    }
    return true;
  };

  switch (sg.kind) {
    case SubgroupKind::Gl2:
      return t.mats[0].invertible();
    case SubgroupKind::FullProduct:
      for (const auto& m : t.mats) {
        if (!m.invertible()) return false;
      }
      return true;
    case SubgroupKind::G:
      return common_det();
    case SubgroupKind::BorelProduct:
      for (const auto& m : t.mats) {
        if (!m.upper_triangular() || m.a == 0 || m.d == 0) return false;
      }
      return true;
    case SubgroupKind::B:
      for (const auto& m : t.mats) {
        if (!m.upper_triangular() || m.a == 0 || m.d == 0) return false;
      }
      return common_det();
    case SubgroupKind::U:
      for (const auto& m : t.mats) {
        if (m.c != 0 || m.a != 1 || m.d != 1) return false;
      }
      return true;
    case SubgroupKind::Uprime: {
      // One scalar for the whole tuple: components (s b; 0 s), s != 0.
      u64 s = t.mats[0].a;
      if (s == 0) return false;
      for (const auto& m : t.mats) {
        if (m.c != 0 || m.a != s || m.d != s) return false;
      }
      return true;
    }
    case SubgroupKind::T:
      for (const auto& m : t.mats) {
        if (!m.diagonal() || m.a == 0 || m.d == 0) return false;
      }
      return common_det();
    case SubgroupKind::NonSplitCartan: {
      u64 xi = sg.resolved_xi(ell);
      for (const auto& m : t.mats) {
        if (m.a != m.d || m.b != mulmod(xi, m.c, ell)) return false;
        if (m.a == 0 && m.c == 0) return false;
      }
      return common_det();
    }
  }
  throw std::logic_error("unknown subgroup kind");
}

std::vector<u64> sl2_codes(u64 ell) {
  std::vector<u64> out;
  out.reserve(ell * (ell * ell - 1));
  for (u64 a = 0; a < ell; ++a) {
    if (a == 0) {
      // bc = -1, d free.
      for (u64 b = 1; b < ell; ++b) {
        u64 c = submod(0, invmod(b, ell), ell);
        for (u64 d = 0; d < ell; ++d) {
          out.push_back(Gl2Mat(ell, 0, b, c, d).encode());
        }
      }
    } else {
      u64 ainv = invmod(a, ell);
      for (u64 b = 0; b < ell; ++b) {
        for (u64 c = 0; c < ell; ++c) {
          u64 d = mulmod(addmod(1, mulmod(b, c, ell), ell), ainv, ell);
          out.push_back(Gl2Mat(ell, a, b, c, d).encode());
        }
      }
    }
  }
  return out;
}

std::vector<u64> gl2_codes(u64 ell) {
  std::vector<u64> out;
  u64 total = ell * ell * ell * ell;
  for (u64 code = 0; code < total; ++code) {
    if (Gl2Mat::decode(ell, code).invertible()) out.push_back(code);
  }
  return out;
}

std::vector<u64> borel_codes_with_det(u64 ell, u64 det) {
  std::vector<u64> out;
  out.reserve((ell - 1) * ell);
  for (u64 a = 1; a < ell; ++a) {
    u64 d = mulmod(det, invmod(a, ell), ell);
    for (u64 b = 0; b < ell; ++b) out.push_back(Gl2Mat(ell, a, b, 0, d).encode());
  }
  return out;
}

std::vector<u64> cartan_codes_with_det(u64 ell, u64 xi, u64 det) {
  // Norm fibers of a^2 - xi*b^2 = det over (a,b) != (0,0).
  std::vector<u64> out;
  for (u64 a = 0; a < ell; ++a) {
    for (u64 b = 0; b < ell; ++b) {
      if (a == 0 && b == 0) continue;
      u64 n = submod(mulmod(a, a, ell), mulmod(xi, mulmod(b, b, ell), ell), ell);
      if (n == det) {
        out.push_back(Gl2Mat(ell, a, mulmod(xi, b, ell), b, a).encode());
      }
    }
  }
  return out;
}

Enumerator::Enumerator(const Subgroup& sg, u64 ell, u32 g, u64 cap)
    : ell_(ell), g_(sg.kind == SubgroupKind::Gl2 ? 1 : g) {
  validate_params(ell, g);
  if (cap == 0) cap = kDefaultSizeGuard;
  size_ = group_order(sg, ell, g);
  if (size_ > cap) {
    throw SizeGuardError("enumeration of " +
                         std::string(subgroup_kind_name(sg.kind)) + "(" +
                         std::to_string(ell) + "), g=" + std::to_string(g) +
                         " has order " + to_string_u128(size_) +
                         " which exceeds the cap of " + std::to_string(cap));
  }

  switch (sg.kind) {
    case SubgroupKind::Gl2:
    case SubgroupKind::FullProduct:
      pools_.push_back(gl2_codes(ell));
      break;
    case SubgroupKind::G: {
      auto sl2 = sl2_codes(ell);
      for (u64 det = 1; det < ell; ++det) {
        std::vector<u64> pool;
        pool.reserve(sl2.size());
        // det-fiber = diag(det,1) * SL2
        for (u64 code : sl2) {
          Gl2Mat s = Gl2Mat::decode(ell, code);
          pool.push_back(Gl2Mat(ell, mulmod(det, s.a, ell), mulmod(det, s.b, ell),
                                s.c, s.d)
                             .encode());
        }
        pools_.push_back(std::move(pool));
      }
      break;
    }
    case SubgroupKind::BorelProduct: {
      std::vector<u64> pool;
      for (u64 det = 1; det < ell; ++det) {
        auto part = borel_codes_with_det(ell, det);
        pool.insert(pool.end(), part.begin(), part.end());
      }
      pools_.push_back(std::move(pool));
      break;
    }
    case SubgroupKind::B:
      for (u64 det = 1; det < ell; ++det) {
        pools_.push_back(borel_codes_with_det(ell, det));
      }
      break;
    case SubgroupKind::U: {
      std::vector<u64> pool;
      for (u64 b = 0; b < ell; ++b) pool.push_back(Gl2Mat(ell, 1, b, 0, 1).encode());
      pools_.push_back(std::move(pool));
      break;
    }
    case SubgroupKind::Uprime:
      for (u64 s = 1; s < ell; ++s) {
        std::vector<u64> pool;
        for (u64 b = 0; b < ell; ++b) {
          pool.push_back(Gl2Mat(ell, s, b, 0, s).encode());
        }
        pools_.push_back(std::move(pool));
      }
      break;
    case SubgroupKind::T:
      for (u64 det = 1; det < ell; ++det) {
        std::vector<u64> pool;
        for (u64 a = 1; a < ell; ++a) {
          pool.push_back(Gl2Mat(ell, a, 0, 0, mulmod(det, invmod(a, ell), ell)).encode());
        }
        pools_.push_back(std::move(pool));
      }
      break;
    case SubgroupKind::NonSplitCartan: {
      u64 xi = sg.resolved_xi(ell);
      for (u64 det = 1; det < ell; ++det) {
        pools_.push_back(cartan_codes_with_det(ell, xi, det));
      }
      break;
    }
  }
  reset();
}

void Enumerator::reset() {
  pool_idx_ = 0;
  odometer_.assign(g_, 0);
  done_ = pools_.empty() || pools_[0].empty();
}

bool Enumerator::next(GTuple& out) {
  if (done_) return false;
  const auto& pool = pools_[pool_idx_];
  std::vector<Gl2Mat> mats;
  mats.reserve(g_);
  for (std::size_t i = 0; i < g_; ++i) {
    mats.push_back(Gl2Mat::decode(ell_, pool[odometer_[i]]));
  }
  out = GTuple(std::move(mats));

  // Advance odometer, last component fastest; then the pool index.
  std::size_t i = g_;
  while (i-- > 0) {
    if (++odometer_[i] < pool.size()) return true;
    odometer_[i] = 0;
  }
  if (++pool_idx_ >= pools_.size()) done_ = true;
  return true;
}

std::vector<GTuple> enumerate_all(const Subgroup& sg, u64 ell, u32 g, u64 cap) {
  Enumerator en(sg, ell, g, cap);
  std::vector<GTuple> out;
  out.reserve(static_cast<std::size_t>(en.size()));
  GTuple t;
  while (en.next(t)) out.push_back(t);
  return out;
}

}  // namespace frobtrace
