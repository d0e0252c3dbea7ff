#include "gl2.hpp"

#include <sstream>
#include <stdexcept>

namespace frobtrace {

u64 require_odd_prime(u64 ell) {
  if (ell < 3 || ell % 2 == 0 || !is_prime(ell)) {
    throw std::invalid_argument("ell must be an odd prime");
  }
  return ell;
}

Gl2Mat::Gl2Mat(u64 ell_, u64 a_, u64 b_, u64 c_, u64 d_)
    : ell(require_odd_prime(ell_)),
      a(a_ % ell_),
      b(b_ % ell_),
      c(c_ % ell_),
      d(d_ % ell_) {}

Gl2Mat Gl2Mat::identity(u64 ell) { return Gl2Mat(ell, 1, 0, 0, 1); }

Gl2Mat Gl2Mat::from_signed(u64 ell, i64 a_, i64 b_, i64 c_, i64 d_) {
  require_odd_prime(ell);
  return Gl2Mat(ell, reduce_mod(a_, ell), reduce_mod(b_, ell),
                reduce_mod(c_, ell), reduce_mod(d_, ell));
}

Gl2Mat Gl2Mat::diag(u64 ell, u64 a_, u64 d_) { return Gl2Mat(ell, a_, 0, 0, d_); }

Gl2Mat Gl2Mat::decode(u64 ell, u64 code) {
  u64 d_ = code % ell;
  code /= ell;
  u64 c_ = code % ell;
  code /= ell;
  u64 b_ = code % ell;
  code /= ell;
  return Gl2Mat(ell, code % ell, b_, c_, d_);
}

Gl2Mat Gl2Mat::mul(const Gl2Mat& o) const {
  if (ell != o.ell) throw std::invalid_argument("matrix modulus mismatch");
  return Gl2Mat(ell, addmod(mulmod(a, o.a, ell), mulmod(b, o.c, ell), ell),
                addmod(mulmod(a, o.b, ell), mulmod(b, o.d, ell), ell),
                addmod(mulmod(c, o.a, ell), mulmod(d, o.c, ell), ell),
                addmod(mulmod(c, o.b, ell), mulmod(d, o.d, ell), ell));
}

Gl2Mat Gl2Mat::inverse() const {
  u64 dt = det();
  if (dt == 0) throw std::domain_error("matrix is singular");
  u64 inv = invmod(dt, ell);
  return Gl2Mat(ell, mulmod(d, inv, ell), mulmod(submod(0, b, ell), inv, ell),
                mulmod(submod(0, c, ell), inv, ell), mulmod(a, inv, ell));
}

Gl2Mat Gl2Mat::scaled(u64 s) const {
  return Gl2Mat(ell, mulmod(a, s, ell), mulmod(b, s, ell), mulmod(c, s, ell),
                mulmod(d, s, ell));
}

std::string Gl2Mat::str() const {
  std::ostringstream os;
  os << "[[" << a << "," << b << "],[" << c << "," << d << "]]";
  return os.str();
}

CharPoly2 char_poly(const Gl2Mat& m) {
  CharPoly2 cp;
  cp.ell = m.ell;
  cp.tr = m.trace();
  cp.det = m.det();
  // Discriminant tr^2 - 4 det decides the eigenvalue structure.
  u64 disc = submod(mulmod(cp.tr, cp.tr, m.ell), mulmod(4, cp.det, m.ell), m.ell);
  if (disc == 0) {
    cp.kind = EigKind::SplitRepeated;
    cp.lambda1 = cp.lambda2 = mulmod(cp.tr, invmod(2, m.ell), m.ell);
    return cp;
  }
  auto root = sqrtmod(disc, m.ell);
  if (!root) {
    cp.kind = EigKind::NonSplit;
    return cp;
  }
  cp.kind = EigKind::SplitDistinct;
  u64 half = invmod(2, m.ell);
  cp.lambda1 = mulmod(addmod(cp.tr, *root, m.ell), half, m.ell);
  cp.lambda2 = mulmod(submod(cp.tr, *root, m.ell), half, m.ell);
  return cp;
}

GTuple::GTuple(std::vector<Gl2Mat> ms) : mats(std::move(ms)) {
  if (mats.empty()) throw std::invalid_argument("tuple must have g >= 1");
  for (const auto& m : mats) {
    if (m.ell != mats[0].ell) {
      throw std::invalid_argument("tuple components have mixed moduli");
    }
  }
}

GTuple GTuple::mul(const GTuple& o) const {
  if (g() != o.g()) throw std::invalid_argument("tuple length mismatch");
  std::vector<Gl2Mat> out;
  out.reserve(g());
  for (std::size_t i = 0; i < g(); ++i) out.push_back(mats[i].mul(o.mats[i]));
  return GTuple(std::move(out));
}

GTuple GTuple::inverse() const {
  std::vector<Gl2Mat> out;
  out.reserve(g());
  for (const auto& m : mats) out.push_back(m.inverse());
  return GTuple(std::move(out));
}

GTuple GTuple::conj(const GTuple& s) const { return s.mul(*this).mul(s.inverse()); }

u64 GTuple::trace_sum() const {
  u64 acc = 0;
  for (const auto& m : mats) acc = addmod(acc, m.trace(), modulus());
  return acc;
}

u128 GTuple::encode() const {
  u128 code = 0;
  u64 ell = modulus();
  u128 radix = static_cast<u128>(ell) * ell * ell * ell;
  for (const auto& m : mats) {
    code = checked_mul_u128(code, radix) + m.encode();
  }
  return code;
}

std::string GTuple::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < mats.size(); ++i) {
    if (i) out += ", ";
    out += mats[i].str();
  }
  return out + ")";
}

std::vector<u64> char_poly_product(const GTuple& t) {
  u64 ell = t.modulus();
  std::vector<u64> poly{1};  // monic, low-to-high storage built high-to-low
  for (const auto& m : t.mats) {
    // Multiply by X^2 - tr X + det.
    u64 tr = m.trace(), dt = m.det();
    std::vector<u64> next(poly.size() + 2, 0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 2] = addmod(next[i + 2], poly[i], ell);
      next[i + 1] = submod(next[i + 1], mulmod(tr, poly[i], ell), ell);
      next[i] = addmod(next[i], mulmod(dt, poly[i], ell), ell);
    }
    poly = std::move(next);
  }
  return poly;
}

}  // namespace frobtrace
