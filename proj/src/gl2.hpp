#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "modarith.hpp"
#include "util.hpp"

namespace frobtrace {

// Vets ell as an odd prime modulus; throws std::invalid_argument otherwise.
u64 require_odd_prime(u64 ell);

// 2x2 matrix over Z/ell with row-major entries (a b; c d), reduced mod ell.
struct Gl2Mat {
  u64 ell = 0;
  u64 a = 0, b = 0, c = 0, d = 0;

  Gl2Mat() = default;
  Gl2Mat(u64 ell_, u64 a_, u64 b_, u64 c_, u64 d_);

  static Gl2Mat identity(u64 ell);
  static Gl2Mat from_signed(u64 ell, i64 a_, i64 b_, i64 c_, i64 d_);
  static Gl2Mat diag(u64 ell, u64 a_, u64 d_);

  u64 det() const { return submod(mulmod(a, d, ell), mulmod(b, c, ell), ell); }
  u64 trace() const { return addmod(a, d, ell); }
  bool invertible() const { return det() != 0; }
  bool upper_triangular() const { return c == 0; }
  bool diagonal() const { return b == 0 && c == 0; }

  Gl2Mat mul(const Gl2Mat& o) const;
  Gl2Mat inverse() const;  // throws std::domain_error if singular
  Gl2Mat scaled(u64 s) const;

  bool operator==(const Gl2Mat& o) const {
    return ell == o.ell && a == o.a && b == o.b && c == o.c && d == o.d;
  }
  bool operator<(const Gl2Mat& o) const {
    return std::array<u64, 4>{a, b, c, d} < std::array<u64, 4>{o.a, o.b, o.c, o.d};
  }

  // Dense index in [0, ell^4): base-ell digits a,b,c,d.
  u64 encode() const { return ((a * ell + b) * ell + c) * ell + d; }
  static Gl2Mat decode(u64 ell, u64 code);

  std::string str() const;
};

// Eigenvalue structure of a 2x2 matrix over the prime field.
enum class EigKind { SplitDistinct, SplitRepeated, NonSplit };

struct CharPoly2 {
  u64 ell = 0;
  u64 tr = 0;   // X^2 - tr*X + det
  u64 det = 0;
  EigKind kind = EigKind::NonSplit;
  u64 lambda1 = 0;  // valid when split; lambda1 == lambda2 for repeated
  u64 lambda2 = 0;
};

CharPoly2 char_poly(const Gl2Mat& m);

// Tuple of g matrices over a common modulus.
struct GTuple {
  std::vector<Gl2Mat> mats;

  GTuple() = default;
  explicit GTuple(std::vector<Gl2Mat> ms);

  std::size_t g() const { return mats.size(); }
  u64 modulus() const { return mats.empty() ? 0 : mats[0].ell; }

  GTuple mul(const GTuple& o) const;
  GTuple inverse() const;
  GTuple conj(const GTuple& s) const;  // s * this * s^-1

  // Trace sum over components, mod ell.
  u64 trace_sum() const;

  bool operator==(const GTuple& o) const { return mats == o.mats; }
  bool operator<(const GTuple& o) const { return mats < o.mats; }

  // Dense mixed-radix key; throws std::overflow_error past 128 bits.
  u128 encode() const;

  std::string str() const;
};

// Degree-2g monic polynomial over Z/ell: product of the component
// characteristic polynomials. Coefficients low-to-high, size 2g+1.
std::vector<u64> char_poly_product(const GTuple& t);

}  // namespace frobtrace
