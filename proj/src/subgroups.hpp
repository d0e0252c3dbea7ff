#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gl2.hpp"

namespace frobtrace {

// Families of subgroups of GL2(Z/ell)^g handled by the lab.
//
//   Gl2          GL2(Z/ell) itself (always treated as g = 1)
//   FullProduct  GL2(Z/ell)^g
//   G            tuples in the full product with one common determinant
//   BorelProduct upper-triangular invertible tuples, dets unconstrained
//   B            upper-triangular tuples with one common determinant
//   U            per-component unipotent upper-triangular (1 b; 0 1)
//   Uprime       scalar multiples of U elements, one scalar for the tuple
//   T            diagonal invertible tuples with one common determinant
//   NonSplitCartan  tuples of (a xi*b; b a), (a,b) != (0,0), common det,
//                   where xi is a fixed quadratic non-residue
enum class SubgroupKind {
  Gl2,
  FullProduct,
  G,
  BorelProduct,
  B,
  U,
  Uprime,
  T,
  NonSplitCartan,
};

const char* subgroup_kind_name(SubgroupKind k);
std::optional<SubgroupKind> parse_subgroup_kind(const std::string& name);

struct Subgroup {
  SubgroupKind kind = SubgroupKind::G;
  // Only meaningful for NonSplitCartan; empty selects the least non-residue.
  std::optional<u64> xi;

  u64 resolved_xi(u64 ell) const;
};

inline constexpr u64 kDefaultSizeGuard = 20'000'000;

// Exact order of the subgroup from its closed form.
u128 group_order(const Subgroup& sg, u64 ell, u32 g);

// Defining-shape membership test. Throws std::invalid_argument when the
// tuple's modulus differs from ell or its length differs from g.
bool is_member(const GTuple& t, const Subgroup& sg, u64 ell, u32 g);

// Restartable streaming enumeration in a fixed, documented order: common
// determinants ascending (where applicable), then odometer order over the
// per-component matrix lists, last component fastest. Construction throws
// SizeGuardError if the group order exceeds cap (cap = 0 selects the
// default guard of 2e7 elements).
class Enumerator {
 public:
  Enumerator(const Subgroup& sg, u64 ell, u32 g, u64 cap = 0);

  u128 size() const { return size_; }
  bool next(GTuple& out);
  void reset();

 private:
  u64 ell_;
  u32 g_;
  u128 size_ = 0;
  // One matrix pool per outer class (determinant class or scalar class);
  // every component of the tuple draws from the same pool.
  std::vector<std::vector<u64>> pools_;
  std::size_t pool_idx_ = 0;
  std::vector<std::size_t> odometer_;
  bool done_ = false;
};

// Convenience: materializes the full enumeration (subject to the guard).
std::vector<GTuple> enumerate_all(const Subgroup& sg, u64 ell, u32 g, u64 cap = 0);

// Component pools used by the enumerator and the conjugacy-set builders.
std::vector<u64> sl2_codes(u64 ell);
std::vector<u64> gl2_codes(u64 ell);
std::vector<u64> borel_codes_with_det(u64 ell, u64 det);
std::vector<u64> cartan_codes_with_det(u64 ell, u64 xi, u64 det);

}  // namespace frobtrace
