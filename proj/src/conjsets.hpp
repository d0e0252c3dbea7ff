#pragma once

#include <optional>
#include <string>
#include <vector>

#include "subgroups.hpp"

namespace frobtrace {

// Trace-constrained subsets of the common-determinant product group G(ell):
//
//   C            components have eigenvalues in the prime field (all nonzero
//                since determinants are units) and the component traces sum
//                to -t mod ell
//   CBorel       C intersected with B
//   CTorus       C intersected with T
//   CHatBorel    image of CBorel in B/U, one canonical torus representative
//                (the diagonal part) per coset
//   CHatPrimeBorel  image of CBorel in B/U', defined for t = 0 only;
//                canonical representative is the lexicographically least
//                tuple of the coset
//   CRange / CBorelRange / CHatBorelRange   unions of the corresponding sets
//                over integer t with |t| <= z, before reduction mod ell
//   CNs          tuples from the non-split Cartan power inside G(ell) whose
//                traces sum to -t (no eigenvalue condition)
enum class ConjSetKind {
  C,
  CBorel,
  CTorus,
  CHatBorel,
  CHatPrimeBorel,
  CRange,
  CBorelRange,
  CHatBorelRange,
  CNs,
};

const char* conj_set_kind_name(ConjSetKind k);

struct ConjQuery {
  ConjSetKind kind = ConjSetKind::C;
  i64 t = 0;                 // reduced mod ell on entry (range kinds iterate
                             // integer t in [-floor(z), floor(z)] first)
  double z = 1.0;            // range kinds only; must be >= 0
  std::optional<u64> xi;     // CNs only
};

struct ConjSet {
  ConjSetKind kind;
  u64 ell = 0;
  u32 g = 0;
  bool cosets = false;       // true for hat kinds: elems are canonical reps
  u128 coset_size = 0;       // |U| resp. |U'| when cosets is true
  std::vector<GTuple> elems; // sorted ascending, duplicate-free
};

// Builds the requested set by explicit enumeration (guarded by cap; 0 means
// the default guard).
ConjSet conj_set(const ConjQuery& q, u64 ell, u32 g, u64 cap = 0);

// Unit-determinant N with N * m * N^-1 upper triangular. Throws
// std::domain_error when m is singular or its characteristic polynomial
// does not split over the prime field.
Gl2Mat borel_conjugator(const Gl2Mat& m);

// Component-wise conjugator tuple; lies in G(ell) since every component has
// determinant one.
GTuple borel_conjugator(const GTuple& t);

// True when every component's characteristic polynomial splits and the trace
// sum is -t: the defining predicate of C evaluated directly on one tuple.
bool in_conj_set_c(const GTuple& tup, i64 t);

}  // namespace frobtrace
