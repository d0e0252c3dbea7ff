#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conjsets.hpp"

namespace frobtrace {

// Inputs shared by the lemma verifiers. t defaults to 0 and z to 1 where a
// verifier needs them; xi only matters for the non-split Cartan kind; cap
// guards every enumeration (0 = default); seed drives the sampled
// spot-checks that accompany generator-certified closure proofs.
struct LemmaParams {
  std::optional<i64> t;
  std::optional<double> z;
  std::optional<u64> xi;
  u64 cap = 0;
  u64 seed = 0;
};

struct LemmaCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct LemmaReport {
  std::string lemma;
  u64 ell = 0;
  u32 g = 0;
  std::optional<i64> t;
  std::optional<double> z;
  std::optional<u64> xi;
  bool pass = false;
  // "exhaustive" when every quantifier was enumerated literally,
  // "generators" when closure facts were certified on a generating set
  // (a complete proof: conjugation/multiplication by any group element is a
  // composition of generator actions), "mixed" when both appear.
  std::string method;
  std::vector<std::pair<std::string, std::string>> cardinalities;
  std::vector<LemmaCheck> checks;
  std::vector<std::string> notes;
  std::optional<std::string> counterexample;
};

// Verifier ids: L4.1, L4.3, L5.1, L5.3, L5.4, C2.2-hyp, orders.
std::vector<std::string> known_lemma_ids();

// Runs one verifier. Throws std::invalid_argument for an unknown id, when
// ell divides 2g, or when a parameter is out of range; SizeGuardError when a
// required enumeration exceeds the cap.
LemmaReport verify_lemma(const std::string& id, u64 ell, u32 g,
                         const LemmaParams& params);

}  // namespace frobtrace
