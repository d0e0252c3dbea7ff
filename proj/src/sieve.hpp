#pragma once

#include <functional>
#include <vector>

#include "util.hpp"

namespace frobtrace {

// All primes <= x by a plain sieve. Meant for base primes and oracles, not
// for huge x.
std::vector<u64> small_primes(u64 x);

// Primes in [lo, hi] given base primes covering sqrt(hi).
std::vector<u64> primes_in_segment(u64 lo, u64 hi, const std::vector<u64>& base);

// Calls fn(p) for every prime lo <= p <= hi in ascending order. Segmented so
// the working set stays O(sqrt(hi) + block).
void for_each_prime(u64 lo, u64 hi, const std::function<void(u64)>& fn);

u64 count_primes(u64 x);

}  // namespace frobtrace
