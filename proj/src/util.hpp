#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace frobtrace {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// Error raised when an enumeration would exceed the configured element cap.
class SizeGuardError : public std::runtime_error {
 public:
  explicit SizeGuardError(const std::string& what) : std::runtime_error(what) {}
};

// Error raised when a parameter schedule cannot satisfy its constraints.
class InfeasibleScheduleError : public std::runtime_error {
 public:
  explicit InfeasibleScheduleError(const std::string& what)
      : std::runtime_error(what) {}
};

std::string to_string_u128(u128 v);
std::string to_string_i128(i128 v);

// Multiplies with overflow detection; throws std::overflow_error.
u128 checked_mul_u128(u128 a, u128 b);

// FNV-1a 64-bit hash, used for curve-label and catalog hashes.
u64 fnv1a64(const void* data, std::size_t len);
u64 fnv1a64(const std::string& s);

// SplitMix64: small deterministic RNG used for reproducible point picking.
struct SplitMix64 {
  u64 state;
  explicit SplitMix64(u64 seed) : state(seed) {}
  u64 next() {
    u64 z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // Uniform value in [0, n) by rejection.
  u64 below(u64 n) {
    u64 lim = ~u64{0} - ~u64{0} % n;
    u64 v;
    do {
      v = next();
    } while (v >= lim);
    return v % n;
  }
};

// Minimal unsigned big integer: little-endian base-2^32 limbs.
// Only what exact threshold comparisons need: pow and compare.
class BigNat {
 public:
  BigNat() : limbs_{0} {}
  explicit BigNat(u64 v);

  static BigNat pow(u64 base, u64 exp);

  // -1, 0, +1
  int compare(const BigNat& other) const;

  BigNat mul(const BigNat& other) const;

  std::size_t bit_length() const;

 private:
  std::vector<u32> limbs_;
  void trim();
};

}  // namespace frobtrace
