#include "util.hpp"

#include <algorithm>

namespace frobtrace {

std::string to_string_u128(u128 v) {
  if (v == 0) return "0";
  std::string out;
  while (v > 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::string to_string_i128(i128 v) {
  if (v < 0) return "-" + to_string_u128(static_cast<u128>(-v));
  return to_string_u128(static_cast<u128>(v));
}

u128 checked_mul_u128(u128 a, u128 b) {
  if (a != 0 && b > ~u128{0} / a) {
    throw std::overflow_error("128-bit multiplication overflow");
  }
  return a * b;
}

u64 fnv1a64(const void* data, std::size_t len) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  u64 h = 0xcbf29ce484222325ull;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

u64 fnv1a64(const std::string& s) { return fnv1a64(s.data(), s.size()); }

BigNat::BigNat(u64 v) {
  limbs_.push_back(static_cast<u32>(v));
  limbs_.push_back(static_cast<u32>(v >> 32));
  trim();
}

void BigNat::trim() {
  while (limbs_.size() > 1 && limbs_.back() == 0) limbs_.pop_back();
}

BigNat BigNat::mul(const BigNat& other) const {
  BigNat out;
  out.limbs_.assign(limbs_.size() + other.limbs_.size(), 0);
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    u64 carry = 0;
    for (std::size_t j = 0; j < other.limbs_.size(); ++j) {
      u64 cur = static_cast<u64>(limbs_[i]) * other.limbs_[j] +
                out.limbs_[i + j] + carry;
      out.limbs_[i + j] = static_cast<u32>(cur);
      carry = cur >> 32;
    }
    out.limbs_[i + other.limbs_.size()] += static_cast<u32>(carry);
  }
  out.trim();
  return out;
}

BigNat BigNat::pow(u64 base, u64 exp) {
  BigNat acc(1);
  BigNat b(base);
  while (exp > 0) {
    if (exp & 1) acc = acc.mul(b);
    b = b.mul(b);
    exp >>= 1;
  }
  return acc;
}

int BigNat::compare(const BigNat& other) const {
  if (limbs_.size() != other.limbs_.size()) {
    return limbs_.size() < other.limbs_.size() ? -1 : 1;
  }
  for (std::size_t i = limbs_.size(); i-- > 0;) {
    if (limbs_[i] != other.limbs_[i]) return limbs_[i] < other.limbs_[i] ? -1 : 1;
  }
  return 0;
}

std::size_t BigNat::bit_length() const {
  u32 top = limbs_.back();
  std::size_t bits = (limbs_.size() - 1) * 32;
  while (top > 0) {
    ++bits;
    top >>= 1;
  }
  return bits;
}

}  // namespace frobtrace
