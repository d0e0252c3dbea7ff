#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "util.hpp"

namespace frobtrace {

// Append-only binary store of computed traces. Layout: 4-byte magic "FTC1",
// then fixed 24-byte little-endian records (label hash u64, p u64, ap i64).
// Records are keyed by the FNV-1a hash of the curve label, so relabeling a
// curve invalidates its entries by construction.
class TraceCache {
 public:
  // Loads an existing file; a missing file starts an empty cache that will
  // be created on flush. Throws std::runtime_error on a bad magic or a
  // truncated record.
  explicit TraceCache(std::string path);

  std::optional<i64> lookup(const std::string& label, u64 p) const;

  // Buffers a record; no-op if the key is already present.
  void append(const std::string& label, u64 p, i64 ap);

  // Appends buffered records to disk.
  void flush();

  std::size_t size() const { return entries_.size(); }

 private:
  struct KeyHash {
    std::size_t operator()(const std::pair<u64, u64>& k) const {
      u64 x = k.first ^ (k.second * 0x9e3779b97f4a7c15ull);
      x ^= x >> 31;
      return static_cast<std::size_t>(x * 0xbf58476d1ce4e5b9ull);
    }
  };
  std::string path_;
  std::unordered_map<std::pair<u64, u64>, i64, KeyHash> entries_;
  std::vector<std::pair<std::pair<u64, u64>, i64>> pending_;
};

}  // namespace frobtrace
