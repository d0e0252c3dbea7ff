#include "trace_cache.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <ios>

namespace frobtrace {

namespace {

constexpr char kMagic[4] = {'F', 'T', 'C', '1'};
constexpr std::size_t kRecordSize = 24;

u64 load_le64(const unsigned char* b) {
  u64 v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

void store_le64(unsigned char* b, u64 v) {
  for (int i = 0; i < 8; ++i) {
    b[i] = static_cast<unsigned char>(v & 0xff);
    v >>= 8;
  }
}

}  // namespace

TraceCache::TraceCache(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_, std::ios::binary);
  if (!in) return;  // fresh cache
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
    throw std::ios_base::failure("trace cache " + path_ + " has a bad header");
  }
  std::array<unsigned char, kRecordSize> rec;
  while (in.read(reinterpret_cast<char*>(rec.data()), kRecordSize)) {
    u64 label_hash = load_le64(rec.data());
    u64 p = load_le64(rec.data() + 8);
    i64 ap = static_cast<i64>(load_le64(rec.data() + 16));
    entries_[{label_hash, p}] = ap;
  }
  if (in.gcount() != 0) {
    throw std::ios_base::failure("trace cache " + path_ + " ends mid-record");
  }
}

std::optional<i64> TraceCache::lookup(const std::string& label, u64 p) const {
  auto it = entries_.find({fnv1a64(label), p});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void TraceCache::append(const std::string& label, u64 p, i64 ap) {
  std::pair<u64, u64> key{fnv1a64(label), p};
  if (entries_.count(key)) return;
  entries_[key] = ap;
  pending_.push_back({key, ap});
}

void TraceCache::flush() {
  if (pending_.empty()) return;
  bool fresh = !std::ifstream(path_, std::ios::binary).good();
  std::ofstream out(path_, std::ios::binary | std::ios::app);
  if (!out) throw std::ios_base::failure("cannot open trace cache " + path_);
  if (fresh) out.write(kMagic, 4);
  std::array<unsigned char, kRecordSize> rec;
  for (const auto& [key, ap] : pending_) {
    store_le64(rec.data(), key.first);
    store_le64(rec.data() + 8, key.second);
    store_le64(rec.data() + 16, static_cast<u64>(ap));
    out.write(reinterpret_cast<const char*>(rec.data()), kRecordSize);
  }
  if (!out) throw std::ios_base::failure("failed writing trace cache " + path_);
  pending_.clear();
}

}  // namespace frobtrace
