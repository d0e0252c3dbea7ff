#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "curves.hpp"
#include "util.hpp"

namespace frobtrace {

inline constexpr const char* kToolName = "frobtrace";
inline constexpr const char* kToolVersion = "0.1.0";

// Header block shared by every emitted document. Outputs are byte-stable for
// a fixed configuration: wall_clock stays 0 unless timing was explicitly
// enabled, and the worker count is deliberately not echoed.
struct RunManifest {
  std::string subcommand;
  std::vector<std::string> config_lines;  // "key = value (flag|config|default)"
  std::string catalog_hash;               // hex, empty when no catalog involved
  u64 seed = 0;
  double wall_clock = 0.0;
  std::vector<std::string> notes;
};

nlohmann::ordered_json manifest_json(const RunManifest& m);

// The same manifest as "# key: value" comment lines for CSV heads.
std::string manifest_csv_comments(const RunManifest& m);

// Shortest round-trip decimal for a double; "inf"/"-inf"/"nan" spelled out.
std::string format_double(double v);

// Joins cells with commas and terminates with LF. Cells are written as-is;
// none of our payloads contain commas or quotes.
std::string csv_line(const std::vector<std::string>& cells);

struct Catalog {
  std::vector<Curve> curves;
  u64 hash = 0;  // FNV-1a of the canonical text
};

// Parses `label: a1,a2,a3,a4,a6` lines; '#' starts a comment, blank lines
// are skipped. Errors carry origin:line. Labels must be unique and every
// curve is validated.
Catalog parse_catalog_text(const std::string& text, const std::string& origin);

std::string catalog_canonical_text(const std::vector<Curve>& curves);

std::string hash_hex(u64 h);

}  // namespace frobtrace
