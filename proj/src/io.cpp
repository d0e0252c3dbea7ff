#include "io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

namespace frobtrace {

nlohmann::ordered_json manifest_json(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["subcommand"] = m.subcommand;
  j["config"] = m.config_lines;
  if (!m.catalog_hash.empty()) j["catalog_hash"] = m.catalog_hash;
  j["seed"] = m.seed;
  j["wall_clock_seconds"] = m.wall_clock;
  j["notes"] = m.notes;
  return j;
}

std::string manifest_csv_comments(const RunManifest& m) {
  std::ostringstream out;
  out << "# tool: " << kToolName << ' ' << kToolVersion << '\n';
  out << "# subcommand: " << m.subcommand << '\n';
  for (const std::string& line : m.config_lines) out << "# config: " << line << '\n';
  if (!m.catalog_hash.empty()) out << "# catalog_hash: " << m.catalog_hash << '\n';
  out << "# seed: " << m.seed << '\n';
  out << "# wall_clock_seconds: " << format_double(m.wall_clock) << '\n';
  for (const std::string& note : m.notes) out << "# note: " << note << '\n';
  return out.str();
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out.push_back(',');
    out += cells[i];
  }
  out.push_back('\n');
  return out;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

i64 parse_i64(const std::string& cell, const std::string& where) {
  std::string t = trim(cell);
  i64 v = 0;
  auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc{} || res.ptr != t.data() + t.size())
    throw std::invalid_argument(where + ": expected an integer, got '" + cell + "'");
  return v;
}

}  // namespace

Catalog parse_catalog_text(const std::string& text, const std::string& origin) {
  Catalog cat;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string where = origin + ":" + std::to_string(lineno);
    std::string line = raw;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t colon = line.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument(where + ": expected 'label: a1,a2,a3,a4,a6'");
    Curve c;
    c.label = trim(line.substr(0, colon));
    if (c.label.empty()) throw std::invalid_argument(where + ": empty curve label");
    if (!seen.insert(c.label).second)
      throw std::invalid_argument(where + ": duplicate curve label '" + c.label + "'");
    std::vector<i64> vals;
    std::string rest = line.substr(colon + 1);
    std::size_t pos = 0;
    while (true) {
      std::size_t comma = rest.find(',', pos);
      std::string cell = comma == std::string::npos ? rest.substr(pos)
                                                    : rest.substr(pos, comma - pos);
      vals.push_back(parse_i64(cell, where));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (vals.size() != 5)
      throw std::invalid_argument(where + ": expected 5 coefficients, got " +
                                  std::to_string(vals.size()));
    c.a1 = vals[0];
    c.a2 = vals[1];
    c.a3 = vals[2];
    c.a4 = vals[3];
    c.a6 = vals[4];
    try {
      validate_curve(c);
    } catch (const std::exception& e) {
      throw std::invalid_argument(where + ": " + e.what());
    }
    cat.curves.push_back(std::move(c));
  }
  if (cat.curves.empty())
    throw std::invalid_argument(origin + ": catalog contains no curves");
  cat.hash = fnv1a64(catalog_canonical_text(cat.curves));
  return cat;
}

std::string catalog_canonical_text(const std::vector<Curve>& curves) {
  std::string out;
  for (const Curve& c : curves) {
    out += c.label;
    out += ':';
    out += std::to_string(c.a1) + "," + std::to_string(c.a2) + "," +
           std::to_string(c.a3) + "," + std::to_string(c.a4) + "," +
           std::to_string(c.a6);
    out += '\n';
  }
  return out;
}

std::string hash_hex(u64 h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace frobtrace
