// frobtrace command-line front end. Everything substantive happens behind
// the C API in libfrobtrace; this file is flag plumbing and file IO.

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "frobtrace.h"

namespace {

int map_exit(ft_status st) {
  switch (st) {
    case FT_OK: return 0;
    case FT_EINVAL: return 2;
    case FT_ESIZE_GUARD: return 3;
    case FT_EINFEASIBLE: return 4;
    default: return 1;
  }
}

int fail(ft_session* s, ft_status st) {
  std::fprintf(stderr, "error: %s\n", ft_last_error(s));
  return map_exit(st);
}

bool read_file(const std::string& path, std::string* out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  *out = ss.str();
  return true;
}

bool write_file(const std::string& path, const char* data, size_t size) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out.write(data, static_cast<std::streamsize>(size));
  return out.good();
}

int emit(const std::string& path, ft_buffer* buf) {
  if (path.empty()) {
    std::fwrite(ft_buffer_data(buf), 1, ft_buffer_size(buf), stdout);
    return 0;
  }
  if (!write_file(path, ft_buffer_data(buf), ft_buffer_size(buf))) {
    std::fprintf(stderr, "error: cannot write %s\n", path.c_str());
    return 1;
  }
  return 0;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool on_command_line(int argc, char** argv, const std::string& flag) {
  for (int i = 1; i < argc; ++i) {
    std::string tok = argv[i];
    if (tok == flag || tok.rfind(flag + "=", 0) == 0) return true;
  }
  return false;
}

struct ConfigEntry {
  std::string key, value;
};

// Flat `key = value` lines; '#' starts a comment, blank lines are skipped.
std::vector<ConfigEntry> parse_config_file(const std::string& path) {
  std::string text;
  if (!read_file(path, &text))
    throw std::runtime_error("cannot read config " + path);
  auto trim = [](std::string s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return std::string();
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
  };
  std::vector<ConfigEntry> entries;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      if (!trim(line).empty())
        throw std::runtime_error("config line is not `key = value`: " + line);
      continue;
    }
    std::string key = trim(line.substr(0, eq));
    if (key.empty())
      throw std::runtime_error("config line has an empty key: " + line);
    entries.push_back({key, trim(line.substr(eq + 1))});
  }
  return entries;
}

// Keys present in a config file, for provenance echo.
std::vector<std::string> config_keys(const std::string& path) {
  std::vector<std::string> keys;
  if (path.empty()) return keys;
  try {
    for (const ConfigEntry& e : parse_config_file(path)) keys.push_back(e.key);
  } catch (const std::runtime_error&) {
  }
  return keys;
}

// CLI11 only consults config files attached to the root command, so expand a
// subcommand's --config into trailing --key=value tokens before parsing.
// Keys already given as flags are skipped: flags override the file.
void expand_config_args(std::vector<std::string>* args) {
  std::string path;
  for (size_t i = 0; i < args->size(); ++i) {
    const std::string& tok = (*args)[i];
    if (tok == "--config" && i + 1 < args->size())
      path = (*args)[i + 1];
    else if (tok.rfind("--config=", 0) == 0)
      path = tok.substr(9);
  }
  if (path.empty()) return;
  auto given = [&args](const std::string& key) {
    for (const std::string& tok : *args)
      if (tok == "--" + key || tok.rfind("--" + key + "=", 0) == 0) return true;
    return false;
  };
  for (const ConfigEntry& e : parse_config_file(path)) {
    if (e.key == "config")
      throw std::runtime_error("config cannot nest another config file");
    if (!given(e.key)) args->push_back("--" + e.key + "=" + e.value);
  }
}

class EchoBuilder {
 public:
  EchoBuilder(int argc, char** argv, const std::string& config_path)
      : argc_(argc), argv_(argv), config_keys_(config_keys(config_path)) {
    if (!config_path.empty())
      lines_.push_back("config = " + config_path + " (flag)");
  }

  void add(const CLI::Option* opt, const std::string& key,
           const std::string& rendered) {
    bool in_argv = on_command_line(argc_, argv_, "--" + key);
    bool in_config = false;
    for (const std::string& k : config_keys_) in_config = in_config || k == key;
    const char* source = "default";
    if (in_argv && in_config)
      source = "flag overrides config";
    else if (in_argv)
      source = "flag";
    else if (opt && opt->count() > 0 && in_config)
      source = "config";
    lines_.push_back(key + " = " + rendered + " (" + source + ")");
  }

  void apply(ft_session* session) const {
    std::vector<const char*> raw;
    raw.reserve(lines_.size());
    for (const std::string& line : lines_) raw.push_back(line.c_str());
    ft_session_set_config_echo(session, raw.data(), raw.size());
  }

 private:
  int argc_;
  char** argv_;
  std::vector<std::string> config_keys_;
  std::vector<std::string> lines_;
};

struct SessionDeleter {
  void operator()(ft_session* s) const { ft_session_free(s); }
};
struct CatalogDeleter {
  void operator()(ft_catalog* c) const { ft_catalog_free(c); }
};
struct BufferDeleter {
  void operator()(ft_buffer* b) const { ft_buffer_free(b); }
};

using SessionPtr = std::unique_ptr<ft_session, SessionDeleter>;
using CatalogPtr = std::unique_ptr<ft_catalog, CatalogDeleter>;
using BufferPtr = std::unique_ptr<ft_buffer, BufferDeleter>;

int load_catalog(ft_session* session, const std::string& path, CatalogPtr* out) {
  std::string text;
  if (!read_file(path, &text)) {
    std::fprintf(stderr, "error: cannot read catalog %s\n", path.c_str());
    return 2;
  }
  ft_catalog* cat = nullptr;
  ft_status st = ft_catalog_parse(session, text.c_str(), path.c_str(), &cat);
  if (st != FT_OK) return fail(session, st);
  out->reset(cat);
  return 0;
}

std::string fmt_double(double v) {
  std::ostringstream ss;
  ss << v;
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frobenius-trace surveys and matrix-group verification",
               "frobtrace"};
  app.require_subcommand(1);

  // ---- group-verify ----
  CLI::App* gv = app.add_subcommand(
      "group-verify", "run a matrix-group verifier over GL2(Z/ell)^g");
  std::string gv_lemma, gv_out;
  uint64_t gv_ell = 0, gv_xi = 0, gv_cap = 0, gv_seed = 0;
  uint32_t gv_g = 1;
  int64_t gv_t = 0;
  double gv_z = 1.0;
  bool gv_timing = false;
  std::string gv_config;
  gv->add_option("--config", gv_config, "flat key = value file; flags override");
  auto* gv_lemma_opt =
      gv->add_option("--lemma", gv_lemma,
                     "verifier id: L4.1, L4.3, L5.1, L5.3, L5.4, C2.2-hyp, "
                     "orders, or all")
          ->required();
  auto* gv_ell_opt = gv->add_option("--ell", gv_ell, "odd prime modulus")->required();
  auto* gv_g_opt = gv->add_option("--g", gv_g, "number of factors (default 1)");
  auto* gv_t_opt = gv->add_option("--t", gv_t, "trace-sum target");
  auto* gv_z_opt = gv->add_option("--z", gv_z, "range radius for |t| <= z sets");
  auto* gv_xi_opt = gv->add_option("--xi", gv_xi, "non-residue for the non-split Cartan");
  auto* gv_cap_opt = gv->add_option("--cap", gv_cap, "enumeration cap (0 = default 2e7)");
  auto* gv_seed_opt = gv->add_option("--seed", gv_seed, "spot-check sample seed");
  gv->add_option("--out", gv_out, "write the JSON report here (default stdout)");
  gv->add_flag("--timing", gv_timing, "record real wall-clock in the manifest");

  // ---- trace ----
  CLI::App* tr = app.add_subcommand("trace", "trace every catalog curve at one prime");
  std::string tr_curves, tr_method = "auto", tr_out, tr_cache;
  uint64_t tr_p = 0, tr_seed = 0;
  bool tr_timing = false;
  std::string tr_config;
  tr->add_option("--config", tr_config, "flat key = value file; flags override");
  auto* tr_curves_opt = tr->add_option("--curves", tr_curves, "curve catalog file")->required();
  auto* tr_p_opt = tr->add_option("--p", tr_p, "prime to trace at")->required();
  auto* tr_method_opt =
      tr->add_option("--method", tr_method, "auto | exhaustive | bsgs")
          ->check(CLI::IsMember({"auto", "exhaustive", "bsgs"}));
  auto* tr_seed_opt = tr->add_option("--seed", tr_seed, "retry-point seed");
  auto* tr_cache_opt = tr->add_option("--cache", tr_cache, "trace cache path");
  tr->add_option("--out", tr_out, "write the JSON report here (default stdout)");
  tr->add_flag("--timing", tr_timing, "record real wall-clock in the manifest");

  // ---- survey ----
  CLI::App* sv = app.add_subcommand("survey", "trace survey over all good p <= x");
  std::string sv_curves, sv_eps = "0.1", sv_range, sv_out, sv_json_out,
              sv_csv_out, sv_cache;
  uint64_t sv_x = 0, sv_ell = 0, sv_probe = 1000, sv_seed = 0;
  int64_t sv_t = 0;
  double sv_z = 0.0;
  int sv_threads = 1;
  bool sv_inert = false, sv_timing = false;
  std::string sv_config;
  sv->add_option("--config", sv_config, "flat key = value file; flags override");
  auto* sv_curves_opt = sv->add_option("--curves", sv_curves, "curve catalog file")->required();
  auto* sv_x_opt = sv->add_option("--x", sv_x, "survey primes p <= x")->required();
  auto* sv_t_opt = sv->add_option("--t", sv_t, "target trace statistic (default 0)");
  auto* sv_z_opt = sv->add_option("--z", sv_z, "report mass of |t| <= z instead of one t");
  auto* sv_ell_opt = sv->add_option("--ell", sv_ell, "count split (or inert) primes at this ell");
  auto* sv_range_opt = sv->add_option(
      "--ell-range", sv_range,
      "window [y, y+u] as 'y,u', or 'auto' (strict schedule), or 'clamped'");
  auto* sv_inert_opt = sv->add_flag("--inert", sv_inert, "inert variant of the ell count");
  auto* sv_eps_opt = sv->add_option("--eps", sv_eps, "epsilon, decimal literal (default 0.1)");
  auto* sv_probe_opt = sv->add_option("--probe", sv_probe,
                                      "sanity-screen prime bound, >= 100; 0 skips");
  auto* sv_seed_opt = sv->add_option("--seed", sv_seed, "retry-point seed");
  sv->add_option("--threads", sv_threads, "worker count (not echoed; output is identical)")
      ->check(CLI::Range(1, 64));
  auto* sv_cache_opt = sv->add_option("--cache", sv_cache, "trace cache path");
  sv->add_option("--out", sv_out, ".csv writes the table, anything else the JSON report");
  sv->add_option("--json-out", sv_json_out, "also write the JSON report here");
  sv->add_option("--csv-out", sv_csv_out, "also write the CSV table here");
  sv->add_flag("--timing", sv_timing, "record real wall-clock in the manifest");

  // ---- bounds ----
  CLI::App* bd = app.add_subcommand("bounds", "closed-form bound and schedule table");
  std::string bd_grid, bd_out;
  uint32_t bd_g = 1;
  bool bd_t0 = false, bd_timing = false;
  double bd_constant = 1.0, bd_eps = 0.1;
  std::string bd_config;
  bd->add_option("--config", bd_config, "flat key = value file; flags override");
  auto* bd_grid_opt =
      bd->add_option("--x-grid", bd_grid, "geometric grid 'lo,hi,steps'")->required();
  auto* bd_g_opt = bd->add_option("--g", bd_g, "number of curves")->required();
  auto* bd_t0_opt = bd->add_flag("--t0", bd_t0, "t = 0 exponents (3g+1 route)");
  auto* bd_constant_opt = bd->add_option("--constant", bd_constant, "bound multiplier");
  auto* bd_eps_opt = bd->add_option("--eps", bd_eps, "schedule epsilon");
  bd->add_option("--out", bd_out, "write the CSV here (default stdout)");
  bd->add_flag("--timing", bd_timing, "record real wall-clock in the manifest");

  // ---- report ----
  CLI::App* rp = app.add_subcommand(
      "report", "combine survey reports against the bound formulas");
  std::string rp_bounds, rp_out;
  std::vector<std::string> rp_surveys;
  double rp_constant = 1.0;
  bool rp_timing = false;
  std::string rp_config;
  rp->add_option("--config", rp_config, "flat key = value file; flags override");
  auto* rp_surveys_opt =
      rp->add_option("--survey", rp_surveys, "survey JSON files, ascending x")
          ->required()
          ->expected(1, -1);
  auto* rp_bounds_opt = rp->add_option("--bounds", rp_bounds, "bounds CSV to subset against");
  auto* rp_constant_opt = rp->add_option("--constant", rp_constant, "inline bound multiplier");
  rp->add_option("--out", rp_out, "write the CSV here (default stdout)");
  rp->add_flag("--timing", rp_timing, "record real wall-clock in the manifest");

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    expand_config_args(&args);
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  SessionPtr session(ft_session_new());

  if (gv->parsed()) {
    ft_session_set_seed(session.get(), gv_seed);
    ft_session_set_timing(session.get(), gv_timing ? 1 : 0);
    EchoBuilder echo(argc, argv, gv_config);
    echo.add(gv_lemma_opt, "lemma", gv_lemma);
    echo.add(gv_ell_opt, "ell", std::to_string(gv_ell));
    echo.add(gv_g_opt, "g", std::to_string(gv_g));
    if (gv_t_opt->count()) echo.add(gv_t_opt, "t", std::to_string(gv_t));
    if (gv_z_opt->count()) echo.add(gv_z_opt, "z", fmt_double(gv_z));
    if (gv_xi_opt->count()) echo.add(gv_xi_opt, "xi", std::to_string(gv_xi));
    echo.add(gv_cap_opt, "cap", std::to_string(gv_cap));
    echo.add(gv_seed_opt, "seed", std::to_string(gv_seed));
    echo.apply(session.get());

    ft_group_verify_opts opts{};
    opts.lemma = gv_lemma.c_str();
    opts.ell = gv_ell;
    opts.g = gv_g;
    opts.has_t = gv_t_opt->count() > 0;
    opts.t = gv_t;
    opts.has_z = gv_z_opt->count() > 0;
    opts.z = gv_z;
    opts.has_xi = gv_xi_opt->count() > 0;
    opts.xi = gv_xi;
    opts.cap = gv_cap;
    ft_buffer* out = nullptr;
    int pass = 0;
    ft_status st = ft_group_verify(session.get(), &opts, &out, &pass);
    if (st != FT_OK) return fail(session.get(), st);
    BufferPtr guard(out);
    int rc = emit(gv_out, out);
    if (rc != 0) return rc;
    std::fprintf(stderr, "group-verify: %s\n", pass ? "PASS" : "FAIL");
    return pass ? 0 : 1;
  }

  if (tr->parsed()) {
    ft_session_set_seed(session.get(), tr_seed);
    ft_session_set_timing(session.get(), tr_timing ? 1 : 0);
    if (tr_cache_opt->count()) ft_session_set_cache_path(session.get(), tr_cache.c_str());
    EchoBuilder echo(argc, argv, tr_config);
    echo.add(tr_curves_opt, "curves", tr_curves);
    echo.add(tr_p_opt, "p", std::to_string(tr_p));
    echo.add(tr_method_opt, "method", tr_method);
    echo.add(tr_seed_opt, "seed", std::to_string(tr_seed));
    if (tr_cache_opt->count()) echo.add(tr_cache_opt, "cache", tr_cache);
    echo.apply(session.get());

    CatalogPtr cat;
    int rc = load_catalog(session.get(), tr_curves, &cat);
    if (rc != 0) return rc;
    ft_trace_opts opts{};
    opts.p = tr_p;
    opts.method = tr_method == "auto" ? 0 : tr_method == "exhaustive" ? 1 : 2;
    ft_buffer* out = nullptr;
    ft_status st = ft_trace(session.get(), cat.get(), &opts, &out);
    if (st != FT_OK) return fail(session.get(), st);
    BufferPtr guard(out);
    return emit(tr_out, out);
  }

  if (sv->parsed()) {
    ft_session_set_seed(session.get(), sv_seed);
    ft_session_set_threads(session.get(), sv_threads);
    ft_session_set_timing(session.get(), sv_timing ? 1 : 0);
    if (sv_cache_opt->count()) ft_session_set_cache_path(session.get(), sv_cache.c_str());

    int range_mode = 0;
    double ell_y = 0, ell_u = 0;
    if (sv_range_opt->count()) {
      if (sv_range == "auto") {
        range_mode = 2;
      } else if (sv_range == "clamped") {
        range_mode = 3;
      } else {
        size_t comma = sv_range.find(',');
        if (comma == std::string::npos) {
          std::fprintf(stderr,
                       "error: --ell-range wants 'y,u', 'auto', or 'clamped'\n");
          return 2;
        }
        try {
          ell_y = std::stod(sv_range.substr(0, comma));
          ell_u = std::stod(sv_range.substr(comma + 1));
        } catch (const std::exception&) {
          std::fprintf(stderr, "error: cannot parse --ell-range '%s'\n",
                       sv_range.c_str());
          return 2;
        }
        range_mode = 1;
      }
    }

    EchoBuilder echo(argc, argv, sv_config);
    echo.add(sv_curves_opt, "curves", sv_curves);
    echo.add(sv_x_opt, "x", std::to_string(sv_x));
    if (sv_t_opt->count()) echo.add(sv_t_opt, "t", std::to_string(sv_t));
    if (sv_z_opt->count()) echo.add(sv_z_opt, "z", fmt_double(sv_z));
    if (sv_ell_opt->count()) echo.add(sv_ell_opt, "ell", std::to_string(sv_ell));
    if (sv_range_opt->count()) echo.add(sv_range_opt, "ell-range", sv_range);
    if (sv_inert_opt->count()) echo.add(sv_inert_opt, "inert", "true");
    echo.add(sv_eps_opt, "eps", sv_eps);
    echo.add(sv_probe_opt, "probe", std::to_string(sv_probe));
    echo.add(sv_seed_opt, "seed", std::to_string(sv_seed));
    if (sv_cache_opt->count()) echo.add(sv_cache_opt, "cache", sv_cache);
    echo.apply(session.get());

    CatalogPtr cat;
    int rc = load_catalog(session.get(), sv_curves, &cat);
    if (rc != 0) return rc;

    ft_survey_opts opts{};
    opts.x = sv_x;
    opts.has_t = sv_t_opt->count() > 0;
    opts.t = sv_t;
    opts.has_z = sv_z_opt->count() > 0;
    opts.z = sv_z;
    opts.has_ell = sv_ell_opt->count() > 0;
    opts.ell = sv_ell;
    opts.range_mode = range_mode;
    opts.ell_y = ell_y;
    opts.ell_u = ell_u;
    opts.inert = sv_inert ? 1 : 0;
    opts.epsilon = sv_eps.c_str();
    opts.probe = sv_probe;
    ft_buffer* json_buf = nullptr;
    ft_buffer* csv_buf = nullptr;
    ft_status st = ft_survey(session.get(), cat.get(), &opts, &json_buf, &csv_buf);
    if (st != FT_OK) return fail(session.get(), st);
    BufferPtr json_guard(json_buf), csv_guard(csv_buf);

    bool emitted = false;
    if (!sv_out.empty()) {
      int erc = emit(sv_out, ends_with(sv_out, ".csv") ? csv_buf : json_buf);
      if (erc != 0) return erc;
      emitted = true;
    }
    if (!sv_json_out.empty()) {
      int erc = emit(sv_json_out, json_buf);
      if (erc != 0) return erc;
      emitted = true;
    }
    if (!sv_csv_out.empty()) {
      int erc = emit(sv_csv_out, csv_buf);
      if (erc != 0) return erc;
      emitted = true;
    }
    if (!emitted) return emit("", json_buf);
    return 0;
  }

  if (bd->parsed()) {
    ft_session_set_timing(session.get(), bd_timing ? 1 : 0);
    double x_lo = 0, x_hi = 0;
    uint32_t steps = 0;
    {
      size_t c1 = bd_grid.find(',');
      size_t c2 = c1 == std::string::npos ? std::string::npos
                                          : bd_grid.find(',', c1 + 1);
      if (c1 == std::string::npos || c2 == std::string::npos) {
        std::fprintf(stderr, "error: --x-grid wants 'lo,hi,steps'\n");
        return 2;
      }
      try {
        x_lo = std::stod(bd_grid.substr(0, c1));
        x_hi = std::stod(bd_grid.substr(c1 + 1, c2 - c1 - 1));
        steps = static_cast<uint32_t>(std::stoul(bd_grid.substr(c2 + 1)));
      } catch (const std::exception&) {
        std::fprintf(stderr, "error: cannot parse --x-grid '%s'\n", bd_grid.c_str());
        return 2;
      }
    }
    EchoBuilder echo(argc, argv, bd_config);
    echo.add(bd_grid_opt, "x-grid", bd_grid);
    echo.add(bd_g_opt, "g", std::to_string(bd_g));
    echo.add(bd_t0_opt, "t0", bd_t0 ? "true" : "false");
    echo.add(bd_constant_opt, "constant", fmt_double(bd_constant));
    echo.add(bd_eps_opt, "eps", fmt_double(bd_eps));
    echo.apply(session.get());

    ft_bounds_opts opts{};
    opts.x_lo = x_lo;
    opts.x_hi = x_hi;
    opts.steps = steps;
    opts.g = bd_g;
    opts.t_is_zero = bd_t0 ? 1 : 0;
    opts.constant = bd_constant;
    opts.epsilon = bd_eps;
    ft_buffer* out = nullptr;
    ft_status st = ft_bounds(session.get(), &opts, &out);
    if (st != FT_OK) return fail(session.get(), st);
    BufferPtr guard(out);
    return emit(bd_out, out);
  }

  if (rp->parsed()) {
    ft_session_set_timing(session.get(), rp_timing ? 1 : 0);
    EchoBuilder echo(argc, argv, rp_config);
    {
      std::string joined;
      for (size_t i = 0; i < rp_surveys.size(); ++i) {
        if (i) joined += ' ';
        joined += rp_surveys[i];
      }
      echo.add(rp_surveys_opt, "survey", joined);
    }
    if (rp_bounds_opt->count()) echo.add(rp_bounds_opt, "bounds", rp_bounds);
    echo.add(rp_constant_opt, "constant", fmt_double(rp_constant));
    echo.apply(session.get());

    std::vector<std::string> docs(rp_surveys.size());
    std::vector<const char*> doc_ptrs(rp_surveys.size());
    for (size_t i = 0; i < rp_surveys.size(); ++i) {
      if (!read_file(rp_surveys[i], &docs[i])) {
        std::fprintf(stderr, "error: cannot read %s\n", rp_surveys[i].c_str());
        return 2;
      }
      doc_ptrs[i] = docs[i].c_str();
    }
    std::string bounds_text;
    if (rp_bounds_opt->count()) {
      if (!read_file(rp_bounds, &bounds_text)) {
        std::fprintf(stderr, "error: cannot read %s\n", rp_bounds.c_str());
        return 2;
      }
    }
    ft_report_opts opts{};
    opts.survey_jsons = doc_ptrs.data();
    opts.survey_count = doc_ptrs.size();
    opts.bounds_csv = rp_bounds_opt->count() ? bounds_text.c_str() : nullptr;
    opts.constant = rp_constant;
    ft_buffer* out = nullptr;
    ft_status st = ft_report(session.get(), &opts, &out);
    if (st != FT_OK) return fail(session.get(), st);
    BufferPtr guard(out);
    return emit(rp_out, out);
  }

  return 2;
}
