#include "ops.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>

#include "bounds.hpp"
#include "lemmas.hpp"
#include "sieve.hpp"
#include "survey.hpp"
#include "weil.hpp"

namespace frobtrace {

namespace {

using nlohmann::ordered_json;

RunManifest base_manifest(const OpContext& ctx, const std::string& subcommand,
                          const std::string& catalog_hash = "") {
  RunManifest m;
  m.subcommand = subcommand;
  m.config_lines = ctx.config_lines;
  m.catalog_hash = catalog_hash;
  m.seed = ctx.seed;
  if (ctx.timing)
    m.notes.push_back("timing enabled; wall clock varies run to run");
  return m;
}

class OpTimer {
 public:
  explicit OpTimer(bool enabled) : enabled_(enabled) {
    if (enabled_) start_ = std::chrono::steady_clock::now();
  }
  double seconds() const {
    if (!enabled_) return 0.0;
    auto dt = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration<double>(dt).count();
  }

 private:
  bool enabled_;
  std::chrono::steady_clock::time_point start_;
};

ordered_json lemma_report_json(const LemmaReport& r) {
  ordered_json j;
  j["lemma"] = r.lemma;
  j["ell"] = r.ell;
  j["g"] = r.g;
  j["t"] = r.t ? ordered_json(*r.t) : ordered_json(nullptr);
  j["z"] = r.z ? ordered_json(*r.z) : ordered_json(nullptr);
  j["xi"] = r.xi ? ordered_json(*r.xi) : ordered_json(nullptr);
  j["pass"] = r.pass;
  j["method"] = r.method;
  ordered_json cards = ordered_json::object();
  for (const auto& [name, value] : r.cardinalities) cards[name] = value;
  j["cardinalities"] = cards;
  ordered_json checks = ordered_json::array();
  for (const LemmaCheck& c : r.checks)
    checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["checks"] = checks;
  j["notes"] = r.notes;
  j["counterexample"] =
      r.counterexample ? ordered_json(*r.counterexample) : ordered_json(nullptr);
  return j;
}

std::string bad_prime_note(const std::vector<Curve>& curves, u64 x) {
  std::set<u64> bad;
  for (const Curve& c : curves)
    for (u64 q : bad_primes(c))
      if (q <= x) bad.insert(q);
  std::string note =
      "good primes exclude p dividing any curve discriminant (a conductor-"
      "support superset); excluded here: ";
  if (bad.empty()) return note + "none";
  bool first = true;
  for (u64 q : bad) {
    if (!first) note += ", ";
    note += std::to_string(q);
    first = false;
  }
  return note;
}

double json_ratio(double v, ordered_json& slot) {
  if (std::isfinite(v))
    slot = v;
  else
    slot = format_double(v);
  return v;
}

}  // namespace

std::string op_group_verify(const OpContext& ctx, const GroupVerifyQuery& q,
                            bool* pass_out) {
  OpTimer timer(ctx.timing);
  LemmaParams params;
  params.t = q.t;
  params.z = q.z;
  params.xi = q.xi;
  params.cap = q.cap;
  params.seed = ctx.seed;

  std::vector<std::string> ids;
  if (q.lemma == "all")
    ids = known_lemma_ids();
  else
    ids.push_back(q.lemma);

  bool all_pass = true;
  ordered_json reports = ordered_json::array();
  for (const std::string& id : ids) {
    LemmaReport rep = verify_lemma(id, q.ell, q.g, params);
    all_pass = all_pass && rep.pass;
    reports.push_back(lemma_report_json(rep));
  }

  RunManifest man = base_manifest(ctx, "group-verify");
  man.wall_clock = timer.seconds();
  ordered_json doc;
  doc["manifest"] = manifest_json(man);
  doc["reports"] = reports;
  doc["pass"] = all_pass;
  if (pass_out) *pass_out = all_pass;
  return doc.dump(2) + "\n";
}

std::string op_trace(const OpContext& ctx, const Catalog& cat,
                     const TraceQuery& q) {
  OpTimer timer(ctx.timing);
  TraceMethod method;
  switch (q.method) {
    case 0: method = TraceMethod::Auto; break;
    case 1: method = TraceMethod::Exhaustive; break;
    case 2: method = TraceMethod::Bsgs; break;
    default: throw std::invalid_argument("unknown trace method");
  }

  std::unique_ptr<TraceCache> cache;
  if (!ctx.cache_path.empty())
    cache = std::make_unique<TraceCache>(ctx.cache_path);

  std::vector<i64> aps;
  ordered_json curves = ordered_json::array();
  for (const Curve& c : cat.curves) {
    ordered_json entry;
    entry["label"] = c.label;
    std::optional<i64> hit =
        cache ? cache->lookup(c.label, q.p) : std::nullopt;
    if (hit && method == TraceMethod::Auto) {
      entry["ap"] = *hit;
      entry["used_bsgs"] = false;
      entry["exhaustive_fallback"] = false;
      entry["cached"] = true;
      aps.push_back(*hit);
    } else {
      TraceResult tr = trace(c, q.p, method, ctx.seed);
      entry["ap"] = tr.ap;
      entry["used_bsgs"] = tr.used_bsgs;
      entry["exhaustive_fallback"] = tr.exhaustive_fallback;
      entry["cached"] = false;
      aps.push_back(tr.ap);
      if (cache) cache->append(c.label, q.p, tr.ap);
    }
    entry["frobenius_disc"] = frobenius_disc(aps.back(), q.p);
    curves.push_back(entry);
  }
  if (cache) cache->flush();

  ordered_json poly = ordered_json::array();
  for (i128 coeff : product_weil_poly(aps, q.p))
    poly.push_back(to_string_i128(coeff));

  RunManifest man = base_manifest(ctx, "trace", hash_hex(cat.hash));
  man.wall_clock = timer.seconds();
  ordered_json doc;
  doc["manifest"] = manifest_json(man);
  doc["p"] = q.p;
  doc["curves"] = curves;
  doc["a1p"] = product_trace_stat(aps);
  doc["product_weil_poly"] = poly;
  return doc.dump(2) + "\n";
}

SurveyOutput op_survey(const OpContext& ctx, const Catalog& cat,
                       const SurveyQuery& q) {
  OpTimer timer(ctx.timing);
  if (q.t && q.z)
    throw std::invalid_argument("choose one of t and z, not both");
  if (q.ell && q.range_mode != EllRangeMode::None)
    throw std::invalid_argument("choose one of ell and ell-range, not both");
  if (q.z && (q.ell || q.range_mode != EllRangeMode::None))
    throw std::invalid_argument("z mode does not combine with ell conditions");
  if (q.inert && (!q.ell || q.range_mode != EllRangeMode::None))
    throw std::invalid_argument("the inert variant needs a single ell");
  if (q.z && !(*q.z >= 0))
    throw std::invalid_argument("z must be >= 0");

  Rational eps_exact = parse_decimal_rational(q.epsilon);
  if (eps_exact.num <= 0)
    throw std::invalid_argument("epsilon must be positive");
  double eps = static_cast<double>(eps_exact.num) /
               static_cast<double>(eps_exact.den);
  const u32 g = static_cast<u32>(cat.curves.size());
  const i64 teff = q.t.value_or(0);

  RunManifest man = base_manifest(ctx, "survey", hash_hex(cat.hash));
  man.notes.push_back(bad_prime_note(cat.curves, q.x));

  // Resolve the ell window first: an infeasible strict schedule should fail
  // before any traces are computed.
  std::optional<ParamSchedule> window;
  if (q.range_mode == EllRangeMode::Explicit)
    window = ParamSchedule{q.ell_y, q.ell_u, eps};
  else if (q.range_mode == EllRangeMode::Strict)
    window = choose_parameters(static_cast<double>(q.x), g, teff == 0, eps);
  else if (q.range_mode == EllRangeMode::Clamped) {
    ParamSchedule raw = schedule_raw(static_cast<double>(q.x), g, teff == 0, eps);
    window = clamped_schedule(static_cast<double>(q.x), g, teff == 0, eps);
    if (raw.y != window->y || raw.u != window->u)
      man.notes.push_back(
          "schedule clamped to a workable window: raw y = " +
          format_double(raw.y) + ", u = " + format_double(raw.u) +
          " adjusted to y = " + format_double(window->y) +
          ", u = " + format_double(window->u));
  }

  std::unique_ptr<TraceCache> cache;
  if (!ctx.cache_path.empty())
    cache = std::make_unique<TraceCache>(ctx.cache_path);

  SurveyOptions sopt;
  sopt.x = q.x;
  sopt.threads = ctx.threads;
  sopt.seed = ctx.seed;
  sopt.cache = cache.get();
  std::vector<TraceRecord> records = batch_traces(cat.curves, sopt);

  const u64 pi_x = count_primes(q.x);
  const u64 pi_t_val = pi_t(records, teff);
  const double nonlac = nonlacunarity(records, pi_x, teff);
  const double large = large_trace_ratio(records, pi_x, g, eps_exact);

  u64 bsgs_count = 0, fallback_count = 0;
  for (const TraceRecord& rec : records) {
    bsgs_count += rec.used_bsgs ? 1 : 0;
    fallback_count += rec.exhaustive_fallback ? 1 : 0;
  }

  std::vector<std::string> warnings;
  if (q.probe > 0) warnings = sanity_checks(cat.curves, q.probe, ctx.seed);

  auto hist = trace_histogram(records);

  ordered_json results;
  results["primes_le_x"] = pi_x;
  results["good_primes"] = records.size();
  {
    std::set<u64> bad;
    for (const Curve& c : cat.curves)
      for (u64 qq : bad_primes(c))
        if (qq <= q.x) bad.insert(qq);
    results["bad_primes"] = std::vector<u64>(bad.begin(), bad.end());
  }
  results["pi_t"] = pi_t_val;
  results["nonlacunarity"] = nonlac;
  results["large_trace_ratio"] = large;

  std::string csv_body;
  std::string csv_header;
  if (q.range_mode != EllRangeMode::None) {
    MaxSurveyResult ms = max_survey(records, cat.curves, window->y, window->u, teff);
    ordered_json per_ell = ordered_json::array();
    csv_header = "ell,pi_ell_t\n";
    for (const EllCount& ec : ms.per_ell) {
      per_ell.push_back({{"ell", ec.ell}, {"count", ec.count}});
      csv_body += csv_line({std::to_string(ec.ell), std::to_string(ec.count)});
    }
    results["per_ell"] = per_ell;
    results["max_ell"] = ms.best_ell;
    results["max_count"] = ms.best_count;
    json_ratio(ms.ratio, results["max_ratio"]);
  } else {
    csv_header = "t,count\n";
    for (const auto& [tv, count] : hist)
      csv_body += csv_line({std::to_string(tv), std::to_string(count)});
  }

  if (q.ell) {
    u64 n = q.inert ? pi_ns_ell_t(records, cat.curves, *q.ell, teff)
                    : pi_ell_t(records, cat.curves, *q.ell, teff);
    results["pi_ell_t"] = n;
    results["split_mode"] = q.inert ? "inert" : "split";
  }

  if (q.z) {
    u64 inside = 0;
    i64 zcap = static_cast<i64>(std::floor(*q.z));
    for (const auto& [tv, count] : hist)
      if (tv >= -zcap && tv <= zcap) inside += count;
    results["pi_abs_le_z"] = inside;
  }

  ordered_json hist_json = ordered_json::array();
  for (const auto& [tv, count] : hist) hist_json.push_back({tv, count});
  results["histogram"] = hist_json;
  results["bsgs_primes"] = bsgs_count;
  results["exhaustive_fallbacks"] = fallback_count;
  results["warnings"] = warnings;

  man.wall_clock = timer.seconds();

  ordered_json query;
  query["x"] = q.x;
  query["g"] = g;
  query["t"] = q.t ? ordered_json(*q.t) : ordered_json(nullptr);
  query["z"] = q.z ? ordered_json(*q.z) : ordered_json(nullptr);
  query["ell"] = q.ell ? ordered_json(*q.ell) : ordered_json(nullptr);
  if (window)
    query["ell_window"] = {window->y, window->u};
  else
    query["ell_window"] = nullptr;
  query["inert"] = q.inert;
  query["epsilon"] = q.epsilon;
  query["probe"] = q.probe;
  query["effective_t"] = teff;

  ordered_json doc;
  doc["manifest"] = manifest_json(man);
  doc["query"] = query;
  doc["results"] = results;

  SurveyOutput out;
  out.json = doc.dump(2) + "\n";
  out.csv = manifest_csv_comments(man) + csv_header + csv_body;
  return out;
}

std::string op_bounds(const OpContext& ctx, const BoundsQuery& q) {
  OpTimer timer(ctx.timing);
  if (q.steps < 1) throw std::invalid_argument("steps must be >= 1");
  if (!(q.x_hi >= q.x_lo)) throw std::invalid_argument("x_hi must be >= x_lo");

  std::vector<double> grid;
  if (q.steps == 1) {
    grid.push_back(q.x_lo);
  } else {
    double ratio = q.x_hi / q.x_lo;
    for (u32 i = 0; i < q.steps; ++i)
      grid.push_back(q.x_lo *
                     std::pow(ratio, static_cast<double>(i) /
                                         static_cast<double>(q.steps - 1)));
  }

  RunManifest man = base_manifest(ctx, "bounds");
  man.notes.push_back(
      "y and u columns are raw schedule values; the window hypotheses "
      "(y > 3, u <= y) first hold near x = " +
      format_double(minimal_feasible_x(q.g, q.t_is_zero, q.epsilon)));

  std::string body;
  for (double x : grid) {
    BoundQuery bq{x, q.g, q.t_is_zero, q.constant};
    ParamSchedule s = schedule_raw(x, q.g, q.t_is_zero, q.epsilon);
    body += csv_line({format_double(x), format_double(theorem1_bound(bq)),
                      format_double(torus_variant_bound(x, q.g, q.constant)),
                      format_double(s.y), format_double(s.u)});
  }
  man.wall_clock = timer.seconds();
  return manifest_csv_comments(man) + "x,bound,torus_bound,y,u\n" + body;
}

namespace {

struct SurveyPoint {
  double x = 0;
  u64 pi = 0;
};

struct BoundsRow {
  double x = 0;
  double bound = 0;
  double torus = 0;
};

std::vector<BoundsRow> parse_bounds_csv(const std::string& text) {
  std::vector<BoundsRow> rows;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != "x,bound,torus_bound,y,u")
        throw std::invalid_argument(
            "bounds CSV schema mismatch at line " + std::to_string(lineno) +
            ": expected header 'x,bound,torus_bound,y,u'");
      header_seen = true;
      continue;
    }
    std::istringstream cells(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(cells, cell, ',')) vals.push_back(std::stod(cell));
    if (vals.size() != 5)
      throw std::invalid_argument("bounds CSV schema mismatch at line " +
                                  std::to_string(lineno));
    rows.push_back({vals[0], vals[1], vals[2]});
  }
  if (!header_seen)
    throw std::invalid_argument("bounds CSV is missing its header row");
  return rows;
}

}  // namespace

std::string op_report(const OpContext& ctx, const ReportQuery& q) {
  OpTimer timer(ctx.timing);
  if (q.survey_jsons.empty())
    throw std::invalid_argument("report needs at least one survey file");

  std::vector<SurveyPoint> points;
  std::string catalog_hash;
  i64 t = 0;
  u32 g = 0;
  for (std::size_t i = 0; i < q.survey_jsons.size(); ++i) {
    std::string where = "survey input " + std::to_string(i + 1);
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(q.survey_jsons[i]);
    } catch (const std::exception& e) {
      throw std::invalid_argument(where + ": not valid JSON (" + e.what() + ")");
    }
    if (!doc.contains("manifest") || !doc.contains("query") ||
        !doc.contains("results") || !doc["results"].contains("pi_t"))
      throw std::invalid_argument(where + ": schema mismatch, not a survey report");
    std::string hash = doc["manifest"].value("catalog_hash", "");
    i64 this_t = doc["query"]["effective_t"].get<i64>();
    u32 this_g = doc["query"]["g"].get<u32>();
    if (i == 0) {
      catalog_hash = hash;
      t = this_t;
      g = this_g;
    } else if (hash != catalog_hash) {
      throw std::invalid_argument(where + ": catalog differs from the first input");
    } else if (this_t != t || this_g != g) {
      throw std::invalid_argument(where + ": query (t, g) differs from the first input");
    }
    SurveyPoint pt;
    pt.x = doc["query"]["x"].get<double>();
    pt.pi = doc["results"]["pi_t"].get<u64>();
    if (!points.empty() && pt.x <= points.back().x)
      throw std::invalid_argument("non-monotone x grid across survey inputs");
    points.push_back(pt);
  }

  RunManifest man = base_manifest(ctx, "report");
  man.catalog_hash = catalog_hash;

  std::string body;
  if (!q.bounds_csv.empty()) {
    std::vector<BoundsRow> rows = parse_bounds_csv(q.bounds_csv);
    for (std::size_t i = 1; i < rows.size(); ++i)
      if (rows[i].x <= rows[i - 1].x)
        throw std::invalid_argument("non-monotone x grid in bounds CSV");
    std::size_t matched = 0;
    for (const SurveyPoint& pt : points) {
      const BoundsRow* hit = nullptr;
      for (const BoundsRow& row : rows)
        if (row.x == pt.x) {
          hit = &row;
          break;
        }
      if (!hit) continue;  // exact subsetting, never interpolation
      ++matched;
      body += csv_line({format_double(pt.x), std::to_string(pt.pi),
                        format_double(hit->bound), format_double(hit->torus)});
    }
    if (matched == 0)
      throw std::invalid_argument(
          "no common x between survey inputs and the bounds grid; refusing "
          "to interpolate");
    if (matched < points.size())
      man.notes.push_back(std::to_string(points.size() - matched) +
                          " survey point(s) missing from the bounds grid were "
                          "dropped (exact subsetting)");
    man.notes.push_back("bound columns come from the supplied bounds CSV");
  } else {
    for (const SurveyPoint& pt : points) {
      BoundQuery bq{pt.x, g, t == 0, q.constant};
      body += csv_line({format_double(pt.x), std::to_string(pt.pi),
                        format_double(theorem1_bound(bq)),
                        format_double(torus_variant_bound(pt.x, g, q.constant))});
    }
    man.notes.push_back("bound columns computed with constant multiplier " +
                        format_double(q.constant));
  }

  man.wall_clock = timer.seconds();
  return manifest_csv_comments(man) + "x,pi_t,bound,torus_bound\n" + body;
}

}  // namespace frobtrace
