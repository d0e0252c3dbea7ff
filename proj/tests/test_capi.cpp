#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <memory>
#include <string>

#include "frobtrace.h"

using nlohmann::json;

namespace {

struct SessionDeleter {
  void operator()(ft_session* s) const { ft_session_free(s); }
};
struct CatalogDeleter {
  void operator()(ft_catalog* c) const { ft_catalog_free(c); }
};
using SessionPtr = std::unique_ptr<ft_session, SessionDeleter>;
using CatalogPtr = std::unique_ptr<ft_catalog, CatalogDeleter>;

SessionPtr make_session() { return SessionPtr(ft_session_new()); }

std::string take(ft_buffer* b) {
  REQUIRE(b != nullptr);
  std::string text(ft_buffer_data(b), ft_buffer_size(b));
  ft_buffer_free(b);
  return text;
}

constexpr const char* kCatalogText =
    "# two fixture curves\n"
    "e1: 0,0,0,1,1\n"
    "e2: 0,0,0,2,3\n";

CatalogPtr make_catalog(ft_session* s) {
  ft_catalog* cat = nullptr;
  REQUIRE(ft_catalog_parse(s, kCatalogText, "inline", &cat) == FT_OK);
  return CatalogPtr(cat);
}

}  // namespace

TEST_CASE("version and status names are stable strings") {
  CHECK(std::string(ft_version()) == "0.1.0");
  CHECK(std::string(ft_status_name(FT_OK)) == "FT_OK");
  CHECK(std::string(ft_status_name(FT_EINVAL)) == "FT_EINVAL");
  CHECK(std::string(ft_status_name(FT_ESIZE_GUARD)) == "FT_ESIZE_GUARD");
  CHECK(std::string(ft_status_name(FT_EINFEASIBLE)) == "FT_EINFEASIBLE");
  CHECK(std::string(ft_status_name(FT_EIO)) == "FT_EIO");
  CHECK(std::string(ft_status_name(FT_EINTERNAL)) == "FT_EINTERNAL");
}

TEST_CASE("session lifecycle and last_error discipline") {
  auto s = make_session();
  REQUIRE(s);
  CHECK(std::string(ft_last_error(s.get())) == "");
  CHECK(ft_session_set_seed(s.get(), 42) == FT_OK);
  CHECK(ft_session_set_threads(s.get(), 4) == FT_OK);
  CHECK(ft_session_set_threads(s.get(), 0) == FT_EINVAL);
  CHECK(std::string(ft_last_error(s.get())).find("threads") !=
        std::string::npos);
  CHECK(ft_session_set_threads(s.get(), 65) == FT_EINVAL);
  // a succeeding call clears the message
  CHECK(ft_session_set_threads(s.get(), 2) == FT_OK);
  CHECK(std::string(ft_last_error(s.get())) == "");
  ft_session_free(nullptr);  // must be harmless
}

TEST_CASE("catalog parsing, labels and hash stability") {
  auto s = make_session();
  auto cat = make_catalog(s.get());
  CHECK(ft_catalog_count(cat.get()) == 2);
  CHECK(std::string(ft_catalog_label(cat.get(), 0)) == "e1");
  CHECK(std::string(ft_catalog_label(cat.get(), 1)) == "e2");
  CHECK(ft_catalog_label(cat.get(), 2) == nullptr);

  uint64_t h1 = ft_catalog_hash(cat.get());
  CHECK(h1 != 0);
  // comments and spacing do not move the hash
  ft_catalog* cat2 = nullptr;
  REQUIRE(ft_catalog_parse(s.get(), "e1: 0,0,0,1,1\n\n# x\ne2:0, 0,0,2,3\n",
                           "other", &cat2) == FT_OK);
  CHECK(ft_catalog_hash(cat2) == h1);
  ft_catalog_free(cat2);

  // a different curve list moves it
  ft_catalog* cat3 = nullptr;
  REQUIRE(ft_catalog_parse(s.get(), "e1: 0,0,0,1,1\n", "third", &cat3) == FT_OK);
  CHECK(ft_catalog_hash(cat3) != h1);
  ft_catalog_free(cat3);
}

TEST_CASE("catalog errors carry the origin and line number") {
  auto s = make_session();
  ft_catalog* cat = nullptr;
  CHECK(ft_catalog_parse(s.get(), "e1: 0,0,0,1,1\nbroken line\n", "cat.txt",
                         &cat) == FT_EINVAL);
  std::string msg = ft_last_error(s.get());
  CHECK(msg.find("cat.txt:2") != std::string::npos);

  CHECK(ft_catalog_parse(s.get(), "", "empty.txt", &cat) == FT_EINVAL);
  CHECK(std::string(ft_last_error(s.get())).find("no curves") !=
        std::string::npos);

  // duplicate labels
  CHECK(ft_catalog_parse(s.get(), "e1: 0,0,0,1,1\ne1: 0,0,0,2,3\n", "dup.txt",
                         &cat) == FT_EINVAL);

  // singular curve
  CHECK(ft_catalog_parse(s.get(), "bad: 0,0,0,0,0\n", "sing.txt", &cat) ==
        FT_EINVAL);

  // null arguments
  CHECK(ft_catalog_parse(s.get(), nullptr, "x", &cat) == FT_EINVAL);
  CHECK(ft_catalog_parse(s.get(), "e1: 0,0,0,1,1\n", "x", nullptr) == FT_EINVAL);
}

TEST_CASE("group_verify runs a passing lemma and reports JSON") {
  auto s = make_session();
  ft_group_verify_opts opts = {};
  opts.lemma = "L4.1";
  opts.ell = 3;
  opts.g = 1;
  ft_buffer* out = nullptr;
  int pass = 0;
  REQUIRE(ft_group_verify(s.get(), &opts, &out, &pass) == FT_OK);
  CHECK(pass == 1);
  json doc = json::parse(take(out));
  CHECK(doc["pass"] == true);
  REQUIRE(doc["reports"].is_array());
  CHECK(doc["reports"][0]["lemma"] == "L4.1");
  CHECK(doc["reports"][0]["ell"] == 3);
  CHECK(doc["manifest"]["subcommand"] == "group-verify");
  CHECK(doc["manifest"]["tool"] == "frobtrace");
  CHECK(doc["manifest"]["wall_clock_seconds"] == 0.0);
}

TEST_CASE("group_verify all runs every verifier") {
  auto s = make_session();
  ft_group_verify_opts opts = {};
  opts.lemma = "all";
  opts.ell = 3;
  opts.g = 1;
  ft_buffer* out = nullptr;
  int pass = 0;
  REQUIRE(ft_group_verify(s.get(), &opts, &out, &pass) == FT_OK);
  CHECK(pass == 1);
  json doc = json::parse(take(out));
  CHECK(doc["reports"].size() == 7);
}

TEST_CASE("group_verify maps domain errors to status codes") {
  auto s = make_session();
  ft_group_verify_opts opts = {};
  opts.lemma = "L4.1";
  opts.ell = 9;  // composite
  opts.g = 1;
  ft_buffer* out = nullptr;
  CHECK(ft_group_verify(s.get(), &opts, &out, nullptr) == FT_EINVAL);
  CHECK(std::string(ft_last_error(s.get())).find("ell must be an odd prime") !=
        std::string::npos);

  opts.ell = 101;  // |G| huge at g = 3
  opts.g = 3;
  opts.lemma = "L4.1";
  CHECK(ft_group_verify(s.get(), &opts, &out, nullptr) == FT_ESIZE_GUARD);

  opts.lemma = "nope";
  opts.ell = 3;
  opts.g = 1;
  CHECK(ft_group_verify(s.get(), &opts, &out, nullptr) == FT_EINVAL);

  CHECK(ft_group_verify(s.get(), nullptr, &out, nullptr) == FT_EINVAL);
  CHECK(ft_group_verify(s.get(), &opts, nullptr, nullptr) == FT_EINVAL);
}

TEST_CASE("trace reports per-curve traces and the product polynomial") {
  auto s = make_session();
  auto cat = make_catalog(s.get());
  ft_trace_opts opts = {};
  opts.p = 5;
  opts.method = 0;
  ft_buffer* out = nullptr;
  // 5 is bad for e2 (disc -4400), so the call must fail
  CHECK(ft_trace(s.get(), cat.get(), &opts, &out) == FT_EINVAL);

  opts.p = 7;
  REQUIRE(ft_trace(s.get(), cat.get(), &opts, &out) == FT_OK);
  json doc = json::parse(take(out));
  REQUIRE(doc["curves"].size() == 2);
  CHECK(doc["curves"][0]["label"] == "e1");
  CHECK(doc["curves"][0]["ap"] == 3);
  CHECK(doc["p"] == 7);
  CHECK(doc["a1p"].is_number_integer());
  REQUIRE(doc["product_weil_poly"].is_array());
  CHECK(doc["product_weil_poly"].size() == 5);  // degree 4, low-to-high
  // constant coefficient p^g = 49
  CHECK(doc["product_weil_poly"][0] == "49");
  CHECK(doc["product_weil_poly"][4] == "1");
}

TEST_CASE("survey produces the counts document and histogram CSV") {
  auto s = make_session();
  auto cat = make_catalog(s.get());
  ft_survey_opts opts = {};
  opts.x = 100;
  opts.probe = 0;
  ft_buffer* out_json = nullptr;
  ft_buffer* out_csv = nullptr;
  REQUIRE(ft_survey(s.get(), cat.get(), &opts, &out_json, &out_csv) == FT_OK);
  json doc = json::parse(take(out_json));
  CHECK(doc["query"]["x"] == 100);
  CHECK(doc["query"]["g"] == 2);
  CHECK(doc["query"]["effective_t"] == 0);
  CHECK(doc["results"]["primes_le_x"] == 25);
  // bad primes of the union 2, 5, 11, 31 all lie below 100
  CHECK(doc["results"]["bad_primes"] == json::array({2, 5, 11, 31}));
  CHECK(doc["results"]["good_primes"] == 21);
  CHECK(doc["results"]["pi_t"].is_number());
  CHECK(doc["results"]["nonlacunarity"].is_number());
  CHECK(doc["results"]["large_trace_ratio"].is_number());
  CHECK(doc["manifest"]["catalog_hash"].is_string());

  std::string csv = take(out_csv);
  CHECK(csv.find("# tool: frobtrace") != std::string::npos);
  CHECK(csv.find("t,count") != std::string::npos);
}

TEST_CASE("survey validates its option combinations") {
  auto s = make_session();
  auto cat = make_catalog(s.get());
  ft_survey_opts opts = {};
  opts.x = 100;
  ft_buffer* out = nullptr;

  opts.has_t = 1;
  opts.t = 0;
  opts.has_z = 1;
  opts.z = 2.0;
  CHECK(ft_survey(s.get(), cat.get(), &opts, &out, nullptr) == FT_EINVAL);

  opts = {};
  opts.x = 100;
  opts.has_ell = 1;
  opts.ell = 3;
  opts.range_mode = 1;
  opts.ell_y = 3;
  opts.ell_u = 10;
  CHECK(ft_survey(s.get(), cat.get(), &opts, &out, nullptr) == FT_EINVAL);

  opts = {};
  opts.x = 100;
  opts.inert = 1;  // inert needs a single ell
  CHECK(ft_survey(s.get(), cat.get(), &opts, &out, nullptr) == FT_EINVAL);

  opts = {};
  opts.x = 100;
  opts.epsilon = "not-a-number";
  CHECK(ft_survey(s.get(), cat.get(), &opts, &out, nullptr) == FT_EINVAL);

  opts = {};
  opts.x = 2;  // below the smallest survey
  CHECK(ft_survey(s.get(), cat.get(), &opts, &out, nullptr) == FT_EINVAL);
}

TEST_CASE("survey strict schedule mode surfaces infeasibility") {
  auto s = make_session();
  auto cat = make_catalog(s.get());
  ft_survey_opts opts = {};
  opts.x = 1000;
  opts.range_mode = 2;  // strict: desk-scale x cannot satisfy the window
  ft_buffer* out = nullptr;
  CHECK(ft_survey(s.get(), cat.get(), &opts, &out, nullptr) == FT_EINFEASIBLE);
  CHECK(std::string(ft_last_error(s.get())).find("infeasible") !=
        std::string::npos);
}

TEST_CASE("survey clamped schedule and single-ell modes work") {
  auto s = make_session();
  auto cat = make_catalog(s.get());
  ft_survey_opts opts = {};
  opts.x = 1000;
  opts.range_mode = 3;  // clamped
  ft_buffer* out_json = nullptr;
  ft_buffer* out_csv = nullptr;
  REQUIRE(ft_survey(s.get(), cat.get(), &opts, &out_json, &out_csv) == FT_OK);
  json doc = json::parse(take(out_json));
  CHECK(doc["results"].contains("per_ell"));
  CHECK(doc["results"].contains("max_ell"));
  std::string csv = take(out_csv);
  CHECK(csv.find("ell,pi_ell_t") != std::string::npos);

  opts = {};
  opts.x = 1000;
  opts.has_ell = 1;
  opts.ell = 3;
  REQUIRE(ft_survey(s.get(), cat.get(), &opts, &out_json, nullptr) == FT_OK);
  doc = json::parse(take(out_json));
  CHECK(doc["results"].contains("pi_ell_t"));
  CHECK(doc["results"]["split_mode"] == "split");
}

TEST_CASE("bounds emits the five-column grid") {
  auto s = make_session();
  ft_bounds_opts opts = {};
  opts.x_lo = 1e4;
  opts.x_hi = 1e6;
  opts.steps = 3;
  opts.g = 1;
  opts.t_is_zero = 1;
  ft_buffer* out = nullptr;
  REQUIRE(ft_bounds(s.get(), &opts, &out) == FT_OK);
  std::string csv = take(out);
  CHECK(csv.find("x,bound,torus_bound,y,u") != std::string::npos);
  // comment lines + header + 3 data rows; count data rows directly
  size_t data_rows = 0;
  size_t line_start = 0;
  while (line_start < csv.size()) {
    size_t line_end = csv.find('\n', line_start);
    if (line_end == std::string::npos) line_end = csv.size();
    std::string line = csv.substr(line_start, line_end - line_start);
    if (!line.empty() && line[0] != '#' && line.find("x,") != 0) ++data_rows;
    line_start = line_end + 1;
  }
  CHECK(data_rows == 3);

  opts.steps = 0;
  CHECK(ft_bounds(s.get(), &opts, &out) == FT_EINVAL);
  opts.steps = 2;
  opts.x_hi = 1e3;  // below x_lo
  CHECK(ft_bounds(s.get(), &opts, &out) == FT_EINVAL);
}

TEST_CASE("report composes surveys against inline bounds") {
  auto s = make_session();
  auto cat = make_catalog(s.get());

  auto survey_at = [&](uint64_t x) {
    ft_survey_opts opts = {};
    opts.x = x;
    ft_buffer* out = nullptr;
    REQUIRE(ft_survey(s.get(), cat.get(), &opts, &out, nullptr) == FT_OK);
    return take(out);
  };
  std::string s1 = survey_at(1000);
  std::string s2 = survey_at(5000);

  const char* docs[2] = {s1.c_str(), s2.c_str()};
  ft_report_opts opts = {};
  opts.survey_jsons = docs;
  opts.survey_count = 2;
  ft_buffer* out = nullptr;
  REQUIRE(ft_report(s.get(), &opts, &out) == FT_OK);
  std::string csv = take(out);
  CHECK(csv.find("x,pi_t,bound,torus_bound") != std::string::npos);
  CHECK(csv.find("1000,") != std::string::npos);
  CHECK(csv.find("5000,") != std::string::npos);

  // non-monotone x order is rejected
  const char* bad[2] = {s2.c_str(), s1.c_str()};
  opts.survey_jsons = bad;
  CHECK(ft_report(s.get(), &opts, &out) == FT_EINVAL);
  CHECK(std::string(ft_last_error(s.get())).find("non-monotone") !=
        std::string::npos);

  // malformed document
  const char* junk[1] = {"{\"not\": \"a survey\"}"};
  opts.survey_jsons = junk;
  opts.survey_count = 1;
  CHECK(ft_report(s.get(), &opts, &out) == FT_EINVAL);
}

TEST_CASE("report consumes a bounds CSV by exact x match") {
  auto s = make_session();
  auto cat = make_catalog(s.get());
  ft_survey_opts sopts = {};
  sopts.x = 1000;
  ft_buffer* sbuf = nullptr;
  REQUIRE(ft_survey(s.get(), cat.get(), &sopts, &sbuf, nullptr) == FT_OK);
  std::string sdoc = take(sbuf);

  ft_bounds_opts bopts = {};
  bopts.x_lo = 1000;
  bopts.x_hi = 10000;
  bopts.steps = 2;
  bopts.g = 2;
  bopts.t_is_zero = 1;
  ft_buffer* bbuf = nullptr;
  REQUIRE(ft_bounds(s.get(), &bopts, &bbuf) == FT_OK);
  std::string bcsv = take(bbuf);

  const char* docs[1] = {sdoc.c_str()};
  ft_report_opts ropts = {};
  ropts.survey_jsons = docs;
  ropts.survey_count = 1;
  ropts.bounds_csv = bcsv.c_str();
  ft_buffer* out = nullptr;
  REQUIRE(ft_report(s.get(), &ropts, &out) == FT_OK);
  std::string merged = take(out);
  CHECK(merged.find("1000,") != std::string::npos);

  // a grid that misses x = 1000 entirely refuses to interpolate
  bopts.x_lo = 1500;
  bopts.x_hi = 2000;
  REQUIRE(ft_bounds(s.get(), &bopts, &bbuf) == FT_OK);
  std::string far = take(bbuf);
  ropts.bounds_csv = far.c_str();
  CHECK(ft_report(s.get(), &ropts, &out) == FT_EINVAL);
  CHECK(std::string(ft_last_error(s.get())).find("refusing to interpolate") !=
        std::string::npos);
}
