/* C interface to the frobtrace core: Frobenius-trace surveys for products
 * of elliptic curves, exhaustive matrix-group verification over GL2(Z/ell),
 * and closed-form bound evaluation.
 *
 * Conventions: every operation runs inside an ft_session, returns an
 * ft_status, and reports detail through ft_last_error(session). Documents
 * (JSON reports, CSV tables) come back as ft_buffer objects owned by the
 * caller. All text is UTF-8 and NUL-terminated.
 */
#ifndef FROBTRACE_H
#define FROBTRACE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#ifndef FT_API
#if defined(_WIN32)
#define FT_API __declspec(dllexport)
#else
#define FT_API __attribute__((visibility("default")))
#endif
#endif

typedef enum ft_status {
  FT_OK = 0,
  FT_EINVAL = 1,       /* bad argument or parameter out of range */
  FT_ESIZE_GUARD = 2,  /* an enumeration would exceed its element cap */
  FT_EINFEASIBLE = 3,  /* parameter schedule cannot satisfy its constraints */
  FT_EIO = 4,          /* cache or file trouble */
  FT_EINTERNAL = 5     /* invariant violation; report a bug */
} ft_status;

FT_API const char* ft_status_name(ft_status s);
FT_API const char* ft_version(void);

typedef struct ft_session ft_session;
typedef struct ft_catalog ft_catalog;
typedef struct ft_buffer ft_buffer;

FT_API ft_session* ft_session_new(void);
FT_API void ft_session_free(ft_session* s);

/* Message from the most recent failing call on this session; empty string
 * when the last call succeeded. Owned by the session. */
FT_API const char* ft_last_error(const ft_session* s);

FT_API ft_status ft_session_set_seed(ft_session* s, uint64_t seed);
FT_API ft_status ft_session_set_threads(ft_session* s, int threads);
/* Path of the append-only trace cache; NULL or "" disables caching. */
FT_API ft_status ft_session_set_cache_path(ft_session* s, const char* path);
/* When enabled, manifests record real wall-clock seconds; off by default so
 * identical runs produce identical bytes. */
FT_API ft_status ft_session_set_timing(ft_session* s, int enabled);
/* Lines echoed verbatim into every manifest's config section, typically
 * "key = value (flag|config|default)". */
FT_API ft_status ft_session_set_config_echo(ft_session* s,
                                            const char* const* lines,
                                            size_t count);

/* Parses curve catalog text: one `label: a1,a2,a3,a4,a6` per line, '#'
 * comments. origin names the source in error messages. */
FT_API ft_status ft_catalog_parse(ft_session* s, const char* text,
                                  const char* origin, ft_catalog** out);
FT_API void ft_catalog_free(ft_catalog* c);
FT_API size_t ft_catalog_count(const ft_catalog* c);
FT_API uint64_t ft_catalog_hash(const ft_catalog* c);
/* Label of the index-th curve, or NULL when out of range. */
FT_API const char* ft_catalog_label(const ft_catalog* c, size_t index);

FT_API const char* ft_buffer_data(const ft_buffer* b);
FT_API size_t ft_buffer_size(const ft_buffer* b);
FT_API void ft_buffer_free(ft_buffer* b);

typedef struct ft_group_verify_opts {
  const char* lemma; /* verifier id (see ft_group_verify docs) or "all" */
  uint64_t ell;      /* odd prime modulus */
  uint32_t g;        /* number of factors, >= 1 */
  int has_t;
  int64_t t; /* trace-sum target (integer; reduced mod ell internally) */
  int has_z;
  double z; /* range radius for the |t| <= z set variants */
  int has_xi;
  uint64_t xi;  /* non-residue for the non-split Cartan kind */
  uint64_t cap; /* enumeration element cap; 0 selects the default 2e7 */
} ft_group_verify_opts;

/* Runs one verifier (ids: L4.1, L4.3, L5.1, L5.3, L5.4, C2.2-hyp, orders)
 * or all of them, writing a JSON document of reports. pass_out (optional)
 * receives 1 when every check passed. A failed mathematical check is still
 * FT_OK: the verdict lives in the report. */
FT_API ft_status ft_group_verify(ft_session* s,
                                 const ft_group_verify_opts* opts,
                                 ft_buffer** out_json, int* pass_out);

typedef struct ft_trace_opts {
  uint64_t p; /* good prime for every catalog curve */
  int method; /* 0 auto, 1 exhaustive, 2 baby-step/giant-step */
} ft_trace_opts;

/* Traces of every catalog curve at one prime, plus the product Weil
 * polynomial, as JSON. */
FT_API ft_status ft_trace(ft_session* s, const ft_catalog* cat,
                          const ft_trace_opts* opts, ft_buffer** out_json);

typedef struct ft_survey_opts {
  uint64_t x; /* survey primes p <= x; x >= 3 */
  int has_t;
  int64_t t; /* target trace statistic (default 0) */
  int has_z;
  double z; /* histogram radius mode: report mass of |t| <= z */
  int has_ell;
  uint64_t ell;   /* single-ell split/inert count */
  int range_mode; /* 0 none, 1 explicit, 2 strict schedule, 3 clamped */
  double ell_y;   /* window [y, y+u] for range_mode 1 */
  double ell_u;
  int inert;           /* count the inert variant instead of split */
  const char* epsilon; /* positive decimal literal; NULL means "0.1" */
  uint64_t probe;      /* sanity-screen prime bound (>= 100); 0 skips */
} ft_survey_opts;

/* Full trace survey: counts, density ratios, histogram, optional per-ell
 * window maximum. out_json receives the report; out_csv (optional) the
 * histogram `t,count` table, or the `ell,pi_ell_t` table in window mode. */
FT_API ft_status ft_survey(ft_session* s, const ft_catalog* cat,
                           const ft_survey_opts* opts, ft_buffer** out_json,
                           ft_buffer** out_csv);

typedef struct ft_bounds_opts {
  double x_lo; /* geometric grid from x_lo to x_hi, both > e */
  double x_hi;
  uint32_t steps; /* grid size; 1 emits x_lo only */
  uint32_t g;
  int t_is_zero;
  double constant; /* bound multiplier; <= 0 selects 1.0 */
  double epsilon;  /* schedule epsilon; <= 0 selects 0.1 */
} ft_bounds_opts;

/* CSV with columns x,bound,torus_bound,y,u over the grid. */
FT_API ft_status ft_bounds(ft_session* s, const ft_bounds_opts* opts,
                           ft_buffer** out_csv);

typedef struct ft_report_opts {
  const char* const* survey_jsons; /* survey report texts, ascending x */
  size_t survey_count;
  const char* bounds_csv; /* optional bounds table; NULL computes inline */
  double constant;        /* inline bound multiplier; <= 0 selects 1.0 */
} ft_report_opts;

/* Combines survey reports into an x,pi_t,bound,torus_bound comparison CSV.
 * With bounds_csv, rows are matched by exact x equality and never
 * interpolated. */
FT_API ft_status ft_report(ft_session* s, const ft_report_opts* opts,
                           ft_buffer** out_csv);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* FROBTRACE_H */
