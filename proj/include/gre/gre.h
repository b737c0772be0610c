#ifndef GRE_GRE_H
#define GRE_GRE_H

#include <stddef.h>
#include <stdint.h>

#if defined(GRE_BUILDING_LIBRARY)
#define GRE_API __attribute__((visibility("default")))
#else
#define GRE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gre_status {
  GRE_OK = 0,
  GRE_INVALID_ARGUMENT = 1,
  GRE_OUT_OF_RANGE = 2,
  GRE_PARSE_ERROR = 3,
  GRE_IO_ERROR = 4,
  GRE_INTERNAL_ERROR = 5
} gre_status;

typedef enum gre_resolver { GRE_RESOLVER_ZERO = 0, GRE_RESOLVER_ONE = 1, GRE_RESOLVER_RANDOM = 2 } gre_resolver;

typedef struct gre_encoding gre_encoding; /* bitstream + state trajectory */
typedef struct gre_table gre_table;       /* experiment result table */

/* Message for the last failing call on this thread; never NULL. */
GRE_API const char* gre_last_error(void);
GRE_API const char* gre_version(void);
/* Frees strings returned through char** out-parameters. */
GRE_API void gre_string_free(char* s);

typedef struct gre_encode_params {
  const char* scheme; /* "gre", "pcm", "beta", "sd1" or "poly" */
  size_t n_bits;
  double alpha, nu1, nu2; /* gre; nu1/nu2 also beta bands */
  double beta;            /* beta */
  double tau;             /* pcm / beta exact threshold */
  unsigned L;             /* poly order */
  gre_resolver resolver;
  uint64_t seed;
  double noise_amp; /* gre uniform additive noise */
  int has_nu;       /* nonzero: nu1/nu2 set explicitly */
  int has_tau;      /* nonzero: tau set explicitly */
} gre_encode_params;

/* Defaults: gre, N = 32, alpha = nu1 = nu2 = 1, beta = 2, tau = 1, L = 3. */
GRE_API void gre_encode_params_init(gre_encode_params* p);

GRE_API gre_status gre_encode(const gre_encode_params* p, double x, gre_encoding** out);
GRE_API gre_status gre_encoding_from_json(const char* json, gre_encoding** out);
GRE_API void gre_encoding_free(gre_encoding* e);
GRE_API size_t gre_encoding_n_bits(const gre_encoding* e);
/* Returns 0/1, or -1 when n is out of range. */
GRE_API int gre_encoding_bit(const gre_encoding* e, size_t n);
/* Number of scalar states stored (0 for encodings parsed from JSON). */
GRE_API size_t gre_encoding_state_count(const gre_encoding* e);
GRE_API double gre_encoding_state(const gre_encoding* e, size_t n);
GRE_API int gre_encoding_escaped(const gre_encoding* e);
GRE_API gre_status gre_encoding_to_json(const gre_encoding* e, char** out);
GRE_API gre_status gre_encoding_trajectory_csv(const gre_encoding* e, char** out);

/* beta <= 0 selects the scheme's own base (sd1: bit mean). With
   bias_correct the golden-ratio offset is added; *heuristic reports whether it
   is only heuristic for this stream (may be NULL). */
GRE_API gre_status gre_decode(const gre_encoding* e, double beta, int bias_correct, double* value,
                              int* heuristic);

/* Integer-only base-2 requantization to B fractional bits ("i.f" binary). */
GRE_API gre_status gre_requantize(const gre_encoding* e, int B, char** base2, double* value);

/* JSON with alpha bounds, rect and nu_min/nu_max (a table when has_alpha = 0). */
GRE_API gre_status gre_region_json(double mu, int has_alpha, double alpha, char** out);

/* Grid check of T(R(mu)) + B_mu inside R(mu). *violations receives the count. */
GRE_API gre_status gre_invariance_check(double mu, double alpha, double nu1, double nu2,
                                        size_t grid, size_t* violations, char** report_json);

typedef struct gre_experiment_params {
  const char* name; /* "escape", "rmse", "variance", "bias" or "sweep" */
  size_t trials;
  uint64_t seed;
  unsigned workers; /* 0: hardware concurrency */
  double delta;     /* escape */
  size_t n_max;     /* escape, rmse */
  double alpha, nu1, nu2, noise_amp; /* rmse */
  double sigma;     /* variance */
  size_t n_bits;    /* variance, bias, sweep */
  double mu;        /* sweep */
  const char* alpha_grid; /* sweep: "a,b,c" */
  const char* nu_grid;    /* sweep: "lo:hi,lo:hi" */
} gre_experiment_params;

GRE_API void gre_experiment_params_init(gre_experiment_params* p);
GRE_API gre_status gre_experiment_run(const gre_experiment_params* p, gre_table** out);
GRE_API size_t gre_table_rows(const gre_table* t);
GRE_API gre_status gre_table_to_csv(const gre_table* t, char** out);
GRE_API gre_status gre_table_to_json(const gre_table* t, char** out);
/* Format chosen by extension: .json, otherwise CSV. */
GRE_API gre_status gre_table_write(const gre_table* t, const char* path);
GRE_API void gre_table_free(gre_table* t);

#ifdef __cplusplus
}
#endif

#endif
