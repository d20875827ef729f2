/* C interface to the sparse source reconstruction library.
 *
 * Every function returns an ssrc_status. On failure a message describing the
 * last error of the calling thread is available from ssrc_last_error().
 *
 * Functions that fill a caller buffer take (buf, capacity, needed): `needed`
 * always receives the full size (including the terminating NUL for strings,
 * element count otherwise) and SSRC_ERR_SIZE is returned when the capacity is
 * too small. Passing buf = NULL with capacity 0 queries the size.
 *
 * Complex vectors are passed as interleaved (re, im) doubles, 2N values for
 * N grid nodes in row-major order with x fastest. */
#ifndef SPARSESRC_H
#define SPARSESRC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SSRC_API __declspec(dllexport)
#else
#define SSRC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ssrc_status {
  SSRC_OK = 0,
  SSRC_ERR_INVALID_ARGUMENT = 1,
  SSRC_ERR_CONFIG = 2,
  SSRC_ERR_SOLVER = 3,
  SSRC_ERR_IO = 4,
  SSRC_ERR_SIZE = 5,
  SSRC_ERR_TOO_LARGE = 6,
  SSRC_ERR_INTERNAL = 7
} ssrc_status;

typedef enum ssrc_lin_mode {
  SSRC_LIN_SPARSE_DIRECT = 0,
  SSRC_LIN_ITERATIVE_NORMAL = 1,
  SSRC_LIN_DENSE = 2
} ssrc_lin_mode;

typedef struct ssrc_config ssrc_config;
typedef struct ssrc_report ssrc_report;
typedef struct ssrc_operator ssrc_operator;

typedef struct ssrc_ssn_params {
  double alpha;
  double gamma0;
  double gamma_factor;
  int outer_steps;
  int inner_cap;
  double lin_tol;
  ssrc_lin_mode lin_mode;
} ssrc_ssn_params;

SSRC_API const char* ssrc_version(void);
SSRC_API const char* ssrc_last_error(void);

/* Experiment configuration. */
SSRC_API ssrc_status ssrc_config_parse(const char* text, ssrc_config** out);
SSRC_API ssrc_status ssrc_config_load(const char* path, ssrc_config** out);
SSRC_API ssrc_status ssrc_config_set(ssrc_config* config, const char* key, const char* value);
SSRC_API ssrc_status ssrc_config_serialize(const ssrc_config* config, char* buf,
                                           size_t capacity, size_t* needed);
SSRC_API void ssrc_config_destroy(ssrc_config* config);

/* Runs an experiment and writes its artifacts. On a solver failure the report
 * is still produced and SSRC_ERR_SOLVER is returned. */
SSRC_API ssrc_status ssrc_run(const ssrc_config* config, ssrc_report** out);
SSRC_API ssrc_status ssrc_report_json(const ssrc_report* report, char* buf, size_t capacity,
                                      size_t* needed);
SSRC_API void ssrc_report_destroy(ssrc_report* report);

SSRC_API ssrc_status ssrc_examples_json(char* buf, size_t capacity, size_t* needed);

/* Helmholtz operator on an n x n grid with the default absorbing layer. */
SSRC_API ssrc_status ssrc_operator_create(int n, double k, int inhomogeneous,
                                          ssrc_operator** out);
SSRC_API ssrc_status ssrc_operator_size(const ssrc_operator* op, int64_t* nodes);
SSRC_API ssrc_status ssrc_operator_apply(const ssrc_operator* op, const double* u,
                                         double* out);
SSRC_API ssrc_status ssrc_operator_solve(const ssrc_operator* op, const double* f,
                                         double* out);
SSRC_API ssrc_status ssrc_operator_alpha_bound(const ssrc_operator* op, const double* data,
                                               double* bound);
SSRC_API ssrc_status ssrc_operator_write_triplets(const ssrc_operator* op, const char* path);
SSRC_API void ssrc_operator_destroy(ssrc_operator* op);

SSRC_API void ssrc_ssn_params_default(ssrc_ssn_params* params);

/* Sparse reconstruction from measured data (2N doubles). mu receives 2N
 * doubles; inner_iters, if not NULL, receives outer_steps counts. */
SSRC_API ssrc_status ssrc_ssn_solve(const ssrc_operator* op, const double* data,
                                    const ssrc_ssn_params* params, double* mu,
                                    int* inner_iters);

SSRC_API ssrc_status ssrc_tikhonov_solve(const ssrc_operator* op, const double* data,
                                         double alpha, double* mu);

#ifdef __cplusplus
}
#endif

#endif
