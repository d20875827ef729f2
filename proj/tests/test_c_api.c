/* Exercises the C interface from C. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "sparsesrc/sparsesrc.h"

static int failures = 0;

#define EXPECT(cond)                                                   \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "%s:%d: expectation failed: %s (last error: %s)\n", \
              __FILE__, __LINE__, #cond, ssrc_last_error());           \
      ++failures;                                                      \
    }                                                                  \
  } while (0)

static void test_config(void) {
  ssrc_config* cfg = NULL;
  EXPECT(ssrc_config_parse("example = peaks4\nseed = 3\n", &cfg) == SSRC_OK);
  EXPECT(ssrc_config_set(cfg, "alpha", "2e-5") == SSRC_OK);
  EXPECT(ssrc_config_set(cfg, "alpha", "-1") == SSRC_ERR_CONFIG);
  EXPECT(strstr(ssrc_last_error(), "alpha") != NULL);
  EXPECT(ssrc_config_set(cfg, "nope", "1") == SSRC_ERR_CONFIG);

  size_t needed = 0;
  EXPECT(ssrc_config_serialize(cfg, NULL, 0, &needed) == SSRC_ERR_SIZE);
  EXPECT(needed > 10);
  char small[4];
  EXPECT(ssrc_config_serialize(cfg, small, sizeof small, &needed) == SSRC_ERR_SIZE);
  char* text = malloc(needed);
  EXPECT(ssrc_config_serialize(cfg, text, needed, &needed) == SSRC_OK);
  EXPECT(strstr(text, "alpha = 2.0000000000000002e-05") != NULL ||
         strstr(text, "alpha = 2.0000000000000001e-05") != NULL);
  EXPECT(strstr(text, "seed = 3") != NULL);
  free(text);
  ssrc_config_destroy(cfg);

  cfg = NULL;
  EXPECT(ssrc_config_parse("example = peaks5\n", &cfg) == SSRC_ERR_CONFIG);
  EXPECT(cfg == NULL);
  EXPECT(strstr(ssrc_last_error(), "line 1") != NULL);
  EXPECT(ssrc_config_load("/nonexistent/x.cfg", &cfg) == SSRC_ERR_CONFIG);
  EXPECT(ssrc_config_parse(NULL, &cfg) == SSRC_ERR_INVALID_ARGUMENT);
}

static void test_run(void) {
  ssrc_config* cfg = NULL;
  EXPECT(ssrc_config_parse("example = peaks4\nmethod = ssn\n", &cfg) == SSRC_OK);
  EXPECT(ssrc_config_set(cfg, "output_dir", "c_api_run") == SSRC_OK);
  ssrc_report* report = NULL;
  EXPECT(ssrc_run(cfg, &report) == SSRC_OK);
  size_t needed = 0;
  ssrc_report_json(report, NULL, 0, &needed);
  char* json = malloc(needed);
  EXPECT(ssrc_report_json(report, json, needed, &needed) == SSRC_OK);
  EXPECT(strstr(json, "\"schema\": \"sparsesrc-report/1\"") != NULL);
  free(json);
  ssrc_report_destroy(report);

  EXPECT(ssrc_config_set(cfg, "inner_cap", "1") == SSRC_OK);
  report = NULL;
  EXPECT(ssrc_run(cfg, &report) == SSRC_ERR_SOLVER);
  EXPECT(report != NULL);
  ssrc_report_destroy(report);
  ssrc_config_destroy(cfg);

  needed = 0;
  EXPECT(ssrc_examples_json(NULL, 0, &needed) == SSRC_ERR_SIZE);
  char* ex = malloc(needed);
  EXPECT(ssrc_examples_json(ex, needed, &needed) == SSRC_OK);
  EXPECT(strstr(ex, "peaks7_inhomo") != NULL);
  free(ex);
}

static void test_operator(void) {
  ssrc_operator* op = NULL;
  EXPECT(ssrc_operator_create(4, 6.0, 0, &op) == SSRC_ERR_INVALID_ARGUMENT);
  EXPECT(ssrc_operator_create(16, 6.0, 0, &op) == SSRC_OK);
  int64_t nodes = 0;
  EXPECT(ssrc_operator_size(op, &nodes) == SSRC_OK);
  EXPECT(nodes == 256);

  double* f = calloc(2 * nodes, sizeof(double));
  double* u = calloc(2 * nodes, sizeof(double));
  double* back = calloc(2 * nodes, sizeof(double));
  for (int64_t i = 0; i < nodes; ++i) {
    f[2 * i] = sin(0.1 * (double)i);
    f[2 * i + 1] = cos(0.3 * (double)i);
  }
  EXPECT(ssrc_operator_solve(op, f, u) == SSRC_OK);
  EXPECT(ssrc_operator_apply(op, u, back) == SSRC_OK);
  double err = 0.0, norm = 0.0;
  for (int64_t i = 0; i < 2 * nodes; ++i) {
    err += (back[i] - f[i]) * (back[i] - f[i]);
    norm += f[i] * f[i];
  }
  EXPECT(sqrt(err / norm) <= 1e-10);

  /* sparse source: two opposite spikes */
  double* spikes = calloc(2 * nodes, sizeof(double));
  double* data = calloc(2 * nodes, sizeof(double));
  spikes[2 * (4 * 16 + 4)] = 1000.0;
  spikes[2 * (11 * 16 + 11)] = -1000.0;
  EXPECT(ssrc_operator_solve(op, spikes, data) == SSRC_OK);
  double bound = 0.0;
  EXPECT(ssrc_operator_alpha_bound(op, data, &bound) == SSRC_OK);
  EXPECT(bound > 0.0);

  ssrc_ssn_params params;
  ssrc_ssn_params_default(&params);
  EXPECT(params.alpha == 1e-5);
  EXPECT(params.outer_steps == 6);
  double* mu = calloc(2 * nodes, sizeof(double));
  int iters[6] = {0};
  params.alpha = 0.01 * bound;
  EXPECT(ssrc_ssn_solve(op, data, &params, mu, iters) == SSRC_OK);
  EXPECT(mu[2 * (4 * 16 + 4)] > 0.0);
  EXPECT(mu[2 * (11 * 16 + 11)] < 0.0);
  for (int i = 0; i < 6; ++i) EXPECT(iters[i] >= 1 && iters[i] <= 30);
  params.gamma_factor = 0.5;
  EXPECT(ssrc_ssn_solve(op, u, &params, mu, NULL) == SSRC_ERR_INVALID_ARGUMENT);

  EXPECT(ssrc_tikhonov_solve(op, u, 0.0, mu) == SSRC_OK);
  for (int64_t i = 0; i < 2 * nodes; ++i) EXPECT(fabs(mu[i] - f[i]) <= 1e-10 * sqrt(norm));
  EXPECT(ssrc_tikhonov_solve(op, u, -1.0, mu) == SSRC_ERR_INVALID_ARGUMENT);

  EXPECT(ssrc_operator_write_triplets(op, "c_api_triplets.txt") == SSRC_OK);
  EXPECT(ssrc_operator_write_triplets(op, "/nonexistent/dir/t.txt") == SSRC_ERR_IO);

  free(f);
  free(u);
  free(back);
  free(mu);
  free(spikes);
  free(data);
  ssrc_operator_destroy(op);
}

int main(void) {
  EXPECT(strlen(ssrc_version()) > 0);
  test_config();
  test_run();
  test_operator();
  if (failures) {
    fprintf(stderr, "%d expectation(s) failed\n", failures);
    return 1;
  }
  printf("C API: all expectations passed\n");
  return 0;
}
