#include "sparsesrc/sparsesrc.h"

#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "sparsesrc/error.hpp"
#include "sparsesrc/experiment.hpp"
#include "sparsesrc/realblock.hpp"
#include "sparsesrc/ssn.hpp"
#include "sparsesrc/tikhonov.hpp"

struct ssrc_config {
  sparsesrc::ExperimentConfig value;
};

struct ssrc_report {
  std::string json;
};

struct ssrc_operator {
  sparsesrc::HelmholtzOperator op;
};

namespace {

thread_local std::string last_error;

ssrc_status status_for(sparsesrc::ErrorCode code) {
  using sparsesrc::ErrorCode;
  switch (code) {
    case ErrorCode::kConfig: return SSRC_ERR_CONFIG;
    case ErrorCode::kIo: return SSRC_ERR_IO;
    case ErrorCode::kSingular:
    case ErrorCode::kNotConverged: return SSRC_ERR_SOLVER;
    case ErrorCode::kTooLarge: return SSRC_ERR_TOO_LARGE;
    default: return SSRC_ERR_INVALID_ARGUMENT;
  }
}

ssrc_status fail(ssrc_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <class Fn>
ssrc_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    return fn();
  } catch (const sparsesrc::Error& e) {
    return fail(status_for(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SSRC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SSRC_ERR_INTERNAL, e.what());
  }
}

ssrc_status copy_string(const std::string& s, char* buf, size_t capacity, size_t* needed) {
  if (!needed) return fail(SSRC_ERR_INVALID_ARGUMENT, "needed must not be NULL");
  *needed = s.size() + 1;
  if (!buf || capacity < s.size() + 1) {
    return fail(SSRC_ERR_SIZE, "buffer too small: need " + std::to_string(s.size() + 1) +
                                   " bytes");
  }
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return SSRC_OK;
}

sparsesrc::ComplexVector read_complex(const double* data, sparsesrc::Index n) {
  sparsesrc::ComplexVector v(n);
  for (sparsesrc::Index i = 0; i < n; ++i) v[i] = {data[2 * i], data[2 * i + 1]};
  return v;
}

void write_complex(const sparsesrc::ComplexVector& v, double* out) {
  for (sparsesrc::Index i = 0; i < v.size(); ++i) {
    out[2 * i] = v[i].real();
    out[2 * i + 1] = v[i].imag();
  }
}

sparsesrc::SsnConfig to_config(const ssrc_ssn_params& p) {
  sparsesrc::SsnConfig c;
  c.alpha = p.alpha;
  c.gamma0 = p.gamma0;
  c.gamma_factor = p.gamma_factor;
  c.outer_steps = p.outer_steps;
  c.inner_cap = p.inner_cap;
  c.lin_tol = p.lin_tol;
  switch (p.lin_mode) {
    case SSRC_LIN_SPARSE_DIRECT: c.lin_mode = sparsesrc::LinearMode::kSparseDirect; break;
    case SSRC_LIN_ITERATIVE_NORMAL: c.lin_mode = sparsesrc::LinearMode::kIterativeNormal; break;
    case SSRC_LIN_DENSE: c.lin_mode = sparsesrc::LinearMode::kDense; break;
    default:
      throw sparsesrc::Error(sparsesrc::ErrorCode::kInvalidArgument, "unknown lin_mode");
  }
  c.validate();
  return c;
}

#define SSRC_REQUIRE(cond)                                                   \
  do {                                                                       \
    if (!(cond)) return fail(SSRC_ERR_INVALID_ARGUMENT, "null argument: " #cond); \
  } while (0)

}  // namespace

extern "C" {

const char* ssrc_version(void) { return "0.1.0"; }

const char* ssrc_last_error(void) { return last_error.c_str(); }

ssrc_status ssrc_config_parse(const char* text, ssrc_config** out) {
  SSRC_REQUIRE(text && out);
  return guarded([&] {
    *out = new ssrc_config{sparsesrc::parse_config(text)};
    return SSRC_OK;
  });
}

ssrc_status ssrc_config_load(const char* path, ssrc_config** out) {
  SSRC_REQUIRE(path && out);
  return guarded([&] {
    *out = new ssrc_config{sparsesrc::load_config(path)};
    return SSRC_OK;
  });
}

ssrc_status ssrc_config_set(ssrc_config* config, const char* key, const char* value) {
  SSRC_REQUIRE(config && key && value);
  return guarded([&] {
    sparsesrc::ExperimentConfig updated = config->value;
    sparsesrc::set_config_value(updated, key, value);
    sparsesrc::validate_config(updated);
    config->value = std::move(updated);
    return SSRC_OK;
  });
}

ssrc_status ssrc_config_serialize(const ssrc_config* config, char* buf, size_t capacity,
                                  size_t* needed) {
  SSRC_REQUIRE(config);
  return guarded([&] {
    return copy_string(sparsesrc::serialize_config(config->value), buf, capacity, needed);
  });
}

void ssrc_config_destroy(ssrc_config* config) { delete config; }

ssrc_status ssrc_run(const ssrc_config* config, ssrc_report** out) {
  SSRC_REQUIRE(config && out);
  *out = nullptr;
  return guarded([&] {
    sparsesrc::RunOutcome outcome = sparsesrc::run_experiment(config->value);
    *out = new ssrc_report{outcome.report_json};
    if (!outcome.ok) return fail(SSRC_ERR_SOLVER, outcome.error);
    return SSRC_OK;
  });
}

ssrc_status ssrc_report_json(const ssrc_report* report, char* buf, size_t capacity,
                             size_t* needed) {
  SSRC_REQUIRE(report);
  return copy_string(report->json, buf, capacity, needed);
}

void ssrc_report_destroy(ssrc_report* report) { delete report; }

ssrc_status ssrc_examples_json(char* buf, size_t capacity, size_t* needed) {
  return guarded([&] { return copy_string(sparsesrc::examples_json(), buf, capacity, needed); });
}

ssrc_status ssrc_operator_create(int n, double k, int inhomogeneous, ssrc_operator** out) {
  SSRC_REQUIRE(out);
  return guarded([&] {
    const sparsesrc::GridSpec grid(n);
    if (!(k > 0.0)) {
      throw sparsesrc::Error(sparsesrc::ErrorCode::kInvalidArgument, "k must be positive");
    }
    const auto medium = inhomogeneous ? sparsesrc::MediumMode::kInhomogeneous
                                      : sparsesrc::MediumMode::kHomogeneous;
    *out = new ssrc_operator{
        sparsesrc::assemble_default(grid, sparsesrc::refraction_index(grid, medium), k)};
    return SSRC_OK;
  });
}

ssrc_status ssrc_operator_size(const ssrc_operator* op, int64_t* nodes) {
  SSRC_REQUIRE(op && nodes);
  *nodes = op->op.grid().size();
  return SSRC_OK;
}

ssrc_status ssrc_operator_apply(const ssrc_operator* op, const double* u, double* out) {
  SSRC_REQUIRE(op && u && out);
  return guarded([&] {
    write_complex(op->op.apply(read_complex(u, op->op.grid().size())), out);
    return SSRC_OK;
  });
}

ssrc_status ssrc_operator_solve(const ssrc_operator* op, const double* f, double* out) {
  SSRC_REQUIRE(op && f && out);
  return guarded([&] {
    write_complex(op->op.solve(read_complex(f, op->op.grid().size())), out);
    return SSRC_OK;
  });
}

ssrc_status ssrc_operator_alpha_bound(const ssrc_operator* op, const double* data,
                                      double* bound) {
  SSRC_REQUIRE(op && data && bound);
  return guarded([&] {
    const auto& grid = op->op.grid();
    *bound = sparsesrc::alpha_bound(op->op,
                                    sparsesrc::to_block(grid, read_complex(data, grid.size())));
    return SSRC_OK;
  });
}

ssrc_status ssrc_operator_write_triplets(const ssrc_operator* op, const char* path) {
  SSRC_REQUIRE(op && path);
  return guarded([&] {
    std::ofstream out(path, std::ios::binary);
    if (!out) return fail(SSRC_ERR_IO, std::string("cannot write '") + path + "'");
    sparsesrc::write_triplets(op->op, out);
    if (!out) return fail(SSRC_ERR_IO, std::string("failed writing '") + path + "'");
    return SSRC_OK;
  });
}

void ssrc_operator_destroy(ssrc_operator* op) { delete op; }

void ssrc_ssn_params_default(ssrc_ssn_params* params) {
  if (!params) return;
  const sparsesrc::SsnConfig c;
  params->alpha = c.alpha;
  params->gamma0 = c.gamma0;
  params->gamma_factor = c.gamma_factor;
  params->outer_steps = c.outer_steps;
  params->inner_cap = c.inner_cap;
  params->lin_tol = c.lin_tol;
  params->lin_mode = SSRC_LIN_SPARSE_DIRECT;
}

ssrc_status ssrc_ssn_solve(const ssrc_operator* op, const double* data,
                           const ssrc_ssn_params* params, double* mu, int* inner_iters) {
  SSRC_REQUIRE(op && data && params && mu);
  return guarded([&] {
    const auto& grid = op->op.grid();
    const sparsesrc::SsnConfig cfg = to_config(*params);
    const sparsesrc::SsnResult r = sparsesrc::ssn_continuation(
        op->op, sparsesrc::to_block(grid, read_complex(data, grid.size())), cfg);
    write_complex(r.mu, mu);
    if (inner_iters) {
      for (std::size_t i = 0; i < r.trace.steps.size(); ++i) {
        inner_iters[i] = r.trace.steps[i].inner_iters;
      }
    }
    if (!r.residual_ok) return fail(SSRC_ERR_SOLVER, "final residual exceeds its limit");
    return SSRC_OK;
  });
}

ssrc_status ssrc_tikhonov_solve(const ssrc_operator* op, const double* data, double alpha,
                                double* mu) {
  SSRC_REQUIRE(op && data && mu);
  return guarded([&] {
    const auto r =
        sparsesrc::tikhonov_solve(op->op, read_complex(data, op->op.grid().size()), alpha);
    write_complex(r.mu, mu);
    return SSRC_OK;
  });
}

}  // extern "C"
