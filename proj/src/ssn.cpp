#include "sparsesrc/ssn.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <Eigen/SparseCholesky>

#include "sparsesrc/error.hpp"

namespace sparsesrc {

std::string_view linear_mode_name(LinearMode mode) {
  switch (mode) {
    case LinearMode::kSparseDirect: return "sparse_direct";
    case LinearMode::kIterativeNormal: return "iterative_normal";
    case LinearMode::kDense: return "dense";
  }
  return "";
}

LinearMode parse_linear_mode(std::string_view name) {
  for (auto m : {LinearMode::kSparseDirect, LinearMode::kIterativeNormal,
                 LinearMode::kDense}) {
    if (linear_mode_name(m) == name) return m;
  }
  throw Error(ErrorCode::kConfig,
              "unknown linear mode '" + std::string(name) +
                  "' (valid: sparse_direct, iterative_normal, dense)");
}

void SsnConfig::validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument, "invalid SSN configuration: " + what);
  };
  if (!(alpha > 0.0) || !std::isfinite(alpha)) fail("alpha must be positive");
  if (!(gamma0 > 0.0) || !std::isfinite(gamma0)) fail("gamma0 must be positive");
  if (!(gamma_factor > 1.0) || !std::isfinite(gamma_factor)) {
    fail("gamma_factor must exceed 1");
  }
  if (outer_steps < 1) fail("outer_steps must be at least 1");
  if (inner_cap < 1) fail("inner_cap must be at least 1");
  if (!(lin_tol > 0.0 && lin_tol <= 1e-6)) fail("lin_tol must lie in (0, 1e-6]");
}

double SsnConfig::gamma(int step) const {
  return gamma0 * std::pow(gamma_factor, step);
}

Index ActiveSets::count_plus() const {
  Index c = 0;
  for (auto b : plus) c += b;
  return c;
}

Index ActiveSets::count_minus() const {
  Index c = 0;
  for (auto b : minus) c += b;
  return c;
}

int SsnTrace::total_inner_iters() const {
  int total = 0;
  for (const auto& s : steps) total += s.inner_iters;
  return total;
}

bool SsnTrace::all_converged() const {
  for (const auto& s : steps) {
    if (!s.converged) return false;
  }
  return true;
}

// --- models ---------------------------------------------------------------

namespace {

ComplexVector as_complex(const RealVector& v) {
  const Index n = v.size() / 2;
  ComplexVector z(n);
  z.real() = v.head(n);
  z.imag() = v.tail(n);
  return z;
}

RealVector as_real(const ComplexVector& z) {
  RealVector v(2 * z.size());
  v.head(z.size()) = z.real();
  v.tail(z.size()) = z.imag();
  return v;
}

void check_dim(const PredualModel& model, const RealVector& v, const char* what) {
  if (v.size() != model.dim()) {
    throw Error(ErrorCode::kSizeMismatch,
                std::string(what) + ": vector of length " + std::to_string(v.size()) +
                    ", expected " + std::to_string(model.dim()));
  }
}

}  // namespace

RealVector BlockHelmholtzModel::apply_d(const RealVector& v) const {
  return as_real(op_.apply(as_complex(v)));
}

RealVector BlockHelmholtzModel::apply_dt(const RealVector& v) const {
  return as_real(op_.apply_adjoint(as_complex(v)));
}

RealVector BlockHelmholtzModel::apply_vt(const RealVector& v) const {
  return as_real(op_.solve_adjoint(as_complex(v)));
}

Eigen::SparseMatrix<double> BlockHelmholtzModel::normal_sparse() const {
  return normal_matrix_block(op_);
}

Eigen::MatrixXd BlockHelmholtzModel::normal_dense() const {
  return Eigen::MatrixXd(normal_matrix_block(op_));
}

RealPartModel::RealPartModel(Eigen::MatrixXd real_part) : l1_(std::move(real_part)) {
  if (l1_.rows() != l1_.cols()) {
    throw Error(ErrorCode::kSizeMismatch, "real-part operator must be square");
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(l1_);
  if (!lu.isInvertible()) {
    throw Error(ErrorCode::kSingular, "real-part operator is not invertible");
  }
  d_ = lu.inverse();
}

Eigen::SparseMatrix<double> RealPartModel::normal_sparse() const {
  return normal_dense().sparseView();
}

// --- Newton systems -------------------------------------------------------

struct NewtonSystemSolver::Impl {
  const PredualModel& model;
  LinearMode mode;
  double tol;

  Eigen::SparseMatrix<double> normal;
  std::vector<Index> diag_pos;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>, Eigen::Lower,
                        Eigen::AMDOrdering<int>>
      ldlt;
  bool analyzed = false;

  Eigen::MatrixXd dense_normal;
  RealVector normal_diag;

  Impl(const PredualModel& m, LinearMode md, double t) : model(m), mode(md), tol(t) {
    switch (mode) {
      case LinearMode::kSparseDirect: {
        normal = model.normal_sparse();
        diag_pos.resize(normal.cols());
        for (Index c = 0; c < normal.outerSize(); ++c) {
          diag_pos[c] = -1;
          for (Index p = normal.outerIndexPtr()[c]; p < normal.outerIndexPtr()[c + 1];
               ++p) {
            if (normal.innerIndexPtr()[p] == c) diag_pos[c] = p;
          }
          if (diag_pos[c] < 0) {
            throw Error(ErrorCode::kSingular, "normal matrix has a zero diagonal entry");
          }
        }
        break;
      }
      case LinearMode::kDense:
        if (model.dim() > 2 * kDenseModeMaxUnknowns) {
          throw Error(ErrorCode::kTooLarge,
                      "dense Newton solves are limited to N <= " +
                          std::to_string(kDenseModeMaxUnknowns));
        }
        dense_normal = model.normal_dense();
        break;
      case LinearMode::kIterativeNormal:
        normal_diag = model.normal_sparse().diagonal();
        break;
    }
  }

  RealVector apply(const RealVector& v, const RealVector& shift) const {
    return model.apply_d(model.apply_dt(v)) + shift.cwiseProduct(v);
  }

  template <class Solve>
  RealVector refine(const RealVector& rhs, const RealVector& shift, Solve&& direct,
                    double* rel) const {
    const double rhs_norm = rhs.norm();
    RealVector y = direct(rhs);
    RealVector r = rhs - apply(y, shift);
    for (int step = 0; step < 5 && r.norm() > tol * rhs_norm; ++step) {
      y += direct(r);
      r = rhs - apply(y, shift);
    }
    if (!y.allFinite()) {
      throw Error(ErrorCode::kSingular, "Newton system solve produced non-finite values");
    }
    if (rel) *rel = rhs_norm > 0.0 ? r.norm() / rhs_norm : r.norm();
    return y;
  }

  RealVector solve_sparse(const RealVector& rhs, const RealVector& shift, double* rel) {
    Eigen::SparseMatrix<double> a = normal;
    double* values = a.valuePtr();
    for (Index c = 0; c < a.cols(); ++c) values[diag_pos[c]] += shift[c];
    if (!analyzed) {
      ldlt.analyzePattern(a);
      analyzed = true;
    }
    ldlt.factorize(a);
    if (ldlt.info() != Eigen::Success) {
      throw Error(ErrorCode::kSingular, "sparse LDL^T of the Newton matrix failed");
    }
    return refine(rhs, shift, [&](const RealVector& b) -> RealVector { return ldlt.solve(b); },
                  rel);
  }

  RealVector solve_dense(const RealVector& rhs, const RealVector& shift, double* rel) {
    Eigen::MatrixXd a = dense_normal;
    a.diagonal() += shift;
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() != Eigen::Success) {
      throw Error(ErrorCode::kSingular, "dense Cholesky of the Newton matrix failed");
    }
    return refine(rhs, shift, [&](const RealVector& b) -> RealVector { return llt.solve(b); },
                  rel);
  }

  RealVector solve_iterative(const RealVector& rhs, const RealVector& shift,
                             double* rel) const {
    const Index n = rhs.size();
    const double rhs_norm = rhs.norm();
    RealVector y = RealVector::Zero(n);
    if (rhs_norm == 0.0) {
      if (rel) *rel = 0.0;
      return y;
    }
    const RealVector inv_diag = (normal_diag + shift).cwiseInverse();
    RealVector r = rhs;
    RealVector z = inv_diag.cwiseProduct(r);
    RealVector p = z;
    double rz = r.dot(z);
    const long cap = std::max<long>(2000, 50 * n);
    for (long it = 0; it < cap; ++it) {
      const RealVector ap = apply(p, shift);
      const double step = rz / p.dot(ap);
      y += step * p;
      r -= step * ap;
      if (r.norm() <= tol * rhs_norm) {
        // Confirm against the true residual before accepting.
        r = rhs - apply(y, shift);
        if (r.norm() <= tol * rhs_norm) {
          if (rel) *rel = r.norm() / rhs_norm;
          return y;
        }
      }
      z = inv_diag.cwiseProduct(r);
      const double rz_next = r.dot(z);
      p = z + (rz_next / rz) * p;
      rz = rz_next;
    }
    const double final_rel = (rhs - apply(y, shift)).norm() / rhs_norm;
    std::ostringstream msg;
    msg << "conjugate gradient Newton solve hit its cap of " << cap
        << " iterations; final relative residual " << final_rel;
    throw Error(ErrorCode::kNotConverged, msg.str());
  }
};

NewtonSystemSolver::NewtonSystemSolver(const PredualModel& model, LinearMode mode,
                                       double lin_tol)
    : impl_(std::make_unique<Impl>(model, mode, lin_tol)) {}

NewtonSystemSolver::~NewtonSystemSolver() = default;

RealVector NewtonSystemSolver::solve(const RealVector& rhs, const ActiveSets& sets,
                                     double gamma, double* relative_residual) {
  check_dim(impl_->model, rhs, "Newton solve");
  RealVector shift(rhs.size());
  for (Index i = 0; i < rhs.size(); ++i) {
    shift[i] = (sets.plus[i] || sets.minus[i]) ? gamma : 0.0;
  }
  switch (impl_->mode) {
    case LinearMode::kSparseDirect: return impl_->solve_sparse(rhs, shift, relative_residual);
    case LinearMode::kDense: return impl_->solve_dense(rhs, shift, relative_residual);
    case LinearMode::kIterativeNormal:
      return impl_->solve_iterative(rhs, shift, relative_residual);
  }
  return {};
}

// --- generic routines -----------------------------------------------------

double alpha_bound(const PredualModel& model, const RealVector& data) {
  check_dim(model, data, "alpha_bound");
  return model.apply_vt(data).lpNorm<Eigen::Infinity>();
}

ActiveSets active_sets(const RealVector& y, double alpha) {
  ActiveSets s;
  s.plus.resize(y.size());
  s.minus.resize(y.size());
  for (Index i = 0; i < y.size(); ++i) {
    s.plus[i] = y[i] >= alpha;
    s.minus[i] = y[i] <= -alpha;
  }
  return s;
}

RealVector my_residual(const PredualModel& model, const RealVector& data,
                       const RealVector& y, double gamma, double alpha) {
  check_dim(model, data, "my_residual");
  check_dim(model, y, "my_residual");
  RealVector f = model.apply_d(model.apply_dt(y) + data);
  for (Index i = 0; i < y.size(); ++i) {
    f[i] += std::max(0.0, gamma * (y[i] - alpha)) + std::min(0.0, gamma * (y[i] + alpha));
  }
  return f;
}

RealVector newton_rhs(const PredualModel& model, const RealVector& data,
                      const ActiveSets& sets, double gamma, double alpha) {
  RealVector rhs = -model.apply_d(data);
  for (Index i = 0; i < rhs.size(); ++i) {
    rhs[i] += gamma * alpha * (static_cast<double>(sets.plus[i]) - sets.minus[i]);
  }
  return rhs;
}

RealVector recover_primal(const RealVector& y, double gamma, double alpha) {
  RealVector zeta(y.size());
  for (Index i = 0; i < y.size(); ++i) {
    zeta[i] = -std::max(0.0, gamma * (y[i] - alpha)) - std::min(0.0, gamma * (y[i] + alpha));
  }
  return zeta;
}

InnerResult ssn_inner(const PredualModel& model, NewtonSystemSolver& solver,
                      const RealVector& data, double gamma, double alpha,
                      const RealVector& y0, int inner_cap) {
  check_dim(model, y0, "ssn_inner");
  if (inner_cap < 1) {
    throw Error(ErrorCode::kInvalidArgument, "inner iteration cap must be at least 1");
  }
  InnerResult out;
  ActiveSets sets = active_sets(y0, alpha);
  for (int it = 1; it <= inner_cap; ++it) {
    double rel = 0.0;
    out.y = solver.solve(newton_rhs(model, data, sets, gamma, alpha), sets, gamma, &rel);
    out.iters = it;
    out.linear_residual = std::max(out.linear_residual, rel);
    ActiveSets next = active_sets(out.y, alpha);
    if (next == sets) {
      out.converged = true;
      return out;
    }
    sets = std::move(next);
  }
  return out;
}

SsnRun ssn_continuation(const PredualModel& model, const RealVector& data,
                        const SsnConfig& config) {
  config.validate();
  check_dim(model, data, "ssn_continuation");
  NewtonSystemSolver solver(model, config.lin_mode, config.lin_tol);
  SsnRun run;
  run.y = RealVector::Zero(model.dim());
  double gamma = config.gamma0;
  for (int step = 0; step < config.outer_steps; ++step) {
    gamma = config.gamma(step);
    InnerResult inner =
        ssn_inner(model, solver, data, gamma, config.alpha, run.y, config.inner_cap);
    run.y = std::move(inner.y);
    const ActiveSets sets = active_sets(run.y, config.alpha);
    SsnStep s;
    s.gamma = gamma;
    s.inner_iters = inner.iters;
    s.converged = inner.converged;
    s.residual_inf =
        my_residual(model, data, run.y, gamma, config.alpha).lpNorm<Eigen::Infinity>();
    s.active_plus = sets.count_plus();
    s.active_minus = sets.count_minus();
    s.linear_residual = inner.linear_residual;
    run.trace.steps.push_back(s);
  }
  run.zeta = recover_primal(run.y, gamma, config.alpha);
  run.final_residual_inf = run.trace.steps.back().residual_inf;
  run.residual_limit =
      10.0 * config.lin_tol * model.apply_d(data).lpNorm<Eigen::Infinity>();
  run.residual_ok = run.final_residual_inf <= run.residual_limit;
  return run;
}

// --- Helmholtz entry points ----------------------------------------------

namespace {

void check_block(const HelmholtzOperator& op, const RealBlockVec& v, const char* what) {
  if (!(op.grid() == v.grid())) {
    throw Error(ErrorCode::kSizeMismatch,
                std::string(what) + ": block vector grid does not match the operator");
  }
}

}  // namespace

double alpha_bound(const HelmholtzOperator& op, const RealBlockVec& data) {
  check_block(op, data, "alpha_bound");
  return alpha_bound(BlockHelmholtzModel(op), data.data());
}

ActiveSets active_sets(const RealBlockVec& y, double alpha) {
  return active_sets(y.data(), alpha);
}

RealBlockVec my_residual(const HelmholtzOperator& op, const RealBlockVec& data,
                         const RealBlockVec& y, double gamma, double alpha) {
  check_block(op, data, "my_residual");
  check_block(op, y, "my_residual");
  return RealBlockVec(op.grid(), my_residual(BlockHelmholtzModel(op), data.data(),
                                             y.data(), gamma, alpha));
}

RealBlockVec newton_solve(const HelmholtzOperator& op, const RealBlockVec& data,
                          const ActiveSets& sets, double gamma, double alpha,
                          LinearMode mode, double lin_tol) {
  check_block(op, data, "newton_solve");
  if (!(gamma > 0.0)) throw Error(ErrorCode::kInvalidArgument, "gamma must be positive");
  BlockHelmholtzModel model(op);
  NewtonSystemSolver solver(model, mode, lin_tol);
  return RealBlockVec(op.grid(),
                      solver.solve(newton_rhs(model, data.data(), sets, gamma, alpha),
                                   sets, gamma));
}

RealBlockVec recover_primal(const RealBlockVec& y, double gamma, double alpha) {
  return RealBlockVec(y.grid(), recover_primal(y.data(), gamma, alpha));
}

BlockInnerResult ssn_inner(const HelmholtzOperator& op, const RealBlockVec& data,
                           double gamma, double alpha, const RealBlockVec& y0,
                           int inner_cap, LinearMode mode, double lin_tol) {
  check_block(op, data, "ssn_inner");
  check_block(op, y0, "ssn_inner");
  BlockHelmholtzModel model(op);
  NewtonSystemSolver solver(model, mode, lin_tol);
  InnerResult r = ssn_inner(model, solver, data.data(), gamma, alpha, y0.data(), inner_cap);
  return {RealBlockVec(op.grid(), std::move(r.y)), r.iters, r.converged};
}

SsnResult ssn_continuation(const HelmholtzOperator& op, const RealBlockVec& data,
                           const SsnConfig& config) {
  check_block(op, data, "ssn_continuation");
  SsnRun run = ssn_continuation(BlockHelmholtzModel(op), data.data(), config);
  RealBlockVec zeta(op.grid(), std::move(run.zeta));
  ComplexVector mu = from_block(zeta);
  return SsnResult{RealBlockVec(op.grid(), std::move(run.y)),
                   std::move(zeta),
                   std::move(mu),
                   std::move(run.trace),
                   run.final_residual_inf,
                   run.residual_limit,
                   run.residual_ok};
}

}  // namespace sparsesrc
