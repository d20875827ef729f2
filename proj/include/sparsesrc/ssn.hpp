#pragma once

#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "sparsesrc/realblock.hpp"

namespace sparsesrc {

/// How the Newton system (D D^T + gamma chi_A) y = rhs is solved.
enum class LinearMode {
  kSparseDirect,     // sparse LDL^T of the assembled normal matrix
  kIterativeNormal,  // Jacobi-preconditioned CG with operator mat-vecs only
  kDense,            // dense Cholesky, N <= 4096
};

std::string_view linear_mode_name(LinearMode mode);
LinearMode parse_linear_mode(std::string_view name);

struct SsnConfig {
  double alpha = 1e-5;
  double gamma0 = 1e5;
  double gamma_factor = 10.0;
  int outer_steps = 6;
  int inner_cap = 30;
  double lin_tol = 1e-10;
  LinearMode lin_mode = LinearMode::kSparseDirect;

  /// Throws Error(kInvalidArgument) when a field is outside its range.
  void validate() const;
  double gamma(int step) const;

  friend bool operator==(const SsnConfig&, const SsnConfig&) = default;
};

struct ActiveSets {
  std::vector<std::uint8_t> plus;
  std::vector<std::uint8_t> minus;

  Index count_plus() const;
  Index count_minus() const;

  friend bool operator==(const ActiveSets&, const ActiveSets&) = default;
};

struct SsnStep {
  double gamma = 0.0;
  int inner_iters = 0;
  bool converged = false;
  double residual_inf = 0.0;
  Index active_plus = 0;
  Index active_minus = 0;
  /// Worst relative residual of the Newton linear solves in this step.
  double linear_residual = 0.0;
};

struct SsnTrace {
  std::vector<SsnStep> steps;

  int total_inner_iters() const;
  bool all_converged() const;
};

/// The data-fit map in real form: y lives in R^dim, D acts on it, and
/// V = D^{-1}. Two realisations exist: the complex Helmholtz operator in
/// block form (dim = 2N) and the dense real-part operator (dim = N).
class PredualModel {
 public:
  virtual ~PredualModel() = default;

  virtual Index dim() const = 0;
  virtual RealVector apply_d(const RealVector& v) const = 0;
  virtual RealVector apply_dt(const RealVector& v) const = 0;
  virtual RealVector apply_vt(const RealVector& v) const = 0;
  virtual Eigen::SparseMatrix<double> normal_sparse() const = 0;
  virtual Eigen::MatrixXd normal_dense() const = 0;
};

class BlockHelmholtzModel final : public PredualModel {
 public:
  explicit BlockHelmholtzModel(const HelmholtzOperator& op) : op_(op) {}

  Index dim() const override { return 2 * op_.grid().size(); }
  RealVector apply_d(const RealVector& v) const override;
  RealVector apply_dt(const RealVector& v) const override;
  RealVector apply_vt(const RealVector& v) const override;
  Eigen::SparseMatrix<double> normal_sparse() const override;
  Eigen::MatrixXd normal_dense() const override;

 private:
  const HelmholtzOperator& op_;
};

/// Data-fit map V_R = Re(D^{-1}) acting on real sources; its inverse is formed
/// densely.
class RealPartModel final : public PredualModel {
 public:
  explicit RealPartModel(Eigen::MatrixXd real_part);

  Index dim() const override { return l1_.rows(); }
  RealVector apply_d(const RealVector& v) const override { return d_ * v; }
  RealVector apply_dt(const RealVector& v) const override {
    return d_.transpose() * v;
  }
  RealVector apply_vt(const RealVector& v) const override {
    return l1_.transpose() * v;
  }
  Eigen::SparseMatrix<double> normal_sparse() const override;
  Eigen::MatrixXd normal_dense() const override { return d_ * d_.transpose(); }

  const Eigen::MatrixXd& real_part() const { return l1_; }

 private:
  Eigen::MatrixXd l1_;
  Eigen::MatrixXd d_;
};

/// Solver for the Newton systems of one continuation run. Sparse mode reuses
/// the symbolic analysis of the normal matrix across iterations.
class NewtonSystemSolver {
 public:
  NewtonSystemSolver(const PredualModel& model, LinearMode mode, double lin_tol);
  ~NewtonSystemSolver();
  NewtonSystemSolver(const NewtonSystemSolver&) = delete;
  NewtonSystemSolver& operator=(const NewtonSystemSolver&) = delete;

  /// Solves (D D^T + gamma chi) y = rhs; stores the achieved relative residual.
  RealVector solve(const RealVector& rhs, const ActiveSets& sets, double gamma,
                   double* relative_residual = nullptr);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Generic routines on a PredualModel.

double alpha_bound(const PredualModel& model, const RealVector& data);
ActiveSets active_sets(const RealVector& y, double alpha);
RealVector my_residual(const PredualModel& model, const RealVector& data,
                       const RealVector& y, double gamma, double alpha);
RealVector newton_rhs(const PredualModel& model, const RealVector& data,
                      const ActiveSets& sets, double gamma, double alpha);
RealVector recover_primal(const RealVector& y, double gamma, double alpha);

struct InnerResult {
  RealVector y;
  int iters = 0;
  bool converged = false;
  double linear_residual = 0.0;
};

InnerResult ssn_inner(const PredualModel& model, NewtonSystemSolver& solver,
                      const RealVector& data, double gamma, double alpha,
                      const RealVector& y0, int inner_cap);

struct SsnRun {
  RealVector y;
  RealVector zeta;
  SsnTrace trace;
  double final_residual_inf = 0.0;
  double residual_limit = 0.0;
  bool residual_ok = false;
};

SsnRun ssn_continuation(const PredualModel& model, const RealVector& data,
                        const SsnConfig& config);

// Helmholtz-operator entry points on block vectors.

double alpha_bound(const HelmholtzOperator& op, const RealBlockVec& data);
ActiveSets active_sets(const RealBlockVec& y, double alpha);
RealBlockVec my_residual(const HelmholtzOperator& op, const RealBlockVec& data,
                         const RealBlockVec& y, double gamma, double alpha);
RealBlockVec newton_solve(const HelmholtzOperator& op, const RealBlockVec& data,
                          const ActiveSets& sets, double gamma, double alpha,
                          LinearMode mode = LinearMode::kSparseDirect,
                          double lin_tol = 1e-10);
RealBlockVec recover_primal(const RealBlockVec& y, double gamma, double alpha);

struct BlockInnerResult {
  RealBlockVec y;
  int iters = 0;
  bool converged = false;
};

BlockInnerResult ssn_inner(const HelmholtzOperator& op, const RealBlockVec& data,
                           double gamma, double alpha, const RealBlockVec& y0,
                           int inner_cap, LinearMode mode = LinearMode::kSparseDirect,
                           double lin_tol = 1e-10);

struct SsnResult {
  RealBlockVec y;
  RealBlockVec zeta;
  ComplexVector mu;  // zeta_1 + i zeta_2
  SsnTrace trace;
  double final_residual_inf = 0.0;
  double residual_limit = 0.0;
  bool residual_ok = false;
};

SsnResult ssn_continuation(const HelmholtzOperator& op, const RealBlockVec& data,
                           const SsnConfig& config);

}  // namespace sparsesrc
