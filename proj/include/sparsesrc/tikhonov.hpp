#pragma once

#include "sparsesrc/helmholtz.hpp"

namespace sparsesrc {

struct TikhonovResult {
  ComplexVector mu;
  int iterations = 0;
  /// |(alpha D D^H + I) mu - D u|_2 / |D u|_2
  double relative_residual = 0.0;
};

/// L2-regularised reconstruction mu = (alpha D D^H + I)^{-1} D u, solved by
/// conjugate gradients on the Hermitian positive definite system.
TikhonovResult tikhonov_solve(const HelmholtzOperator& op, const ComplexVector& u,
                              double alpha, double tol = 1e-10,
                              int max_iterations = 50000);

}  // namespace sparsesrc
