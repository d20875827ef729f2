#include "sparsesrc/tikhonov.hpp"

#include <sstream>

#include "sparsesrc/error.hpp"

namespace sparsesrc {

TikhonovResult tikhonov_solve(const HelmholtzOperator& op, const ComplexVector& u,
                              double alpha, double tol, int max_iterations) {
  if (!(alpha >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "Tikhonov weight must be non-negative");
  }
  const ComplexVector rhs = op.apply(u);
  TikhonovResult out;
  if (alpha == 0.0) {
    out.mu = rhs;
    return out;
  }
  const double rhs_norm = rhs.norm();
  out.mu = ComplexVector::Zero(rhs.size());
  if (rhs_norm == 0.0) return out;

  auto normal = [&](const ComplexVector& v) -> ComplexVector {
    return alpha * op.apply(op.apply_adjoint(v)) + v;
  };
  ComplexVector r = rhs;
  ComplexVector p = r;
  double rr = r.squaredNorm();
  for (int it = 1; it <= max_iterations; ++it) {
    const ComplexVector ap = normal(p);
    const double step = rr / p.dot(ap).real();
    out.mu += step * p;
    r -= step * ap;
    const double rr_next = r.squaredNorm();
    out.iterations = it;
    if (std::sqrt(rr_next) <= tol * rhs_norm) {
      out.relative_residual = (rhs - normal(out.mu)).norm() / rhs_norm;
      if (out.relative_residual <= tol) return out;
      r = rhs - normal(out.mu);
      p = r;
      rr = r.squaredNorm();
      continue;
    }
    p = r + (rr_next / rr) * p;
    rr = rr_next;
  }
  out.relative_residual = (rhs - normal(out.mu)).norm() / rhs_norm;
  std::ostringstream msg;
  msg << "Tikhonov conjugate gradients hit the cap of " << max_iterations
      << " iterations; relative residual " << out.relative_residual;
  throw Error(ErrorCode::kNotConverged, msg.str());
}

}  // namespace sparsesrc
