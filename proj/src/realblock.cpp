#include "sparsesrc/realblock.hpp"

#include <limits>
#include <string>

#include <Eigen/SVD>

#include "sparsesrc/error.hpp"

namespace sparsesrc {

RealBlockVec::RealBlockVec(GridSpec grid)
    : grid_(grid), data_(RealVector::Zero(2 * grid.size())) {}

RealBlockVec::RealBlockVec(GridSpec grid, RealVector data)
    : grid_(grid), data_(std::move(data)) {
  if (data_.size() != 2 * grid_.size()) {
    throw Error(ErrorCode::kSizeMismatch,
                "block vector of length " + std::to_string(data_.size()) +
                    " for a grid of " + std::to_string(grid_.size()) + " nodes");
  }
}

RealBlockVec to_block(const GridSpec& grid, const ComplexVector& z) {
  if (z.size() != grid.size()) {
    throw Error(ErrorCode::kSizeMismatch,
                "complex field of length " + std::to_string(z.size()) +
                    " for a grid of " + std::to_string(grid.size()) + " nodes");
  }
  RealBlockVec v(grid);
  v.re() = z.real();
  v.im() = z.imag();
  return v;
}

ComplexVector from_block(const RealBlockVec& v) {
  ComplexVector z(v.half());
  z.real() = v.re();
  z.imag() = v.im();
  return z;
}

namespace {

void check_grid(const HelmholtzOperator& op, const RealBlockVec& v) {
  if (!(op.grid() == v.grid())) {
    throw Error(ErrorCode::kSizeMismatch,
                "block vector grid does not match the operator grid");
  }
}

}  // namespace

RealBlockVec apply_D_block(const HelmholtzOperator& op, const RealBlockVec& v) {
  check_grid(op, v);
  return to_block(op.grid(), op.apply(from_block(v)));
}

RealBlockVec apply_Dstar_block(const HelmholtzOperator& op, const RealBlockVec& v) {
  check_grid(op, v);
  return to_block(op.grid(), op.apply_adjoint(from_block(v)));
}

RealBlockVec apply_DDstar(const HelmholtzOperator& op, const RealBlockVec& v) {
  check_grid(op, v);
  return to_block(op.grid(), op.apply(op.apply_adjoint(from_block(v))));
}

RealBlockVec apply_Vstar(const HelmholtzOperator& op, const RealBlockVec& v) {
  check_grid(op, v);
  return to_block(op.grid(), op.solve_adjoint(from_block(v)));
}

Eigen::SparseMatrix<double> normal_matrix_block(const HelmholtzOperator& op) {
  const ComplexSparse m = (op.matrix() * op.matrix().adjoint()).pruned();
  const Index n = m.rows();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(4 * m.nonZeros());
  for (Index c = 0; c < m.outerSize(); ++c) {
    for (ComplexSparse::InnerIterator it(m, c); it; ++it) {
      const Index r = it.row();
      const double re = it.value().real();
      const double im = it.value().imag();
      triplets.emplace_back(r, c, re);
      triplets.emplace_back(r + n, c + n, re);
      if (im != 0.0) {
        triplets.emplace_back(r, c + n, -im);
        triplets.emplace_back(r + n, c, im);
      }
    }
  }
  Eigen::SparseMatrix<double> block(2 * n, 2 * n);
  block.setFromTriplets(triplets.begin(), triplets.end());
  block.makeCompressed();
  return block;
}

RealPartOperator real_part_operator(const HelmholtzOperator& op,
                                    bool allow_inhomogeneous) {
  const Index n = op.grid().size();
  if (n > kDenseModeMaxUnknowns) {
    throw Error(ErrorCode::kTooLarge,
                "real-part operator needs N backsolves and a dense N x N matrix; "
                "refusing N = " + std::to_string(n) + " > " +
                    std::to_string(kDenseModeMaxUnknowns));
  }
  if (!op.homogeneous() && !allow_inhomogeneous) {
    throw Error(ErrorCode::kInvalidArgument,
                "real-part mode is only supported for a homogeneous medium");
  }
  RealPartOperator out;
  out.matrix.resize(n, n);
  ComplexVector e = ComplexVector::Zero(n);
  for (Index j = 0; j < n; ++j) {
    e[j] = 1.0;
    out.matrix.col(j) = op.solve(e).real();
    e[j] = 0.0;
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(out.matrix);
  const auto& s = svd.singularValues();
  out.smallest_singular_value = s[s.size() - 1];
  out.invertible = out.smallest_singular_value >
                   s[0] * n * std::numeric_limits<double>::epsilon();
  out.condition = out.smallest_singular_value > 0.0
                      ? s[0] / out.smallest_singular_value
                      : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace sparsesrc
