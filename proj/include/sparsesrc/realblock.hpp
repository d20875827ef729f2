#pragma once

#include <Eigen/Dense>

#include "sparsesrc/helmholtz.hpp"

namespace sparsesrc {

/// Stacked (real, imaginary) vector of length 2N. Complex linear maps act on
/// it through their real block form [[Re, -Im], [Im, Re]].
class RealBlockVec {
 public:
  explicit RealBlockVec(GridSpec grid);
  RealBlockVec(GridSpec grid, RealVector data);

  const GridSpec& grid() const noexcept { return grid_; }
  Index half() const noexcept { return grid_.size(); }

  const RealVector& data() const noexcept { return data_; }
  RealVector& data() noexcept { return data_; }

  auto re() const { return data_.head(half()); }
  auto im() const { return data_.tail(half()); }
  auto re() { return data_.head(half()); }
  auto im() { return data_.tail(half()); }

 private:
  GridSpec grid_;
  RealVector data_;
};

RealBlockVec to_block(const GridSpec& grid, const ComplexVector& z);
ComplexVector from_block(const RealBlockVec& v);

/// Block actions of D, D^T (= D^H), D D^T and V^T = D^{-H}. None of them
/// forms a 2N x 2N matrix; each goes through complex arithmetic.
RealBlockVec apply_D_block(const HelmholtzOperator& op, const RealBlockVec& v);
RealBlockVec apply_Dstar_block(const HelmholtzOperator& op, const RealBlockVec& v);
RealBlockVec apply_DDstar(const HelmholtzOperator& op, const RealBlockVec& v);
RealBlockVec apply_Vstar(const HelmholtzOperator& op, const RealBlockVec& v);

/// Real 2N x 2N sparse matrix of D D^H in block form. Used by the sparse
/// direct Newton solver; symmetric positive definite when D is invertible.
Eigen::SparseMatrix<double> normal_matrix_block(const HelmholtzOperator& op);

inline constexpr Index kDenseModeMaxUnknowns = 4096;

struct RealPartOperator {
  Eigen::MatrixXd matrix;  // L1 = Re(D^{-1})
  double condition = 0.0;
  double smallest_singular_value = 0.0;
  bool invertible = false;
};

/// Forms L1 = Re(D^{-1}) column by column from N backsolves. Only for grids
/// with N <= 4096. Inhomogeneous media are refused unless explicitly allowed,
/// since invertibility of L1 is only known for n = 1.
RealPartOperator real_part_operator(const HelmholtzOperator& op,
                                    bool allow_inhomogeneous = false);

}  // namespace sparsesrc
