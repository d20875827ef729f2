#pragma once

#include <complex>
#include <iosfwd>
#include <memory>
#include <vector>

#include <Eigen/SparseCore>

#include "sparsesrc/grid.hpp"
#include "sparsesrc/medium.hpp"

namespace sparsesrc {

using Complex = std::complex<double>;
using ComplexSparse = Eigen::SparseMatrix<Complex, Eigen::ColMajor>;

/// Peak absorption used when none is given: sigma0 = kDefaultPmlStrength / w.
inline constexpr double kDefaultPmlStrength = 40.0;
inline constexpr int kDefaultPmlOrder = 2;
inline constexpr double kMaxPmlWidth = 0.2;

/// Complex coordinate stretch alpha(t) = 1 + i*sigma(t) on both axes.
/// sigma(t) = sigma0 ((w - t)/w)^m on [0, w], mirrored on [1 - w, 1] and zero
/// in between, with w = min(2*pi/k, 0.2).
struct PmlProfile {
  double sigma0 = 0.0;
  double width = 0.0;
  int order = kDefaultPmlOrder;
  std::vector<Complex> at_nodes;       // t = h (i + 1),   i in [0, n)
  std::vector<Complex> at_half_nodes;  // t = h (i + 1/2), i in [0, n]

  double sigma(double t) const;
  Complex alpha(double t) const { return {1.0, sigma(t)}; }
};

double pml_width(double k);
double default_pml_sigma0(double k);

PmlProfile pml_profile(const GridSpec& grid, double k, double sigma0,
                       int order = kDefaultPmlOrder);

/// Five-point discretisation D of -J^{-1} div(B grad u) - k^2 n u with
/// B = diag(alpha_y/alpha_x, alpha_x/alpha_y) at half nodes, J = alpha_x
/// alpha_y at nodes, and zero Dirichlet data on the boundary of the square.
///
/// The sparse LU factorisation is computed on first use and shared by copies;
/// once factorised the operator is immutable and safe for concurrent solves.
class HelmholtzOperator {
 public:
  static HelmholtzOperator assemble(const GridSpec& grid,
                                    const PmlProfile& profile,
                                    const RealField& n_field, double k);

  const GridSpec& grid() const noexcept { return grid_; }
  double wavenumber() const noexcept { return k_; }
  const PmlProfile& profile() const noexcept { return profile_; }
  const ComplexSparse& matrix() const noexcept { return matrix_; }
  /// True when the refraction index is identically one.
  bool homogeneous() const noexcept { return homogeneous_; }

  ComplexVector apply(const ComplexVector& u) const;          // D u
  ComplexVector apply_adjoint(const ComplexVector& u) const;  // D^H u
  ComplexVector solve(const ComplexVector& f) const;          // D^{-1} f
  ComplexVector solve_adjoint(const ComplexVector& f) const;  // D^{-H} f

  /// Forces the factorisation; throws Error(kSingular) on failure.
  void factorize() const;

 private:
  struct Factorization;

  HelmholtzOperator(GridSpec grid, double k, PmlProfile profile,
                    ComplexSparse matrix, bool homogeneous);

  const Factorization& factorization() const;
  void check_size(Index size, const char* what) const;

  GridSpec grid_;
  double k_;
  PmlProfile profile_;
  ComplexSparse matrix_;
  bool homogeneous_;
  std::shared_ptr<Factorization> fact_;
};

/// Assembles with the default absorbing layer for the given wavenumber.
HelmholtzOperator assemble_default(const GridSpec& grid, const RealField& n_field,
                                   double k);

ComplexVector forward_solve(const HelmholtzOperator& op, const RealField& mu);
ComplexVector forward_solve(const HelmholtzOperator& op, const ComplexVector& mu);
ComplexVector apply(const HelmholtzOperator& op, const ComplexVector& u);

/// Coordinate-triplet dump: a '#' header line, then "row col re im" per
/// stored entry with zero-based indices.
void write_triplets(const HelmholtzOperator& op, std::ostream& out);
ComplexSparse read_triplets(std::istream& in);

}  // namespace sparsesrc
