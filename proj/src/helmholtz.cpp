#include "sparsesrc/helmholtz.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include <Eigen/SparseLU>

#include "sparsesrc/error.hpp"

namespace sparsesrc {

double PmlProfile::sigma(double t) const {
  if (t <= width) return sigma0 * std::pow((width - t) / width, order);
  if (t >= 1.0 - width) return sigma0 * std::pow((t - (1.0 - width)) / width, order);
  return 0.0;
}

double pml_width(double k) {
  if (!(k > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "wavenumber must be positive");
  }
  return std::min(2.0 * std::numbers::pi / k, kMaxPmlWidth);
}

double default_pml_sigma0(double k) { return kDefaultPmlStrength / pml_width(k); }

PmlProfile pml_profile(const GridSpec& grid, double k, double sigma0, int order) {
  if (!(sigma0 > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "PML absorption must be positive");
  }
  if (order != 2 && order != 3) {
    throw Error(ErrorCode::kInvalidArgument, "PML order must be 2 or 3");
  }
  PmlProfile p;
  p.sigma0 = sigma0;
  p.width = pml_width(k);
  p.order = order;
  const int n = grid.n();
  const double h = grid.h();
  p.at_nodes.reserve(n);
  for (int i = 0; i < n; ++i) p.at_nodes.push_back(p.alpha(h * (i + 1)));
  p.at_half_nodes.reserve(n + 1);
  for (int i = 0; i <= n; ++i) p.at_half_nodes.push_back(p.alpha(h * (i + 0.5)));
  return p;
}

struct HelmholtzOperator::Factorization {
  std::once_flag once;
  Eigen::SparseLU<ComplexSparse, Eigen::COLAMDOrdering<int>> lu;
  bool ok = false;
  std::string message;
};

HelmholtzOperator::HelmholtzOperator(GridSpec grid, double k, PmlProfile profile,
                                     ComplexSparse matrix, bool homogeneous)
    : grid_(grid),
      k_(k),
      profile_(std::move(profile)),
      matrix_(std::move(matrix)),
      homogeneous_(homogeneous),
      fact_(std::make_shared<Factorization>()) {}

HelmholtzOperator HelmholtzOperator::assemble(const GridSpec& grid,
                                              const PmlProfile& profile,
                                              const RealField& n_field, double k) {
  if (!(n_field.grid == grid)) {
    throw Error(ErrorCode::kSizeMismatch, "refraction index lives on another grid");
  }
  if (static_cast<int>(profile.at_nodes.size()) != grid.n() ||
      static_cast<int>(profile.at_half_nodes.size()) != grid.n() + 1) {
    throw Error(ErrorCode::kSizeMismatch, "PML profile sampled on another grid");
  }
  if (!(n_field.values.array() > 0.0).all()) {
    throw Error(ErrorCode::kInvalidArgument, "refraction index must be positive");
  }
  const int n = grid.n();
  const double inv_h2 = 1.0 / (grid.h() * grid.h());
  const double k2 = k * k;
  const auto& an = profile.at_nodes;
  const auto& ah = profile.at_half_nodes;

  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(static_cast<std::size_t>(5) * grid.size());
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Index row = grid.index(i, j);
      const Complex jac = an[i] * an[j];
      // x-flux coefficients at (i -/+ 1/2, j), y-flux at (i, j -/+ 1/2).
      const Complex bw = an[j] / ah[i];
      const Complex be = an[j] / ah[i + 1];
      const Complex bs = an[i] / ah[j];
      const Complex bn = an[i] / ah[j + 1];
      const Complex scale = inv_h2 / jac;
      const Complex diag = (bw + be + bs + bn) * scale - k2 * n_field.values[row];
      const Complex coeffs[4] = {-bw * scale, -be * scale, -bs * scale, -bn * scale};
      const int ni[4] = {i - 1, i + 1, i, i};
      const int nj[4] = {j, j, j - 1, j + 1};
      if (!std::isfinite(diag.real()) || !std::isfinite(diag.imag())) {
        const auto [x, y] = grid.node_coords(row);
        std::ostringstream msg;
        msg << "non-finite operator coefficient at node (" << x << ", " << y << ")";
        throw Error(ErrorCode::kAssembly, msg.str());
      }
      triplets.emplace_back(row, row, diag);
      for (int s = 0; s < 4; ++s) {
        if (ni[s] < 0 || ni[s] >= n || nj[s] < 0 || nj[s] >= n) continue;
        if (!std::isfinite(coeffs[s].real()) || !std::isfinite(coeffs[s].imag())) {
          const auto [x, y] = grid.node_coords(row);
          std::ostringstream msg;
          msg << "non-finite operator coefficient at node (" << x << ", " << y << ")";
          throw Error(ErrorCode::kAssembly, msg.str());
        }
        triplets.emplace_back(row, grid.index(ni[s], nj[s]), coeffs[s]);
      }
    }
  }
  ComplexSparse m(grid.size(), grid.size());
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  const bool homogeneous = (n_field.values.array() == 1.0).all();
  return HelmholtzOperator(grid, k, profile, std::move(m), homogeneous);
}

HelmholtzOperator assemble_default(const GridSpec& grid, const RealField& n_field,
                                   double k) {
  return HelmholtzOperator::assemble(
      grid, pml_profile(grid, k, default_pml_sigma0(k), kDefaultPmlOrder), n_field, k);
}

void HelmholtzOperator::check_size(Index size, const char* what) const {
  if (size != grid_.size()) {
    throw Error(ErrorCode::kSizeMismatch,
                std::string(what) + ": vector of length " + std::to_string(size) +
                    " does not match grid of " + std::to_string(grid_.size()) +
                    " nodes");
  }
}

const HelmholtzOperator::Factorization& HelmholtzOperator::factorization() const {
  Factorization& f = *fact_;
  std::call_once(f.once, [&] {
    f.lu.analyzePattern(matrix_);
    f.lu.factorize(matrix_);
    f.ok = f.lu.info() == Eigen::Success;
    if (!f.ok) f.message = f.lu.lastErrorMessage();
  });
  if (!f.ok) {
    throw Error(ErrorCode::kSingular,
                "sparse LU factorisation failed (" + f.message +
                    "); the discrete operator is singular for this grid and "
                    "wavenumber, try a different grid size or wavenumber");
  }
  return f;
}

void HelmholtzOperator::factorize() const { factorization(); }

ComplexVector HelmholtzOperator::apply(const ComplexVector& u) const {
  check_size(u.size(), "apply");
  return matrix_ * u;
}

ComplexVector HelmholtzOperator::apply_adjoint(const ComplexVector& u) const {
  check_size(u.size(), "apply_adjoint");
  return matrix_.adjoint() * u;
}

namespace {

void check_solution(const ComplexVector& x) {
  if (!x.allFinite()) {
    throw Error(ErrorCode::kSingular,
                "backsolve produced non-finite values; the operator is numerically "
                "singular, try a different grid size or wavenumber");
  }
}

}  // namespace

ComplexVector HelmholtzOperator::solve(const ComplexVector& f) const {
  check_size(f.size(), "solve");
  ComplexVector x = factorization().lu.solve(f);
  check_solution(x);
  return x;
}

ComplexVector HelmholtzOperator::solve_adjoint(const ComplexVector& f) const {
  check_size(f.size(), "solve_adjoint");
  // D^H x = f  <=>  D^T conj(x) = conj(f). Eigen's transpose view is non-const
  // but only reads the factors.
  auto& lu = const_cast<Factorization&>(factorization()).lu;
  ComplexVector x = lu.transpose().solve(f.conjugate()).conjugate();
  check_solution(x);
  return x;
}

ComplexVector forward_solve(const HelmholtzOperator& op, const RealField& mu) {
  if (!(mu.grid == op.grid())) {
    throw Error(ErrorCode::kSizeMismatch, "source lives on another grid");
  }
  return op.solve(mu.values.cast<Complex>());
}

ComplexVector forward_solve(const HelmholtzOperator& op, const ComplexVector& mu) {
  return op.solve(mu);
}

ComplexVector apply(const HelmholtzOperator& op, const ComplexVector& u) {
  return op.apply(u);
}

void write_triplets(const HelmholtzOperator& op, std::ostream& out) {
  const auto& m = op.matrix();
  out << "# n=" << op.grid().n() << " N=" << op.grid().size()
      << " order=row-major columns=row,col,re,im\n";
  char line[128];
  for (Index c = 0; c < m.outerSize(); ++c) {
    for (ComplexSparse::InnerIterator it(m, c); it; ++it) {
      std::snprintf(line, sizeof line, "%lld %lld %.17g %.17g\n",
                    static_cast<long long>(it.row()), static_cast<long long>(it.col()),
                    it.value().real(), it.value().imag());
      out << line;
    }
  }
}

ComplexSparse read_triplets(std::istream& in) {
  std::vector<Eigen::Triplet<Complex>> triplets;
  Index dim = 0;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find(" N=");
      if (pos != std::string::npos) dim = std::stoll(line.substr(pos + 3));
      continue;
    }
    std::istringstream fields(line);
    long long r = 0, c = 0;
    double re = 0.0, im = 0.0;
    if (!(fields >> r >> c >> re >> im)) {
      throw Error(ErrorCode::kIo, "malformed triplet on line " + std::to_string(line_no));
    }
    triplets.emplace_back(r, c, Complex(re, im));
    dim = std::max<Index>(dim, std::max<Index>(r, c) + 1);
  }
  ComplexSparse m(dim, dim);
  m.setFromTriplets(triplets.begin(), triplets.end());
  m.makeCompressed();
  return m;
}

}  // namespace sparsesrc
