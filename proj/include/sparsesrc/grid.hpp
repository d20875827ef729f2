#pragma once

#include <cstdint>
#include <utility>

namespace sparsesrc {

using Index = std::int64_t;

/// Uniform grid of interior nodes of the unit square. Boundary nodes carry a
/// zero Dirichlet value and are eliminated, so the unknowns are the n*n
/// interior nodes at (h*(i+1), h*(j+1)), i, j in [0, n), h = 1/(n+1).
///
/// Linear ordering is row-major with x fastest: idx = j*n + i.
class GridSpec {
 public:
  static constexpr int kMinNodes = 8;

  explicit GridSpec(int n);

  int n() const noexcept { return n_; }
  double h() const noexcept { return h_; }
  Index size() const noexcept { return static_cast<Index>(n_) * n_; }

  /// Coordinate of node i along either axis, i in [0, n).
  double coord(int i) const noexcept { return h_ * (i + 1); }

  std::pair<double, double> node_coords(Index idx) const;
  Index index(int i, int j) const;
  /// Inverse of node_coords: nearest node to (x, y), clamped to the grid.
  Index nearest_index(double x, double y) const;

  friend bool operator==(const GridSpec& a, const GridSpec& b) noexcept {
    return a.n_ == b.n_;
  }

 private:
  int n_;
  double h_;
};

/// Resolution used throughout: n = round(4k) nodes per side (four nodes per
/// unit of wavenumber), e.g. k=6 -> 24x24, k=24 -> 96x96.
GridSpec grid_for_wavenumber(double k);

}  // namespace sparsesrc
