#include "sparsesrc/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sparsesrc/error.hpp"

namespace sparsesrc {

GridSpec::GridSpec(int n) : n_(n), h_(1.0 / (n + 1)) {
  if (n < kMinNodes) {
    throw Error(ErrorCode::kResolutionTooCoarse,
                "grid needs at least " + std::to_string(kMinNodes) +
                    " nodes per side, got " + std::to_string(n));
  }
}

std::pair<double, double> GridSpec::node_coords(Index idx) const {
  if (idx < 0 || idx >= size()) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "node index " + std::to_string(idx) + " outside [0, " +
                    std::to_string(size()) + ")");
  }
  const auto i = static_cast<int>(idx % n_);
  const auto j = static_cast<int>(idx / n_);
  return {coord(i), coord(j)};
}

Index GridSpec::index(int i, int j) const {
  if (i < 0 || i >= n_ || j < 0 || j >= n_) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "node (" + std::to_string(i) + ", " + std::to_string(j) +
                    ") outside " + std::to_string(n_) + "x" +
                    std::to_string(n_) + " grid");
  }
  return static_cast<Index>(j) * n_ + i;
}

Index GridSpec::nearest_index(double x, double y) const {
  auto snap = [this](double t) {
    const long r = std::lround(t / h_) - 1;
    return static_cast<int>(std::clamp<long>(r, 0, n_ - 1));
  };
  return index(snap(x), snap(y));
}

GridSpec grid_for_wavenumber(double k) {
  if (!std::isfinite(k) || k <= 2.0) {
    throw Error(ErrorCode::kResolutionTooCoarse,
                "wavenumber must exceed 2 to give at least 8 nodes per side, got " +
                    std::to_string(k));
  }
  return GridSpec(static_cast<int>(std::lround(4.0 * k)));
}

}  // namespace sparsesrc
