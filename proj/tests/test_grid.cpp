#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "sparsesrc/error.hpp"
#include "sparsesrc/grid.hpp"

using namespace sparsesrc;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST_CASE("grid_for_wavenumber matches the table matrix sizes") {
  CHECK(grid_for_wavenumber(6).size() == 576);
  CHECK(grid_for_wavenumber(12).size() == 2304);
  CHECK(grid_for_wavenumber(24).size() == 9216);
  CHECK(grid_for_wavenumber(6).n() == 24);
}

TEST_CASE("grid_for_wavenumber rejects coarse or invalid wavenumbers") {
  CHECK(code_of([] { grid_for_wavenumber(2.0); }) == ErrorCode::kResolutionTooCoarse);
  CHECK(code_of([] { grid_for_wavenumber(1.0); }) == ErrorCode::kResolutionTooCoarse);
  CHECK(code_of([] { grid_for_wavenumber(-3.0); }) == ErrorCode::kResolutionTooCoarse);
  CHECK_THROWS_AS(grid_for_wavenumber(std::nan("")), Error);
  CHECK(grid_for_wavenumber(2.01).n() == 8);
}

TEST_CASE("grid_for_wavenumber is monotone in k") {
  int prev = 0;
  for (double k = 2.01; k < 40.0; k += 0.137) {
    const int n = grid_for_wavenumber(k).n();
    CHECK(n >= prev);
    prev = n;
  }
}

TEST_CASE("GridSpec enforces n >= 8 and h = 1/(n+1)") {
  CHECK(code_of([] { GridSpec g(7); }) == ErrorCode::kResolutionTooCoarse);
  CHECK(code_of([] { GridSpec g(0); }) == ErrorCode::kResolutionTooCoarse);
  const GridSpec g(8);
  CHECK(g.h() == 1.0 / 9.0);
  CHECK(g.size() == 64);
}

TEST_CASE("node_coords first, last and centre nodes") {
  // Same formulas as the 3x3 examples, on grids that satisfy n >= 8.
  const GridSpec g9(9);  // h = 0.1
  auto [x0, y0] = g9.node_coords(0);
  CHECK(x0 == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(y0 == doctest::Approx(0.1).epsilon(1e-15));
  auto [x8, y8] = g9.node_coords(80);
  CHECK(x8 == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(y8 == doctest::Approx(0.9).epsilon(1e-15));
  auto [xc, yc] = g9.node_coords(40);
  CHECK(xc == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(yc == doctest::Approx(0.5).epsilon(1e-15));

  // x varies fastest
  auto [x1, y1] = g9.node_coords(1);
  CHECK(x1 == doctest::Approx(0.2));
  CHECK(y1 == doctest::Approx(0.1));
  auto [x9, y9] = g9.node_coords(9);
  CHECK(x9 == doctest::Approx(0.1));
  CHECK(y9 == doctest::Approx(0.2));
}

TEST_CASE("node_coords rejects out-of-range indices") {
  const GridSpec g(8);
  CHECK(code_of([&] { g.node_coords(-1); }) == ErrorCode::kIndexOutOfRange);
  CHECK(code_of([&] { g.node_coords(64); }) == ErrorCode::kIndexOutOfRange);
  CHECK(code_of([&] { g.index(8, 0); }) == ErrorCode::kIndexOutOfRange);
}

TEST_CASE("coordinates cover the tensor grid and round trip") {
  for (int n : {8, 11, 24}) {
    const GridSpec g(n);
    std::set<std::pair<int, int>> seen;
    for (Index idx = 0; idx < g.size(); ++idx) {
      const auto [x, y] = g.node_coords(idx);
      CHECK(x > 0.0);
      CHECK(x < 1.0);
      CHECK(y > 0.0);
      CHECK(y < 1.0);
      CHECK(g.nearest_index(x, y) == idx);
      const int i = static_cast<int>(std::lround(x / g.h()));
      const int j = static_cast<int>(std::lround(y / g.h()));
      CHECK(std::abs(x - i * g.h()) < 1e-14);
      CHECK(std::abs(y - j * g.h()) < 1e-14);
      seen.insert({i, j});
    }
    CHECK(seen.size() == static_cast<std::size_t>(g.size()));
    CHECK(seen.begin()->first == 1);
    CHECK(seen.rbegin()->first == n);
  }
}
