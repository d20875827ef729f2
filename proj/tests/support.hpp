#pragma once

#include <random>

#include "sparsesrc/helmholtz.hpp"
#include "sparsesrc/realblock.hpp"

namespace testsupport {

using namespace sparsesrc;

inline ComplexVector random_complex(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  ComplexVector v(n);
  for (Index i = 0; i < n; ++i) v[i] = {dist(rng), dist(rng)};
  return v;
}

inline RealVector random_real(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  RealVector v(n);
  for (Index i = 0; i < n; ++i) v[i] = dist(rng);
  return v;
}

inline RealBlockVec random_block(const GridSpec& g, std::uint64_t seed) {
  return RealBlockVec(g, random_real(2 * g.size(), seed));
}

/// Profile with sigma = 0 everywhere (no absorbing layer).
inline PmlProfile no_pml(const GridSpec& g) {
  PmlProfile p;
  p.width = 0.0;
  p.at_nodes.assign(g.n(), Complex(1.0, 0.0));
  p.at_half_nodes.assign(g.n() + 1, Complex(1.0, 0.0));
  return p;
}

inline HelmholtzOperator homogeneous_op(int n, double k) {
  const GridSpec g(n);
  return assemble_default(g, refraction_index(g, MediumMode::kHomogeneous), k);
}

inline HelmholtzOperator unabsorbed_op(int n, double k) {
  const GridSpec g(n);
  return HelmholtzOperator::assemble(g, no_pml(g), refraction_index(g, MediumMode::kHomogeneous),
                                     k);
}

inline double rel(const RealVector& a, const RealVector& b) {
  return (a - b).norm() / std::max(b.norm(), 1e-300);
}

inline double rel(const ComplexVector& a, const ComplexVector& b) {
  return (a - b).norm() / std::max(b.norm(), 1e-300);
}

}  // namespace testsupport
