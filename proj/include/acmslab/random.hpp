#pragma once

#include "acmslab/linalg.hpp"

#include <cstdint>
#include <random>

namespace acmslab {

/// Seeded generator passed explicitly to everything that samples.
using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Vector uniform_vector(Rng& rng, int n, double lo, double hi) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = uniform(rng, lo, hi);
  return v;
}

inline Vector gaussian_vector(Rng& rng, int n) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = dist(rng);
  return v;
}

/// Uniform on the g-unit sphere: a gaussian in a g-orthonormal frame.
inline Vector random_unit(Rng& rng, const Metric& g) {
  const Vector w = gaussian_vector(rng, g.dim());
  const Vector v = g.cholesky().transpose().triangularView<Eigen::Upper>().solve(w);
  return v / g.norm(v);
}

}  // namespace acmslab
