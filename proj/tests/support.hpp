#pragma once

// Test-side generators, deliberately independent of the library's own
// random_* functions so they can serve as oracles.

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "qdals/numkit.hpp"

namespace qdals::testing {

inline ComplexMatrix gaussian_matrix(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix m(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

inline ComplexMatrix gaussian_hermitian(Eigen::Index n, std::mt19937_64& rng) {
  const ComplexMatrix m = gaussian_matrix(n, rng);
  return (m + m.adjoint()) / 2.0;
}

inline ComplexVector gaussian_unit_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(g(rng), g(rng));
  return v / v.norm();
}

/// Hermitian matrix with prescribed eigenvalues and a random unitary basis.
inline ComplexMatrix with_spectrum(const RealVector& values, std::mt19937_64& rng) {
  const Eigen::Index n = values.size();
  const Eigen::HouseholderQR<ComplexMatrix> qr(gaussian_matrix(n, rng));
  const ComplexMatrix q = qr.householderQ();
  return q * values.cast<Complex>().asDiagonal() * q.adjoint();
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace qdals::testing
