#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qdals/numkit.hpp"

namespace qdals::qlsp {

/// Hermitian A (N x N, N = 2^n, n >= 1) with a unit-norm right-hand side.
struct QlspInstance {
  ComplexMatrix a;
  ComplexVector b;
  std::string label;
  std::optional<std::uint64_t> seed;

  Eigen::Index dim() const { return a.rows(); }
};

struct Solution {
  ComplexVector x;  // normalized A^{-1} b
  double residual;  // ||A x_raw - b|| / ||b|| before normalization
};

/// Builds an instance, normalizing `b`. Throws on any invariant violation
/// (dimension not a power of two, non-Hermitian A, zero b, singular A).
QlspInstance make_instance(ComplexMatrix a, ComplexVector b, std::string label = {},
                           std::optional<std::uint64_t> seed = std::nullopt);

/// Re-checks every QlspInstance invariant; throws InvariantViolation or the
/// more specific kind on failure.
void validate(const QlspInstance& p);

bool is_power_of_two(Eigen::Index n);
int log2_exact(Eigen::Index n);

Solution exact_solution(const QlspInstance& p);

/// |<xt|x>|; symmetric and invariant under a global phase on either argument.
double fidelity(const ComplexVector& xt, const ComplexVector& x);

/// A = (B + B^dagger)/2 with Re, Im of B uniform on [-1, 1]; b complex
/// standard normal, normalized. Near-singular draws are rejected.
QlspInstance random_instance(Eigen::Index dim, std::uint64_t seed);

/// ceil(zero_fraction * dim^2) zeros at random positions; remaining entries
/// cycle through pure real, pure imaginary and general complex values with
/// magnitudes in (0, 2].
ComplexMatrix random_sparse_matrix(Eigen::Index dim, double zero_fraction, std::uint64_t seed);

/// Dense complex matrix with Re, Im uniform on [-1, 1]; not Hermitian.
ComplexMatrix random_complex_matrix(Eigen::Index dim, std::uint64_t seed);

}  // namespace qdals::qlsp
