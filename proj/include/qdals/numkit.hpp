#pragma once

// Dense complex linear algebra used throughout the solver stack.
//
// Storage is Eigen's column-major dynamic complex matrix/vector. The
// algorithms the rest of the library depends on for correctness
// (Hermitian eigendecomposition, the Hermitian exponential and the direct
// solver) are implemented here rather than delegated, so their error
// semantics and determinism are fixed by this file.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qdals/error.hpp"

namespace qdals {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

namespace numkit {

/// Relative tolerance for the Hermitian check: max|A - A^dagger| <= tol * max|A|.
inline constexpr double kHermitianTolerance = 1e-12;
/// Absolute tolerance on | ||v|| - 1 | for normalized vectors.
inline constexpr double kNormalizedTolerance = 1e-12;
/// Largest dimension accepted by the dense eigensolver.
inline constexpr Eigen::Index kMaxEigDim = 64;

/// Eigenvalues ascending with matching orthonormal eigenvector columns.
struct EigenPairs {
  RealVector values;
  ComplexMatrix vectors;
};

double max_abs_element(const ComplexMatrix& m);
double frobenius_norm(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double rel_tol = kHermitianTolerance);
bool is_normalized(const ComplexVector& v, double tol = kNormalizedTolerance);

/// Throws NotHermitian (with the observed deviation) unless `m` is square and Hermitian.
void require_hermitian(const ComplexMatrix& m, const char* what = "matrix");

/// Cyclic complex Jacobi. Deterministic; values ascending, ties kept in
/// input (diagonal) order.
EigenPairs herm_eig(const ComplexMatrix& h);

/// exp(-i * tau * H) = V diag(exp(-i tau lambda)) V^dagger.
ComplexMatrix herm_exp_i(const ComplexMatrix& h, double tau);
ComplexMatrix herm_exp_i(const EigenPairs& eig, double tau);

/// exp(-i * tau * H) * v using a precomputed decomposition, without
/// materializing the exponential.
ComplexVector apply_exp_i(const EigenPairs& eig, double tau, const ComplexVector& v);

/// Gaussian elimination with partial pivoting. Throws Singular when a pivot
/// falls below 1e-12 * max|A|.
ComplexVector linear_solve(const ComplexMatrix& a, const ComplexVector& b);

/// Sum_k lambda_k v_k v_k^dagger.
ComplexMatrix reconstruct(const EigenPairs& eig);

/// min over unit phases of || u - e^{i phi} v ||, computed elementwise so it
/// stays accurate near zero.
double phase_aligned_distance(const ComplexVector& u, const ComplexVector& v);

ComplexVector normalized(const ComplexVector& v);

}  // namespace numkit
}  // namespace qdals
