#pragma once

#include <string>
#include <vector>

#include "qdals/numkit.hpp"
#include "qdals/qlsp.hpp"

namespace qdals::ham {

enum class Scheme { Original, New };

/// Initial/final Hamiltonians of one adiabatic path.
///
/// Original: 2N-dimensional, H0 = sigma_x (x) Q_b and H1 = [[0, A Q_b], [Q_b A, 0]];
/// the solution sits in the null space.
/// New: N-dimensional, H0 = |b><b| and H1 = I - A Q_b A / ||A Q_b A||_F;
/// the solution is the non-degenerate eigenvalue-1 eigenvector.
struct HamiltonianPair {
  ComplexMatrix h0;
  ComplexMatrix h1;
  Scheme scheme;

  Eigen::Index dim() const { return h0.rows(); }
};

/// Uniform grid s_m = m / M for m = 1..M (f(s) = s).
class Schedule {
 public:
  explicit Schedule(int steps);

  int steps() const { return steps_; }
  double step_size() const { return 1.0 / steps_; }
  /// s_m for m in [1, M]; s_M is exactly 1.
  double point(int m) const;

 private:
  int steps_;
};

ComplexMatrix projector_qb(const ComplexVector& b);

HamiltonianPair original_pair(const qlsp::QlspInstance& p);
HamiltonianPair new_pair(const qlsp::QlspInstance& p);

/// (1 - s) H0 + s H1, with s in [0, 1].
ComplexMatrix interpolate(const HamiltonianPair& pair, double s);

/// I - i H: the unit-time first-order stand-in for exp(-i H).
ComplexMatrix first_order_step(const ComplexMatrix& hs);

struct LemmaReport {
  bool passed = false;
  RealVector spectrum;
  double eigenvector_distance = 0.0;  // phase-aligned, top eigenvector vs. expected
  double top_gap = 0.0;
  std::vector<std::string> failures;
};

/// Spectrum is {0 (x N-1), 1} within 1e-10 and the eigenvalue-1 eigenvector
/// is b up to phase within 1e-8.
LemmaReport lemma1_check(const ComplexMatrix& h0, const ComplexVector& b);

/// Spectrum within [-1e-10, 1 + 1e-10], top eigenvalue 1 within 1e-10 and
/// separated from the next by >= 1e-8, top eigenvector x up to phase within 1e-8.
LemmaReport lemma2_check(const ComplexMatrix& h1, const ComplexVector& x);

}  // namespace qdals::ham
