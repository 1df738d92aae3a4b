#include "qdals/hamiltonians.hpp"

#include <cmath>
#include <sstream>

namespace qdals::ham {

Schedule::Schedule(int steps) : steps_(steps) {
  if (steps < 1) throw Error(ErrorKind::OutOfRange, "schedule needs at least one step");
}

double Schedule::point(int m) const {
  if (m < 1 || m > steps_) throw Error(ErrorKind::OutOfRange, "schedule index out of range");
  return m == steps_ ? 1.0 : static_cast<double>(m) / steps_;
}

ComplexMatrix projector_qb(const ComplexVector& b) {
  if (!numkit::is_normalized(b)) {
    throw Error(ErrorKind::NotNormalized, "projector_qb: ||b|| = " + std::to_string(b.norm()));
  }
  const Eigen::Index n = b.size();
  return ComplexMatrix::Identity(n, n) - b * b.adjoint();
}

HamiltonianPair original_pair(const qlsp::QlspInstance& p) {
  qlsp::validate(p);
  const Eigen::Index n = p.dim();
  const ComplexMatrix qb = projector_qb(p.b);

  HamiltonianPair pair{ComplexMatrix::Zero(2 * n, 2 * n), ComplexMatrix::Zero(2 * n, 2 * n), Scheme::Original};
  pair.h0.topRightCorner(n, n) = qb;
  pair.h0.bottomLeftCorner(n, n) = qb;
  pair.h1.topRightCorner(n, n) = p.a * qb;
  pair.h1.bottomLeftCorner(n, n) = qb * p.a;
  return pair;
}

HamiltonianPair new_pair(const qlsp::QlspInstance& p) {
  qlsp::validate(p);
  const Eigen::Index n = p.dim();
  const ComplexMatrix qb = projector_qb(p.b);
  ComplexMatrix aqa = p.a * qb * p.a;
  // A Q_b A is Hermitian in exact arithmetic; drop the rounding skew.
  aqa = 0.5 * (aqa + aqa.adjoint()).eval();
  const double norm = numkit::frobenius_norm(aqa);
  if (norm < 1e-12) {
    throw Error(ErrorKind::DegenerateInstance, "||A Q_b A||_F = " + std::to_string(norm));
  }
  return HamiltonianPair{p.b * p.b.adjoint(), ComplexMatrix::Identity(n, n) - aqa / norm, Scheme::New};
}

ComplexMatrix interpolate(const HamiltonianPair& pair, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw Error(ErrorKind::OutOfRange, "interpolation parameter outside [0, 1]");
  if (s == 0.0) return pair.h0;
  if (s == 1.0) return pair.h1;
  return (1.0 - s) * pair.h0 + s * pair.h1;
}

ComplexMatrix first_order_step(const ComplexMatrix& hs) {
  const Eigen::Index n = hs.rows();
  return ComplexMatrix::Identity(n, n) - kI * hs;
}

namespace {

constexpr double kSpectrumTol = 1e-10;
constexpr double kVectorTol = 1e-8;
constexpr double kGapTol = 1e-8;

void fail(LemmaReport& r, const std::string& why) {
  r.passed = false;
  r.failures.push_back(why);
}

}  // namespace

LemmaReport lemma1_check(const ComplexMatrix& h0, const ComplexVector& b) {
  LemmaReport r;
  r.passed = true;
  const auto eig = numkit::herm_eig(h0);
  r.spectrum = eig.values;
  const Eigen::Index n = eig.values.size();
  if (b.size() != n) {
    fail(r, "b dimension mismatch");
    return r;
  }
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (std::abs(eig.values(k)) > kSpectrumTol) {
      std::ostringstream os;
      os << "eigenvalue " << k << " = " << eig.values(k) << ", expected 0";
      fail(r, os.str());
    }
  }
  if (std::abs(eig.values(n - 1) - 1.0) > kSpectrumTol) {
    std::ostringstream os;
    os << "largest eigenvalue " << eig.values(n - 1) << ", expected 1";
    fail(r, os.str());
  }
  r.top_gap = n > 1 ? eig.values(n - 1) - eig.values(n - 2) : 0.0;
  r.eigenvector_distance = numkit::phase_aligned_distance(eig.vectors.col(n - 1), b);
  if (r.eigenvector_distance > kVectorTol) {
    fail(r, "top eigenvector differs from b by " + std::to_string(r.eigenvector_distance));
  }
  return r;
}

LemmaReport lemma2_check(const ComplexMatrix& h1, const ComplexVector& x) {
  LemmaReport r;
  r.passed = true;
  const auto eig = numkit::herm_eig(h1);
  r.spectrum = eig.values;
  const Eigen::Index n = eig.values.size();
  if (x.size() != n) {
    fail(r, "x dimension mismatch");
    return r;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    if (eig.values(k) < -kSpectrumTol || eig.values(k) > 1.0 + kSpectrumTol) {
      std::ostringstream os;
      os << "eigenvalue " << k << " = " << eig.values(k) << " outside [0, 1]";
      fail(r, os.str());
    }
  }
  if (std::abs(eig.values(n - 1) - 1.0) > kSpectrumTol) {
    std::ostringstream os;
    os << "largest eigenvalue " << eig.values(n - 1) << ", expected 1";
    fail(r, os.str());
  }
  r.top_gap = n > 1 ? eig.values(n - 1) - eig.values(n - 2) : 0.0;
  if (n > 1 && r.top_gap < kGapTol) {
    std::ostringstream os;
    os << "top eigenvalue degenerate (gap " << r.top_gap << ")";
    fail(r, os.str());
  }
  r.eigenvector_distance = numkit::phase_aligned_distance(eig.vectors.col(n - 1), x);
  if (r.eigenvector_distance > kVectorTol) {
    fail(r, "top eigenvector differs from x by " + std::to_string(r.eigenvector_distance));
  }
  return r;
}

}  // namespace qdals::ham
