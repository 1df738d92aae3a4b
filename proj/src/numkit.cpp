#include "qdals/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qdals {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::ZeroMatrix: return "ZeroMatrix";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::DegenerateInstance: return "DegenerateInstance";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::SpectrumViolation: return "SpectrumViolation";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::ZeroProjection: return "ZeroProjection";
    case ErrorKind::GenerationFailed: return "GenerationFailed";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

namespace numkit {

double max_abs_element(const ComplexMatrix& m) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) best = std::max(best, std::abs(m(i, j)));
  return best;
}

double frobenius_norm(const ComplexMatrix& m) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) sum += std::norm(m(i, j));
  return std::sqrt(sum);
}

namespace {

double hermitian_deviation(const ComplexMatrix& m) {
  double dev = 0.0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i <= j; ++i)
      dev = std::max(dev, std::abs(m(i, j) - std::conj(m(j, i))));
  return dev;
}

}  // namespace

bool is_hermitian(const ComplexMatrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  return hermitian_deviation(m) <= rel_tol * max_abs_element(m);
}

bool is_normalized(const ComplexVector& v, double tol) { return std::abs(v.norm() - 1.0) <= tol; }

void require_hermitian(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << " is " << m.rows() << "x" << m.cols() << ", not square";
    throw Error(ErrorKind::NotHermitian, os.str());
  }
  const double dev = hermitian_deviation(m);
  const double scale = max_abs_element(m);
  if (dev > kHermitianTolerance * scale) {
    std::ostringstream os;
    os << what << " deviates from its adjoint by " << dev << " (max|entry| = " << scale << ")";
    throw Error(ErrorKind::NotHermitian, os.str());
  }
}

EigenPairs herm_eig(const ComplexMatrix& h) {
  require_hermitian(h);
  const Eigen::Index n = h.rows();
  if (n > kMaxEigDim) {
    throw Error(ErrorKind::TooLarge, "herm_eig supports dimension <= 64, got " + std::to_string(n));
  }

  // Work on the exactly Hermitian part so tiny input asymmetry cannot stall
  // the sweep.
  ComplexMatrix a = 0.5 * (h + h.adjoint());
  ComplexMatrix v = ComplexMatrix::Identity(n, n);

  const double scale = frobenius_norm(a);
  constexpr int kMaxSweeps = 64;
  const double stop = 1e-15 * scale;

  for (int sweep = 0; sweep < kMaxSweeps && scale > 0.0; ++sweep) {
    double off = 0.0;
    for (Eigen::Index q = 1; q < n; ++q)
      for (Eigen::Index p = 0; p < q; ++p) off += std::norm(a(p, q));
    if (std::sqrt(2.0 * off) <= stop) break;

    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex g = a(p, q);
        const double mag = std::abs(g);
        if (mag == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Negligible against both diagonal entries: zero it outright.
        if (sweep > 3 && std::abs(app) + 1e3 * mag == std::abs(app) &&
            std::abs(aqq) + 1e3 * mag == std::abs(aqq)) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        const Complex phase = g / mag;  // e^{i alpha}
        const double theta = (aqq - app) / (2.0 * mag);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex up_q = -s * std::conj(phase);  // U(q,p)
        const Complex uq_q = c * std::conj(phase);   // U(q,q)

        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp + up_q * akq;
          a(k, q) = s * akp + uq_q * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk + std::conj(up_q) * aqk;
          a(q, k) = s * apk + std::conj(uq_q) * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp + up_q * vkq;
          v(k, q) = s * vkp + uq_q * vkq;
        }
        a(p, p) = app - t * mag;
        a(q, q) = aqq + t * mag;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index l, Eigen::Index r) { return a(l, l).real() < a(r, r).real(); });

  EigenPairs out{RealVector(n), ComplexMatrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.values(k) = a(src, src).real();
    out.vectors.col(k) = v.col(src);
  }
  return out;
}

ComplexMatrix herm_exp_i(const EigenPairs& eig, double tau) {
  const Eigen::Index n = eig.values.size();
  ComplexVector phases(n);
  for (Eigen::Index k = 0; k < n; ++k) phases(k) = std::exp(-kI * tau * eig.values(k));
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

ComplexMatrix herm_exp_i(const ComplexMatrix& h, double tau) { return herm_exp_i(herm_eig(h), tau); }

ComplexVector apply_exp_i(const EigenPairs& eig, double tau, const ComplexVector& v) {
  ComplexVector coeffs = eig.vectors.adjoint() * v;
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) coeffs(k) *= std::exp(-kI * tau * eig.values(k));
  return eig.vectors * coeffs;
}

ComplexVector linear_solve(const ComplexMatrix& a, const ComplexVector& b) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || b.size() != n) {
    std::ostringstream os;
    os << "linear_solve: A is " << a.rows() << "x" << a.cols() << ", b has " << b.size() << " entries";
    throw Error(ErrorKind::DimensionMismatch, os.str());
  }
  const double threshold = 1e-12 * max_abs_element(a);
  ComplexMatrix lu = a;
  ComplexVector x = b;

  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index pivot = k;
    double best = std::abs(lu(k, k));
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (const double mag = std::abs(lu(i, k)); mag > best) {
        best = mag;
        pivot = i;
      }
    }
    if (best <= threshold || best == 0.0) {
      std::ostringstream os;
      os << "pivot " << best << " at column " << k << " below " << threshold;
      throw Error(ErrorKind::Singular, os.str());
    }
    if (pivot != k) {
      lu.row(k).swap(lu.row(pivot));
      std::swap(x(k), x(pivot));
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const Complex factor = lu(i, k) / lu(k, k);
      if (factor == Complex{}) continue;
      lu.row(i).tail(n - k) -= factor * lu.row(k).tail(n - k);
      x(i) -= factor * x(k);
    }
  }
  for (Eigen::Index k = n - 1; k >= 0; --k) {
    Complex acc = x(k);
    for (Eigen::Index j = k + 1; j < n; ++j) acc -= lu(k, j) * x(j);
    x(k) = acc / lu(k, k);
  }
  return x;
}

ComplexMatrix reconstruct(const EigenPairs& eig) {
  return eig.vectors * eig.values.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

double phase_aligned_distance(const ComplexVector& u, const ComplexVector& v) {
  if (u.size() != v.size()) {
    throw Error(ErrorKind::DimensionMismatch, "phase_aligned_distance: dimension mismatch");
  }
  const Complex overlap = v.dot(u);  // <v|u>
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex{1.0, 0.0};
  return (u - phase * v).norm();
}

ComplexVector normalized(const ComplexVector& v) {
  const double norm = v.norm();
  if (norm == 0.0) throw Error(ErrorKind::ZeroProjection, "cannot normalize a zero vector");
  return v / norm;
}

}  // namespace numkit
}  // namespace qdals
