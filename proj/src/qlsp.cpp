#include "qdals/qlsp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

namespace qdals::qlsp {

bool is_power_of_two(Eigen::Index n) { return n >= 2 && (n & (n - 1)) == 0; }

int log2_exact(Eigen::Index n) {
  if (!is_power_of_two(n)) {
    throw Error(ErrorKind::DimensionMismatch, "dimension " + std::to_string(n) + " is not a power of two >= 2");
  }
  int k = 0;
  while ((Eigen::Index{1} << k) < n) ++k;
  return k;
}

void validate(const QlspInstance& p) {
  if (!is_power_of_two(p.a.rows()) || p.a.rows() != p.a.cols()) {
    std::ostringstream os;
    os << "A is " << p.a.rows() << "x" << p.a.cols() << "; need N x N with N = 2^n, n >= 1";
    throw Error(ErrorKind::InvariantViolation, os.str());
  }
  if (p.b.size() != p.a.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "b has " + std::to_string(p.b.size()) + " entries, A has " +
                                                  std::to_string(p.a.rows()) + " rows");
  }
  numkit::require_hermitian(p.a, "A");
  if (!numkit::is_normalized(p.b)) {
    throw Error(ErrorKind::NotNormalized, "||b|| = " + std::to_string(p.b.norm()));
  }
  // Throws Singular when A is not invertible.
  (void)numkit::linear_solve(p.a, p.b);
}

QlspInstance make_instance(ComplexMatrix a, ComplexVector b, std::string label,
                           std::optional<std::uint64_t> seed) {
  const double norm = b.norm();
  if (!(norm > 0.0)) throw Error(ErrorKind::NotNormalized, "right-hand side is zero");
  QlspInstance p{std::move(a), b / norm, std::move(label), seed};
  validate(p);
  return p;
}

Solution exact_solution(const QlspInstance& p) {
  const ComplexVector raw = numkit::linear_solve(p.a, p.b);
  const double residual = (p.a * raw - p.b).norm() / p.b.norm();
  return Solution{numkit::normalized(raw), residual};
}

double fidelity(const ComplexVector& xt, const ComplexVector& x) {
  if (xt.size() != x.size()) {
    throw Error(ErrorKind::DimensionMismatch, "fidelity: dimensions " + std::to_string(xt.size()) + " and " +
                                                  std::to_string(x.size()));
  }
  // Rounding can push |<xt|x>| a hair past 1.
  return std::min(1.0, std::abs(xt.dot(x)));
}

namespace {

void require_dim(Eigen::Index dim) {
  if (!is_power_of_two(dim)) {
    throw Error(ErrorKind::OutOfRange, "dimension must be a power of two >= 2, got " + std::to_string(dim));
  }
}

}  // namespace

QlspInstance random_instance(Eigen::Index dim, std::uint64_t seed) {
  require_dim(dim);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  constexpr int kMaxDraws = 1000;
  for (int draw = 0; draw < kMaxDraws; ++draw) {
    ComplexMatrix raw(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j)
      for (Eigen::Index i = 0; i < dim; ++i) raw(i, j) = Complex(uniform(rng), uniform(rng));
    ComplexMatrix a = 0.5 * (raw + raw.adjoint());

    ComplexVector b(dim);
    for (Eigen::Index i = 0; i < dim; ++i) b(i) = Complex(normal(rng), normal(rng));

    // Singular values of a Hermitian matrix are |eigenvalues|.
    const RealVector spectrum = numkit::herm_eig(a).values;
    const double min_sv = spectrum.cwiseAbs().minCoeff();
    if (min_sv < 1e-6 * numkit::max_abs_element(a) || b.norm() == 0.0) continue;

    std::ostringstream label;
    label << "random-" << dim << "-s" << seed;
    return QlspInstance{std::move(a), b / b.norm(), label.str(), seed};
  }
  throw Error(ErrorKind::GenerationFailed, "no well-conditioned draw in 1000 attempts");
}

ComplexMatrix random_sparse_matrix(Eigen::Index dim, double zero_fraction, std::uint64_t seed) {
  require_dim(dim);
  if (!(zero_fraction >= 0.0 && zero_fraction < 1.0)) {
    throw Error(ErrorKind::OutOfRange, "zero_fraction must lie in [0, 1)");
  }
  const auto total = static_cast<std::size_t>(dim * dim);
  const double want = zero_fraction * static_cast<double>(total);
  const auto zeros = static_cast<std::size_t>(std::ceil(want - 1e-9 * want));

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> slots(total);
  std::iota(slots.begin(), slots.end(), std::size_t{0});
  std::shuffle(slots.begin(), slots.end(), rng);

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::bernoulli_distribution coin(0.5);

  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (std::size_t k = zeros; k < total; ++k) {
    const double magnitude = 2.0 * (1.0 - unit(rng));  // (0, 2]
    const double sign = coin(rng) ? 1.0 : -1.0;
    Complex value;
    switch ((k - zeros) % 3) {
      case 0: value = Complex(sign * magnitude, 0.0); break;
      case 1: value = Complex(0.0, sign * magnitude); break;
      default: value = std::polar(magnitude, angle(rng)); break;
    }
    const std::size_t slot = slots[k];
    m(static_cast<Eigen::Index>(slot / static_cast<std::size_t>(dim)),
      static_cast<Eigen::Index>(slot % static_cast<std::size_t>(dim))) = value;
  }
  return m;
}

ComplexMatrix random_complex_matrix(Eigen::Index dim, std::uint64_t seed) {
  require_dim(dim);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  ComplexMatrix m(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) m(i, j) = Complex(uniform(rng), uniform(rng));
  return m;
}

}  // namespace qdals::qlsp
