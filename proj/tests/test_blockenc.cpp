#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qdals/blockenc.hpp"
#include "qdals/qlsp.hpp"
#include "qdals/statevec.hpp"
#include "support.hpp"

namespace qdals {
namespace {

using blockenc::AngleTable;
using testing::max_abs_diff;
constexpr double kPi = std::numbers::pi;

ComplexMatrix s21() {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = Complex(0.0, 1.5912);
  m(1, 1) = 0.5723;
  return m;
}

ComplexMatrix one(Complex h) {
  ComplexMatrix m(1, 1);
  m(0, 0) = h;
  return m;
}

// RZ(2 phi) RY(2 theta) applied to a 2-vector, written out by hand.
Eigen::Vector2cd rz_ry(double theta, double phi, const Eigen::Vector2cd& v) {
  Eigen::Matrix2cd ry, rz;
  ry << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  rz << std::exp(-kI * phi), 0.0, 0.0, std::exp(kI * phi);
  return rz * ry * v;
}

TEST(Angles, OriginalExamples) {
  auto rec = blockenc::angles_original(one(1.0)).records.at(0);
  EXPECT_DOUBLE_EQ(rec.theta, 0.0);
  EXPECT_DOUBLE_EQ(rec.phi, 0.0);
  rec = blockenc::angles_original(one(0.0)).records.at(0);
  EXPECT_DOUBLE_EQ(rec.theta, kPi / 2);
  EXPECT_DOUBLE_EQ(rec.phi, 0.0);
  rec = blockenc::angles_original(one(Complex(0.0, 0.5))).records.at(0);
  EXPECT_NEAR(rec.theta, 1.0471975511965976, 1e-15);
  EXPECT_NEAR(rec.phi, -kPi / 2, 1e-15);
}

TEST(Angles, OriginalLoadsElementIntoFirstAmplitude) {
  std::mt19937_64 rng(40);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    Complex h(u(rng), u(rng));
    if (std::abs(h) > 1.0) h /= std::abs(h);
    const auto rec = blockenc::angles_original(one(h)).records.at(0);
    // Starting from |0>, the |0> amplitude is conj(h) up to phase bookkeeping:
    // RZ(2 phi) RY(2 theta)|0> = (cos theta e^{-i phi}, sin theta e^{i phi}).
    const Eigen::Vector2cd out = rz_ry(rec.theta, rec.phi, Eigen::Vector2cd(1.0, 0.0));
    EXPECT_NEAR(std::abs(out(0) - h), 0.0, 1e-14);
    EXPECT_NEAR(std::norm(out(0)) + std::norm(out(1)), 1.0, 1e-14);
  }
}

TEST(Angles, ImprovedExamples) {
  EXPECT_TRUE(blockenc::angles_improved(one(0.0)).records.empty());
  auto rec = blockenc::angles_improved(one(-1.0)).records.at(0);
  EXPECT_DOUBLE_EQ(rec.theta, -kPi / 2);
  EXPECT_DOUBLE_EQ(rec.phi, -kPi);
  rec = blockenc::angles_improved(one(Complex(0.0, 0.5))).records.at(0);
  // Column vector from |1>: (|h| e^{i eta}, sqrt(1 - |h|^2) e^{-i eta}).
  const Eigen::Vector2cd out = rz_ry(rec.theta, rec.phi, Eigen::Vector2cd(0.0, 1.0));
  EXPECT_NEAR(std::abs(out(0) - Complex(0.0, 0.5)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out(1) - std::sqrt(0.75) * std::exp(-kI * (kPi / 2))), 0.0, 1e-15);
}

TEST(Angles, RejectsMagnitudeAboveOne) {
  EXPECT_THROW(blockenc::angles_original(one(1.01)), Error);
  EXPECT_THROW(blockenc::angles_improved(one(Complex(0.0, -1.2))), Error);
}

TEST(Build, RejectsBadInput) {
  try {
    blockenc::build_improved(ComplexMatrix::Zero(2, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroMatrix);
  }
  EXPECT_THROW(blockenc::build_original(ComplexMatrix::Ones(3, 3)), Error);
  EXPECT_THROW(blockenc::build_original(ComplexMatrix::Ones(1, 1)), Error);
  EXPECT_THROW(blockenc::build_original(ComplexMatrix::Ones(2, 4)), Error);
}

TEST(Build, PublishedSparseMatrix) {
  const auto orig = blockenc::build_original(s21());
  const auto impr = blockenc::build_improved(s21());
  EXPECT_EQ(blockenc::gate_metrics(orig).rotations, 5);
  EXPECT_LT(blockenc::gate_metrics(impr).rotations, blockenc::gate_metrics(orig).rotations);
  EXPECT_DOUBLE_EQ(orig.scale(), 1.5912);
  EXPECT_LT(max_abs_diff(blockenc::effective_block(orig), s21()), 1e-12);
  EXPECT_LE(blockenc::encode_mse(orig, s21()), 1e-15);
  EXPECT_LE(blockenc::encode_mse(impr, s21()), 1e-15);
}

TEST(Build, RealPositiveNeedsNoPhaseGates) {
  ComplexMatrix m(2, 2);
  m << 0.3, 0.9, 1.2, 0.5;
  EXPECT_EQ(blockenc::gate_metrics(blockenc::build_improved(m)).rotations, 4);
}

TEST(Build, RandomMatricesEncodeExactly) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const Eigen::Index dim = 2 << (seed % 3);
    const ComplexMatrix m = qlsp::random_complex_matrix(dim, seed);
    const auto orig = blockenc::build_original(m);
    const auto impr = blockenc::build_improved(m);
    const ComplexMatrix bo = blockenc::effective_block(orig);
    const ComplexMatrix bi = blockenc::effective_block(impr);
    EXPECT_LT(max_abs_diff(bo, m), 1e-12) << seed;
    EXPECT_LT(max_abs_diff(bi, m), 1e-12) << seed;
    EXPECT_LT(max_abs_diff(bo, bi), 1e-11) << seed;
    EXPECT_LE(blockenc::encode_mse(orig, m), 1e-24);
    EXPECT_LE(blockenc::encode_mse(impr, m), 1e-24);
    // No zeros: the improved circuit spends the same rotations plus one X.
    const auto go = blockenc::gate_metrics(orig);
    const auto gi = blockenc::gate_metrics(impr);
    EXPECT_EQ(gi.rotations, go.rotations);
    EXPECT_EQ(gi.frame, go.frame + 1);
  }
}

TEST(Build, UnitarySynthesis) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const ComplexMatrix m = qlsp::random_sparse_matrix(2 << (seed % 3), 0.5, seed);
    for (const auto& c : {blockenc::build_original(m), blockenc::build_improved(m)}) {
      const ComplexMatrix u = statevec::full_unitary(c);
      EXPECT_LT(max_abs_diff(u.adjoint() * u, ComplexMatrix::Identity(u.rows(), u.cols())), 1e-10);
    }
  }
}

TEST(Build, ImprovedRotationCountFormula) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Eigen::Index dim = 2 << (seed % 4);
    const ComplexMatrix m = qlsp::random_sparse_matrix(dim, 0.1 * static_cast<double>(seed % 8), seed);
    int nonzero = 0;
    int phased = 0;  // nonreal or negative real
    for (Eigen::Index i = 0; i < dim; ++i) {
      for (Eigen::Index j = 0; j < dim; ++j) {
        const Complex h = m(i, j);
        if (h == Complex{}) continue;
        ++nonzero;
        if (h.imag() != 0.0 || h.real() < 0.0) ++phased;
      }
    }
    const auto go = blockenc::gate_metrics(blockenc::build_original(m));
    const auto gi = blockenc::gate_metrics(blockenc::build_improved(m));
    EXPECT_EQ(gi.rotations, nonzero + phased) << seed;
    EXPECT_EQ(go.rotations, dim * dim + phased) << seed;
    if (nonzero < dim * dim) {
      EXPECT_LT(gi.rotations, go.rotations);
    }
    EXPECT_LE(gi.rotations, go.rotations);
    EXPECT_EQ(gi.total, gi.rotations + gi.frame);
  }
}

TEST(Build, MeanSavingsOnHalfSparseMatrices) {
  double sum = 0.0;
  int count = 0;
  for (int dim : {2, 4, 8, 16}) {
    for (std::uint64_t i = 0; i < 50; ++i) {
      const ComplexMatrix m = qlsp::random_sparse_matrix(dim, 0.5, 1000 * static_cast<std::uint64_t>(dim) + i);
      sum += blockenc::rotation_savings(blockenc::gate_metrics(blockenc::build_original(m)),
                                        blockenc::gate_metrics(blockenc::build_improved(m)));
      ++count;
    }
  }
  EXPECT_GE(sum / count, 0.35);
}

TEST(EncodeMse, PerturbationScaling) {
  std::mt19937_64 rng(41);
  for (Eigen::Index dim : {2, 4, 8}) {
    const ComplexMatrix m = testing::gaussian_matrix(dim, rng);
    ComplexMatrix shifted = m;
    shifted(0, 0) += 0.1;
    const auto c = blockenc::build_improved(m);
    const double n2 = static_cast<double>(dim * dim);
    EXPECT_NEAR(blockenc::encode_mse(c, shifted), 0.01 / n2, 1e-12);
    EXPECT_THROW(blockenc::encode_mse(c, ComplexMatrix::Zero(dim * 2, dim * 2)), Error);
  }
}

TEST(Circuit, ValidatesGates) {
  blockenc::Circuit c(1, 2);
  EXPECT_THROW(c.x(3), Error);
  EXPECT_THROW(c.cry(2, {{2, true}}, 0.1), Error);
  EXPECT_THROW(c.cry(2, {{0, true}}, std::nan("")), Error);
  EXPECT_THROW(c.swap(1, 1), Error);
  c.h(0).cry(2, {{0, true}, {1, false}}, 0.3);
  EXPECT_EQ(c.gates().size(), 2u);
}

TEST(Circuit, TextFormat) {
  blockenc::Circuit c(1, 2, 2.5);
  c.x(2).cry(2, {{1, false}, {0, true}}, -0.5).swap(1, 0);
  const std::string text = blockenc::to_text(c);
  EXPECT_NE(text.find("# n_main=1 n_anc=2 scale=2.5 gates=3"), std::string::npos);
  EXPECT_NE(text.find("X 2"), std::string::npos);
  EXPECT_NE(text.find("CRY 2 [1=0 0=1] -0.5"), std::string::npos);
  EXPECT_NE(text.find("SWAP 1 0"), std::string::npos);
}

}  // namespace
}  // namespace qdals
