#include <gtest/gtest.h>

#include <cmath>

#include "qdals/hamiltonians.hpp"
#include "qdals/solvers.hpp"
#include "support.hpp"

namespace qdals {
namespace {

using solvers::Backend;
using solvers::Method;
using solvers::SolverConfig;

qlsp::QlspInstance c21() {
  using C = Complex;
  ComplexMatrix a(2, 2);
  a << C(1.3088, 0.0), C(1.3246, -0.6686), C(1.3246, 0.6686), C(0.1441, 0.0);
  ComplexVector b(2);
  b << C(0.7406, 0.3019), C(0.4177, 0.0914);
  return qlsp::make_instance(a, b, "c21");
}

SolverConfig config(Method m, int steps, int order = 0) {
  SolverConfig cfg;
  cfg.method = m;
  cfg.steps = steps;
  cfg.separation_order = order;
  return cfg;
}

TEST(Config, Validation) {
  EXPECT_THROW(solvers::validate(config(Method::NBE, 0)), Error);
  EXPECT_THROW(solvers::validate(config(Method::NBE, 10, 17)), Error);
  auto cfg = config(Method::NHS, 10);
  cfg.backend = Backend::CircuitLevel;
  EXPECT_THROW(solvers::validate(cfg), Error);
  cfg = config(Method::OHS, 10);
  cfg.evolution_time = -1.0;
  EXPECT_THROW(solvers::validate(cfg), Error);
  EXPECT_THROW(solvers::solve_hs(c21(), config(Method::NBE, 10)), Error);
  EXPECT_THROW(solvers::solve_be(c21(), config(Method::OHS, 10)), Error);
}

TEST(Names, RoundTrip) {
  for (Method m : {Method::OHS, Method::NHS, Method::OBE, Method::NBE})
    EXPECT_EQ(solvers::parse_method(solvers::method_name(m)), m);
  EXPECT_FALSE(solvers::parse_method("qpe"));
}

TEST(Nhs, IdentityMatrixIsPurePhase) {
  std::mt19937_64 rng(60);
  for (int steps : {1, 7, 50}) {
    const ComplexVector b = testing::gaussian_unit_vector(4, rng);
    const auto p = qlsp::make_instance(ComplexMatrix::Identity(4, 4), b);
    EXPECT_NEAR(solvers::solve(p, config(Method::NHS, steps)).fidelity, 1.0, 1e-12);
    // N = 2: H0 = H1 = b b^dagger.
    const ComplexVector b2 = testing::gaussian_unit_vector(2, rng);
    const auto p2 = qlsp::make_instance(ComplexMatrix::Identity(2, 2), b2);
    EXPECT_NEAR(solvers::solve(p2, config(Method::NHS, steps)).fidelity, 1.0, 1e-12);
  }
}

TEST(Hs, NormPreservedEveryStep) {
  const auto p = qlsp::random_instance(4, 3);
  for (Method m : {Method::OHS, Method::NHS}) {
    for (bool split : {true, false}) {
      auto cfg = config(m, 60);
      cfg.trotter_split = split;
      cfg.record_trace = true;
      const auto r = solvers::solve(p, cfg);
      EXPECT_NEAR(r.final_state.norm(), 1.0, 1e-10);
      EXPECT_EQ(r.fidelity_trace.size(), 60u);
      EXPECT_FALSE(r.log10_success_prob.has_value());
    }
  }
}

TEST(Hs, UnitaryEvolutionKeepsFullStateNormalized) {
  // Re-run the split evolution by hand and check the norm after every step.
  const auto p = qlsp::random_instance(8, 5);
  const auto pair = ham::new_pair(p);
  const ham::Schedule sched(40);
  ComplexVector state = p.b;
  const auto e0 = numkit::herm_eig(pair.h0);
  const auto e1 = numkit::herm_eig(pair.h1);
  for (int m = 1; m <= 40; ++m) {
    const double s = sched.point(m);
    state = numkit::apply_exp_i(e0, 1.0 - s, numkit::apply_exp_i(e1, s, state));
    EXPECT_NEAR(state.norm(), 1.0, 1e-10);
  }
}

TEST(Nhs, SplitAgreesWithUnsplitEvolution) {
  const auto p = qlsp::random_instance(4, 8);
  auto split = config(Method::NHS, 500);
  auto exact = split;
  exact.trotter_split = false;
  EXPECT_NEAR(solvers::solve(p, split).fidelity, solvers::solve(p, exact).fidelity, 0.01);
}

TEST(Ohs, FidelityTrendOnPublishedSystem) {
  const auto p = c21();
  const double f33 = solvers::solve(p, config(Method::OHS, 33)).fidelity;
  const double f100 = solvers::solve(p, config(Method::OHS, 100)).fidelity;
  const double f1000 = solvers::solve(p, config(Method::OHS, 1000)).fidelity;
  EXPECT_GE(f100, f33 - 0.02);
  EXPECT_GE(f1000, f100 - 0.02);
}

TEST(Be, PublishedSystemAtTwoHundredSteps) {
  const auto p = c21();
  EXPECT_NEAR(solvers::solve(p, config(Method::NBE, 200, 0)).fidelity, 1.0, 1e-3);
  EXPECT_LE(solvers::solve(p, config(Method::OBE, 200)).fidelity, 0.01);
}

TEST(Be, SuccessProbabilityIsLogged) {
  const auto r = solvers::solve(c21(), config(Method::NBE, 50, 0));
  ASSERT_TRUE(r.log10_success_prob.has_value());
  EXPECT_LT(*r.log10_success_prob, 0.0);
  EXPECT_NEAR(*r.cumulative_success_prob(), std::pow(10.0, *r.log10_success_prob), 1e-300);
}

TEST(Nbe, StepFavorsTopEigencomponent) {
  // One first-order step scales component k by sqrt(1 + lambda_k^2) before
  // renormalization, so the ratio to any other component never shrinks.
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    RealVector ev(4);
    for (int k = 0; k < 3; ++k) ev(k) = u(rng);
    ev(3) = 1.0;
    const ComplexMatrix h = testing::with_spectrum(ev, rng);
    const Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    const ComplexVector psi = testing::gaussian_unit_vector(4, rng);
    ComplexVector next = ham::first_order_step(h) * psi;
    next /= next.norm();
    const ComplexVector before = es.eigenvectors().adjoint() * psi;
    const ComplexVector after = es.eigenvectors().adjoint() * next;
    for (int k = 0; k < 3; ++k) {
      const double r0 = std::abs(before(3)) / std::abs(before(k));
      const double r1 = std::abs(after(3)) / std::abs(after(k));
      EXPECT_GE(r1, r0 * (1.0 - 1e-12));
    }
  }
}

TEST(Nbe, BackendsAgree) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto p = qlsp::random_instance(4, 70 + seed);
    auto cfg = config(Method::NBE, 50, 4);
    cfg.record_trace = true;
    const auto m = solvers::solve(p, cfg);
    cfg.backend = Backend::CircuitLevel;
    const auto c = solvers::solve(p, cfg);
    EXPECT_LT(numkit::phase_aligned_distance(m.final_state, c.final_state), 1e-7);
    ASSERT_EQ(m.fidelity_trace.size(), c.fidelity_trace.size());
    for (std::size_t k = 0; k < m.fidelity_trace.size(); ++k)
      EXPECT_NEAR(m.fidelity_trace[k], c.fidelity_trace[k], 1e-7);
    EXPECT_NEAR(*m.log10_success_prob, *c.log10_success_prob, 1e-7);
  }
}

TEST(Obe, CircuitBackendMatchesMatrixBackend) {
  const auto p = qlsp::random_instance(2, 90);
  auto cfg = config(Method::OBE, 20);
  const auto m = solvers::solve(p, cfg);
  cfg.backend = Backend::CircuitLevel;
  const auto c = solvers::solve(p, cfg);
  EXPECT_NEAR(m.fidelity, c.fidelity, 1e-7);
}

TEST(Nbe, HigherOrderDoesNotHurtPublishedSystem) {
  const auto p = c21();
  const double f0 = solvers::solve(p, config(Method::NBE, 200, 0)).fidelity;
  const double f8 = solvers::solve(p, config(Method::NBE, 200, 8)).fidelity;
  EXPECT_GE(f8, f0 - 1e-9);
}

TEST(StepSearch, Edges) {
  const auto p = c21();
  const auto zero = solvers::steps_to_fidelity(p, config(Method::NBE, 1, 8), 0.0);
  ASSERT_TRUE(zero.steps.has_value());
  EXPECT_EQ(*zero.steps, 1);
  EXPECT_THROW(solvers::steps_to_fidelity(p, config(Method::NBE, 1), 1.5), Error);
  EXPECT_THROW(solvers::steps_to_fidelity(p, config(Method::NBE, 1), 0.9, 0), Error);
}

TEST(StepSearch, FindsSmallestBracketedStep) {
  const auto p = c21();
  const auto cfg = config(Method::NBE, 1, 0);
  const auto s = solvers::steps_to_fidelity(p, cfg, 0.999);
  ASSERT_TRUE(s.steps.has_value());
  auto at = [&](int m) {
    auto c = cfg;
    c.steps = m;
    return solvers::solve(p, c).fidelity;
  };
  EXPECT_GE(at(*s.steps), 0.999);
  if (*s.steps > 1) {
    EXPECT_LT(at(*s.steps - 1), 0.999);
  }
}

TEST(StepSearch, OriginalBlockEncodingFails) {
  const auto s = solvers::steps_to_fidelity(c21(), config(Method::OBE, 1), 0.9999, 1 << 12);
  EXPECT_FALSE(s.steps.has_value());
  EXPECT_EQ(s.evaluations.back().first, 1 << 12);
}

TEST(Report, DegenerateGapWarning) {
  // A = I on 4 dims: H1 = I - Q_b / sqrt(3) has a clean top eigenvalue, no warning.
  std::mt19937_64 rng(62);
  const auto p = qlsp::make_instance(ComplexMatrix::Identity(4, 4), testing::gaussian_unit_vector(4, rng));
  EXPECT_TRUE(solvers::solve(p, config(Method::NBE, 5)).warnings.empty());
}

}  // namespace
}  // namespace qdals
