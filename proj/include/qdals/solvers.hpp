#pragma once

// The four discrete adiabatic pipelines.
//
//   OHS / NHS  original / new Hamiltonians, each step an exact unitary
//              exp(-i T h H_s(s_m)) (optionally Trotter-split into H0 and H1).
//   OBE / NBE  original / new Hamiltonians, each step the non-unitary
//              first-order operator I - i H_s(s_m), realized either as a
//              normalized matrix-vector product or as a block-encoding
//              circuit followed by ancilla post-selection.
//
// NBE with the improved block encoding and a separated final Hamiltonian is
// the full solver; the other three are baselines.

#include <optional>
#include <string>
#include <vector>

#include "qdals/eigsep.hpp"
#include "qdals/hamiltonians.hpp"
#include "qdals/qlsp.hpp"

namespace qdals::solvers {

enum class Method { OHS, NHS, OBE, NBE };
enum class Backend { MatrixLevel, CircuitLevel };

std::string_view method_name(Method m);
std::optional<Method> parse_method(std::string_view text);
std::string_view backend_name(Backend b);

bool is_block_encoding(Method m);
ham::Scheme scheme_of(Method m);

struct SolverConfig {
  Method method = Method::NBE;
  int steps = 200;
  /// Separation order D for the new-scheme methods; 0 disables.
  int separation_order = eigsep::kDefaultOrder;
  /// Total evolution time T for the HS methods; defaults to M so each step
  /// is exp(-i H_s(s_m)).
  std::optional<double> evolution_time;
  Backend backend = Backend::MatrixLevel;
  /// HS methods: exp(-i T h (1 - s) H0) exp(-i T h s H1) instead of exp(-i T h H_s).
  bool trotter_split = true;
  bool record_trace = false;

  double time_for(int steps) const { return evolution_time.value_or(static_cast<double>(steps)); }
};

/// Throws OutOfRange for any invalid combination.
void validate(const SolverConfig& cfg);

struct SolveReport {
  ComplexVector final_state;  // normalized solution-register state
  double fidelity = 0.0;
  std::vector<double> fidelity_trace;
  /// Block-encoding methods: log10 of the product of per-step post-selection
  /// probabilities (kept in log form; the product underflows at large M).
  std::optional<double> log10_success_prob;
  int steps_used = 0;
  SolverConfig config;
  bool failed = false;
  std::string failure;
  std::vector<std::string> warnings;
  double elapsed_seconds = 0.0;

  std::optional<double> cumulative_success_prob() const;
};

SolveReport solve_hs(const qlsp::QlspInstance& p, const SolverConfig& cfg);
SolveReport solve_be(const qlsp::QlspInstance& p, const SolverConfig& cfg);
/// Dispatches on cfg.method.
SolveReport solve(const qlsp::QlspInstance& p, const SolverConfig& cfg);

inline constexpr int kDefaultStepCap = 1 << 19;

struct StepSearch {
  std::optional<int> steps;  // nullopt: Failed within the cap
  std::vector<std::pair<int, double>> evaluations;  // (M, F) in evaluation order
};

/// Doubling search from M = 1 until F(M) >= f_target, then bisection inside
/// the bracketing interval. F(M) need not be monotone, so the answer is the
/// smallest M found by that search rather than a global minimum. cfg.steps
/// is ignored.
StepSearch steps_to_fidelity(const qlsp::QlspInstance& p, const SolverConfig& cfg, double f_target,
                             int m_cap = kDefaultStepCap);

}  // namespace qdals::solvers
