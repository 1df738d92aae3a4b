#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qdals/solvers.hpp"

namespace qdals::bench {

enum class ExperimentKind {
  GateCount,          // rotation/frame gate counts and encoding error, both builders
  FixedStepFidelity,  // F at each M for every (instance, method, D)
  StepsToTarget,      // smallest M reaching the target fidelity
  SeparatorTrace,     // spectrum after each squaring round
  RandomEnsemble,     // fidelity buckets over seeded random instances
  StepsVsOrder,       // steps to target as a function of D
};

std::string_view kind_name(ExperimentKind k);
std::optional<ExperimentKind> parse_kind(std::string_view text);

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::FixedStepFidelity;
  std::vector<solvers::Method> methods;
  std::vector<int> steps;   // M values
  std::vector<int> orders;  // D values; ignored by original-scheme methods
  double target = 0.9999;
  /// Random instances (or sparse matrices for GateCount) per dimension.
  int trials = 0;
  std::uint64_t seed = 1;
  std::vector<int> dims;
  std::vector<std::string> fixtures;
  int cap = solvers::kDefaultStepCap;
  solvers::Backend backend = solvers::Backend::MatrixLevel;
  std::optional<double> evolution_time;
  double zero_fraction = 0.5;
  /// Passed to the separator. Published fixtures are rounded to 4 decimals,
  /// so their top eigenvalue sits up to ~N * 5e-5 away from 1.
  double spectrum_tolerance = 1e-6;
};

/// The protocol defaults for each kind.
ExperimentSpec default_spec(ExperimentKind kind);

/// Throws OutOfRange when a parameter is missing or out of range for the kind.
void validate(const ExperimentSpec& spec);

/// Canonical JSON (sorted keys, single line). Missing keys on input fall
/// back to default_spec(kind).
std::string spec_to_json(const ExperimentSpec& spec);
ExperimentSpec spec_from_json(const std::string& text);

/// 64-bit FNV-1a of spec_to_json(spec).
std::uint64_t config_hash(const ExperimentSpec& spec);

/// Independent per-item seed derived from a base seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

struct ResultRow {
  std::string label;
  std::vector<Cell> cells;
};

struct ResultTable {
  std::vector<std::string> columns;  // excludes the leading label column
  std::vector<ResultRow> rows;
  std::vector<std::pair<std::string, std::string>> metadata;

  /// Cell lookup by row label and column name; nullptr when absent.
  const Cell* find(const std::string& row, const std::string& column) const;
};

/// `#`-prefixed metadata lines, then a header and one line per row.
std::string to_csv(const ResultTable& t);
std::string to_json(const ResultTable& t);

struct RunOptions {
  int threads = 0;         // 0: hardware concurrency
  bool timestamp = false;  // adds a wall-clock stamp, breaking byte identity
};

/// Solver errors become "Failed" cells; they never abort the table.
ResultTable run_experiment(const ExperimentSpec& spec, const RunOptions& opts = {});

/// Rows lambda_1..lambda_N (ascending), renorm and gap; one column per
/// squaring round 0..order.
ResultTable separator_table(const ComplexMatrix& h1, int order, double spectrum_tolerance);

/// Fidelity bucket index 0..4 for [0, 0.9), [0.9, 0.99), [0.99, 0.999),
/// [0.999, 0.9999), [0.9999, 1].
int fidelity_bucket(double f);

}  // namespace qdals::bench
