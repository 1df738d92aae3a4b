// qdals: command-line front end for the solver library.
//
//   qdals gen       --dim 4 --count 3 --seed 7 --out data/
//   qdals solve     --fixture c2_1 --method nbe --steps 200
//   qdals encode    --fixture s2_1 --dump-circuit s2_1.txt
//   qdals separate  --fixture h1_c4_1 --order 4
//   qdals bench     random-ensemble --trials 100 --seed 1 --out ens.csv
//   qdals fixtures  --out fixtures/
//
// Exit status: 0 success, 1 usage error, 2 numerical failure.

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qdals/bench/experiments.hpp"
#include "qdals/bench/fixtures.hpp"
#include "qdals/bench/instance_io.hpp"
#include "qdals/blockenc.hpp"
#include "qdals/eigsep.hpp"
#include "qdals/solvers.hpp"
#include "qdals/statevec.hpp"

namespace {

using namespace qdals;
using nlohmann::json;

constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Printed spectra for the bundled fixtures are rounded to 4 decimals, which
// leaves their top eigenvalue up to about N * 5e-5 from 1.
constexpr double kFixtureSpectrumTolerance = 2e-4;

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
  } else {
    bench::write_text(out, text);
  }
}

std::string fmt(double v, int digits = 10) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

solvers::Method method_arg(const std::string& text) {
  const auto m = solvers::parse_method(text);
  if (!m) throw UsageError("unknown method '" + text + "' (expected ohs, nhs, obe or nbe)");
  return *m;
}

solvers::Backend backend_arg(const std::string& text) {
  if (text == "matrix") return solvers::Backend::MatrixLevel;
  if (text == "circuit") return solvers::Backend::CircuitLevel;
  throw UsageError("unknown backend '" + text + "' (expected matrix or circuit)");
}

qlsp::QlspInstance instance_arg(const std::string& fixture, const std::string& path) {
  if (fixture.empty() == path.empty()) throw UsageError("give exactly one of --fixture or --instance");
  if (!fixture.empty()) {
    if (!bench::is_fixture(fixture)) throw UsageError("unknown fixture '" + fixture + "'");
    try {
      return bench::fixture_instance(fixture);
    } catch (const Error& e) {
      throw UsageError(e.detail());
    }
  }
  return bench::load_instance(path);
}

// ---- gen ---------------------------------------------------------------

struct GenArgs {
  std::string kind = "instance";
  int dim = 4;
  int count = 1;
  std::uint64_t seed = 1;
  double zero_fraction = 0.5;
  std::string out = ".";
};

int run_gen(const GenArgs& a) {
  if (a.count < 1) throw UsageError("--count must be >= 1");
  if (a.kind != "instance" && a.kind != "sparse") throw UsageError("--kind must be instance or sparse");
  std::filesystem::create_directories(a.out);
  for (int i = 0; i < a.count; ++i) {
    const std::uint64_t seed = a.count == 1 ? a.seed : bench::derive_seed(a.seed, static_cast<std::uint64_t>(i));
    std::filesystem::path path;
    if (a.kind == "instance") {
      const auto p = qlsp::random_instance(a.dim, seed);
      path = std::filesystem::path(a.out) / (p.label + ".json");
      bench::save_instance(p, path);
    } else {
      const std::string label = "sparse-" + std::to_string(a.dim) + "-s" + std::to_string(seed);
      path = std::filesystem::path(a.out) / (label + ".json");
      bench::save_matrix({qlsp::random_sparse_matrix(a.dim, a.zero_fraction, seed), label}, path);
    }
    std::cout << path.string() << "\n";
  }
  return 0;
}

// ---- solve -------------------------------------------------------------

struct SolveArgs {
  std::string fixture;
  std::string instance;
  std::string method = "nbe";
  int steps = 200;
  int order = -1;  // -1: 0 for D-free runs of the original scheme, else default
  std::string backend = "matrix";
  std::optional<double> time;
  bool no_split = false;
  bool trace = false;
  std::optional<double> target;
  int cap = solvers::kDefaultStepCap;
  std::string format = "text";
  std::string out;
};

json complex_vector_json(const ComplexVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

int run_solve(const SolveArgs& a) {
  const auto p = instance_arg(a.fixture, a.instance);
  solvers::SolverConfig cfg;
  cfg.method = method_arg(a.method);
  cfg.steps = a.steps;
  cfg.separation_order = a.order >= 0 ? a.order : eigsep::kDefaultOrder;
  if (solvers::scheme_of(cfg.method) == ham::Scheme::Original) cfg.separation_order = 0;
  cfg.backend = backend_arg(a.backend);
  cfg.evolution_time = a.time;
  cfg.trotter_split = !a.no_split;
  cfg.record_trace = a.trace;
  if (a.format != "text" && a.format != "json") throw UsageError("--format must be text or json");
  try {
    solvers::validate(cfg);
  } catch (const Error& e) {
    throw UsageError(e.detail());
  }

  if (a.target) {
    if (!(*a.target > 0.0 && *a.target <= 1.0)) throw UsageError("--target must lie in (0, 1]");
    const auto search = solvers::steps_to_fidelity(p, cfg, *a.target, a.cap);
    json doc;
    doc["instance"] = p.label;
    doc["method"] = solvers::method_name(cfg.method);
    doc["order"] = cfg.separation_order;
    doc["target"] = *a.target;
    doc["cap"] = a.cap;
    doc["steps"] = search.steps ? json(*search.steps) : json("Failed");
    json evals = json::array();
    for (const auto& [m, f] : search.evaluations) evals.push_back({m, f});
    doc["evaluations"] = evals;
    if (a.format == "json") {
      emit(doc.dump(2) + "\n", a.out);
    } else {
      std::ostringstream os;
      os << "instance " << p.label << "  method " << solvers::method_name(cfg.method) << "  D = "
         << cfg.separation_order << "\n";
      os << "steps to F >= " << fmt(*a.target) << ": " << (search.steps ? std::to_string(*search.steps) : "Failed")
         << " (" << search.evaluations.size() << " evaluations, cap " << a.cap << ")\n";
      emit(os.str(), a.out);
    }
    return 0;
  }

  const auto r = solvers::solve(p, cfg);
  if (a.format == "json") {
    json doc;
    doc["instance"] = p.label;
    doc["method"] = solvers::method_name(cfg.method);
    doc["steps"] = r.steps_used;
    doc["order"] = cfg.separation_order;
    doc["backend"] = solvers::backend_name(cfg.backend);
    doc["evolution_time"] = solvers::is_block_encoding(cfg.method) ? json(nullptr) : json(cfg.time_for(cfg.steps));
    doc["fidelity"] = r.fidelity;
    doc["failed"] = r.failed;
    if (r.failed) doc["failure"] = r.failure;
    doc["log10_success_prob"] = r.log10_success_prob ? json(*r.log10_success_prob) : json(nullptr);
    doc["final_state"] = complex_vector_json(r.final_state);
    if (a.trace) doc["fidelity_trace"] = r.fidelity_trace;
    doc["warnings"] = r.warnings;
    emit(doc.dump(2) + "\n", a.out);
  } else {
    std::ostringstream os;
    os << "instance " << p.label << "  method " << solvers::method_name(cfg.method) << "  M = " << r.steps_used
       << "  D = " << cfg.separation_order << "  backend " << solvers::backend_name(cfg.backend) << "\n";
    if (r.failed) {
      os << "Failed: " << r.failure << "\n";
    } else {
      os << "F = " << fmt(r.fidelity) << "\n";
    }
    if (r.log10_success_prob) os << "log10 P(success) = " << fmt(*r.log10_success_prob, 6) << "\n";
    for (const auto& w : r.warnings) os << "warning: " << w << "\n";
    if (a.trace) {
      for (std::size_t m = 0; m < r.fidelity_trace.size(); ++m)
        os << "trace " << m + 1 << " " << fmt(r.fidelity_trace[m]) << "\n";
    }
    emit(os.str(), a.out);
  }
  return r.failed ? kExitNumerical : 0;
}

// ---- encode ------------------------------------------------------------

struct EncodeArgs {
  std::string fixture;
  std::string matrix;
  std::string dump;
  std::string dump_builder = "improved";
};

int run_encode(const EncodeArgs& a) {
  if (a.fixture.empty() == a.matrix.empty()) throw UsageError("give exactly one of --fixture or --matrix");
  if (!a.fixture.empty() && !bench::is_fixture(a.fixture)) throw UsageError("unknown fixture '" + a.fixture + "'");
  if (a.dump_builder != "original" && a.dump_builder != "improved") {
    throw UsageError("--builder must be original or improved");
  }
  const auto m = a.fixture.empty() ? bench::load_matrix(a.matrix) : bench::fixture_matrix(a.fixture);
  const auto orig = blockenc::build_original(m.matrix);
  const auto impr = blockenc::build_improved(m.matrix);
  const auto go = blockenc::gate_metrics(orig);
  const auto gi = blockenc::gate_metrics(impr);
  const bool small = orig.n_qubits() <= statevec::kMaxUnitaryQubits;

  std::cout << "matrix " << m.label << "  dim " << m.matrix.rows() << "  scale " << fmt(orig.scale(), 17) << "\n";
  std::cout << "builder    rotations  frame  total  mse\n";
  auto line = [&](const char* name, const blockenc::GateMetrics& g, const blockenc::Circuit& c) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-10s %9d  %5d  %5d  %s\n", name, g.rotations, g.frame, g.total,
                  small ? fmt(blockenc::encode_mse(c, m.matrix), 3).c_str() : "n/a");
    std::cout << buf;
  };
  line("original", go, orig);
  line("improved", gi, impr);
  std::cout << "rotation savings " << fmt(100.0 * blockenc::rotation_savings(go, gi), 4) << "%\n";
  if (!a.dump.empty()) {
    std::ostringstream os;
    blockenc::write_text(os, a.dump_builder == "original" ? orig : impr);
    emit(os.str(), a.dump == "-" ? std::string() : a.dump);
  }
  return 0;
}

// ---- separate ----------------------------------------------------------

struct SeparateArgs {
  std::string fixture;
  std::string instance;
  std::string matrix;
  int order = eigsep::kDefaultOrder;
  std::optional<double> tolerance;
  std::string format = "csv";
  std::string out;
};

std::string render(const bench::ResultTable& t, const std::string& format) {
  if (format == "csv") return bench::to_csv(t);
  if (format == "json") return bench::to_json(t);
  throw UsageError("--format must be csv or json");
}

int run_separate(const SeparateArgs& a) {
  const int sources = !a.fixture.empty() + !a.instance.empty() + !a.matrix.empty();
  if (sources != 1) throw UsageError("give exactly one of --fixture, --instance or --matrix");
  if (a.format != "csv" && a.format != "json") throw UsageError("--format must be csv or json");
  if (a.order < 0 || a.order > eigsep::kMaxOrder) throw UsageError("--order must lie in [0, 16]");
  ComplexMatrix h1;
  double tol = eigsep::kDefaultSpectrumTolerance;
  std::string label;
  if (!a.fixture.empty()) {
    if (!bench::is_fixture(a.fixture)) throw UsageError("unknown fixture '" + a.fixture + "'");
    const auto& list = bench::fixture_list();
    const auto it = std::find_if(list.begin(), list.end(), [&](const auto& f) { return f.name == a.fixture; });
    h1 = it->kind == bench::FixtureKind::Instance ? ham::new_pair(bench::fixture_instance(a.fixture)).h1
                                                  : bench::fixture_matrix(a.fixture).matrix;
    tol = kFixtureSpectrumTolerance;
    label = a.fixture;
  } else if (!a.instance.empty()) {
    const auto p = bench::load_instance(a.instance);
    h1 = ham::new_pair(p).h1;
    label = p.label;
  } else {
    const auto m = bench::load_matrix(a.matrix);
    h1 = m.matrix;
    label = m.label;
  }
  auto t = bench::separator_table(h1, a.order, a.tolerance.value_or(tol));
  t.metadata = {{"source", label}, {"order", std::to_string(a.order)}};
  emit(render(t, a.format), a.out);
  return 0;
}

// ---- bench -------------------------------------------------------------

struct BenchArgs {
  std::string kind;
  std::string config;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> methods;
  std::vector<int> steps;
  std::vector<int> orders;
  std::optional<double> target;
  std::optional<int> cap;
  std::optional<int> trials;
  std::vector<int> dims;
  std::vector<std::string> fixtures;
  bool no_fixtures = false;
  std::string backend;
  std::optional<double> time;
  std::optional<double> zero_fraction;
  std::optional<double> tolerance;
  std::string format = "csv";
  std::string out;
  int threads = 0;
  bool timestamp = false;
};

int run_bench(const BenchArgs& a) {
  bench::ExperimentSpec spec;
  if (!a.config.empty()) {
    spec = bench::spec_from_json(bench::read_text(a.config));
    if (!a.kind.empty() && bench::parse_kind(a.kind) != spec.kind) {
      throw UsageError("kind '" + a.kind + "' disagrees with the config file");
    }
  } else {
    const auto kind = bench::parse_kind(a.kind);
    if (!kind) throw UsageError("unknown experiment kind '" + a.kind + "'");
    spec = bench::default_spec(*kind);
  }
  if (a.seed) spec.seed = *a.seed;
  if (!a.methods.empty()) {
    spec.methods.clear();
    for (const auto& m : a.methods) spec.methods.push_back(method_arg(m));
  }
  if (!a.steps.empty()) spec.steps = a.steps;
  if (!a.orders.empty()) spec.orders = a.orders;
  if (a.target) spec.target = *a.target;
  if (a.cap) spec.cap = *a.cap;
  if (a.trials) spec.trials = *a.trials;
  if (!a.dims.empty()) spec.dims = a.dims;
  if (a.no_fixtures) spec.fixtures.clear();
  if (!a.fixtures.empty()) spec.fixtures = a.fixtures;
  if (!a.backend.empty()) spec.backend = backend_arg(a.backend);
  if (a.time) spec.evolution_time = *a.time;
  if (a.zero_fraction) spec.zero_fraction = *a.zero_fraction;
  if (a.tolerance) spec.spectrum_tolerance = *a.tolerance;
  if (a.format != "csv" && a.format != "json") throw UsageError("--format must be csv or json");
  try {
    bench::validate(spec);
  } catch (const Error& e) {
    throw UsageError(e.detail());
  }
  const auto t = bench::run_experiment(spec, {a.threads, a.timestamp});
  emit(render(t, a.format), a.out);
  return 0;
}

// ---- fixtures ----------------------------------------------------------

int run_fixtures(const std::string& name, const std::string& out) {
  if (!name.empty()) {
    if (!bench::is_fixture(name)) throw UsageError("unknown fixture '" + name + "'");
    emit(bench::fixture_json(name), out);
    return 0;
  }
  if (out.empty()) {
    for (const auto& f : bench::fixture_list()) std::cout << f.name << "\n";
    return 0;
  }
  for (const auto& path : bench::write_fixtures(out)) std::cout << path.string() << "\n";
  return 0;
}

void diagnose(const Error& e) {
  json doc;
  doc["error"] = std::string(to_string(e.kind()));
  doc["message"] = e.detail();
  std::cerr << doc.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete adiabatic linear-system solver: instances, solves, block encodings and benchmarks"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write seeded random instances or sparse matrices to JSON files");
  gen_cmd->add_option("--kind", gen.kind, "instance or sparse")->capture_default_str();
  gen_cmd->add_option("--dim", gen.dim, "Dimension N (power of two)")->capture_default_str();
  gen_cmd->add_option("--count", gen.count, "Number of files")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "Base seed")->capture_default_str();
  gen_cmd->add_option("--zero-fraction", gen.zero_fraction, "Zero fraction for sparse matrices")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output directory")->capture_default_str();

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve one instance with one configuration");
  solve_cmd->add_option("--fixture", solve.fixture, "Bundled instance (c2_1, identity4)");
  solve_cmd->add_option("--instance", solve.instance, "Instance JSON file");
  solve_cmd->add_option("--method", solve.method, "ohs, nhs, obe or nbe")->capture_default_str();
  solve_cmd->add_option("--steps", solve.steps, "Number of steps M")->capture_default_str();
  solve_cmd->add_option("--order", solve.order, "Separation order D (default 8; original scheme uses 0)");
  solve_cmd->add_option("--backend", solve.backend, "matrix or circuit")->capture_default_str();
  solve_cmd->add_option("--time", solve.time, "Evolution time T for ohs/nhs (default M)");
  solve_cmd->add_flag("--no-split", solve.no_split, "Exponentiate H(s) directly instead of splitting H0/H1");
  solve_cmd->add_flag("--trace", solve.trace, "Print the fidelity after every step");
  solve_cmd->add_option("--target", solve.target, "Search the smallest M reaching this fidelity instead");
  solve_cmd->add_option("--cap", solve.cap, "Largest M tried by --target")->capture_default_str();
  solve_cmd->add_option("--format", solve.format, "text or json")->capture_default_str();
  solve_cmd->add_option("--out", solve.out, "Write the report to a file");

  EncodeArgs encode;
  auto* encode_cmd = app.add_subcommand("encode", "Block-encode a matrix and report gate counts and MSE");
  encode_cmd->add_option("--fixture", encode.fixture, "Bundled matrix (s2_1, h1_c4_1, c2_1, identity4)");
  encode_cmd->add_option("--matrix", encode.matrix, "Matrix JSON file");
  encode_cmd->add_option("--dump-circuit", encode.dump, "Write the circuit as text ('-' for stdout)");
  encode_cmd->add_option("--builder", encode.dump_builder, "Circuit to dump: original or improved")
      ->capture_default_str();

  SeparateArgs separate;
  auto* separate_cmd = app.add_subcommand("separate", "Print the eigenvalue trajectory of the separator");
  separate_cmd->add_option("--fixture", separate.fixture, "Bundled matrix or instance");
  separate_cmd->add_option("--instance", separate.instance, "Instance JSON file (its final Hamiltonian is used)");
  separate_cmd->add_option("--matrix", separate.matrix, "Hamiltonian JSON file");
  separate_cmd->add_option("--order", separate.order, "Squaring rounds D")->capture_default_str();
  separate_cmd->add_option("--tolerance", separate.tolerance, "Allowed |lambda_max - 1| of the input");
  separate_cmd->add_option("--format", separate.format, "csv or json")->capture_default_str();
  separate_cmd->add_option("--out", separate.out, "Output file");

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Run an experiment and print its result table");
  bench_cmd->add_option("kind", bench_args.kind,
                        "gate-count, fixed-step, steps-to-target, separator-trace, random-ensemble, steps-vs-order");
  bench_cmd->add_option("--config", bench_args.config, "Experiment spec JSON (flags override it)");
  bench_cmd->add_option("--seed", bench_args.seed, "Base seed");
  bench_cmd->add_option("--methods", bench_args.methods, "Methods")->delimiter(',');
  bench_cmd->add_option("--steps", bench_args.steps, "M values")->delimiter(',');
  bench_cmd->add_option("--order", bench_args.orders, "D values")->delimiter(',');
  bench_cmd->add_option("--target", bench_args.target, "Target fidelity");
  bench_cmd->add_option("--cap", bench_args.cap, "Largest M for step searches");
  bench_cmd->add_option("--trials", bench_args.trials, "Random instances per dimension");
  bench_cmd->add_option("--dim", bench_args.dims, "Dimensions")->delimiter(',');
  bench_cmd->add_option("--fixture", bench_args.fixtures, "Fixtures")->delimiter(',');
  bench_cmd->add_flag("--no-fixtures", bench_args.no_fixtures, "Drop the default fixtures");
  bench_cmd->add_option("--backend", bench_args.backend, "matrix or circuit");
  bench_cmd->add_option("--time", bench_args.time, "Evolution time T for ohs/nhs");
  bench_cmd->add_option("--zero-fraction", bench_args.zero_fraction, "Zero fraction for gate-count matrices");
  bench_cmd->add_option("--tolerance", bench_args.tolerance, "Separator spectrum tolerance");
  bench_cmd->add_option("--format", bench_args.format, "csv or json")->capture_default_str();
  bench_cmd->add_option("--out", bench_args.out, "Output file");
  bench_cmd->add_option("--threads", bench_args.threads, "Worker threads (0: all cores)")->capture_default_str();
  bench_cmd->add_flag("--timestamp", bench_args.timestamp, "Record the wall-clock time in the metadata");

  std::string fixture_name;
  std::string fixture_out;
  auto* fixtures_cmd = app.add_subcommand("fixtures", "List, print or write the bundled fixtures");
  fixtures_cmd->add_option("--name", fixture_name, "Print one fixture");
  fixtures_cmd->add_option("--out", fixture_out, "Directory for all fixtures (file for --name)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*solve_cmd) return run_solve(solve);
    if (*encode_cmd) return run_encode(encode);
    if (*separate_cmd) return run_separate(separate);
    if (*bench_cmd) return run_bench(bench_args);
    if (*fixtures_cmd) return run_fixtures(fixture_name, fixture_out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const Error& e) {
    diagnose(e);
    return e.kind() == ErrorKind::ParseError ? kExitUsage : kExitNumerical;
  }
  return kExitUsage;
}
