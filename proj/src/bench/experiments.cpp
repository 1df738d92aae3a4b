#include "qdals/bench/experiments.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <exception>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "qdals/bench/fixtures.hpp"
#include "qdals/blockenc.hpp"
#include "qdals/eigsep.hpp"
#include "qdals/statevec.hpp"

namespace qdals::bench {

using nlohmann::json;
using solvers::Method;

namespace {

constexpr std::array<std::pair<ExperimentKind, std::string_view>, 6> kKindNames{{
    {ExperimentKind::GateCount, "gate-count"},
    {ExperimentKind::FixedStepFidelity, "fixed-step"},
    {ExperimentKind::StepsToTarget, "steps-to-target"},
    {ExperimentKind::SeparatorTrace, "separator-trace"},
    {ExperimentKind::RandomEnsemble, "random-ensemble"},
    {ExperimentKind::StepsVsOrder, "steps-vs-order"},
}};

constexpr std::array<std::string_view, 5> kBucketNames{
    "F<0.9", "0.9<=F<0.99", "0.99<=F<0.999", "0.999<=F<0.9999", "F>=0.9999"};

[[noreturn]] void bad_spec(const std::string& what) { throw Error(ErrorKind::OutOfRange, "experiment spec: " + what); }

bool is_new_scheme(Method m) { return solvers::scheme_of(m) == ham::Scheme::New; }

bool needs_instances(ExperimentKind k) {
  return k == ExperimentKind::FixedStepFidelity || k == ExperimentKind::StepsToTarget ||
         k == ExperimentKind::StepsVsOrder || k == ExperimentKind::RandomEnsemble;
}

// Runs fn(i) for i in [0, count) on a small thread pool. Results must be
// written by index so the schedule never affects output.
template <class Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads) : std::thread::hardware_concurrency();
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          const std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

struct NamedInstance {
  std::string name;
  qlsp::QlspInstance instance;
};

std::uint64_t dim_seed(const ExperimentSpec& spec, int dim) { return derive_seed(spec.seed, static_cast<std::uint64_t>(dim)); }

std::vector<NamedInstance> gather_instances(const ExperimentSpec& spec) {
  std::vector<NamedInstance> out;
  for (const auto& name : spec.fixtures) out.push_back({name, fixture_instance(name)});
  for (int dim : spec.dims) {
    const std::size_t first = out.size();
    out.resize(first + static_cast<std::size_t>(spec.trials));
    parallel_for(static_cast<std::size_t>(spec.trials), 0, [&](std::size_t t) {
      auto inst = qlsp::random_instance(dim, derive_seed(dim_seed(spec, dim), t));
      out[first + t] = {inst.label, std::move(inst)};
    });
  }
  return out;
}

struct RunConfig {
  std::string suffix;  // "/nbe/D=8"
  solvers::SolverConfig cfg;
};

std::vector<RunConfig> run_configs(const ExperimentSpec& spec) {
  std::vector<RunConfig> out;
  for (Method m : spec.methods) {
    solvers::SolverConfig cfg;
    cfg.method = m;
    cfg.backend = spec.backend;
    cfg.evolution_time = spec.evolution_time;
    const std::string base = "/" + std::string(solvers::method_name(m));
    if (is_new_scheme(m)) {
      for (int d : spec.orders) {
        cfg.separation_order = d;
        out.push_back({base + "/D=" + std::to_string(d), cfg});
      }
    } else {
      cfg.separation_order = 0;
      out.push_back({base, cfg});
    }
  }
  return out;
}

Cell failed() { return std::string("Failed"); }

// Fidelity at `steps`, or nullopt when the solver failed.
std::optional<double> fidelity_at(const qlsp::QlspInstance& p, solvers::SolverConfig cfg, int steps) {
  cfg.steps = steps;
  try {
    const auto report = solvers::solve(p, cfg);
    if (report.failed) return std::nullopt;
    return report.fidelity;
  } catch (const Error&) {
    return std::nullopt;
  }
}

Cell steps_cell(const qlsp::QlspInstance& p, const solvers::SolverConfig& cfg, const ExperimentSpec& spec) {
  try {
    const auto search = solvers::steps_to_fidelity(p, cfg, spec.target, spec.cap);
    if (!search.steps) return failed();
    return static_cast<std::int64_t>(*search.steps);
  } catch (const Error&) {
    return failed();
  }
}

ResultTable run_gate_count(const ExperimentSpec& spec, const RunOptions& opts) {
  ResultTable t;
  t.columns = {"dim",        "zeros",          "orig_rotations", "orig_frame",  "orig_total",  "impr_rotations",
               "impr_frame", "impr_total",     "rotation_savings", "improved_fewer", "mse_original", "mse_improved"};

  struct Source {
    std::string label;
    ComplexMatrix m;
  };
  std::vector<Source> sources;
  for (const auto& name : spec.fixtures) sources.push_back({name, fixture_matrix(name).matrix});
  for (int dim : spec.dims) {
    for (int i = 0; i < spec.trials; ++i) {
      const auto seed = derive_seed(dim_seed(spec, dim), static_cast<std::uint64_t>(i));
      sources.push_back({"sparse-" + std::to_string(dim) + "-" + std::to_string(i),
                         qlsp::random_sparse_matrix(dim, spec.zero_fraction, seed)});
    }
  }

  std::vector<ResultRow> rows(sources.size());
  std::vector<double> savings(sources.size());
  parallel_for(sources.size(), opts.threads, [&](std::size_t k) {
    const ComplexMatrix& m = sources[k].m;
    ResultRow& row = rows[k];
    row.label = sources[k].label;
    const auto zeros = (m.array() == Complex{}).count();
    try {
      const auto orig = blockenc::build_original(m);
      const auto impr = blockenc::build_improved(m);
      const auto go = blockenc::gate_metrics(orig);
      const auto gi = blockenc::gate_metrics(impr);
      savings[k] = blockenc::rotation_savings(go, gi);
      Cell mse_o, mse_i;
      if (orig.n_qubits() <= statevec::kMaxUnitaryQubits) {
        mse_o = blockenc::encode_mse(orig, m);
        mse_i = blockenc::encode_mse(impr, m);
      }
      row.cells = {static_cast<std::int64_t>(m.rows()), static_cast<std::int64_t>(zeros),
                   static_cast<std::int64_t>(go.rotations), static_cast<std::int64_t>(go.frame),
                   static_cast<std::int64_t>(go.total), static_cast<std::int64_t>(gi.rotations),
                   static_cast<std::int64_t>(gi.frame), static_cast<std::int64_t>(gi.total),
                   savings[k], static_cast<std::int64_t>(gi.rotations < go.rotations ? 1 : 0),
                   mse_o, mse_i};
    } catch (const Error&) {
      row.cells = {static_cast<std::int64_t>(m.rows()), static_cast<std::int64_t>(zeros)};
      row.cells.resize(t.columns.size(), failed());
    }
  });
  t.rows = std::move(rows);

  for (int dim : spec.dims) {
    double sum = 0.0;
    std::int64_t fewer = 0;
    int count = 0;
    for (std::size_t k = 0; k < t.rows.size(); ++k) {
      if (sources[k].m.rows() != dim || t.rows[k].cells.size() < 10) continue;
      const auto* flag = std::get_if<std::int64_t>(&t.rows[k].cells[9]);
      if (!flag) continue;
      sum += savings[k];
      fewer += *flag;
      ++count;
    }
    if (spec.trials == 0) continue;
    ResultRow summary{"mean/dim=" + std::to_string(dim), std::vector<Cell>(t.columns.size())};
    summary.cells[0] = static_cast<std::int64_t>(dim);
    summary.cells[8] = count > 0 ? Cell(sum / count) : failed();
    summary.cells[9] = count > 0 ? Cell(static_cast<double>(fewer) / count) : failed();
    t.rows.push_back(std::move(summary));
  }
  return t;
}

ResultTable run_fixed_step(const ExperimentSpec& spec, const RunOptions& opts) {
  ResultTable t;
  for (int m : spec.steps) t.columns.push_back("M=" + std::to_string(m));
  const auto instances = gather_instances(spec);
  const auto configs = run_configs(spec);
  t.rows.resize(instances.size() * configs.size());
  parallel_for(t.rows.size(), opts.threads, [&](std::size_t k) {
    const auto& inst = instances[k / configs.size()];
    const auto& rc = configs[k % configs.size()];
    ResultRow& row = t.rows[k];
    row.label = inst.name + rc.suffix;
    for (int m : spec.steps) {
      const auto f = fidelity_at(inst.instance, rc.cfg, m);
      row.cells.push_back(f ? Cell(*f) : failed());
    }
  });
  return t;
}

ResultTable run_steps_to_target(const ExperimentSpec& spec, const RunOptions& opts) {
  ResultTable t;
  t.columns = {"steps"};
  const auto instances = gather_instances(spec);
  const auto configs = run_configs(spec);
  t.rows.resize(instances.size() * configs.size());
  parallel_for(t.rows.size(), opts.threads, [&](std::size_t k) {
    const auto& inst = instances[k / configs.size()];
    const auto& rc = configs[k % configs.size()];
    t.rows[k] = {inst.name + rc.suffix, {steps_cell(inst.instance, rc.cfg, spec)}};
  });
  return t;
}

ResultTable run_steps_vs_order(const ExperimentSpec& spec, const RunOptions& opts) {
  ResultTable t;
  for (int d : spec.orders) t.columns.push_back("D=" + std::to_string(d));
  const auto instances = gather_instances(spec);
  const std::size_t per_row = spec.orders.size();
  const std::size_t n_rows = instances.size() * spec.methods.size();
  std::vector<Cell> cells(n_rows * per_row);
  parallel_for(cells.size(), opts.threads, [&](std::size_t k) {
    const std::size_t r = k / per_row;
    solvers::SolverConfig cfg;
    cfg.method = spec.methods[r % spec.methods.size()];
    cfg.backend = spec.backend;
    cfg.evolution_time = spec.evolution_time;
    cfg.separation_order = spec.orders[k % per_row];
    cells[k] = steps_cell(instances[r / spec.methods.size()].instance, cfg, spec);
  });
  for (std::size_t r = 0; r < n_rows; ++r) {
    ResultRow row{instances[r / spec.methods.size()].name + "/" +
                      std::string(solvers::method_name(spec.methods[r % spec.methods.size()])),
                  {}};
    row.cells.assign(cells.begin() + static_cast<std::ptrdiff_t>(r * per_row),
                     cells.begin() + static_cast<std::ptrdiff_t>((r + 1) * per_row));
    t.rows.push_back(std::move(row));
  }
  return t;
}

ResultTable run_separator_trace(const ExperimentSpec& spec) {
  ComplexMatrix h1;
  if (!spec.fixtures.empty()) {
    const auto& name = spec.fixtures.front();
    const auto& list = fixture_list();
    const auto it = std::find_if(list.begin(), list.end(), [&](const FixtureInfo& f) { return f.name == name; });
    h1 = it->kind == FixtureKind::Instance ? ham::new_pair(fixture_instance(name)).h1 : fixture_matrix(name).matrix;
  } else {
    const int dim = spec.dims.front();
    h1 = ham::new_pair(qlsp::random_instance(dim, derive_seed(dim_seed(spec, dim), 0))).h1;
  }
  return separator_table(h1, *std::max_element(spec.orders.begin(), spec.orders.end()), spec.spectrum_tolerance);
}

ResultTable run_random_ensemble(const ExperimentSpec& spec, const RunOptions& opts) {
  ResultTable t;
  for (auto name : kBucketNames) t.columns.emplace_back(name);
  t.columns.insert(t.columns.end(), {"failure_rate", "complete_success_rate", "median_F", "solver_failures"});

  const int dim = spec.dims.front();
  const auto configs = run_configs(spec);
  const std::size_t n_cols = configs.size() * spec.steps.size();
  const auto trials = static_cast<std::size_t>(spec.trials);
  // fid[trial][config * |M| + step]; nullopt marks a solver failure.
  std::vector<std::vector<std::optional<double>>> fid(trials);
  parallel_for(trials, opts.threads, [&](std::size_t tr) {
    const auto inst = qlsp::random_instance(dim, derive_seed(dim_seed(spec, dim), tr));
    auto& out = fid[tr];
    out.reserve(n_cols);
    for (const auto& rc : configs)
      for (int m : spec.steps) out.push_back(fidelity_at(inst, rc.cfg, m));
  });

  for (std::size_t c = 0; c < configs.size(); ++c) {
    for (std::size_t s = 0; s < spec.steps.size(); ++s) {
      std::array<std::int64_t, 5> buckets{};
      std::vector<double> values;
      std::int64_t solver_failures = 0;
      for (std::size_t tr = 0; tr < trials; ++tr) {
        const auto& f = fid[tr][c * spec.steps.size() + s];
        const double v = f.value_or(0.0);
        if (!f) ++solver_failures;
        ++buckets[static_cast<std::size_t>(fidelity_bucket(v))];
        values.push_back(v);
      }
      std::sort(values.begin(), values.end());
      const std::size_t mid = values.size() / 2;
      const double median = values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
      const auto n = static_cast<double>(trials);

      ResultRow row{std::string("random-") + std::to_string(dim) + configs[c].suffix + "/M=" +
                        std::to_string(spec.steps[s]),
                    {}};
      for (auto b : buckets) row.cells.emplace_back(b);
      row.cells.emplace_back(static_cast<double>(buckets[0]) / n);
      row.cells.emplace_back(static_cast<double>(buckets[4]) / n);
      row.cells.emplace_back(median);
      row.cells.emplace_back(solver_failures);
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return {};
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else {
          return v;
        }
      },
      c);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string_view kind_name(ExperimentKind k) {
  for (const auto& [kind, name] : kKindNames)
    if (kind == k) return name;
  return "?";
}

std::optional<ExperimentKind> parse_kind(std::string_view text) {
  for (const auto& [kind, name] : kKindNames)
    if (name == text) return kind;
  return std::nullopt;
}

ExperimentSpec default_spec(ExperimentKind kind) {
  ExperimentSpec s;
  s.kind = kind;
  switch (kind) {
    case ExperimentKind::GateCount:
      s.fixtures = {"s2_1"};
      s.dims = {2, 4, 8, 16};
      s.trials = 50;
      break;
    case ExperimentKind::FixedStepFidelity:
      s.fixtures = {"c2_1"};
      s.methods = {Method::OHS, Method::NHS, Method::OBE, Method::NBE};
      s.steps = {200};
      s.orders = {0};
      break;
    case ExperimentKind::StepsToTarget:
      s.fixtures = {"c2_1"};
      s.methods = {Method::OHS, Method::NHS, Method::OBE, Method::NBE};
      s.orders = {8};
      break;
    case ExperimentKind::SeparatorTrace:
      s.fixtures = {"h1_c4_1"};
      s.orders = {4};
      s.spectrum_tolerance = 2e-4;
      break;
    case ExperimentKind::RandomEnsemble:
      s.dims = {16};
      s.trials = 100;
      s.methods = {Method::OHS, Method::OBE, Method::NBE};
      s.steps = {50, 100, 150, 200};
      s.orders = {8};
      break;
    case ExperimentKind::StepsVsOrder:
      s.fixtures = {"c2_1"};
      s.methods = {Method::NBE};
      s.orders = {0, 2, 4, 6, 8};
      break;
  }
  return s;
}

void validate(const ExperimentSpec& s) {
  for (int m : s.steps)
    if (m < 1) bad_spec("every M must be >= 1");
  for (int d : s.orders)
    if (d < 0 || d > eigsep::kMaxOrder) bad_spec("every D must lie in [0, 16]");
  for (int d : s.dims)
    if (d < 2 || d > numkit::kMaxEigDim || !qlsp::is_power_of_two(d)) bad_spec("dimensions must be powers of two in [2, 64]");
  if (s.trials < 0) bad_spec("trials must be >= 0");
  if (!(s.target > 0.0 && s.target <= 1.0)) bad_spec("target fidelity must lie in (0, 1]");
  if (s.cap < 1) bad_spec("cap must be >= 1");
  if (!(s.zero_fraction >= 0.0 && s.zero_fraction < 1.0)) bad_spec("zero fraction must lie in [0, 1)");
  if (!(s.spectrum_tolerance > 0.0)) bad_spec("spectrum tolerance must be positive");
  if (s.evolution_time && !(*s.evolution_time > 0.0)) bad_spec("evolution time must be positive");
  for (const auto& f : s.fixtures)
    if (!is_fixture(f)) bad_spec("unknown fixture '" + f + "'");
  if (s.backend == solvers::Backend::CircuitLevel) {
    for (Method m : s.methods)
      if (!solvers::is_block_encoding(m)) bad_spec("the circuit backend applies to obe/nbe only");
  }

  const bool any_new = std::any_of(s.methods.begin(), s.methods.end(), is_new_scheme);
  if (needs_instances(s.kind)) {
    if (s.methods.empty()) bad_spec("at least one method is required");
    if (any_new && s.orders.empty()) bad_spec("new-scheme methods need at least one D");
    for (const auto& f : s.fixtures) {
      const auto& list = fixture_list();
      const auto it = std::find_if(list.begin(), list.end(), [&](const FixtureInfo& x) { return x.name == f; });
      if (it->kind != FixtureKind::Instance) bad_spec("fixture '" + f + "' is not a linear system");
    }
  }

  switch (s.kind) {
    case ExperimentKind::GateCount:
      if (s.fixtures.empty() && (s.dims.empty() || s.trials == 0)) bad_spec("no matrices to encode");
      break;
    case ExperimentKind::FixedStepFidelity:
      if (s.steps.empty()) bad_spec("at least one M is required");
      [[fallthrough]];
    case ExperimentKind::StepsToTarget:
      if (s.fixtures.empty() && (s.dims.empty() || s.trials == 0)) bad_spec("no instances");
      break;
    case ExperimentKind::StepsVsOrder:
      if (s.fixtures.empty() && (s.dims.empty() || s.trials == 0)) bad_spec("no instances");
      if (s.orders.empty()) bad_spec("at least one D is required");
      for (Method m : s.methods)
        if (!is_new_scheme(m)) bad_spec("steps-vs-order needs nhs or nbe");
      break;
    case ExperimentKind::SeparatorTrace:
      if (s.orders.empty()) bad_spec("a separation order is required");
      if (s.fixtures.size() > 1) bad_spec("at most one fixture");
      if (s.fixtures.empty() && s.dims.empty()) bad_spec("a fixture or a dimension is required");
      break;
    case ExperimentKind::RandomEnsemble:
      if (s.dims.size() != 1) bad_spec("exactly one dimension is required");
      if (s.trials < 1) bad_spec("trials must be >= 1");
      if (s.steps.empty()) bad_spec("at least one M is required");
      break;
  }
}

std::string spec_to_json(const ExperimentSpec& s) {
  json doc;
  doc["kind"] = kind_name(s.kind);
  json methods = json::array();
  for (Method m : s.methods) methods.push_back(solvers::method_name(m));
  doc["methods"] = methods;
  doc["steps"] = s.steps;
  doc["orders"] = s.orders;
  doc["target"] = s.target;
  doc["trials"] = s.trials;
  doc["seed"] = s.seed;
  doc["dims"] = s.dims;
  doc["fixtures"] = s.fixtures;
  doc["cap"] = s.cap;
  doc["backend"] = solvers::backend_name(s.backend);
  doc["evolution_time"] = s.evolution_time ? json(*s.evolution_time) : json(nullptr);
  doc["zero_fraction"] = s.zero_fraction;
  doc["spectrum_tolerance"] = s.spectrum_tolerance;
  return doc.dump();
}

ExperimentSpec spec_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::ParseError, "experiment spec must be a JSON object");
  const auto kind_it = doc.find("kind");
  if (kind_it == doc.end() || !kind_it->is_string()) throw Error(ErrorKind::ParseError, "field 'kind': missing");
  const auto kind = parse_kind(kind_it->get<std::string>());
  if (!kind) throw Error(ErrorKind::ParseError, "field 'kind': unknown kind '" + kind_it->get<std::string>() + "'");

  ExperimentSpec s = default_spec(*kind);
  try {
    if (doc.contains("methods")) {
      s.methods.clear();
      for (const auto& m : doc.at("methods")) {
        const auto parsed = solvers::parse_method(m.get<std::string>());
        if (!parsed) throw Error(ErrorKind::ParseError, "field 'methods': unknown method " + m.dump());
        s.methods.push_back(*parsed);
      }
    }
    if (doc.contains("steps")) s.steps = doc.at("steps").get<std::vector<int>>();
    if (doc.contains("orders")) s.orders = doc.at("orders").get<std::vector<int>>();
    if (doc.contains("target")) s.target = doc.at("target").get<double>();
    if (doc.contains("trials")) s.trials = doc.at("trials").get<int>();
    if (doc.contains("seed")) s.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("dims")) s.dims = doc.at("dims").get<std::vector<int>>();
    if (doc.contains("fixtures")) s.fixtures = doc.at("fixtures").get<std::vector<std::string>>();
    if (doc.contains("cap")) s.cap = doc.at("cap").get<int>();
    if (doc.contains("backend")) {
      const auto b = doc.at("backend").get<std::string>();
      if (b == "matrix") {
        s.backend = solvers::Backend::MatrixLevel;
      } else if (b == "circuit") {
        s.backend = solvers::Backend::CircuitLevel;
      } else {
        throw Error(ErrorKind::ParseError, "field 'backend': expected matrix or circuit");
      }
    }
    if (doc.contains("evolution_time")) {
      const auto& e = doc.at("evolution_time");
      s.evolution_time = e.is_null() ? std::nullopt : std::optional<double>(e.get<double>());
    }
    if (doc.contains("zero_fraction")) s.zero_fraction = doc.at("zero_fraction").get<double>();
    if (doc.contains("spectrum_tolerance")) s.spectrum_tolerance = doc.at("spectrum_tolerance").get<double>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  return s;
}

std::uint64_t config_hash(const ExperimentSpec& spec) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : spec_to_json(spec)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(base), static_cast<std::uint32_t>(base >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (std::uint64_t{out[0]} << 32) | out[1];
}

ResultTable separator_table(const ComplexMatrix& h1, int order, double spectrum_tolerance) {
  const auto trace = eigsep::separate(h1, order, spectrum_tolerance).second;

  ResultTable t;
  for (int r = 0; r <= order; ++r) t.columns.push_back("round=" + std::to_string(r));
  const Eigen::Index n = h1.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    ResultRow row{"lambda_" + std::to_string(i + 1), {}};
    for (const auto& s : trace.spectra) row.cells.emplace_back(s(i));
    t.rows.push_back(std::move(row));
  }
  ResultRow renorm{"renorm", {Cell{}}};
  for (double f : trace.renorm_factors) renorm.cells.emplace_back(f);
  t.rows.push_back(std::move(renorm));
  ResultRow gaps{"gap", {}};
  for (const auto& s : trace.spectra) gaps.cells.emplace_back(n < 2 ? 0.0 : s(n - 1) - s(n - 2));
  t.rows.push_back(std::move(gaps));
  return t;
}

int fidelity_bucket(double f) {
  if (f < 0.9) return 0;
  if (f < 0.99) return 1;
  if (f < 0.999) return 2;
  if (f < 0.9999) return 3;
  return 4;
}

const Cell* ResultTable::find(const std::string& row, const std::string& column) const {
  const auto col = std::find(columns.begin(), columns.end(), column);
  if (col == columns.end()) return nullptr;
  const auto idx = static_cast<std::size_t>(col - columns.begin());
  for (const auto& r : rows)
    if (r.label == row) return idx < r.cells.size() ? &r.cells[idx] : nullptr;
  return nullptr;
}

std::string to_csv(const ResultTable& t) {
  std::ostringstream os;
  for (const auto& [key, value] : t.metadata) os << "# " << key << ": " << value << "\n";
  os << "label";
  for (const auto& c : t.columns) os << "," << csv_field(c);
  os << "\n";
  for (const auto& r : t.rows) {
    os << csv_field(r.label);
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << "," << csv_field(i < r.cells.size() ? cell_text(r.cells[i]) : "");
    os << "\n";
  }
  return os.str();
}

std::string to_json(const ResultTable& t) {
  json doc;
  json meta = json::object();
  for (const auto& [key, value] : t.metadata) meta[key] = value;
  doc["metadata"] = meta;
  doc["columns"] = t.columns;
  json rows = json::array();
  for (const auto& r : t.rows) {
    json cells = json::array();
    for (const auto& c : r.cells) {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
              cells.push_back(nullptr);
            } else {
              cells.push_back(v);
            }
          },
          c);
    }
    rows.push_back({{"label", r.label}, {"cells", cells}});
  }
  doc["rows"] = rows;
  return doc.dump(2) + "\n";
}

ResultTable run_experiment(const ExperimentSpec& spec, const RunOptions& opts) {
  validate(spec);
  ResultTable t;
  switch (spec.kind) {
    case ExperimentKind::GateCount: t = run_gate_count(spec, opts); break;
    case ExperimentKind::FixedStepFidelity: t = run_fixed_step(spec, opts); break;
    case ExperimentKind::StepsToTarget: t = run_steps_to_target(spec, opts); break;
    case ExperimentKind::SeparatorTrace: t = run_separator_trace(spec); break;
    case ExperimentKind::RandomEnsemble: t = run_random_ensemble(spec, opts); break;
    case ExperimentKind::StepsVsOrder: t = run_steps_vs_order(spec, opts); break;
  }
  t.metadata = {
      {"generator", "qdals bench"},
      {"kind", std::string(kind_name(spec.kind))},
      {"seed", std::to_string(spec.seed)},
      {"config_hash", hex64(config_hash(spec))},
      {"config", spec_to_json(spec)},
  };
  if (opts.timestamp) t.metadata.emplace_back("timestamp", utc_now());
  return t;
}

}  // namespace qdals::bench
