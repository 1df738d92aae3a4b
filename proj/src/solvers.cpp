#include "qdals/solvers.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "qdals/blockenc.hpp"
#include "qdals/statevec.hpp"

namespace qdals::solvers {

std::string_view method_name(Method m) {
  switch (m) {
    case Method::OHS: return "ohs";
    case Method::NHS: return "nhs";
    case Method::OBE: return "obe";
    case Method::NBE: return "nbe";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view text) {
  for (Method m : {Method::OHS, Method::NHS, Method::OBE, Method::NBE})
    if (text == method_name(m)) return m;
  return std::nullopt;
}

std::string_view backend_name(Backend b) { return b == Backend::MatrixLevel ? "matrix" : "circuit"; }

bool is_block_encoding(Method m) { return m == Method::OBE || m == Method::NBE; }

ham::Scheme scheme_of(Method m) {
  return (m == Method::OHS || m == Method::OBE) ? ham::Scheme::Original : ham::Scheme::New;
}

void validate(const SolverConfig& cfg) {
  if (cfg.steps < 1) throw Error(ErrorKind::OutOfRange, "steps must be >= 1");
  if (cfg.separation_order < 0 || cfg.separation_order > eigsep::kMaxOrder) {
    throw Error(ErrorKind::OutOfRange, "separation order must lie in [0, 16]");
  }
  if (cfg.evolution_time && !(*cfg.evolution_time > 0.0)) {
    throw Error(ErrorKind::OutOfRange, "evolution time must be positive");
  }
  if (cfg.backend == Backend::CircuitLevel && !is_block_encoding(cfg.method)) {
    throw Error(ErrorKind::OutOfRange, "the circuit backend applies to block-encoding methods only");
  }
}

std::optional<double> SolveReport::cumulative_success_prob() const {
  if (!log10_success_prob) return std::nullopt;
  return std::pow(10.0, *log10_success_prob);
}

namespace {

using Clock = std::chrono::steady_clock;

struct Prepared {
  ham::HamiltonianPair pair;
  ComplexVector initial;
  ComplexVector exact;
  Eigen::Index n;  // solution dimension
  std::vector<std::string> warnings;
};

Prepared prepare(const qlsp::QlspInstance& p, const SolverConfig& cfg) {
  validate(cfg);
  Prepared out{ham::HamiltonianPair{}, {}, qlsp::exact_solution(p).x, p.dim(), {}};
  if (scheme_of(cfg.method) == ham::Scheme::Original) {
    out.pair = ham::original_pair(p);
    out.initial = ComplexVector::Zero(2 * out.n);
    out.initial.head(out.n) = p.b;
  } else {
    out.pair = ham::new_pair(p);
    if (const double g = eigsep::gap(out.pair.h1); g < 1e-8) {
      std::ostringstream os;
      os << "final Hamiltonian top gap " << g << " < 1e-8; level transitions likely";
      out.warnings.push_back(os.str());
    }
    if (cfg.separation_order > 0) out.pair.h1 = eigsep::separate(out.pair.h1, cfg.separation_order).first;
    out.initial = p.b;
  }
  return out;
}

// Solution-register state: the first N amplitudes for the original (2N) scheme.
std::optional<ComplexVector> extract(const Prepared& prep, const ComplexVector& state) {
  if (prep.pair.scheme == ham::Scheme::New) return state;
  const ComplexVector block = state.head(prep.n);
  const double norm = block.norm();
  if (norm < 1e-10) return std::nullopt;
  return ComplexVector(block / norm);
}

double traced_fidelity(const Prepared& prep, const ComplexVector& state) {
  const auto x = extract(prep, state);
  return x ? qlsp::fidelity(*x, prep.exact) : 0.0;
}

SolveReport finish(SolveReport report, const Prepared& prep, const ComplexVector& state, Clock::time_point start) {
  report.warnings.insert(report.warnings.end(), prep.warnings.begin(), prep.warnings.end());
  if (!report.failed) {
    const auto x = extract(prep, state);
    if (!x) {
      report.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
      throw Error(ErrorKind::ZeroProjection, "solution block of the final state has norm below 1e-10");
    }
    report.final_state = *x;
    report.fidelity = qlsp::fidelity(*x, prep.exact);
  }
  report.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

}  // namespace

SolveReport solve_hs(const qlsp::QlspInstance& p, const SolverConfig& cfg) {
  if (is_block_encoding(cfg.method)) throw Error(ErrorKind::OutOfRange, "solve_hs needs OHS or NHS");
  const auto start = Clock::now();
  const Prepared prep = prepare(p, cfg);
  const ham::Schedule schedule(cfg.steps);
  const double tau = cfg.time_for(cfg.steps) * schedule.step_size();

  SolveReport report;
  report.config = cfg;
  report.steps_used = cfg.steps;
  ComplexVector state = prep.initial;

  std::optional<numkit::EigenPairs> eig0, eig1;
  if (cfg.trotter_split) {
    eig0 = numkit::herm_eig(prep.pair.h0);
    eig1 = numkit::herm_eig(prep.pair.h1);
  }
  for (int m = 1; m <= cfg.steps; ++m) {
    const double s = schedule.point(m);
    if (cfg.trotter_split) {
      state = numkit::apply_exp_i(*eig1, tau * s, state);
      state = numkit::apply_exp_i(*eig0, tau * (1.0 - s), state);
    } else {
      state = numkit::herm_exp_i(ham::interpolate(prep.pair, s), tau) * state;
    }
    if (cfg.record_trace) report.fidelity_trace.push_back(traced_fidelity(prep, state));
  }
  return finish(std::move(report), prep, state, start);
}

SolveReport solve_be(const qlsp::QlspInstance& p, const SolverConfig& cfg) {
  if (!is_block_encoding(cfg.method)) throw Error(ErrorKind::OutOfRange, "solve_be needs OBE or NBE");
  const auto start = Clock::now();
  const Prepared prep = prepare(p, cfg);
  const ham::Schedule schedule(cfg.steps);
  const auto dim = static_cast<double>(prep.pair.dim());

  SolveReport report;
  report.config = cfg;
  report.steps_used = cfg.steps;
  ComplexVector state = prep.initial;
  double log10_prob = 0.0;

  try {
    for (int m = 1; m <= cfg.steps; ++m) {
      const ComplexMatrix step = ham::first_order_step(ham::interpolate(prep.pair, schedule.point(m)));
      double prob = 0.0;
      if (cfg.backend == Backend::MatrixLevel) {
        const ComplexVector next = step * state;
        const double subnorm = numkit::max_abs_element(step) * dim;
        prob = next.squaredNorm() / (subnorm * subnorm);
        if (prob < 1e-14) {
          throw Error(ErrorKind::ZeroProjection, "step " + std::to_string(m) + " annihilates the state");
        }
        state = next / next.norm();
      } else {
        const blockenc::Circuit circuit = blockenc::build_improved(step);
        auto sv = statevec::StateVector::with_ancillas(state, circuit.n_anc());
        sv = statevec::run_circuit(std::move(sv), circuit);
        auto selected = statevec::post_select_ancillas(sv, circuit.n_anc());
        prob = selected.success_prob;
        state = std::move(selected.kept_state);
      }
      log10_prob += std::log10(prob);
      if (cfg.record_trace) report.fidelity_trace.push_back(traced_fidelity(prep, state));
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ZeroProjection) throw;
    report.failed = true;
    report.failure = e.what();
    report.fidelity = 0.0;
    report.final_state = ComplexVector::Zero(prep.n);
  }
  report.log10_success_prob = log10_prob;

  if (!report.failed && !extract(prep, state)) {
    report.failed = true;
    report.failure = "ZeroProjection: solution block of the final state has norm below 1e-10";
    report.final_state = ComplexVector::Zero(prep.n);
  }
  return finish(std::move(report), prep, state, start);
}

SolveReport solve(const qlsp::QlspInstance& p, const SolverConfig& cfg) {
  return is_block_encoding(cfg.method) ? solve_be(p, cfg) : solve_hs(p, cfg);
}

StepSearch steps_to_fidelity(const qlsp::QlspInstance& p, const SolverConfig& cfg, double f_target, int m_cap) {
  if (!(f_target >= 0.0 && f_target <= 1.0)) throw Error(ErrorKind::OutOfRange, "target fidelity outside [0, 1]");
  if (m_cap < 1) throw Error(ErrorKind::OutOfRange, "step cap must be >= 1");
  validate(cfg);

  StepSearch out;
  auto reaches = [&](int steps) {
    SolverConfig c = cfg;
    c.steps = steps;
    c.record_trace = false;
    double f = 0.0;
    try {
      f = solve(p, c).fidelity;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ZeroProjection) throw;
    }
    out.evaluations.emplace_back(steps, f);
    return f >= f_target;
  };

  int lo = 0;  // largest M known to miss (0: none)
  int hi = 0;  // smallest M known to hit
  for (long long m = 1;; m *= 2) {
    const int probe = static_cast<int>(std::min<long long>(m, m_cap));
    if (reaches(probe)) {
      hi = probe;
      break;
    }
    lo = probe;
    if (probe == m_cap) return out;
  }
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    if (reaches(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  out.steps = hi;
  return out;
}

}  // namespace qdals::solvers
