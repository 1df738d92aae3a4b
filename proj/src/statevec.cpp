#include "qdals/statevec.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace qdals::statevec {

using blockenc::Gate;
using blockenc::GateKind;

namespace {

using Mat2 = std::array<Complex, 4>;  // row-major 2x2

Mat2 gate_matrix(const Gate& g) {
  switch (g.kind) {
    case GateKind::PauliX: return {0.0, 1.0, 1.0, 0.0};
    case GateKind::Hadamard: {
      const double r = std::numbers::sqrt2 / 2.0;
      return {r, r, r, -r};
    }
    case GateKind::ControlledRY: {
      const double c = std::cos(g.angle / 2.0);
      const double s = std::sin(g.angle / 2.0);
      return {c, -s, s, c};
    }
    case GateKind::ControlledRZ:
      return {std::exp(-kI * (g.angle / 2.0)), 0.0, 0.0, std::exp(kI * (g.angle / 2.0))};
    case GateKind::Swap: break;
  }
  throw Error(ErrorKind::OutOfRange, "no 2x2 matrix for SWAP");
}

// Enumerates every basis index whose `fixed_mask` bits equal `fixed_value`.
// Cost is proportional to the number of matches, so a fully controlled gate
// touches only a couple of amplitudes.
template <class Fn>
void for_each_matching(int n_qubits, std::uint64_t fixed_mask, std::uint64_t fixed_value, Fn&& fn) {
  std::vector<int> free_bits;
  for (int q = 0; q < n_qubits; ++q)
    if (!(fixed_mask >> q & 1u)) free_bits.push_back(q);
  const std::uint64_t count = std::uint64_t{1} << free_bits.size();
  for (std::uint64_t k = 0; k < count; ++k) {
    std::uint64_t index = fixed_value;
    for (std::size_t b = 0; b < free_bits.size(); ++b)
      if (k >> b & 1u) index |= std::uint64_t{1} << free_bits[b];
    fn(index);
  }
}

void check_gate(const Gate& g, int n_qubits) {
  auto check = [n_qubits](int q) {
    if (q < 0 || q >= n_qubits) {
      throw Error(ErrorKind::IndexOutOfRange,
                  "qubit " + std::to_string(q) + " outside a " + std::to_string(n_qubits) + "-qubit state");
    }
  };
  for (int t : g.targets) check(t);
  for (const auto& c : g.controls) check(c.qubit);
}

}  // namespace

StateVector::StateVector(int n_qubits) : StateVector(basis(n_qubits, 0)) {}

StateVector::StateVector(int n_qubits, ComplexVector amps) : n_qubits_(n_qubits), amps_(std::move(amps)) {
  if (n_qubits < 1 || n_qubits > 30) throw Error(ErrorKind::TooLarge, "qubit count must lie in [1, 30]");
  if (amps_.size() != (Eigen::Index{1} << n_qubits)) {
    throw Error(ErrorKind::DimensionMismatch, "amplitude count does not match 2^n_qubits");
  }
}

StateVector StateVector::basis(int n_qubits, Eigen::Index index) {
  if (n_qubits < 1 || n_qubits > 30) throw Error(ErrorKind::TooLarge, "qubit count must lie in [1, 30]");
  ComplexVector amps = ComplexVector::Zero(Eigen::Index{1} << n_qubits);
  if (index < 0 || index >= amps.size()) throw Error(ErrorKind::IndexOutOfRange, "basis index out of range");
  amps(index) = 1.0;
  return StateVector(n_qubits, std::move(amps));
}

StateVector StateVector::with_ancillas(const ComplexVector& main, int n_anc) {
  const Eigen::Index dim = main.size();
  int n_main = 0;
  while ((Eigen::Index{1} << n_main) < dim) ++n_main;
  if ((Eigen::Index{1} << n_main) != dim) throw Error(ErrorKind::DimensionMismatch, "main register size not 2^n");
  const int n = n_main + n_anc;
  if (n < 1 || n > 30) throw Error(ErrorKind::TooLarge, "qubit count must lie in [1, 30]");
  ComplexVector amps = ComplexVector::Zero(Eigen::Index{1} << n);
  amps.head(dim) = main;
  return StateVector(n, std::move(amps));
}

void StateVector::normalize() {
  const double nrm = norm();
  if (nrm == 0.0) throw Error(ErrorKind::ZeroProjection, "cannot normalize a zero state");
  amps_ /= nrm;
}

void StateVector::apply(const Gate& g) {
  check_gate(g, n_qubits_);
  std::uint64_t mask = 0;
  std::uint64_t value = 0;
  for (const auto& c : g.controls) {
    mask |= std::uint64_t{1} << c.qubit;
    if (c.value) value |= std::uint64_t{1} << c.qubit;
  }

  if (g.kind == GateKind::Swap) {
    const std::uint64_t a = std::uint64_t{1} << g.targets[0];
    const std::uint64_t b = std::uint64_t{1} << g.targets[1];
    // Visit each |..1..0..> once and exchange it with |..0..1..>.
    for_each_matching(n_qubits_, mask | a | b, value | a, [&](std::uint64_t i) {
      std::swap(amps_(static_cast<Eigen::Index>(i)), amps_(static_cast<Eigen::Index>((i & ~a) | b)));
    });
    return;
  }

  const Mat2 u = gate_matrix(g);
  const std::uint64_t t = std::uint64_t{1} << g.targets[0];
  for_each_matching(n_qubits_, mask | t, value, [&](std::uint64_t i0) {
    const auto k0 = static_cast<Eigen::Index>(i0);
    const auto k1 = static_cast<Eigen::Index>(i0 | t);
    const Complex a0 = amps_(k0);
    const Complex a1 = amps_(k1);
    amps_(k0) = u[0] * a0 + u[1] * a1;
    amps_(k1) = u[2] * a0 + u[3] * a1;
  });
}

StateVector apply_gate(StateVector state, const Gate& g) {
  state.apply(g);
  return state;
}

StateVector run_circuit(StateVector state, const blockenc::Circuit& c) {
  if (state.n_qubits() != c.n_qubits()) {
    throw Error(ErrorKind::DimensionMismatch, "state has " + std::to_string(state.n_qubits()) +
                                                  " qubits, circuit acts on " + std::to_string(c.n_qubits()));
  }
  for (const auto& g : c.gates()) state.apply(g);
  return state;
}

ComplexMatrix full_unitary(const blockenc::Circuit& c) {
  const int n = c.n_qubits();
  if (n > kMaxUnitaryQubits) {
    throw Error(ErrorKind::TooLarge, "full_unitary limited to 12 qubits, circuit has " + std::to_string(n));
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  ComplexMatrix u(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) u.col(k) = run_circuit(StateVector::basis(n, k), c).amps();
  return u;
}

PostSelection post_select_ancillas(const StateVector& state, int n_anc) {
  if (n_anc < 0 || n_anc >= state.n_qubits()) {
    throw Error(ErrorKind::OutOfRange, "ancilla count must lie in [0, n_qubits)");
  }
  const Eigen::Index kept_dim = Eigen::Index{1} << (state.n_qubits() - n_anc);
  ComplexVector kept = state.amps().head(kept_dim);
  const double prob = kept.squaredNorm();
  if (prob < 1e-14) {
    throw Error(ErrorKind::ZeroProjection, "ancilla-zero branch has probability " + std::to_string(prob));
  }
  return PostSelection{kept / std::sqrt(prob), prob};
}

}  // namespace qdals::statevec
