#pragma once

#include "qdals/circuit.hpp"
#include "qdals/numkit.hpp"

namespace qdals::statevec {

inline constexpr int kMaxUnitaryQubits = 12;

/// Dense amplitudes over n qubits; qubit q is bit q of the basis index.
class StateVector {
 public:
  explicit StateVector(int n_qubits);  // |0...0>
  StateVector(int n_qubits, ComplexVector amps);

  static StateVector basis(int n_qubits, Eigen::Index index);
  /// |0_anc> (x) |main>: `main` fills the lowest 2^{n_main} amplitudes.
  static StateVector with_ancillas(const ComplexVector& main, int n_anc);

  int n_qubits() const { return n_qubits_; }
  const ComplexVector& amps() const { return amps_; }
  double norm() const { return amps_.norm(); }
  void normalize();

  /// In-place gate application.
  void apply(const blockenc::Gate& g);

 private:
  int n_qubits_;
  ComplexVector amps_;
};

/// Ancilla-zero branch of a state, renormalized.
struct PostSelection {
  ComplexVector kept_state;
  double success_prob;
};

StateVector apply_gate(StateVector state, const blockenc::Gate& g);
StateVector run_circuit(StateVector state, const blockenc::Circuit& c);

/// Column k is the circuit applied to basis state k. At most 12 qubits.
ComplexMatrix full_unitary(const blockenc::Circuit& c);

/// Projects the top `n_anc` qubits onto |0...0>. Throws ZeroProjection when
/// the surviving branch has squared norm below 1e-14.
PostSelection post_select_ancillas(const StateVector& state, int n_anc);

}  // namespace qdals::statevec
