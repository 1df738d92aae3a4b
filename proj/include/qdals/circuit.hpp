#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qdals/error.hpp"

namespace qdals::blockenc {

enum class GateKind { PauliX, Hadamard, Swap, ControlledRY, ControlledRZ };

/// A control condition: the gate fires only when `qubit` holds `value`.
struct Control {
  int qubit;
  bool value;
};

/// Rotation gates carry one target and an angle a, acting as
/// RY(a) = [[cos a/2, -sin a/2], [sin a/2, cos a/2]] and
/// RZ(a) = diag(e^{-i a/2}, e^{i a/2}). Swap carries two targets.
struct Gate {
  GateKind kind;
  std::vector<int> targets;
  std::vector<Control> controls;
  double angle = 0.0;

  bool is_rotation() const { return kind == GateKind::ControlledRY || kind == GateKind::ControlledRZ; }
};

std::string_view kind_name(GateKind kind);

/// Gate list over main + ancilla qubits.
///
/// Qubit q is bit q of the basis-state index. For block-encoding circuits
/// over an N = 2^n matrix the layout is: q_j (main, column index) on qubits
/// [0, n), q_i (row index) on [n, 2n) and q_TOP on qubit 2n, so q_TOP is the
/// most significant bit and the ancilla-zero subspace is the first N
/// amplitudes.
class Circuit {
 public:
  Circuit(int n_main, int n_anc, double scale = 1.0);

  int n_main() const { return n_main_; }
  int n_anc() const { return n_anc_; }
  int n_qubits() const { return n_main_ + n_anc_; }
  double scale() const { return scale_; }
  const std::vector<Gate>& gates() const { return gates_; }

  /// Validates qubit indices, target/control disjointness and angle finiteness.
  Circuit& add(Gate g);

  Circuit& x(int target);
  Circuit& h(int target);
  Circuit& swap(int a, int b);
  Circuit& cry(int target, std::vector<Control> controls, double angle);
  Circuit& crz(int target, std::vector<Control> controls, double angle);

  // Block-encoding register accessors (valid when n_anc == n_main + 1).
  int top_qubit() const { return 2 * n_main_; }
  int row_qubit(int k) const { return n_main_ + k; }
  int col_qubit(int k) const { return k; }

  /// Adjoint circuit: reversed order, rotation angles negated.
  Circuit inverse() const;

 private:
  int n_main_;
  int n_anc_;
  double scale_;
  std::vector<Gate> gates_;
};

/// One gate per line: `KIND target(s) [qubit=bit ...] angle`, preceded by a
/// `#` header carrying the register sizes and scale.
std::string to_text(const Circuit& c);
void write_text(std::ostream& os, const Circuit& c);

}  // namespace qdals::blockenc
