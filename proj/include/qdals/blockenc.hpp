#pragma once

// Precise block encodings of an arbitrary N x N complex matrix M (N = 2^n).
//
// Both builders produce a circuit U on 2n + 1 qubits whose top-left N x N
// block equals M / (scale * N), scale = max|M_ij|. One uniformly controlled
// pair of rotations loads each scaled element h_ij = |h_ij| e^{i eta_ij}
// into the amplitude of q_TOP; the Hadamard / SWAP frame turns the element
// table into a matrix-vector product.
//
// The original builder starts q_TOP in |0> and needs an RY for every entry,
// zeros included (theta = pi/2). The improved builder flips q_TOP to |1>
// first, after which zero entries need no gate at all.

#include <vector>

#include "qdals/circuit.hpp"
#include "qdals/numkit.hpp"

namespace qdals::blockenc {

struct AngleRecord {
  int row;
  int col;
  double theta;
  double phi;
};

struct AngleTable {
  std::vector<AngleRecord> records;  // row-major order
};

/// theta = arccos|h|, phi = -eta for every entry (eta := 0 for zeros).
AngleTable angles_original(const ComplexMatrix& scaled);

/// theta = arcsin(-|h|), phi = -eta; zero entries are omitted.
AngleTable angles_improved(const ComplexMatrix& scaled);

Circuit build_original(const ComplexMatrix& m);
Circuit build_improved(const ComplexMatrix& m);

struct GateMetrics {
  int rotations = 0;  // controlled RY + controlled RZ
  int frame = 0;      // X + H + SWAP
  int total = 0;
};

GateMetrics gate_metrics(const Circuit& c);

/// 1 - improved.rotations / original.rotations.
double rotation_savings(const GateMetrics& original, const GateMetrics& improved);

/// Top-left N x N block of the circuit unitary times (scale * N).
ComplexMatrix effective_block(const Circuit& c);

/// Mean over entries of |effective_block(c) - m|^2.
double encode_mse(const Circuit& c, const ComplexMatrix& m);

}  // namespace qdals::blockenc
