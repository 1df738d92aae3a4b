#pragma once

// JSON persistence for instances and bare matrices.
//
// Instance files:
//   {
//     "A": [[[re, im], ...], ...],   row-major
//     "b": [[re, im], ...],
//     "dim": N,
//     "hermitian": true,
//     "label": "...",
//     "seed": 7                      optional
//   }
// Matrix files carry "dim", "hermitian", "label" and "matrix" (same layout as
// "A"). Keys are written sorted and doubles with round-trip precision, so
// save(load(f)) reproduces a canonical file byte for byte.

#include <filesystem>
#include <string>

#include "qdals/qlsp.hpp"

namespace qdals::bench {

std::string instance_to_json(const qlsp::QlspInstance& p);
/// Throws ParseError (with the JSON position or the offending field) or
/// InvariantViolation when the matrix is not Hermitian. An unnormalized b is
/// normalized; an already-normalized b is kept bit-exact.
qlsp::QlspInstance instance_from_json(const std::string& text);

void save_instance(const qlsp::QlspInstance& p, const std::filesystem::path& path);
qlsp::QlspInstance load_instance(const std::filesystem::path& path);

struct LabeledMatrix {
  ComplexMatrix matrix;
  std::string label;
};

std::string matrix_to_json(const LabeledMatrix& m);
/// "hermitian": true is checked against the data (InvariantViolation).
LabeledMatrix matrix_from_json(const std::string& text);

void save_matrix(const LabeledMatrix& m, const std::filesystem::path& path);
LabeledMatrix load_matrix(const std::filesystem::path& path);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace qdals::bench
