#include "qdals/blockenc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qdals/qlsp.hpp"
#include "qdals/statevec.hpp"

namespace qdals::blockenc {

namespace {

constexpr double kMagnitudeSlack = 1e-12;

// arg(h) folded into (-pi, pi]; 0 for h == 0.
double phase_of(Complex h) {
  if (h == Complex{}) return 0.0;
  const double eta = std::arg(h);
  return eta <= -std::numbers::pi ? std::numbers::pi : eta;
}

double checked_magnitude(Complex h, int i, int j) {
  const double mag = std::abs(h);
  if (mag > 1.0 + kMagnitudeSlack) {
    std::ostringstream os;
    os << "|h(" << i << "," << j << ")| = " << mag << " exceeds 1";
    throw Error(ErrorKind::OutOfRange, os.str());
  }
  return std::min(mag, 1.0);
}

void require_square(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "block encoding needs a square matrix");
}

std::vector<Control> element_controls(const Circuit& c, int n, int row, int col) {
  std::vector<Control> controls;
  controls.reserve(static_cast<std::size_t>(2 * n));
  for (int k = 0; k < n; ++k) controls.push_back({c.row_qubit(k), static_cast<bool>(row >> k & 1)});
  for (int k = 0; k < n; ++k) controls.push_back({c.col_qubit(k), static_cast<bool>(col >> k & 1)});
  return controls;
}

enum class Variant { Original, Improved };

Circuit build(const ComplexMatrix& m, Variant variant) {
  require_square(m);
  const int n = qlsp::log2_exact(m.rows());
  const double scale = numkit::max_abs_element(m);
  if (!(scale > 0.0)) throw Error(ErrorKind::ZeroMatrix, "cannot block-encode the zero matrix");

  const ComplexMatrix scaled = m / scale;
  const AngleTable table = variant == Variant::Original ? angles_original(scaled) : angles_improved(scaled);

  Circuit c(n, n + 1, scale);
  if (variant == Variant::Improved) c.x(c.top_qubit());
  for (int k = 0; k < n; ++k) c.h(c.row_qubit(k));
  for (const auto& rec : table.records) {
    auto controls = element_controls(c, n, rec.row, rec.col);
    c.cry(c.top_qubit(), controls, 2.0 * rec.theta);
    if (rec.phi != 0.0) c.crz(c.top_qubit(), std::move(controls), 2.0 * rec.phi);
  }
  for (int k = 0; k < n; ++k) c.swap(c.row_qubit(k), c.col_qubit(k));
  for (int k = 0; k < n; ++k) c.h(c.row_qubit(k));
  return c;
}

}  // namespace

AngleTable angles_original(const ComplexMatrix& scaled) {
  AngleTable table;
  const auto rows = static_cast<int>(scaled.rows());
  const auto cols = static_cast<int>(scaled.cols());
  table.records.reserve(static_cast<std::size_t>(rows * cols));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const Complex h = scaled(i, j);
      const double mag = checked_magnitude(h, i, j);
      table.records.push_back({i, j, std::acos(mag), -phase_of(h)});
    }
  }
  return table;
}

AngleTable angles_improved(const ComplexMatrix& scaled) {
  AngleTable table;
  const auto rows = static_cast<int>(scaled.rows());
  const auto cols = static_cast<int>(scaled.cols());
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const Complex h = scaled(i, j);
      const double mag = checked_magnitude(h, i, j);
      if (h == Complex{}) continue;
      table.records.push_back({i, j, std::asin(-mag), -phase_of(h)});
    }
  }
  return table;
}

Circuit build_original(const ComplexMatrix& m) { return build(m, Variant::Original); }
Circuit build_improved(const ComplexMatrix& m) { return build(m, Variant::Improved); }

GateMetrics gate_metrics(const Circuit& c) {
  GateMetrics out;
  for (const auto& g : c.gates()) {
    if (g.is_rotation()) {
      ++out.rotations;
    } else {
      ++out.frame;
    }
  }
  out.total = out.rotations + out.frame;
  return out;
}

double rotation_savings(const GateMetrics& original, const GateMetrics& improved) {
  if (original.rotations == 0) return 0.0;
  return 1.0 - static_cast<double>(improved.rotations) / original.rotations;
}

ComplexMatrix effective_block(const Circuit& c) {
  const Eigen::Index dim = Eigen::Index{1} << c.n_main();
  const ComplexMatrix u = statevec::full_unitary(c);
  return u.topLeftCorner(dim, dim) * (c.scale() * static_cast<double>(dim));
}

double encode_mse(const Circuit& c, const ComplexMatrix& m) {
  const Eigen::Index dim = Eigen::Index{1} << c.n_main();
  if (m.rows() != dim || m.cols() != dim || c.n_anc() != c.n_main() + 1) {
    std::ostringstream os;
    os << "circuit encodes " << dim << "x" << dim << ", matrix is " << m.rows() << "x" << m.cols();
    throw Error(ErrorKind::DimensionMismatch, os.str());
  }
  const ComplexMatrix diff = effective_block(c) - m;
  return diff.cwiseAbs2().sum() / static_cast<double>(diff.size());
}

}  // namespace qdals::blockenc
