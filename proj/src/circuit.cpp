#include "qdals/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace qdals::blockenc {

std::string_view kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::PauliX: return "X";
    case GateKind::Hadamard: return "H";
    case GateKind::Swap: return "SWAP";
    case GateKind::ControlledRY: return "CRY";
    case GateKind::ControlledRZ: return "CRZ";
  }
  return "?";
}

Circuit::Circuit(int n_main, int n_anc, double scale) : n_main_(n_main), n_anc_(n_anc), scale_(scale) {
  if (n_main < 0 || n_anc < 0 || n_main + n_anc < 1) {
    throw Error(ErrorKind::OutOfRange, "circuit needs at least one qubit");
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) throw Error(ErrorKind::OutOfRange, "circuit scale must be positive");
}

Circuit& Circuit::add(Gate g) {
  const int n = n_qubits();
  auto check = [n](int q) {
    if (q < 0 || q >= n) {
      throw Error(ErrorKind::IndexOutOfRange, "qubit " + std::to_string(q) + " outside [0, " + std::to_string(n) + ")");
    }
  };
  const std::size_t want_targets = g.kind == GateKind::Swap ? 2 : 1;
  if (g.targets.size() != want_targets) {
    throw Error(ErrorKind::OutOfRange, std::string(kind_name(g.kind)) + " takes " + std::to_string(want_targets) +
                                           " target(s)");
  }
  for (int t : g.targets) check(t);
  if (g.kind == GateKind::Swap && g.targets[0] == g.targets[1]) {
    throw Error(ErrorKind::OutOfRange, "SWAP targets must differ");
  }
  for (const auto& c : g.controls) {
    check(c.qubit);
    if (std::find(g.targets.begin(), g.targets.end(), c.qubit) != g.targets.end()) {
      throw Error(ErrorKind::OutOfRange, "qubit " + std::to_string(c.qubit) + " is both control and target");
    }
  }
  if (!std::isfinite(g.angle)) throw Error(ErrorKind::OutOfRange, "gate angle is not finite");
  gates_.push_back(std::move(g));
  return *this;
}

Circuit& Circuit::x(int target) { return add({GateKind::PauliX, {target}, {}, 0.0}); }
Circuit& Circuit::h(int target) { return add({GateKind::Hadamard, {target}, {}, 0.0}); }
Circuit& Circuit::swap(int a, int b) { return add({GateKind::Swap, {a, b}, {}, 0.0}); }

Circuit& Circuit::cry(int target, std::vector<Control> controls, double angle) {
  return add({GateKind::ControlledRY, {target}, std::move(controls), angle});
}

Circuit& Circuit::crz(int target, std::vector<Control> controls, double angle) {
  return add({GateKind::ControlledRZ, {target}, std::move(controls), angle});
}

Circuit Circuit::inverse() const {
  Circuit out(n_main_, n_anc_, scale_);
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
    Gate g = *it;
    if (g.is_rotation()) g.angle = -g.angle;
    out.gates_.push_back(std::move(g));
  }
  return out;
}

void write_text(std::ostream& os, const Circuit& c) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", c.scale());
  os << "# n_main=" << c.n_main() << " n_anc=" << c.n_anc() << " scale=" << buf << " gates=" << c.gates().size()
     << '\n';
  for (const auto& g : c.gates()) {
    os << kind_name(g.kind);
    for (int t : g.targets) os << ' ' << t;
    if (!g.controls.empty()) {
      os << " [";
      for (std::size_t k = 0; k < g.controls.size(); ++k) {
        if (k) os << ' ';
        os << g.controls[k].qubit << '=' << (g.controls[k].value ? 1 : 0);
      }
      os << ']';
    }
    if (g.is_rotation()) {
      std::snprintf(buf, sizeof buf, "%.17g", g.angle);
      os << ' ' << buf;
    }
    os << '\n';
  }
}

std::string to_text(const Circuit& c) {
  std::ostringstream os;
  write_text(os, c);
  return os.str();
}

}  // namespace qdals::blockenc
