#include "qdals/eigsep.hpp"

#include <cmath>
#include <sstream>

namespace qdals::eigsep {

std::pair<ComplexMatrix, SeparatorTrace> separate(const ComplexMatrix& h1, int order, double spectrum_tolerance) {
  if (order < 0 || order > kMaxOrder) {
    throw Error(ErrorKind::OutOfRange, "separation order must lie in [0, 16], got " + std::to_string(order));
  }
  SeparatorTrace trace;
  trace.order = order;
  RealVector spectrum = numkit::herm_eig(h1).values;
  const double top = spectrum(spectrum.size() - 1);
  if (std::abs(top - 1.0) > spectrum_tolerance) {
    std::ostringstream os;
    os << "largest eigenvalue " << top << " deviates from 1 by more than " << spectrum_tolerance;
    throw Error(ErrorKind::SpectrumViolation, os.str());
  }
  trace.spectra.push_back(spectrum);

  ComplexMatrix h = h1;
  for (int round = 0; round < order; ++round) {
    ComplexMatrix sq = h * h;
    sq = 0.5 * (sq + sq.adjoint()).eval();
    const auto eig = numkit::herm_eig(sq);
    const double factor = eig.values(eig.values.size() - 1);
    h = sq / factor;
    trace.renorm_factors.push_back(factor);
    trace.spectra.push_back(eig.values / factor);
  }
  return {std::move(h), std::move(trace)};
}

double gap(const ComplexMatrix& h) {
  const RealVector values = numkit::herm_eig(h).values;
  const Eigen::Index n = values.size();
  return n < 2 ? 0.0 : values(n - 1) - values(n - 2);
}

}  // namespace qdals::eigsep
