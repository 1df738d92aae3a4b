#pragma once

#include <utility>
#include <vector>

#include "qdals/numkit.hpp"

namespace qdals::eigsep {

inline constexpr int kDefaultOrder = 8;
inline constexpr int kMaxOrder = 16;
inline constexpr double kDefaultSpectrumTolerance = 1e-6;

/// Spectrum (ascending) after each squaring round; spectra[0] is the input.
struct SeparatorTrace {
  int order = 0;
  std::vector<RealVector> spectra;
  std::vector<double> renorm_factors;
};

/// Raises `h1` to the power 2^order by repeated squaring, dividing by the
/// largest eigenvalue after every round so the target eigenvalue stays at 1.
/// Eigenvectors are unchanged; every other eigenvalue lambda maps to
/// lambda^(2^order) up to the recorded renormalization.
///
/// The input's largest eigenvalue must be 1 within `spectrum_tolerance`
/// (SpectrumViolation otherwise). Order 0 returns the input untouched.
std::pair<ComplexMatrix, SeparatorTrace> separate(const ComplexMatrix& h1, int order,
                                                  double spectrum_tolerance = kDefaultSpectrumTolerance);

/// lambda_max - lambda_second; 0 for 1x1 input.
double gap(const ComplexMatrix& h);

}  // namespace qdals::eigsep
