#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace entang {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

// Single numerical-zero cutoff for spectra, ranks and commutators.
inline constexpr double kSpectrumTol = 1e-10;
// A post-projection norm below this counts as annihilation of the state.
inline constexpr double kAnnihilationTol = 1e-12;
// Witness / reconstruction fidelity tolerance.
inline constexpr double kWitnessTol = 1e-9;
// One-particle orthogonality threshold.
inline constexpr double kOpoTol = 1e-9;

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct StatisticsError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A cross-check between routes that must agree has failed.  Signals a
// numerical fault, never a physics outcome.
struct InternalCheckError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace entang
