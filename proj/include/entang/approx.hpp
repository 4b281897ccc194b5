#pragma once

#include <cmath>
#include <string>

#include "entang/common.hpp"

namespace entang {

/// Analytic model for spatially separated electron groups: normalized
/// 1s-type orbitals with exponential envelope e^{-r/a}, centers a distance
/// d apart.  Lengths share one unit (default scale: cm).
struct OrbitalModel {
  enum class Envelope { ExponentialDecay };
  Envelope envelope = Envelope::ExponentialDecay;
  double decay_length = 1e-8;  // a
  double separation = 0.0;     // d

  OrbitalModel(double a, double d) : decay_length(a), separation(d) {
    if (a <= 0) throw InputError("OrbitalModel: decay length must be > 0");
    if (d < 0) throw InputError("OrbitalModel: separation must be >= 0");
  }
};

/// log10 of the two-center overlap S(d) = e^{-t} (1 + t + t^2/3), t = d/a.
/// Evaluated entirely in log domain; never underflows, depends only on d/a.
inline double log10_overlap(const OrbitalModel& model) {
  const double t = model.separation / model.decay_length;
  return (-t + std::log1p(t + t * t / 3.0)) / std::log(10.0);
}

struct ApproxVerdict {
  double log10_overlap = 0.0;
  double threshold_log10 = -100.0;
  bool almost_nonentangled = false;
  std::string caveat;
};

/// Classifies a two-group separation as almost non-entangled when the
/// overlap falls below the threshold.  The strict claim is never exactly
/// correct for non-compact orbitals; the verdict carries that caveat.
inline ApproxVerdict classify_separated_groups(const OrbitalModel& model,
                                               double threshold_log10 = -100.0) {
  ApproxVerdict v;
  v.log10_overlap = log10_overlap(model);
  v.threshold_log10 = threshold_log10;
  v.almost_nonentangled = v.log10_overlap < threshold_log10;
  v.caveat =
      "one-particle orthogonality holds only approximately for non-compact "
      "orbitals, so strictly speaking the groups are not perfectly "
      "non-entangled";
  return v;
}

}  // namespace entang
