#pragma once

#include <optional>
#include <string>

#include "entang/state.hpp"

namespace entang {

/// Spin ⊗ position basis used by the named d=4 states: index = 2*spin + pos
/// with spin z-up = 0, z-down = 1 and position R = 0, L = 1.
inline ModeSpace spin_position_mode() {
  return ModeSpace(4, {"z↑⊗R", "z↑⊗L", "z↓⊗R",
                       "z↓⊗L"});
}

/// Spin-only singlet on d=2: (|01> - |10>)/sqrt(2).
inline StateVector singlet_state(Statistics stat = Statistics::Fermion) {
  Vector amps = Vector::Zero(4);
  amps[1] = 1.0 / std::sqrt(2.0);   // (0,1)
  amps[2] = -1.0 / std::sqrt(2.0);  // (1,0)
  std::vector<ModeSpace> modes(2, ModeSpace(2, {"z↑", "z↓"}));
  return StateVector(std::move(modes), std::move(amps), stat);
}

/// Antisymmetrized |z-up,R> |z-down,L> on the spin ⊗ position space:
/// non-entangled as a fermion pair despite its non-factorized form.
inline StateVector up_r_down_l_state() {
  const ModeSpace m = spin_position_mode();
  Vector amps = Vector::Zero(16);
  amps[0 * 4 + 3] = 1.0 / std::sqrt(2.0);   // (z-up R, z-down L)
  amps[3 * 4 + 0] = -1.0 / std::sqrt(2.0);  // (z-down L, z-up R)
  return StateVector({m, m}, std::move(amps), Statistics::Fermion);
}

/// Spin singlet tensored with the symmetric spatial combination
/// (|RL> + |LR>): the paradigmatic EPR state, entangled as a fermion pair.
inline StateVector epr_singlet_state() {
  const ModeSpace m = spin_position_mode();
  Vector amps = Vector::Zero(16);
  const double h = 0.5;
  amps[0 * 4 + 3] = h;   // up R , down L
  amps[1 * 4 + 2] = h;   // up L , down R
  amps[2 * 4 + 1] = -h;  // down R , up L
  amps[3 * 4 + 0] = -h;  // down L , up R
  return StateVector({m, m}, std::move(amps), Statistics::Fermion);
}

/// Resolves a named golden state.  The statistics override applies only to
/// "singlet" (the d=4 states are fermionic by construction).
inline std::optional<StateVector> named_state(
    const std::string& name,
    std::optional<Statistics> stat = std::nullopt) {
  if (name == "singlet")
    return singlet_state(stat.value_or(Statistics::Fermion));
  if (name == "eq5.1") return up_r_down_l_state();
  if (name == "eq5.2") return epr_singlet_state();
  return std::nullopt;
}

}  // namespace entang
