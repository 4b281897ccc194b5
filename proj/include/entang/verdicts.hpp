#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "entang/decomp.hpp"
#include "entang/operators.hpp"

namespace entang {

enum class Criterion {
  SchmidtRank1,
  SchmidtRankAbove1,
  RangeFull,
  SlaterRank1,
  SlaterRankAbove1,
  BosonSameProduct,
  BosonOrthogonalSym,
  BosonTakagiGeneric,
};

inline std::string to_string(Criterion c) {
  switch (c) {
    case Criterion::SchmidtRank1: return "SchmidtRank1";
    case Criterion::SchmidtRankAbove1: return "SchmidtRankAbove1";
    case Criterion::RangeFull: return "RangeFull";
    case Criterion::SlaterRank1: return "SlaterRank1";
    case Criterion::SlaterRankAbove1: return "SlaterRankAbove1";
    case Criterion::BosonSameProduct: return "BosonSameProduct";
    case Criterion::BosonOrthogonalSym: return "BosonOrthogonalSym";
    case Criterion::BosonTakagiGeneric: return "BosonTakagiGeneric";
  }
  return "?";
}

/// Classification outcome with machine-checkable witness data.  When
/// entangled is false the witness factors reproduce the state (after the
/// statistics-appropriate (anti)symmetrization) to 1e-9.
struct Verdict {
  bool entangled = false;
  Criterion criterion = Criterion::SchmidtRank1;
  std::vector<Vector> witness_factors;          // empty when entangled
  std::optional<Projector> witness_projector;   // rank-1 P for Eq-style checks
  std::map<std::string, double> diagnostics;
};

enum class PropertyLevel { Complete, Partial, None };

inline std::string to_string(PropertyLevel l) {
  switch (l) {
    case PropertyLevel::Complete: return "complete";
    case PropertyLevel::Partial: return "partial";
    case PropertyLevel::None: return "none";
  }
  return "?";
}

struct PropertyReport {
  PropertyLevel level = PropertyLevel::None;
  Projector range_projector;
  std::vector<PropertyStatement> statements;
};

namespace detail {

inline double state_overlap2(const StateVector& a, const StateVector& b) {
  const Complex ip = inner(a, b);
  return std::norm(ip);
}

}  // namespace detail

/// Decides non-entanglement of a distinguishable pair.  All three
/// equivalent conditions are evaluated independently (top Schmidt-vector
/// projector expectation, reduced-state rank, Schmidt rank) and must agree;
/// disagreement signals a numerical fault.
inline Verdict classify_distinguishable_pair(const StateVector& state) {
  if (state.particles() != 2 ||
      state.statistics() != Statistics::Distinguishable)
    throw StatisticsError(
        "classify_distinguishable_pair: requires a distinguishable pair");

  const SchmidtDecomposition sd = schmidt(state);
  const bool cond3 = sd.rank == 1;

  const DensityOperator rho1 = partial_trace(state, {0});
  const Projector range = range_projector(rho1);
  const bool cond2 = range.rank == 1;

  const Projector p_top = Projector::from_vector(sd.left_basis[0]);
  const double top_expect =
      expectation(state, op_on_slot(p_top.matrix, 0, state.dims())).real();
  const bool cond1 = std::abs(top_expect - 1.0) < 1e-9;

  if (cond1 != cond2 || cond2 != cond3)
    throw InternalCheckError(
        "classify_distinguishable_pair: the three equivalent conditions "
        "disagree");

  Verdict v;
  v.entangled = !cond3;
  v.diagnostics["schmidt_rank"] = sd.rank;
  v.diagnostics["max_projector_expectation"] = top_expect;
  if (!v.entangled) {
    v.criterion = Criterion::SchmidtRank1;
    v.witness_factors = {sd.left_basis[0], sd.right_basis[0]};
    v.witness_projector = p_top;
    const StateVector rebuilt = make_factorized(v.witness_factors);
    v.diagnostics["witness_fidelity"] = detail::state_overlap2(state, rebuilt);
  } else {
    v.criterion = range.rank == state.mode(0).dim ? Criterion::RangeFull
                                                  : Criterion::SchmidtRankAbove1;
  }
  return v;
}

/// Trichotomy of objective properties of one subsystem of a two-particle
/// state, from the range of its reduced statistical operator.
inline PropertyReport property_report(const StateVector& state, int subsystem) {
  if (state.particles() != 2)
    throw DimensionError("property_report: requires a 2-particle state");
  if (subsystem != 0 && subsystem != 1)
    throw InputError("property_report: invalid slot");
  const DensityOperator rho = partial_trace(state, {subsystem});
  PropertyReport rep;
  rep.range_projector = range_projector(rho);
  const Index d = rho.matrix.rows();
  if (rep.range_projector.rank == 1)
    rep.level = PropertyLevel::Complete;
  else if (rep.range_projector.rank < static_cast<int>(d))
    rep.level = PropertyLevel::Partial;
  else
    rep.level = PropertyLevel::None;
  return rep;
}

/// As above, additionally attempting a Borel-set statement for each given
/// observable; only observables commuting with the range projector yield one.
inline PropertyReport property_report(const StateVector& state, int subsystem,
                                      const std::vector<Matrix>& observables) {
  PropertyReport rep = property_report(state, subsystem);
  const DensityOperator rho = partial_trace(state, {subsystem});
  for (const auto& omega : observables)
    if (auto st = unsharp_property_report(rho, omega))
      rep.statements.push_back(*st);
  return rep;
}

/// |<A⊗B> - <A><B>| and whether it is below tol.  Factorization for every
/// Hermitian pair characterizes non-entanglement.
inline std::pair<bool, double> correlation_factorizes(const StateVector& state,
                                                      const Matrix& a,
                                                      const Matrix& b,
                                                      double tol = 1e-10) {
  if (state.particles() != 2)
    throw DimensionError("correlation_factorizes: requires a 2-particle state");
  if (a.rows() != state.mode(0).dim || b.rows() != state.mode(1).dim)
    throw DimensionError("correlation_factorizes: dimension mismatch");
  if ((a - a.adjoint()).norm() > 1e-10 || (b - b.adjoint()).norm() > 1e-10)
    throw InputError("correlation_factorizes: observables must be Hermitian");
  auto dims = state.dims();
  const Complex joint = expectation(state, kron(a, b));
  const Complex ea = expectation(state, op_on_slot(a, 0, dims));
  const Complex eb = expectation(state, op_on_slot(b, 1, dims));
  const double residual = std::abs(joint - ea * eb);
  return {residual < tol, residual};
}

namespace detail {

// Rebuilds the state from witness factors and returns the fidelity.
inline double witness_fidelity(const StateVector& state,
                               const std::vector<Vector>& factors) {
  const StateVector product = make_factorized(factors);
  if (state.statistics() == Statistics::Fermion) {
    auto anti = antisymmetrize(product);
    return anti ? state_overlap2(state, *anti) : 0.0;
  }
  if (state.statistics() == Statistics::Boson)
    return state_overlap2(state, symmetrize(product));
  return state_overlap2(state, product);
}

}  // namespace detail

/// Fermion pair: non-entangled iff the Slater rank is 1; the Slater pair is
/// the witness and its rank-1 projector must satisfy the exchange-projector
/// expectation Tr[E rho] = 1.
inline Verdict classify_fermion_pair(const StateVector& state) {
  if (state.particles() != 2 || state.statistics() != Statistics::Fermion)
    throw StatisticsError("classify_fermion_pair: requires a 2-fermion state");
  const SlaterDecomposition sl = slater(state);
  Verdict v;
  v.entangled = sl.slater_rank != 1;
  v.diagnostics["slater_rank"] = sl.slater_rank;
  if (!v.entangled) {
    v.criterion = Criterion::SlaterRank1;
    v.witness_factors = {sl.mode_pairs[0].first, sl.mode_pairs[0].second};
    v.witness_projector = Projector::from_vector(sl.mode_pairs[0].first);
    const double fid = detail::witness_fidelity(state, v.witness_factors);
    v.diagnostics["witness_fidelity"] = fid;
    const double e_expect =
        expectation(state,
                    build_exchange_projector(*v.witness_projector).matrix)
            .real();
    v.diagnostics["exchange_projector_expectation"] = e_expect;
    if (std::abs(e_expect - 1.0) > 1e-9 || fid < 1.0 - 1e-9)
      throw InternalCheckError(
          "classify_fermion_pair: witness cross-check failed");
  } else {
    v.criterion = Criterion::SlaterRankAbove1;
    v.diagnostics["top_pair_fidelity"] = 2.0 * sl.coefficients[0] *
                                         sl.coefficients[0];
  }
  return v;
}

/// Boson pair: non-entangled iff the Takagi rank is 1 (same-state product)
/// or the rank is 2 with both values equal to 1/sqrt(2) (symmetrized
/// orthogonal pair).
inline Verdict classify_boson_pair(const StateVector& state) {
  if (state.particles() != 2 || state.statistics() != Statistics::Boson)
    throw StatisticsError("classify_boson_pair: requires a 2-boson state");
  const TakagiDecomposition tk = takagi(state);
  Verdict v;
  v.diagnostics["takagi_rank"] = tk.rank;
  const bool same_product = tk.rank == 1;
  const bool orthogonal_sym =
      tk.rank == 2 && std::abs(tk.values[0] - tk.values[1]) < 1e-9;
  if (tk.rank == 2)
    v.diagnostics["takagi_value_gap"] = tk.values[0] - tk.values[1];
  v.entangled = !(same_product || orthogonal_sym);
  if (same_product) {
    v.criterion = Criterion::BosonSameProduct;
    v.witness_factors = {tk.modes[0], tk.modes[0]};
    v.witness_projector = Projector::from_vector(tk.modes[0]);
  } else if (orthogonal_sym) {
    v.criterion = Criterion::BosonOrthogonalSym;
    // sym(phi ⊗ xi) with phi = (u1 + i u2)/sqrt(2), xi = (u1 - i u2)/sqrt(2)
    // reproduces v (u1 u1^T + u2 u2^T) exactly, and phi ⊥ xi.
    const Vector phi = (tk.modes[0] + Complex(0, 1) * tk.modes[1]) /
                       std::sqrt(2.0);
    const Vector xi = (tk.modes[0] - Complex(0, 1) * tk.modes[1]) /
                      std::sqrt(2.0);
    v.witness_factors = {phi, xi};
    v.witness_projector = Projector::from_vector(phi);
  } else {
    v.criterion = Criterion::BosonTakagiGeneric;
  }
  if (!v.entangled) {
    const double fid = detail::witness_fidelity(state, v.witness_factors);
    v.diagnostics["witness_fidelity"] = fid;
    const double e_expect =
        expectation(state,
                    build_exchange_projector(*v.witness_projector).matrix)
            .real();
    v.diagnostics["exchange_projector_expectation"] = e_expect;
    if (std::abs(e_expect - 1.0) > 1e-9 || fid < 1.0 - 1e-9)
      throw InternalCheckError(
          "classify_boson_pair: witness cross-check failed");
  }
  return v;
}

/// Rank-1 projector P with Tr[E(1,2) rho] = 1 for an identical pair, when
/// one exists (from the Slater/Takagi witness); alternates such as the
/// second Slater vector are equally valid.
inline std::optional<Projector> complete_property_witness(
    const StateVector& state) {
  if (state.particles() != 2)
    throw DimensionError("complete_property_witness: requires a pair");
  Verdict v;
  if (state.statistics() == Statistics::Fermion)
    v = classify_fermion_pair(state);
  else if (state.statistics() == Statistics::Boson)
    v = classify_boson_pair(state);
  else
    throw StatisticsError(
        "complete_property_witness: requires identical particles");
  if (v.entangled) return std::nullopt;
  return v.witness_projector;
}

}  // namespace entang
