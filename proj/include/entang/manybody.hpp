#pragma once

#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "entang/operators.hpp"
#include "entang/state.hpp"

namespace entang {

/// Split of N = M + K particles into two subgroups.
struct PartitionSpec {
  int m = 0;
  int k = 0;
  PartitionSpec(int m_, int k_) : m(m_), k(k_) {
    if (m < 1 || k < 1) throw InputError("PartitionSpec: need M,K >= 1");
  }
  int n() const { return m + k; }
};

/// A factorization of an N-fermion state into two internally antisymmetric,
/// one-particle-orthogonal subgroup states.
struct SubgroupFactorization {
  StateVector pi_m;
  StateVector phi_k;
  double opo_residual = 0.0;
};

namespace detail {

inline void require_fermion(const StateVector& s, const char* where) {
  if (s.statistics() != Statistics::Fermion)
    throw StatisticsError(std::string(where) + ": requires fermion statistics");
}

inline double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
  return r;
}

// Contracts op (r x d) into slot `slot` of the amplitude tensor; the slot
// dimension changes from d to r.
inline Vector apply_one_body(const Vector& a, std::vector<Index>& dims,
                             int slot, const Matrix& op) {
  const auto u = static_cast<std::size_t>(slot);
  const Index d = dims[u];
  const Index r = op.rows();
  Index left = 1, right = 1;
  for (std::size_t s = 0; s < u; ++s) left *= dims[s];
  for (std::size_t s = u + 1; s < dims.size(); ++s) right *= dims[s];
  Vector out = Vector::Zero(left * r * right);
  for (Index l = 0; l < left; ++l)
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < d; ++j) {
        const Complex c = op(i, j);
        if (c == Complex(0, 0)) continue;
        out.segment((l * r + i) * right, right) +=
            c * a.segment((l * d + j) * right, right);
      }
  dims[u] = r;
  return out;
}

}  // namespace detail

/// Frobenius norm of the single-slot contraction between sigma and
/// conj(phi); vanishing (below tol) is one-particle orthogonality.  By
/// antisymmetry of both factors, contracting the last slot of each suffices.
inline double opo_residual(const StateVector& sigma, const StateVector& phi) {
  detail::require_fermion(sigma, "opo_residual");
  detail::require_fermion(phi, "opo_residual");
  const Index d = sigma.mode(0).dim;
  if (phi.mode(0).dim != d)
    throw DimensionError("opo_residual: single-particle dimensions differ");
  const Index rows_s = sigma.amplitudes().size() / d;
  const Index rows_p = phi.amplitudes().size() / d;
  using RowMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                               Eigen::RowMajor>;
  Eigen::Map<const RowMat> ms(sigma.amplitudes().data(), rows_s, d);
  Eigen::Map<const RowMat> mp(phi.amplitudes().data(), rows_p, d);
  return (ms * mp.adjoint()).norm();
}

/// Single-particle reduced density matrix, occupation convention (trace N).
inline DensityOperator one_rdm(const StateVector& state) {
  detail::require_fermion(state, "one_rdm");
  const Index d = state.mode(0).dim;
  const Index rest = state.amplitudes().size() / d;
  // First slot slowest in row-major order, so the (d x rest) view is direct.
  using RowMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                               Eigen::RowMajor>;
  Eigen::Map<const RowMat> m(state.amplitudes().data(), d, rest);
  DensityOperator rho{static_cast<double>(state.particles()) *
                          (m * m.adjoint()),
                      static_cast<double>(state.particles())};
  return rho;
}

namespace detail {

// sqrt(C(N,K)) * P_A [pi ⊗ phi], unnormalized and unchecked.
inline Vector raw_embed(const StateVector& pi, const StateVector& phi) {
  const Index np = pi.amplitudes().size();
  const Index nf = phi.amplitudes().size();
  Vector product(np * nf);
  for (Index i = 0; i < np; ++i)
    product.segment(i * nf, nf) = pi.amplitudes()[i] * phi.amplitudes();
  const int n = pi.particles() + phi.particles();
  std::vector<Index> dims(static_cast<std::size_t>(n), pi.mode(0).dim);
  Vector projected = project_symmetry(product, dims, Parity::Antisymmetric);
  return std::sqrt(binomial(n, phi.particles())) * projected;
}

}  // namespace detail

/// The N-fermion state sqrt(C(N,K)) P_A [Pi ⊗ Phi].  Requires one-particle
/// orthogonal, internally antisymmetric factors; with those preconditions
/// the stated prefactor already yields norm 1 (asserted to 1e-9).
inline StateVector embed_partition(const StateVector& pi_m,
                                   const StateVector& phi_k) {
  detail::require_fermion(pi_m, "embed_partition");
  detail::require_fermion(phi_k, "embed_partition");
  if (pi_m.mode(0).dim != phi_k.mode(0).dim)
    throw DimensionError("embed_partition: single-particle dimensions differ");
  if (opo_residual(pi_m, phi_k) >= kOpoTol)
    throw InputError(
        "embed_partition: factors are not one-particle orthogonal");
  Vector amps = detail::raw_embed(pi_m, phi_k);
  if (std::abs(amps.norm() - 1.0) > 1e-9)
    throw InternalCheckError("embed_partition: embedded norm deviates from 1");
  const int n = pi_m.particles() + phi_k.particles();
  std::vector<ModeSpace> modes(static_cast<std::size_t>(n), pi_m.mode(0));
  return StateVector(std::move(modes), std::move(amps), Statistics::Fermion);
}

namespace detail {

struct NaturalOrbitals {
  std::vector<double> occupations;  // descending, > cutoff
  Matrix orbitals;                  // d x n_occ, matching columns
};

inline NaturalOrbitals natural_orbitals(const StateVector& state,
                                        double cutoff = 1e-9) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(one_rdm(state).matrix);
  NaturalOrbitals no;
  const Index d = es.eigenvalues().size();
  std::vector<Index> cols;
  for (Index k = d; k-- > 0;)
    if (es.eigenvalues()[k] > cutoff) cols.push_back(k);
  no.orbitals.resize(d, static_cast<Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    no.occupations.push_back(es.eigenvalues()[cols[j]]);
    no.orbitals.col(static_cast<Index>(j)) = es.eigenvectors().col(cols[j]);
  }
  return no;
}

// Tries to split `state` as embed(Pi, Phi) with Pi supported on the orbital
// columns listed in `delta` and Phi on `delta_star` (indices into
// `orbitals`).  Returns the factorization on success.
inline std::optional<SubgroupFactorization> try_orbital_split(
    const StateVector& state, const Matrix& orbitals,
    const std::vector<Index>& delta, const std::vector<Index>& delta_star,
    int m) {
  const int n = state.particles();
  const int k = n - m;
  Matrix u_delta(orbitals.rows(), static_cast<Index>(delta.size()));
  for (std::size_t j = 0; j < delta.size(); ++j)
    u_delta.col(static_cast<Index>(j)) = orbitals.col(delta[j]);
  Matrix u_star(orbitals.rows(), static_cast<Index>(delta_star.size()));
  for (std::size_t j = 0; j < delta_star.size(); ++j)
    u_star.col(static_cast<Index>(j)) = orbitals.col(delta_star[j]);

  // Project the first M slots onto the Delta support and the last K slots
  // onto the Delta* support; for an embedded state this block equals
  // Pi ⊗ Phi / sqrt(C(N,K)).
  Vector block = state.amplitudes();
  std::vector<Index> dims = state.dims();
  for (int s = 0; s < m; ++s)
    block = apply_one_body(block, dims, s, u_delta.adjoint());
  for (int s = m; s < n; ++s)
    block = apply_one_body(block, dims, s, u_star.adjoint());
  block *= std::sqrt(binomial(n, k));

  Index dim_pi = 1, dim_phi = 1;
  for (int s = 0; s < m; ++s) dim_pi *= dims[static_cast<std::size_t>(s)];
  for (int s = m; s < n; ++s) dim_phi *= dims[static_cast<std::size_t>(s)];
  Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
      bm(block.data(), dim_pi, dim_phi);
  Eigen::JacobiSVD<Matrix> svd(bm, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.singularValues().size() == 0) return std::nullopt;
  if (std::abs(svd.singularValues()[0] - 1.0) > 1e-6) return std::nullopt;
  if (svd.singularValues().size() > 1 && svd.singularValues()[1] > 1e-6)
    return std::nullopt;

  // Lift the factors back to the full single-particle basis.
  Vector pi_small = svd.matrixU().col(0);
  Vector phi_small = svd.matrixV().col(0).conjugate();
  std::vector<Index> pdims(static_cast<std::size_t>(m),
                           static_cast<Index>(delta.size()));
  for (int s = 0; s < m; ++s)
    pi_small = apply_one_body(pi_small, pdims, s, u_delta);
  std::vector<Index> fdims(static_cast<std::size_t>(k),
                           static_cast<Index>(delta_star.size()));
  for (int s = 0; s < k; ++s)
    phi_small = apply_one_body(phi_small, fdims, s, u_star);

  try {
    std::vector<ModeSpace> pmodes(static_cast<std::size_t>(m), state.mode(0));
    std::vector<ModeSpace> fmodes(static_cast<std::size_t>(k), state.mode(0));
    StateVector pi(std::move(pmodes), std::move(pi_small),
                   Statistics::Fermion);
    StateVector phi(std::move(fmodes), std::move(phi_small),
                    Statistics::Fermion);
    const double opo = opo_residual(pi, phi);
    if (opo >= kOpoTol) return std::nullopt;
    const StateVector rebuilt = embed_partition(pi, phi);
    if (std::norm(inner(rebuilt, state)) < 1.0 - 1e-9) return std::nullopt;
    return SubgroupFactorization{std::move(pi), std::move(phi), opo};
  } catch (const StatisticsError&) {
    return std::nullopt;
  } catch (const InputError&) {
    return std::nullopt;
  } catch (const InternalCheckError&) {
    return std::nullopt;
  }
}

}  // namespace detail

/// Searches for two non-entangled subgroups of cardinality M and N-M by
/// enumerating bipartitions of the natural orbitals whose occupations sum
/// to M.  Degenerate 1-RDM eigenspaces are kept atomic (occupation-1
/// orbitals excepted: those can always be regrouped freely); if the atomic
/// enumeration fails and non-trivial degeneracies exist, a randomized
/// rotation search within the degenerate blocks is tried as a best effort.
inline std::optional<SubgroupFactorization> detect_partition(
    const StateVector& state, int m, unsigned seed = 12345u,
    int max_restarts = 100) {
  detail::require_fermion(state, "detect_partition");
  const int n = state.particles();
  if (m < 1 || m >= n) throw InputError("detect_partition: invalid M");

  const auto no = detail::natural_orbitals(state);
  const Index n_occ = static_cast<Index>(no.occupations.size());

  // Group orbitals: degenerate eigenvalues stay together, except that
  // occupation-1 orbitals are each their own group.
  std::vector<std::vector<Index>> groups;
  bool has_hard_degeneracy = false;
  auto occ_of = [&](Index j) { return no.occupations[static_cast<std::size_t>(j)]; };
  for (Index j = 0; j < n_occ; ++j) {
    const bool unit = std::abs(occ_of(j) - 1.0) < 1e-8;
    if (!unit && !groups.empty() && groups.back().size() >= 1 &&
        std::abs(occ_of(groups.back().front()) - occ_of(j)) < 1e-8 &&
        std::abs(occ_of(groups.back().front()) - 1.0) >= 1e-8) {
      groups.back().push_back(j);
      has_hard_degeneracy = true;
    } else {
      groups.push_back({j});
    }
  }

  auto enumerate = [&](const Matrix& orbitals,
                       const std::vector<std::vector<Index>>& grp)
      -> std::optional<SubgroupFactorization> {
    const std::size_t g = grp.size();
    if (g > 20) throw InternalCheckError("detect_partition: too many groups");
    for (std::uint32_t mask = 0; mask < (1u << g); ++mask) {
      double occ = 0;
      for (std::size_t i = 0; i < g; ++i)
        if (mask & (1u << i))
          for (Index j : grp[i])
            occ += no.occupations[static_cast<std::size_t>(j)];
      if (std::abs(occ - m) > 1e-6) continue;
      std::vector<Index> delta, delta_star;
      for (std::size_t i = 0; i < g; ++i)
        for (Index j : grp[i])
          (mask & (1u << i) ? delta : delta_star).push_back(j);
      if (delta.empty() || delta_star.empty()) continue;
      if (auto hit =
              detail::try_orbital_split(state, orbitals, delta, delta_star, m))
        return hit;
    }
    return std::nullopt;
  };

  if (auto hit = enumerate(no.orbitals, groups)) return hit;

  if (has_hard_degeneracy) {
    // Best effort: rotate inside each degenerate block and retry with every
    // orbital treated individually.
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::vector<std::vector<Index>> singles;
    for (Index j = 0; j < n_occ; ++j) singles.push_back({j});
    for (int restart = 0; restart < max_restarts; ++restart) {
      Matrix rotated = no.orbitals;
      for (const auto& grp : groups) {
        if (grp.size() < 2) continue;
        const Index b = static_cast<Index>(grp.size());
        Matrix gmat(b, b);
        for (Index r = 0; r < b; ++r)
          for (Index c = 0; c < b; ++c)
            gmat(r, c) = Complex(gauss(rng), gauss(rng));
        Eigen::HouseholderQR<Matrix> qr(gmat);
        Matrix q = qr.householderQ() * Matrix::Identity(b, b);
        Matrix block(no.orbitals.rows(), b);
        for (Index c = 0; c < b; ++c)
          block.col(c) = no.orbitals.col(grp[static_cast<std::size_t>(c)]);
        block = block * q;
        for (Index c = 0; c < b; ++c)
          rotated.col(grp[static_cast<std::size_t>(c)]) = block.col(c);
      }
      if (auto hit = enumerate(rotated, singles)) return hit;
    }
  }
  return std::nullopt;
}

/// Residuals of the two reduced scalar product identities: embedding a pair
/// of one-particle-orthogonal subgroup states preserves inner products
/// within each subgroup.  basis_k spans the K-side submanifold containing
/// mu and nu; basis_m spans the M-side submanifold containing chi and tau.
/// With enforce_opo = false the residuals are computed even for inputs that
/// violate one-particle orthogonality (they will then be large).
inline std::pair<double, double> reduced_scalar_identity_residuals(
    const StateVector& chi_m, const StateVector& tau_m,
    const StateVector& mu_k, const StateVector& nu_k,
    const std::vector<StateVector>& basis_m,
    const std::vector<StateVector>& basis_k, bool enforce_opo = true) {
  if (enforce_opo) {
    auto check = [](const StateVector& a, const StateVector& b) {
      if (opo_residual(a, b) >= kOpoTol)
        throw InputError(
            "reduced_scalar_identity_residuals: inputs violate one-particle "
            "orthogonality");
    };
    check(chi_m, mu_k);
    check(chi_m, nu_k);
    check(tau_m, mu_k);
    check(tau_m, nu_k);
    for (const auto& xi : basis_k) {
      check(chi_m, xi);
      check(tau_m, xi);
    }
    for (const auto& ups : basis_m) {
      check(ups, mu_k);
      check(ups, nu_k);
    }
  }
  const Vector rhs_embed = detail::raw_embed(tau_m, nu_k);

  double lhs1 = 0;
  for (const auto& xi : basis_k) {
    const Vector lhs_embed = detail::raw_embed(chi_m, xi);
    lhs1 += std::norm(lhs_embed.dot(rhs_embed));
  }
  const double res1 = std::abs(lhs1 - std::norm(inner(chi_m, tau_m)));

  double lhs2 = 0;
  for (const auto& ups : basis_m) {
    const Vector lhs_embed = detail::raw_embed(ups, mu_k);
    lhs2 += std::norm(lhs_embed.dot(rhs_embed));
  }
  const double res2 = std::abs(lhs2 - std::norm(inner(mu_k, nu_k)));

  return {res1, res2};
}

}  // namespace entang
