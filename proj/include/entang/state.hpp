#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "entang/common.hpp"

namespace entang {

/// A finite-dimensional single-particle Hilbert space, optionally with
/// human-readable labels for the basis states (e.g. "z↑⊗R").
struct ModeSpace {
  Index dim = 0;
  std::vector<std::string> labels;  // empty, or exactly dim entries

  ModeSpace() = default;
  explicit ModeSpace(Index d, std::vector<std::string> lbl = {})
      : dim(d), labels(std::move(lbl)) {
    if (dim < 1) throw DimensionError("ModeSpace: dim must be >= 1");
    if (!labels.empty() && static_cast<Index>(labels.size()) != dim)
      throw DimensionError("ModeSpace: label count must equal dim");
  }

  std::string label(Index i) const {
    if (!labels.empty()) return labels[static_cast<std::size_t>(i)];
    return std::to_string(i);
  }

  bool operator==(const ModeSpace& o) const { return dim == o.dim; }
};

enum class Statistics { Distinguishable, Fermion, Boson };

inline std::string to_string(Statistics s) {
  switch (s) {
    case Statistics::Distinguishable: return "distinguishable";
    case Statistics::Fermion: return "fermion";
    case Statistics::Boson: return "boson";
  }
  return "?";
}

namespace detail {

inline Index product_dim(const std::vector<ModeSpace>& modes) {
  Index total = 1;
  for (const auto& m : modes) {
    if (m.dim < 1) throw DimensionError("mode dimension must be >= 1");
    total *= m.dim;
  }
  return total;
}

// Row-major linear index of a multi-index.
inline Index flatten(std::span<const Index> idx, std::span<const Index> dims) {
  Index lin = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) lin = lin * dims[k] + idx[k];
  return lin;
}

inline void unflatten(Index lin, std::span<const Index> dims,
                      std::span<Index> idx) {
  for (std::size_t k = dims.size(); k-- > 0;) {
    idx[k] = lin % dims[k];
    lin /= dims[k];
  }
}

inline int permutation_parity(std::span<const int> perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inversions;
  return (inversions % 2 == 0) ? +1 : -1;
}

// Moves the particle in source slot k to destination slot perm[k].
// result(j_0,...,j_{N-1}) = a(s) with s[perm[k]] = j[k] ... i.e. the
// amplitude at source tuple s lands at destination tuple j, j[perm[k]] = s[k].
inline Vector permute_axes(const Vector& a, std::span<const Index> dims,
                           std::span<const int> perm) {
  const std::size_t n = dims.size();
  std::vector<Index> dst_dims(n);
  for (std::size_t k = 0; k < n; ++k)
    dst_dims[static_cast<std::size_t>(perm[k])] = dims[k];
  Vector out(a.size());
  std::vector<Index> src(n), dst(n);
  for (Index lin = 0; lin < a.size(); ++lin) {
    unflatten(lin, dims, src);
    for (std::size_t k = 0; k < n; ++k)
      dst[static_cast<std::size_t>(perm[k])] = src[k];
    out[flatten(dst, dst_dims)] = a[lin];
  }
  return out;
}

}  // namespace detail

/// Pure state of N particles as a dense complex amplitude tensor over the
/// tensor product of the single-particle mode spaces.  Values are immutable
/// after construction; all operations below are pure functions.
class StateVector {
 public:
  /// Normalizes the amplitudes, then enforces the symmetry demanded by the
  /// statistics tag (antisymmetry for fermions, symmetry for bosons, both
  /// to 1e-12).
  StateVector(std::vector<ModeSpace> modes, Vector amplitudes, Statistics stat)
      : modes_(std::move(modes)),
        amplitudes_(std::move(amplitudes)),
        statistics_(stat) {
    if (modes_.empty()) throw DimensionError("StateVector: need N >= 1");
    if (detail::product_dim(modes_) != amplitudes_.size())
      throw DimensionError("StateVector: amplitude size does not match modes");
    const double norm = amplitudes_.norm();
    if (norm < kAnnihilationTol)
      throw InputError("StateVector: zero-norm amplitude tensor");
    amplitudes_ /= norm;
    if (statistics_ != Statistics::Distinguishable) {
      for (std::size_t k = 1; k < modes_.size(); ++k)
        if (!(modes_[k] == modes_[0]))
          throw StatisticsError(
              "identical-particle state requires equal mode spaces");
      check_exchange_symmetry();
    }
  }

  int particles() const { return static_cast<int>(modes_.size()); }
  const std::vector<ModeSpace>& modes() const { return modes_; }
  const ModeSpace& mode(int slot) const {
    return modes_[static_cast<std::size_t>(slot)];
  }
  std::vector<Index> dims() const {
    std::vector<Index> d(modes_.size());
    for (std::size_t k = 0; k < modes_.size(); ++k) d[k] = modes_[k].dim;
    return d;
  }
  const Vector& amplitudes() const { return amplitudes_; }
  Statistics statistics() const { return statistics_; }

  Complex amplitude(std::span<const Index> idx) const {
    auto d = dims();
    return amplitudes_[detail::flatten(idx, d)];
  }

  /// N=2 only: the d1 x d2 coefficient matrix A with psi = sum A_ij |i>|j>.
  Matrix pair_matrix() const {
    if (particles() != 2)
      throw DimensionError("pair_matrix: requires a 2-particle state");
    return Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic,
                                          Eigen::Dynamic, Eigen::RowMajor>>(
        amplitudes_.data(), modes_[0].dim, modes_[1].dim);
  }

 private:
  void check_exchange_symmetry() const {
    const double want = statistics_ == Statistics::Fermion ? -1.0 : 1.0;
    auto d = dims();
    const int n = particles();
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int t = 0; t + 1 < n; ++t) {
      std::iota(perm.begin(), perm.end(), 0);
      std::swap(perm[static_cast<std::size_t>(t)],
                perm[static_cast<std::size_t>(t) + 1]);
      Vector swapped = detail::permute_axes(amplitudes_, d, perm);
      if ((swapped - want * amplitudes_).norm() > 1e-12 * amplitudes_.norm() +
                                                      1e-12)
        throw StatisticsError("amplitudes violate the exchange symmetry of " +
                              to_string(statistics_) + " statistics");
    }
  }

  std::vector<ModeSpace> modes_;
  Vector amplitudes_;
  Statistics statistics_;
};

/// Normalized product state |phi_1> ⊗ ... ⊗ |phi_N>, tagged Distinguishable.
/// Symmetrization is a separate step.
inline StateVector make_factorized(const std::vector<Vector>& factors,
                                   std::vector<ModeSpace> modes = {}) {
  if (factors.empty()) throw DimensionError("make_factorized: need >= 1 factor");
  if (modes.empty())
    for (const auto& f : factors) modes.emplace_back(f.size());
  if (modes.size() != factors.size())
    throw DimensionError("make_factorized: modes/factors count mismatch");
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (factors[k].size() != modes[k].dim)
      throw DimensionError("make_factorized: factor dimension mismatch");
    if (factors[k].norm() < kAnnihilationTol)
      throw InputError("make_factorized: zero-norm factor");
  }
  Vector amps = factors[0];
  for (std::size_t k = 1; k < factors.size(); ++k) {
    Vector next(amps.size() * factors[k].size());
    for (Index i = 0; i < amps.size(); ++i)
      next.segment(i * factors[k].size(), factors[k].size()) =
          amps[i] * factors[k];
    amps = std::move(next);
  }
  return StateVector(std::move(modes), std::move(amps),
                     Statistics::Distinguishable);
}

namespace detail {

enum class Parity { Antisymmetric, Symmetric };

// Raw projector onto the (anti)symmetric manifold: (1/N!) sum over
// permutations, no renormalization.
inline Vector project_symmetry(const Vector& a, std::span<const Index> dims,
                               Parity parity) {
  const int n = static_cast<int>(dims.size());
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Vector sum = Vector::Zero(a.size());
  double count = 0;
  do {
    const double sign = parity == Parity::Antisymmetric
                            ? permutation_parity(perm)
                            : 1.0;
    sum += sign * permute_axes(a, dims, perm);
    count += 1;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum / count;
}

}  // namespace detail

/// Applies P_A = (1/N!) sum_sigma sgn(sigma) sigma and renormalizes.
/// Returns nullopt if the projection annihilates the state (norm < 1e-12),
/// e.g. for a product with repeated factors.
inline std::optional<StateVector> antisymmetrize(const StateVector& state) {
  for (int k = 1; k < state.particles(); ++k)
    if (!(state.mode(k) == state.mode(0)))
      throw StatisticsError("antisymmetrize: unequal mode spaces");
  auto d = state.dims();
  Vector projected = detail::project_symmetry(state.amplitudes(), d,
                                              detail::Parity::Antisymmetric);
  if (projected.norm() < kAnnihilationTol) return std::nullopt;
  return StateVector(state.modes(), std::move(projected), Statistics::Fermion);
}

/// Applies P_S = (1/N!) sum_sigma sigma and renormalizes.  Never annihilates
/// a nonzero product state.
inline StateVector symmetrize(const StateVector& state) {
  for (int k = 1; k < state.particles(); ++k)
    if (!(state.mode(k) == state.mode(0)))
      throw StatisticsError("symmetrize: unequal mode spaces");
  auto d = state.dims();
  Vector projected = detail::project_symmetry(state.amplitudes(), d,
                                              detail::Parity::Symmetric);
  return StateVector(state.modes(), std::move(projected), Statistics::Boson);
}

/// <a|b>, conjugate-linear in the first argument.
inline Complex inner(const StateVector& a, const StateVector& b) {
  if (a.dims() != b.dims())
    throw DimensionError("inner: shape mismatch");
  return a.amplitudes().dot(b.amplitudes());
}

/// Reorders particle slots: the particle in slot k moves to slot perm[k].
inline StateVector permute(const StateVector& state,
                           const std::vector<int>& perm) {
  const int n = state.particles();
  if (static_cast<int>(perm.size()) != n)
    throw InputError("permute: permutation length mismatch");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[static_cast<std::size_t>(p)])
      throw InputError("permute: not a permutation");
    seen[static_cast<std::size_t>(p)] = true;
  }
  auto d = state.dims();
  Vector out = detail::permute_axes(state.amplitudes(), d, perm);
  std::vector<ModeSpace> new_modes(state.modes().size());
  for (int k = 0; k < n; ++k)
    new_modes[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])] =
        state.mode(k);
  return StateVector(std::move(new_modes), std::move(out), state.statistics());
}

}  // namespace entang
