#pragma once

#include <random>

#include "entang/manybody.hpp"
#include "entang/state.hpp"

namespace entang {

/// Sampling helpers for the property suites.  All draws are deterministic
/// given the engine state.
namespace sampling {

using Rng = std::mt19937_64;

inline Vector gaussian_vector(Rng& rng, Index d) {
  std::normal_distribution<double> g;
  Vector v(d);
  for (Index i = 0; i < d; ++i) v[i] = Complex(g(rng), g(rng));
  return v;
}

inline Vector haar_vector(Rng& rng, Index d) {
  Vector v = gaussian_vector(rng, d);
  return v / v.norm();
}

inline Matrix gaussian_matrix(Rng& rng, Index rows, Index cols) {
  std::normal_distribution<double> g;
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

inline Matrix haar_unitary(Rng& rng, Index d) {
  Matrix m = gaussian_matrix(rng, d, d);
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < d; ++j) {
    const Complex rj = r(j, j);
    q.col(j) *= std::abs(rj) > 0 ? rj / std::abs(rj) : Complex(1, 0);
  }
  return q;
}

inline Matrix random_hermitian(Rng& rng, Index d) {
  Matrix m = gaussian_matrix(rng, d, d);
  return (m + m.adjoint()) / 2.0;
}

/// Haar-random pure pair state on d ⊗ d, tagged Distinguishable.
inline StateVector random_pair_state(Rng& rng, Index d) {
  std::vector<ModeSpace> modes(2, ModeSpace(d));
  return StateVector(std::move(modes), gaussian_vector(rng, d * d),
                     Statistics::Distinguishable);
}

inline StateVector random_product_pair(Rng& rng, Index d) {
  return make_factorized({haar_vector(rng, d), haar_vector(rng, d)});
}

/// Random N-fermion state: Gaussian amplitude tensor antisymmetrized.
inline StateVector random_fermion_state(Rng& rng, Index d, int n = 2) {
  for (;;) {
    Index total = 1;
    for (int s = 0; s < n; ++s) total *= d;
    std::vector<ModeSpace> modes(static_cast<std::size_t>(n), ModeSpace(d));
    StateVector raw(modes, gaussian_vector(rng, total),
                    Statistics::Distinguishable);
    if (auto anti = antisymmetrize(raw)) return *anti;
  }
}

/// Random 2-boson state: Gaussian amplitude tensor symmetrized.
inline StateVector random_boson_state(Rng& rng, Index d) {
  std::vector<ModeSpace> modes(2, ModeSpace(d));
  StateVector raw(modes, gaussian_vector(rng, d * d),
                  Statistics::Distinguishable);
  return symmetrize(raw);
}

/// Non-entangled 2-fermion state: antisymmetrized random product.
inline StateVector random_slater_pair(Rng& rng, Index d) {
  for (;;) {
    auto anti = antisymmetrize(random_product_pair(rng, d));
    if (anti) return *anti;
  }
}

/// Random antisymmetric M-fermion state supported on the columns of basis.
inline StateVector random_fermion_on_support(Rng& rng, const Matrix& basis,
                                             int m, Index full_dim) {
  const Index b = basis.cols();
  Index total = 1;
  for (int s = 0; s < m; ++s) total *= b;
  std::vector<ModeSpace> small_modes(static_cast<std::size_t>(m),
                                     ModeSpace(b));
  for (;;) {
    StateVector raw(small_modes, gaussian_vector(rng, total),
                    Statistics::Distinguishable);
    auto anti = antisymmetrize(raw);
    if (!anti) continue;
    Vector amps = anti->amplitudes();
    std::vector<Index> dims(static_cast<std::size_t>(m), b);
    for (int s = 0; s < m; ++s)
      amps = detail::apply_one_body(amps, dims, s, basis);
    std::vector<ModeSpace> modes(static_cast<std::size_t>(m),
                                 ModeSpace(full_dim));
    return StateVector(std::move(modes), std::move(amps),
                       Statistics::Fermion);
  }
}

}  // namespace sampling
}  // namespace entang
