// Brute-force oracles used to validate the classification routines.  They
// optimize fidelity over explicitly parametrized factor states and never
// touch the Slater/Takagi decomposition path.
#pragma once

#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "entang/manybody.hpp"
#include "entang/random.hpp"
#include "entang/state.hpp"

namespace oracles {

using namespace entang;

// Max over (phi, xi) of |<psi | P_A(phi ⊗ xi)>|^2 / ||P_A(phi ⊗ xi)||^2 for
// an antisymmetric pair matrix, by alternating exact single-factor updates
// from random restarts.  At the optimum phi ⊥ xi, so the objective is
// 2 |phi^dag Psi conj(xi)|^2.
inline double antisym_product_max_fidelity(const Matrix& psi,
                                           sampling::Rng& rng,
                                           int restarts = 200) {
  const Index d = psi.rows();
  double best = 0.0;
  for (int r = 0; r < restarts; ++r) {
    Vector xi = sampling::haar_vector(rng, d);
    Vector phi = sampling::haar_vector(rng, d);
    double prev = -1.0;
    for (int it = 0; it < 500; ++it) {
      Vector c = psi * xi.conjugate();
      c -= xi * (xi.adjoint() * c);
      if (c.norm() < 1e-14) break;
      phi = c / c.norm();
      // Optimal xi given phi maximizes |phi^dag Psi conj(xi)| = |r^dag xi|
      // with r = Psi^T conj(phi), subject to xi ⊥ phi.
      Vector e = psi.transpose() * phi.conjugate();
      e -= phi * (phi.adjoint() * e);
      if (e.norm() < 1e-14) break;
      xi = e / e.norm();
      const double f = 2.0 * std::norm(phi.dot(psi * xi.conjugate()));
      if (std::abs(f - prev) < 1e-14) {
        prev = f;
        break;
      }
      prev = f;
    }
    best = std::max(best, prev);
    if (best > 1.0 - 1e-9) break;
  }
  return best;
}

// Max over unit phi of |<psi | phi ⊗ phi>|^2 by antilinear power iteration
// (the same-state boson branch).
inline double same_product_max_fidelity(const Matrix& psi, sampling::Rng& rng,
                                        int restarts = 50) {
  const Matrix m = psi.conjugate();  // objective |phi^T m phi|
  const Index d = psi.rows();
  double best = 0.0;
  for (int r = 0; r < restarts; ++r) {
    Vector phi = sampling::haar_vector(rng, d);
    double prev = -1.0;
    for (int it = 0; it < 500; ++it) {
      Vector next = (m * phi).conjugate();
      if (next.norm() < 1e-14) break;
      phi = next / next.norm();
      const double f = std::norm((phi.transpose() * m * phi)(0));
      if (std::abs(f - prev) < 1e-14) {
        prev = f;
        break;
      }
      prev = f;
    }
    best = std::max(best, prev);
    if (best > 1.0 - 1e-9) break;
  }
  return best;
}

// Max over orthogonal unit (phi, xi) of |<psi | P_S(phi ⊗ xi)>|^2 /
// ||P_S(phi ⊗ xi)||^2 = 2 |phi^dag Psi conj(xi)|^2 (the symmetrized
// orthogonal boson branch).
inline double orthogonal_sym_max_fidelity(const Matrix& psi,
                                          sampling::Rng& rng,
                                          int restarts = 200) {
  // The alternating updates are identical to the fermion case: projecting
  // onto the orthocomplement enforces phi ⊥ xi at every step.
  return antisym_product_max_fidelity(psi, rng, restarts);
}

inline double boson_max_fidelity(const Matrix& psi, sampling::Rng& rng,
                                 int restarts = 200) {
  const double same = same_product_max_fidelity(psi, rng, restarts / 4 + 1);
  if (same > 1.0 - 1e-9) return same;
  return std::max(same, orthogonal_sym_max_fidelity(psi, rng, restarts));
}

// Max fidelity of an N-fermion state to an embedded one-particle-orthogonal
// split of cardinality m, over single-particle basis rotations, by random
// restarts with a shrinking random-walk refinement.  For each candidate
// rotation the optimal (Pi, Phi) on the fixed supports is the top singular
// pair of the scaled support block, exactly as in the embedding identity.
inline double embedded_split_max_fidelity(const StateVector& state, int m,
                                          sampling::Rng& rng,
                                          int restarts = 30,
                                          int walk_steps = 120) {
  const Index d = state.mode(0).dim;
  const int n = state.particles();
  const int k = n - m;

  // For a fixed rotation, project the first m slots on the leading `split`
  // columns and the rest on the complement, scale by sqrt(C(n,k)), and take
  // the top singular value of the (Pi x Phi) block.
  auto block_score = [&](const Matrix& u, Index split) {
    Matrix u_delta = u.leftCols(split);
    Matrix u_star = u.rightCols(d - split);
    Vector block = state.amplitudes();
    std::vector<Index> dims = state.dims();
    for (int s = 0; s < m; ++s)
      block = detail::apply_one_body(block, dims, s, u_delta.adjoint());
    for (int s = m; s < n; ++s)
      block = detail::apply_one_body(block, dims, s, u_star.adjoint());
    block *= std::sqrt(detail::binomial(n, k));
    Index dim_pi = 1, dim_phi = 1;
    for (int s = 0; s < m; ++s) dim_pi *= dims[static_cast<std::size_t>(s)];
    for (int s = m; s < n; ++s) dim_phi *= dims[static_cast<std::size_t>(s)];
    Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>
        bm(block.data(), dim_pi, dim_phi);
    Eigen::JacobiSVD<Matrix> svd(bm);
    return svd.singularValues().size() > 0
               ? std::min(1.0, std::pow(svd.singularValues()[0], 2))
               : 0.0;
  };

  double best = 0.0;
  for (int r = 0; r < restarts; ++r) {
    // The first start uses the natural-orbital basis (descending
    // occupation), the rest are Haar-random.
    Matrix u;
    if (r == 0) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(one_rdm(state).matrix);
      u = es.eigenvectors().rowwise().reverse();
    } else {
      u = sampling::haar_unitary(rng, d);
    }
    // Every support size between m and d-k is admissible.
    for (Index split = m; split <= d - k; ++split) {
      double cur = block_score(u, split);
      Matrix ucur = u;
      double step = 0.4;
      for (int w = 0; w < walk_steps; ++w) {
        Matrix h = sampling::random_hermitian(rng, d);
        Matrix trial =
            (Complex(0, 1) * step * h).exp() * ucur;
        const double f = block_score(trial, split);
        if (f > cur) {
          cur = f;
          ucur = trial;
        } else {
          step *= 0.97;
        }
      }
      best = std::max(best, cur);
      if (best > 1.0 - 1e-9) return best;
    }
  }
  return best;
}

}  // namespace oracles
