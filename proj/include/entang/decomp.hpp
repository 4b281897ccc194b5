#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "entang/state.hpp"

namespace entang {

namespace detail {

// Index of the first component with magnitude above cutoff (falls back to
// the largest component).
inline Index first_significant(const Vector& v, double cutoff = 1e-8) {
  for (Index i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) > cutoff) return i;
  Index best = 0;
  v.cwiseAbs().maxCoeff(&best);
  return best;
}

// Phase factor making the first significant component real positive.
inline Complex canonical_phase(const Vector& v) {
  const Complex x = v[first_significant(v)];
  return std::abs(x) > 0 ? std::conj(x) / std::abs(x) : Complex(1, 0);
}

// Sign in {+1,-1} making the first significant component "positive"
// (real part > 0, or imaginary part > 0 when the real part vanishes).
inline double canonical_sign(const Vector& v) {
  const Complex x = v[first_significant(v)];
  if (std::abs(x.real()) > 1e-10) return x.real() > 0 ? 1.0 : -1.0;
  return x.imag() >= 0 ? 1.0 : -1.0;
}

// Orthonormal basis of the column space of m (columns with singular value
// above cutoff).
inline Matrix column_space(const Matrix& m, double cutoff = 1e-7) {
  if (m.cols() == 0) return Matrix(m.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  Index r = 0;
  while (r < svd.singularValues().size() && svd.singularValues()[r] > cutoff)
    ++r;
  return svd.matrixU().leftCols(r);
}

}  // namespace detail

/// Schmidt form of a two-particle state: psi = sum_k c_k u_k ⊗ w_k with
/// descending c_k and orthonormal bases.
struct SchmidtDecomposition {
  std::vector<double> coefficients;  // all singular values, descending
  std::vector<Vector> left_basis;
  std::vector<Vector> right_basis;
  int rank = 0;  // count of coefficients > kSpectrumTol
};

inline SchmidtDecomposition schmidt(const StateVector& state) {
  if (state.particles() != 2)
    throw DimensionError("schmidt: requires a 2-particle state");
  Matrix a = state.pair_matrix();
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtDecomposition out;
  const Index k = svd.singularValues().size();
  for (Index i = 0; i < k; ++i) {
    const double c = svd.singularValues()[i];
    Vector u = svd.matrixU().col(i);
    Vector w = svd.matrixV().col(i).conjugate();  // psi = sum c u w^T
    const Complex phase = detail::canonical_phase(u);
    u *= phase;
    w /= phase;
    out.coefficients.push_back(c);
    out.left_basis.push_back(std::move(u));
    out.right_basis.push_back(std::move(w));
    if (c > kSpectrumTol) ++out.rank;
  }
  return out;
}

/// Canonical form of an antisymmetric two-fermion amplitude matrix:
/// A = sum_i c_i (a_i b_i^T - b_i a_i^T) with all listed vectors mutually
/// orthonormal and descending positive c_i.  Pair normalization:
/// 2 sum c_i^2 = 1.
struct SlaterDecomposition {
  std::vector<double> coefficients;
  std::vector<std::pair<Vector, Vector>> mode_pairs;
  int slater_rank = 0;

  Matrix reconstruct(Index d) const {
    Matrix a = Matrix::Zero(d, d);
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
      const auto& [u, v] = mode_pairs[i];
      a += coefficients[i] *
           (u * v.transpose() - v * u.transpose());
    }
    return a;
  }
};

/// Computed from the spectral decomposition of the Hermitian positive
/// matrix A A^dagger; for any eigenvector a with eigenvalue c^2 > 0 the
/// partner b = conj(A^dagger a)/c closes an exact 2x2 block, also inside
/// degenerate eigenspaces.
inline SlaterDecomposition slater(const StateVector& state) {
  if (state.particles() != 2 || state.statistics() != Statistics::Fermion)
    throw StatisticsError("slater: requires a 2-fermion state");
  Matrix a = state.pair_matrix();
  if ((a + a.transpose()).norm() > 1e-10)
    throw InputError("slater: amplitude matrix is not antisymmetric");

  Eigen::SelfAdjointEigenSolver<Matrix> es(a * a.adjoint());
  const Index d = a.rows();

  // Cluster eigenvalues above the rank cutoff (descending order).
  std::vector<std::pair<double, Matrix>> clusters;
  for (Index k = d; k-- > 0;) {
    const double lam = es.eigenvalues()[k];
    if (lam <= kSpectrumTol) break;
    if (!clusters.empty() && clusters.back().first - lam < 1e-8) {
      Matrix& b = clusters.back().second;
      b.conservativeResize(d, b.cols() + 1);
      b.col(b.cols() - 1) = es.eigenvectors().col(k);
    } else {
      clusters.emplace_back(lam, es.eigenvectors().col(k));
    }
  }

  SlaterDecomposition out;
  for (auto& [lam, basis] : clusters) {
    Matrix pool = basis;
    while (pool.cols() > 0) {
      Vector u = pool.col(0);
      u *= detail::canonical_phase(u);
      Vector t = a.adjoint() * u;
      const double c = t.norm();
      if (c <= kSpectrumTol)
        throw InternalCheckError("slater: vanishing pair coefficient");
      Vector v = t.conjugate() / c;
      out.coefficients.push_back(c);
      out.mode_pairs.emplace_back(u, v);
      if (pool.cols() == 1) break;
      Matrix rest = pool.rightCols(pool.cols() - 1);
      rest -= u * (u.adjoint() * rest);
      rest -= v * (v.adjoint() * rest);
      pool = detail::column_space(rest);
    }
  }

  // Merged near-degenerate clusters may come out slightly unordered.
  std::vector<std::size_t> order(out.coefficients.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) {
    return out.coefficients[i] > out.coefficients[j];
  });
  SlaterDecomposition sorted;
  for (auto i : order) {
    sorted.coefficients.push_back(out.coefficients[i]);
    sorted.mode_pairs.push_back(out.mode_pairs[i]);
  }
  sorted.slater_rank = static_cast<int>(sorted.coefficients.size());

  if ((a - sorted.reconstruct(d)).norm() > 1e-9)
    throw InternalCheckError("slater: reconstruction residual too large");
  return sorted;
}

/// Takagi factorization of a complex symmetric amplitude matrix:
/// S = sum_j v_j u_j u_j^T with orthonormal u_j and descending v_j >= 0.
struct TakagiDecomposition {
  std::vector<double> values;
  std::vector<Vector> modes;
  int rank = 0;

  Matrix reconstruct(Index d) const {
    Matrix s = Matrix::Zero(d, d);
    for (std::size_t j = 0; j < values.size(); ++j)
      s += values[j] * (modes[j] * modes[j].transpose());
    return s;
  }
};

/// Takagi vectors are fixed points of the antilinear map x -> S conj(x)/v,
/// built per eigenvalue cluster of S S^dagger.
inline TakagiDecomposition takagi(const StateVector& state) {
  if (state.particles() != 2 || state.statistics() != Statistics::Boson)
    throw StatisticsError("takagi: requires a 2-boson state");
  Matrix s = state.pair_matrix();
  if ((s - s.transpose()).norm() > 1e-10)
    throw InputError("takagi: amplitude matrix is not symmetric");

  Eigen::SelfAdjointEigenSolver<Matrix> es(s * s.adjoint());
  const Index d = s.rows();

  std::vector<std::pair<double, Matrix>> clusters;
  for (Index k = d; k-- > 0;) {
    const double lam = es.eigenvalues()[k];
    if (lam <= kSpectrumTol) break;
    if (!clusters.empty() && clusters.back().first - lam < 1e-8) {
      Matrix& b = clusters.back().second;
      b.conservativeResize(d, b.cols() + 1);
      b.col(b.cols() - 1) = es.eigenvectors().col(k);
    } else {
      clusters.emplace_back(lam, es.eigenvectors().col(k));
    }
  }

  TakagiDecomposition out;
  for (auto& [lam, basis] : clusters) {
    Matrix pool = basis;
    while (pool.cols() > 0) {
      const Vector x = pool.col(0);
      const double v = std::sqrt(
          std::max(0.0, (x.adjoint() * (s * s.adjoint()) * x)(0).real()));
      if (v <= kSpectrumTol)
        throw InternalCheckError("takagi: vanishing value");
      const Vector tx = s * x.conjugate() / v;
      Vector cand1 = x + tx;
      Vector cand2 = Complex(0, 1) * (x - tx);
      Vector u = cand1.norm() >= cand2.norm() ? cand1 : cand2;
      u /= u.norm();
      u *= detail::canonical_sign(u);
      out.values.push_back(v);
      out.modes.push_back(u);
      if (pool.cols() == 1) break;
      Matrix rest = pool.rightCols(pool.cols() - 1);
      rest -= u * (u.adjoint() * rest);
      pool = detail::column_space(rest);
    }
  }

  std::vector<std::size_t> order(out.values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) {
    return out.values[i] > out.values[j];
  });
  TakagiDecomposition sorted;
  for (auto i : order) {
    sorted.values.push_back(out.values[i]);
    sorted.modes.push_back(out.modes[i]);
  }
  sorted.rank = static_cast<int>(sorted.values.size());

  if ((s - sorted.reconstruct(d)).norm() > 1e-9)
    throw InternalCheckError("takagi: reconstruction residual too large");
  return sorted;
}

}  // namespace entang
