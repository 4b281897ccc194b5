#pragma once

#include <optional>
#include <vector>

#include "entang/state.hpp"

namespace entang {

/// Hermitian positive operator on a (sub)system space.  trace_convention is
/// 1 for reduced states and N for occupation-normalized 1-RDMs.
struct DensityOperator {
  Matrix matrix;
  double trace_convention = 1.0;

  void validate(double tol = kSpectrumTol) const {
    if (matrix.rows() != matrix.cols())
      throw DimensionError("DensityOperator: matrix not square");
    if ((matrix - matrix.adjoint()).norm() > tol)
      throw InternalCheckError("DensityOperator: not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(matrix,
                                             Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol)
      throw InternalCheckError("DensityOperator: negative eigenvalue");
    if (std::abs(matrix.trace().real() - trace_convention) > tol)
      throw InternalCheckError("DensityOperator: trace convention violated");
  }
};

struct Projector {
  Matrix matrix;
  int rank = 0;

  static Projector from_vector(const Vector& v) {
    Vector u = v / v.norm();
    return Projector{u * u.adjoint(), 1};
  }

  static Projector identity(Index d) {
    return Projector{Matrix::Identity(d, d), static_cast<int>(d)};
  }

  void validate(double tol = kSpectrumTol) const {
    if ((matrix - matrix.adjoint()).norm() > tol)
      throw InternalCheckError("Projector: not Hermitian");
    if ((matrix * matrix - matrix).norm() > tol)
      throw InternalCheckError("Projector: not idempotent");
    if (std::abs(matrix.trace().real() - rank) > 100 * tol)
      throw InternalCheckError("Projector: rank does not match trace");
  }
};

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Embeds a single-slot operator as I ⊗ ... ⊗ op ⊗ ... ⊗ I on the full space.
inline Matrix op_on_slot(const Matrix& op, int slot,
                         const std::vector<Index>& dims) {
  if (slot < 0 || slot >= static_cast<int>(dims.size()))
    throw DimensionError("op_on_slot: bad slot");
  if (op.rows() != dims[static_cast<std::size_t>(slot)])
    throw DimensionError("op_on_slot: operator dimension mismatch");
  Matrix out = Matrix::Identity(1, 1);
  for (std::size_t k = 0; k < dims.size(); ++k)
    out = kron(out, static_cast<int>(k) == slot
                        ? op
                        : Matrix(Matrix::Identity(dims[k], dims[k])));
  return out;
}

/// Reduced state Tr_rest |psi><psi| on the kept slots (ascending slot order).
inline DensityOperator partial_trace(const StateVector& state,
                                     const std::vector<int>& keep) {
  const int n = state.particles();
  if (keep.empty() || static_cast<int>(keep.size()) >= n)
    throw DimensionError("partial_trace: keep must be a nonempty proper subset");
  std::vector<bool> kept(static_cast<std::size_t>(n), false);
  for (int s : keep) {
    if (s < 0 || s >= n || kept[static_cast<std::size_t>(s)])
      throw DimensionError("partial_trace: invalid keep set");
    kept[static_cast<std::size_t>(s)] = true;
  }
  auto dims = state.dims();
  Index dk = 1, dt = 1;
  for (int s = 0; s < n; ++s)
    (kept[static_cast<std::size_t>(s)] ? dk : dt) *=
        dims[static_cast<std::size_t>(s)];

  // Gather amplitudes into a (kept x traced) matrix, then rho = M M^dagger.
  Matrix m(dk, dt);
  std::vector<Index> idx(static_cast<std::size_t>(n));
  for (Index lin = 0; lin < state.amplitudes().size(); ++lin) {
    detail::unflatten(lin, dims, idx);
    Index ik = 0, it = 0;
    for (int s = 0; s < n; ++s) {
      const auto u = static_cast<std::size_t>(s);
      if (kept[u])
        ik = ik * dims[u] + idx[u];
      else
        it = it * dims[u] + idx[u];
    }
    m(ik, it) = state.amplitudes()[lin];
  }
  DensityOperator rho{m * m.adjoint(), 1.0};
  return rho;
}

/// <psi| Omega |psi> for an operator on the full N-particle space.
inline Complex expectation(const StateVector& state, const Matrix& op) {
  if (op.rows() != state.amplitudes().size() || op.rows() != op.cols())
    throw DimensionError("expectation: operator dimension mismatch");
  return state.amplitudes().dot(op * state.amplitudes());
}

/// E(1,2) = P⊗(I−P) + (I−P)⊗P + P⊗P, the exchange-symmetric projector
/// testing "at least one particle has the property P".  With
/// include_both_term = false the P⊗P term is dropped (probability of
/// precisely one particle having the property).
inline Projector build_exchange_projector(const Projector& p,
                                          bool include_both_term = true) {
  if (p.rank != 1)
    throw InputError("build_exchange_projector: P must have rank 1");
  const Index d = p.matrix.rows();
  const Matrix q = Matrix::Identity(d, d) - p.matrix;
  Matrix e = kron(p.matrix, q) + kron(q, p.matrix);
  int rank = static_cast<int>(2 * (d - 1));
  if (include_both_term) {
    e += kron(p.matrix, p.matrix);
    rank += 1;
  }
  return Projector{std::move(e), rank};
}

/// Projector onto the span of eigenvectors of rho with eigenvalue > tol.
/// It is the minimal projector with Tr[P rho] = trace_convention.
inline Projector range_projector(const DensityOperator& rho,
                                 double tol = kSpectrumTol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix);
  const Index d = rho.matrix.rows();
  Matrix p = Matrix::Zero(d, d);
  int rank = 0;
  for (Index k = 0; k < d; ++k) {
    if (es.eigenvalues()[k] > tol) {
      p += es.eigenvectors().col(k) * es.eigenvectors().col(k).adjoint();
      ++rank;
    }
  }
  return Projector{std::move(p), rank};
}

/// Objective (possibly unsharp) statement about an observable: its value
/// lies in the Borel set with certainty.
struct PropertyStatement {
  std::vector<double> borel_set;  // spectrum of the restriction to the range
  bool sharp = false;             // singleton Borel set
  bool full_spectrum = false;     // range = whole space: no information
};

/// Statements are licensed only for observables commuting with the range
/// projector of rho1; otherwise returns nullopt.
inline std::optional<PropertyStatement> unsharp_property_report(
    const DensityOperator& rho1, const Matrix& omega,
    double tol = kSpectrumTol) {
  if (omega.rows() != omega.cols() || omega.rows() != rho1.matrix.rows())
    throw DimensionError("unsharp_property_report: dimension mismatch");
  if ((omega - omega.adjoint()).norm() > tol)
    throw InputError("unsharp_property_report: omega not Hermitian");
  Projector pm = range_projector(rho1, tol);
  if ((pm.matrix * omega - omega * pm.matrix).norm() > tol) return std::nullopt;

  // Spectrum of the restriction Omega_R = P Omega P on the range manifold.
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho1.matrix);
  const Index d = rho1.matrix.rows();
  Matrix basis(d, pm.rank);
  Index col = 0;
  for (Index k = 0; k < d; ++k)
    if (es.eigenvalues()[k] > tol) basis.col(col++) = es.eigenvectors().col(k);
  Matrix restricted = basis.adjoint() * omega * basis;
  Eigen::SelfAdjointEigenSolver<Matrix> rs(restricted);

  PropertyStatement st;
  for (Index k = 0; k < rs.eigenvalues().size(); ++k) {
    const double v = rs.eigenvalues()[k];
    if (st.borel_set.empty() || v - st.borel_set.back() > 1e-9)
      st.borel_set.push_back(v);
  }
  st.sharp = st.borel_set.size() == 1;
  st.full_spectrum = pm.rank == static_cast<int>(d);
  return st;
}

}  // namespace entang
