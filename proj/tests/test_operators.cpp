#include <catch2/catch_amalgamated.hpp>

#include "entang/named_states.hpp"
#include "entang/operators.hpp"
#include "entang/random.hpp"

using namespace entang;

namespace {
Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
}  // namespace

TEST_CASE("partial trace of products and singlets") {
  Vector e0 = Vector::Zero(2);
  e0[0] = 1.0;
  Vector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);

  auto product = make_factorized({plus, e0});
  auto rho = partial_trace(product, {0});
  rho.validate();
  CHECK((rho.matrix - plus * plus.adjoint()).norm() < 1e-12);

  auto singlet = singlet_state();
  auto rho0 = partial_trace(singlet, {0});
  rho0.validate();
  CHECK((rho0.matrix - 0.5 * Matrix::Identity(2, 2)).norm() < 1e-12);

  SECTION("d=4 reduced state of the antisymmetrized orthogonal product") {
    auto rho1 = partial_trace(up_r_down_l_state(), {1});
    rho1.validate();
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho1.matrix,
                                             Eigen::EigenvaluesOnly);
    CHECK(std::abs(es.eigenvalues()[3] - 0.5) < 1e-12);
    CHECK(std::abs(es.eigenvalues()[2] - 0.5) < 1e-12);
    CHECK(es.eigenvalues()[1] < 1e-12);
  }

  SECTION("three particles, keep a pair") {
    sampling::Rng rng(3);
    auto three = sampling::random_fermion_state(rng, 3, 3);
    auto pair = partial_trace(three, {0, 2});
    pair.validate();
    CHECK(pair.matrix.rows() == 9);
  }

  auto pair = make_factorized({e0, e0});
  CHECK_THROWS_AS(partial_trace(pair, {0, 1}), DimensionError);
  CHECK_THROWS_AS(partial_trace(pair, {2}), DimensionError);
}

TEST_CASE("expectation values") {
  Vector e0 = Vector::Zero(2);
  e0[0] = 1.0;
  Vector e1 = Vector::Zero(2);
  e1[1] = 1.0;
  auto s = make_factorized({e0, e1});
  auto dims = s.dims();

  CHECK(std::abs(expectation(s, op_on_slot(pauli_z(), 0, dims)) - 1.0) <
        1e-12);
  CHECK(std::abs(expectation(s, op_on_slot(pauli_z(), 1, dims)) + 1.0) <
        1e-12);
  CHECK(std::abs(expectation(s, kron(pauli_z(), pauli_z())) + 1.0) < 1e-12);

  auto singlet = singlet_state();
  CHECK(std::abs(expectation(singlet, kron(pauli_z(), pauli_z())) + 1.0) <
        1e-12);
  CHECK(std::abs(expectation(singlet, kron(pauli_x(), pauli_x())) + 1.0) <
        1e-12);
  CHECK(std::abs(expectation(singlet, op_on_slot(pauli_z(), 0, dims))) <
        1e-12);

  CHECK_THROWS_AS(expectation(s, Matrix::Identity(3, 3)), DimensionError);
}

TEST_CASE("expectation agrees with the reduced-state trace") {
  sampling::Rng rng(17);
  for (int t = 0; t < 10; ++t) {
    auto s = sampling::random_pair_state(rng, 3);
    Matrix a = sampling::random_hermitian(rng, 3);
    auto rho = partial_trace(s, {0});
    const Complex via_full = expectation(s, op_on_slot(a, 0, s.dims()));
    const Complex via_reduced = (rho.matrix * a).trace();
    CHECK(std::abs(via_full - via_reduced) < 1e-10);
  }
}

TEST_CASE("exchange-symmetric property projector") {
  Vector e0 = Vector::Zero(2);
  e0[0] = 1.0;
  auto p = Projector::from_vector(e0);
  auto e = build_exchange_projector(p);
  e.validate();
  CHECK(e.rank == 3);

  // I - (I-P) ⊗ (I-P): "not both lack the property".
  const Matrix q = Matrix::Identity(2, 2) - p.matrix;
  CHECK((e.matrix - (Matrix::Identity(4, 4) - kron(q, q))).norm() < 1e-12);

  auto e_xor = build_exchange_projector(p, false);
  e_xor.validate();
  CHECK(e_xor.rank == 2);

  SECTION("commutes with particle exchange") {
    sampling::Rng rng(5);
    const Index d = 3;
    auto pr = Projector::from_vector(sampling::haar_vector(rng, d));
    auto ee = build_exchange_projector(pr);
    ee.validate();
    Matrix swap = Matrix::Zero(d * d, d * d);
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) swap(i * d + j, j * d + i) = 1.0;
    CHECK((ee.matrix * swap - swap * ee.matrix).norm() < 1e-12);
  }

  SECTION("expectation 1 on the singlet for any spin direction") {
    auto singlet = singlet_state();
    sampling::Rng rng(9);
    for (int t = 0; t < 5; ++t) {
      auto pr = Projector::from_vector(sampling::haar_vector(rng, 2));
      const double val =
          expectation(singlet, build_exchange_projector(pr).matrix).real();
      CHECK(std::abs(val - 1.0) < 1e-10);
    }
  }

  CHECK_THROWS_AS(build_exchange_projector(Projector::identity(2)),
                  InputError);
}

TEST_CASE("range projector") {
  auto singlet = singlet_state();
  auto rho = partial_trace(singlet, {0});
  auto p = range_projector(rho);
  p.validate();
  CHECK(p.rank == 2);
  CHECK(std::abs((p.matrix * rho.matrix).trace().real() - 1.0) < 1e-12);

  Vector e0 = Vector::Zero(3);
  e0[0] = 1.0;
  Vector e1 = Vector::Zero(3);
  e1[1] = 1.0;
  auto prod = make_factorized({e0, e1});
  auto p1 = range_projector(partial_trace(prod, {0}));
  CHECK(p1.rank == 1);
  CHECK((p1.matrix - e0 * e0.adjoint()).norm() < 1e-12);

  SECTION("minimality among trace-1 projectors") {
    sampling::Rng rng(31);
    auto s = sampling::random_pair_state(rng, 3);
    auto rr = partial_trace(s, {0});
    auto pr = range_projector(rr);
    CHECK(std::abs((pr.matrix * rr.matrix).trace().real() - 1.0) < 1e-10);
    // Dropping any range eigenvector loses probability.
    Eigen::SelfAdjointEigenSolver<Matrix> es(rr.matrix);
    for (Index k = 0; k < 3; ++k) {
      if (es.eigenvalues()[k] <= kSpectrumTol) continue;
      Matrix sub = pr.matrix - es.eigenvectors().col(k) *
                                   es.eigenvectors().col(k).adjoint();
      CHECK((sub * rr.matrix).trace().real() < 1.0 - 1e-8);
    }
  }
}

TEST_CASE("unsharp property statements") {
  Vector e0 = Vector::Zero(3);
  e0[0] = 1.0;
  Vector e1 = Vector::Zero(3);
  e1[1] = 1.0;

  DensityOperator rho{0.5 * (e0 * e0.adjoint() + e1 * e1.adjoint()), 1.0};
  rho.validate();

  Matrix omega = Matrix::Zero(3, 3);
  omega(0, 0) = 2.0;
  omega(1, 1) = 5.0;
  omega(2, 2) = 9.0;

  auto st = unsharp_property_report(rho, omega);
  REQUIRE(st.has_value());
  CHECK_FALSE(st->sharp);
  CHECK_FALSE(st->full_spectrum);
  REQUIRE(st->borel_set.size() == 2);
  CHECK(std::abs(st->borel_set[0] - 2.0) < 1e-12);
  CHECK(std::abs(st->borel_set[1] - 5.0) < 1e-12);

  SECTION("sharp statement on a rank-1 state") {
    DensityOperator pure{e0 * e0.adjoint(), 1.0};
    auto s2 = unsharp_property_report(pure, omega);
    REQUIRE(s2.has_value());
    CHECK(s2->sharp);
    CHECK(std::abs(s2->borel_set[0] - 2.0) < 1e-12);
  }

  SECTION("non-commuting observable yields no statement") {
    Matrix bad = Matrix::Zero(3, 3);
    bad(0, 2) = 1.0;
    bad(2, 0) = 1.0;
    CHECK_FALSE(unsharp_property_report(rho, bad).has_value());
  }

  SECTION("degenerate restriction values are deduplicated") {
    Matrix flat = 3.0 * Matrix::Identity(3, 3);
    auto s3 = unsharp_property_report(rho, flat);
    REQUIRE(s3.has_value());
    CHECK(s3->borel_set.size() == 1);
    CHECK(s3->sharp);
  }

  CHECK_THROWS_AS(unsharp_property_report(rho, Matrix::Identity(2, 2)),
                  DimensionError);
}

TEST_CASE("kron and op_on_slot basics") {
  Matrix a = pauli_z();
  Matrix b = pauli_x();
  Matrix k = kron(a, b);
  CHECK(k.rows() == 4);
  CHECK(std::abs(k(0, 1) - 1.0) < 1e-14);
  CHECK(std::abs(k(2, 3) + 1.0) < 1e-14);

  std::vector<Index> dims = {2, 2};
  CHECK((op_on_slot(a, 0, dims) - kron(a, Matrix::Identity(2, 2))).norm() <
        1e-14);
  CHECK((op_on_slot(a, 1, dims) - kron(Matrix::Identity(2, 2), a)).norm() <
        1e-14);
  CHECK_THROWS_AS(op_on_slot(a, 2, dims), DimensionError);
  CHECK_THROWS_AS(op_on_slot(Matrix::Identity(3, 3), 0, dims),
                  DimensionError);
}
