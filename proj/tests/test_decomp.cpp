#include <catch2/catch_amalgamated.hpp>

#include "entang/decomp.hpp"
#include "entang/named_states.hpp"
#include "entang/random.hpp"

using namespace entang;

namespace {
Vector basis(Index d, Index i) {
  Vector v = Vector::Zero(d);
  v[i] = 1.0;
  return v;
}
}  // namespace

TEST_CASE("schmidt decomposition") {
  sampling::Rng rng(41);

  SECTION("product states have rank 1") {
    auto s = sampling::random_product_pair(rng, 4);
    auto sd = schmidt(s);
    CHECK(sd.rank == 1);
    CHECK(std::abs(sd.coefficients[0] - 1.0) < 1e-12);
  }

  SECTION("spin singlet has two equal coefficients") {
    auto sd = schmidt(singlet_state(Statistics::Distinguishable));
    CHECK(sd.rank == 2);
    CHECK(std::abs(sd.coefficients[0] - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(sd.coefficients[1] - 1.0 / std::sqrt(2.0)) < 1e-12);
  }

  SECTION("reconstruction and orthonormality") {
    auto s = sampling::random_pair_state(rng, 4);
    auto sd = schmidt(s);
    Matrix rebuilt = Matrix::Zero(4, 4);
    for (std::size_t k = 0; k < sd.coefficients.size(); ++k) {
      rebuilt += sd.coefficients[k] *
                 (sd.left_basis[k] * sd.right_basis[k].transpose());
      for (std::size_t l = 0; l < k; ++l) {
        CHECK(std::abs(sd.left_basis[k].dot(sd.left_basis[l])) < 1e-10);
        CHECK(std::abs(sd.right_basis[k].conjugate().dot(
                  sd.right_basis[l].conjugate())) < 1e-10);
      }
    }
    CHECK((rebuilt - s.pair_matrix()).norm() < 1e-10);
    double sum2 = 0;
    for (double c : sd.coefficients) sum2 += c * c;
    CHECK(std::abs(sum2 - 1.0) < 1e-10);
  }

  SECTION("phase canonicalization is deterministic") {
    auto s = sampling::random_pair_state(rng, 3);
    Vector rotated = s.amplitudes() * std::polar(1.0, 0.7);
    StateVector t(s.modes(), rotated, Statistics::Distinguishable);
    auto sa = schmidt(s);
    auto sb = schmidt(t);
    for (std::size_t k = 0; k < sa.left_basis.size(); ++k)
      CHECK((sa.left_basis[k] - sb.left_basis[k]).norm() < 1e-8);
  }

  CHECK_THROWS_AS(schmidt(make_factorized({basis(2, 0), basis(2, 0),
                                           basis(2, 1)})),
                  DimensionError);
}

TEST_CASE("slater decomposition") {
  SECTION("antisymmetrized orthogonal product, d=2") {
    auto anti = antisymmetrize(make_factorized({basis(2, 0), basis(2, 1)}));
    REQUIRE(anti.has_value());
    auto sl = slater(*anti);
    CHECK(sl.slater_rank == 1);
    CHECK(std::abs(sl.coefficients[0] - 1.0 / std::sqrt(2.0)) < 1e-12);
  }

  SECTION("d=4 antisymmetrized orthogonal product is rank 1") {
    auto sl = slater(up_r_down_l_state());
    CHECK(sl.slater_rank == 1);
    CHECK(std::abs(sl.coefficients[0] - 1.0 / std::sqrt(2.0)) < 1e-12);
    // The pair spans {e0, e3} up to phase.
    const Vector& u = sl.mode_pairs[0].first;
    const Vector& v = sl.mode_pairs[0].second;
    CHECK(std::abs(std::abs(u[0] * v[3] - u[3] * v[0]) - 1.0) < 1e-10);
    CHECK(std::abs(u[1]) + std::abs(u[2]) < 1e-10);
    CHECK(std::abs(v[1]) + std::abs(v[2]) < 1e-10);
  }

  SECTION("EPR-type state has rank 2 with equal coefficients") {
    auto sl = slater(epr_singlet_state());
    CHECK(sl.slater_rank == 2);
    CHECK(std::abs(sl.coefficients[0] - 0.5) < 1e-12);
    CHECK(std::abs(sl.coefficients[1] - 0.5) < 1e-12);
  }

  SECTION("normalization 2 sum c^2 = 1 and reconstruction") {
    sampling::Rng rng(43);
    for (int t = 0; t < 20; ++t) {
      auto s = sampling::random_fermion_state(rng, 6);
      auto sl = slater(s);
      double sum2 = 0;
      for (double c : sl.coefficients) sum2 += c * c;
      CHECK(std::abs(2.0 * sum2 - 1.0) < 1e-10);
      CHECK((sl.reconstruct(6) - s.pair_matrix()).norm() < 1e-9);
      for (std::size_t i = 0; i + 1 < sl.coefficients.size(); ++i)
        CHECK(sl.coefficients[i] >= sl.coefficients[i + 1] - 1e-12);
    }
  }

  SECTION("exactly degenerate coefficients") {
    const Index d = 6;
    Vector amps = Vector::Zero(d * d);
    auto set_pair = [&](Index a, Index b) {
      amps[a * d + b] += 0.5;
      amps[b * d + a] -= 0.5;
    };
    set_pair(0, 1);
    set_pair(2, 3);
    std::vector<ModeSpace> modes(2, ModeSpace(d));
    StateVector s(modes, amps, Statistics::Fermion);
    auto sl = slater(s);
    CHECK(sl.slater_rank == 2);
    CHECK(std::abs(sl.coefficients[0] - sl.coefficients[1]) < 1e-10);
    CHECK((sl.reconstruct(d) - s.pair_matrix()).norm() < 1e-9);
    // All four listed modes are mutually orthonormal.
    std::vector<Vector> vecs = {sl.mode_pairs[0].first,
                                sl.mode_pairs[0].second,
                                sl.mode_pairs[1].first,
                                sl.mode_pairs[1].second};
    for (std::size_t i = 0; i < vecs.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        CHECK(std::abs(vecs[i].dot(vecs[j])) < 1e-9);
  }

  SECTION("statistics and symmetry checks") {
    CHECK_THROWS_AS(slater(singlet_state(Statistics::Distinguishable)),
                    StatisticsError);
  }
}

TEST_CASE("takagi decomposition") {
  SECTION("same-state product has rank 1") {
    auto s = symmetrize(make_factorized({basis(3, 1), basis(3, 1)}));
    auto tk = takagi(s);
    CHECK(tk.rank == 1);
    CHECK(std::abs(tk.values[0] - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(tk.modes[0][1]) - 1.0) < 1e-10);
  }

  SECTION("symmetrized orthogonal pair has two values 1/sqrt(2)") {
    auto s = symmetrize(make_factorized({basis(2, 0), basis(2, 1)}));
    auto tk = takagi(s);
    CHECK(tk.rank == 2);
    CHECK(std::abs(tk.values[0] - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(tk.values[1] - 1.0 / std::sqrt(2.0)) < 1e-12);
  }

  SECTION("symmetrized non-orthogonal pair, hand-computed values") {
    // sym(|+>|0>) has pair matrix [[2,1],[1,0]]/sqrt(6); the squared values
    // are (1 ± 2 sqrt(2)/3)/2.
    Vector plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    auto s = symmetrize(make_factorized({plus, basis(2, 0)}));
    auto tk = takagi(s);
    REQUIRE(tk.rank == 2);
    const double lam = 2.0 * std::sqrt(2.0) / 3.0;
    CHECK(std::abs(tk.values[0] - std::sqrt((1.0 + lam) / 2.0)) < 1e-10);
    CHECK(std::abs(tk.values[1] - std::sqrt((1.0 - lam) / 2.0)) < 1e-10);
  }

  SECTION("values match singular values, reconstruction holds") {
    sampling::Rng rng(47);
    for (int t = 0; t < 20; ++t) {
      auto s = sampling::random_boson_state(rng, 4);
      auto tk = takagi(s);
      Eigen::JacobiSVD<Matrix> svd(s.pair_matrix());
      REQUIRE(tk.rank == static_cast<int>(tk.values.size()));
      for (Index k = 0; k < static_cast<Index>(tk.values.size()); ++k)
        CHECK(std::abs(tk.values[static_cast<std::size_t>(k)] -
                       svd.singularValues()[k]) < 1e-9);
      CHECK((tk.reconstruct(4) - s.pair_matrix()).norm() < 1e-9);
      for (std::size_t i = 0; i < tk.modes.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
          CHECK(std::abs(tk.modes[i].dot(tk.modes[j])) < 1e-8);
    }
  }

  SECTION("complex degenerate block") {
    // v (u1 u1^T + u2 u2^T) with a complex rotation mixed in.
    sampling::Rng rng(53);
    Matrix q = sampling::haar_unitary(rng, 4).leftCols(2);
    Matrix sym_block = q.col(0) * q.col(0).transpose() +
                       q.col(1) * q.col(1).transpose();
    Vector amps = Eigen::Map<Vector>(
        Matrix(sym_block.transpose()).data(), 16);
    std::vector<ModeSpace> modes(2, ModeSpace(4));
    StateVector s(modes, amps, Statistics::Boson);
    auto tk = takagi(s);
    CHECK(tk.rank == 2);
    CHECK(std::abs(tk.values[0] - tk.values[1]) < 1e-9);
    CHECK((tk.reconstruct(4) - s.pair_matrix()).norm() < 1e-9);
  }

  CHECK_THROWS_AS(takagi(singlet_state(Statistics::Distinguishable)),
                  StatisticsError);
}
