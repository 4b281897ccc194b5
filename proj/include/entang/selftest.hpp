#pragma once

#include <string>
#include <vector>

#include "entang/random.hpp"
#include "entang/verdicts.hpp"

namespace entang {

struct SelfTestResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Randomized property suites, deterministic for a given seed.
/// `trials` scales every suite; the acceptance harness runs the full-size
/// versions separately.
inline std::vector<SelfTestResult> run_selftest(unsigned long long seed,
                                                int trials = 50) {
  std::vector<SelfTestResult> results;
  sampling::Rng rng(seed);

  {  // Equivalence of the three separability conditions.
    SelfTestResult r{"distinguishable-conditions-equivalence", true, ""};
    try {
      for (int t = 0; t < trials; ++t) {
        const Index d = 2 + t % 3;
        const auto product = sampling::random_product_pair(rng, d);
        if (classify_distinguishable_pair(product).entangled) {
          r.passed = false;
          r.detail = "product state classified entangled";
          break;
        }
        classify_distinguishable_pair(sampling::random_pair_state(rng, d));
      }
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = e.what();
    }
    results.push_back(r);
  }

  {  // Correlation factorization on products; detection on entangled states.
    SelfTestResult r{"correlation-factorization", true, ""};
    for (int t = 0; t < trials && r.passed; ++t) {
      const Index d = 2 + t % 3;
      const auto product = sampling::random_product_pair(rng, d);
      for (int j = 0; j < 10; ++j) {
        auto [ok, res] = correlation_factorizes(
            product, sampling::random_hermitian(rng, d),
            sampling::random_hermitian(rng, d));
        if (!ok) {
          r.passed = false;
          r.detail = "residual " + std::to_string(res) + " on a product";
          break;
        }
      }
      const auto entangled = sampling::random_pair_state(rng, d);
      if (classify_distinguishable_pair(entangled).entangled) {
        const auto sd = schmidt(entangled);
        const Matrix a =
            sd.left_basis[0] * sd.left_basis[0].adjoint();
        const Matrix b =
            sd.right_basis[0] * sd.right_basis[0].adjoint();
        const Matrix ax = sd.left_basis[0] * sd.left_basis[1].adjoint() +
                          sd.left_basis[1] * sd.left_basis[0].adjoint();
        const Matrix bx = sd.right_basis[0] * sd.right_basis[1].adjoint() +
                          sd.right_basis[1] * sd.right_basis[0].adjoint();
        const double r1 = correlation_factorizes(entangled, a, b).second;
        const double r2 = correlation_factorizes(entangled, ax, bx).second;
        if (std::max(r1, r2) <= 1e-6) {
          r.passed = false;
          r.detail = "no correlating observable pair found";
        }
      }
    }
    results.push_back(r);
  }

  {  // Complete-property witness for (anti)symmetrized products.
    SelfTestResult r{"identical-pair-witness", true, ""};
    try {
      for (int t = 0; t < trials && r.passed; ++t) {
        const Index d = 3 + t % 3;
        const auto fermion = sampling::random_slater_pair(rng, d);
        auto pw = complete_property_witness(fermion);
        if (!pw) {
          r.passed = false;
          r.detail = "no witness for an antisymmetrized product";
          break;
        }
        const auto boson =
            symmetrize(sampling::random_product_pair(rng, d));
        classify_boson_pair(boson);  // cross-checks internally when separable
      }
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = e.what();
    }
    results.push_back(r);
  }

  {  // Subgroup embedding round trip at N=4, d=8.
    SelfTestResult r{"subgroup-round-trip", true, ""};
    try {
      const Index d = 8;
      for (int t = 0; t < std::max(1, trials / 10) && r.passed; ++t) {
        const Matrix u = sampling::haar_unitary(rng, d);
        const auto pi = sampling::random_fermion_on_support(
            rng, u.leftCols(4), 2, d);
        const auto phi = sampling::random_fermion_on_support(
            rng, u.rightCols(4), 2, d);
        const auto psi = embed_partition(pi, phi);
        auto fact = detect_partition(psi, 2);
        if (!fact) {
          r.passed = false;
          r.detail = "embedded state not recognized";
          break;
        }
        const auto rebuilt = embed_partition(fact->pi_m, fact->phi_k);
        if (std::norm(inner(rebuilt, psi)) < 1.0 - 1e-9) {
          r.passed = false;
          r.detail = "round-trip fidelity below threshold";
        }
      }
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = e.what();
    }
    results.push_back(r);
  }

  return results;
}

}  // namespace entang
