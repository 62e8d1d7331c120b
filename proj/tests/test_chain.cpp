#include "cusp/chain_torsion.hpp"
#include "cusp/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace cusp;
using namespace cusp::chain;

namespace {
BasedComplex two_term(double x) { return BasedComplex({1, 1}, {Matrix::Constant(1, 1, x)}); }

// C^0 = R -> C^1 = R by zero: the cohomology of a point pair in degrees 0, 1
BasedComplex zero_map() { return BasedComplex({1, 1}, {Matrix::Zero(1, 1)}); }
}  // namespace

TEST_SUITE("chain") {
  TEST_CASE("acyclic two-term complex") {
    // Laplacians are x^2 in both degrees; log tau = -1/2 (0 - 1) log x^2 = log |x|
    for (double x : {0.5, 2.0, -3.0}) {
      const auto r = log_torsion(two_term(x));
      CHECK(r.log_torsion == doctest::Approx(std::log(std::abs(x))).epsilon(1e-13));
      CHECK(r.betti == std::vector<int>{0, 0});
      CHECK(r.basis_factor == 0.0);
    }
  }

  TEST_CASE("rescaling a cohomology basis shifts log tau by the log of the determinant") {
    const BasedComplex c = zero_map();
    const CohomologyBasis h = harmonic_basis(c);
    CohomologyBasis mu = h;
    mu.vectors[0] *= 2.0;
    mu.vectors[1] *= 5.0;
    mu.orthonormal = false;
    const double base = log_torsion(c).log_torsion;
    CHECK(log_torsion(c, mu).log_torsion == doctest::Approx(base - std::log(2.0) + std::log(5.0)).epsilon(1e-13));
  }

  TEST_CASE("d squared and the dual complex") {
    const BasedComplex c({2, 2, 1}, {Matrix::Identity(2, 2), Matrix::Zero(1, 2)});
    CHECK(c.d_squared_defect() < 1e-15);
    CHECK(betti_numbers(c) == std::vector<int>{0, 0, 1});
    CHECK(betti_numbers(c.dual()) == std::vector<int>{1, 0, 0});
    CHECK_THROWS_AS(BasedComplex({1, 1, 1}, {Matrix::Ones(1, 1), Matrix::Ones(1, 1)}), Error);
  }

  TEST_CASE("direct sums add torsion") {
    const BasedComplex a = two_term(3.0), b = two_term(0.25);
    CHECK(log_torsion(BasedComplex::direct_sum(a, b)).log_torsion ==
          doctest::Approx(log_torsion(a).log_torsion + log_torsion(b).log_torsion).epsilon(1e-13));
  }

  TEST_CASE("Hodge decomposition spectrum") {
    const auto hd = hodge_decompose(two_term(2.0));
    REQUIRE(hd.size() == 2);
    CHECK(hd[0].harmonic.cols() == 0);
    CHECK(hd[0].spectrum[0] == doctest::Approx(4.0));
  }

  TEST_CASE("exact sequences as complexes") {
    const Matrix id = Matrix::Identity(2, 2);
    CHECK_NOTHROW(les_as_complex({2, 2}, {id}));
    CHECK_THROWS_AS(les_as_complex({2, 2, 2}, {id, id}), Error);
  }

  TEST_CASE("Milnor multiplicativity on random short exact sequences") {
    for (unsigned long long seed = 1; seed <= 20; ++seed) {
      const auto s = random_split_ses(seed);
      CHECK_NOTHROW(validate(s));
      CHECK(compatibility_defect(s) < 1e-10);
      const auto hs = harmonic_basis(s.sub), ht = harmonic_basis(s.total), hq = harmonic_basis(s.quot);
      CHECK(milnor_check(s, hs, ht, hq) < 1e-9);
    }
    const auto suite = milnor_suite(7, 100);
    CHECK(suite.residuals.size() == 100);
    CHECK(suite.max_residual < 1e-9);
  }
}
