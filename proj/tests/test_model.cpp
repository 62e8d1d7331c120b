#include "cusp/errors.hpp"
#include "cusp/model_formulas.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace cusp;
using namespace cusp::model;

namespace {
const double kLog2 = std::log(2.0);

// Beta(q, 1/2) through std::tgamma, an independent route to c_q
double c_ref(double q) { return std::tgamma(q) * std::tgamma(0.5) / std::tgamma(q + 0.5); }

// at_db summed directly: 1/2 sum_q (-1)^q b_q [log c_|v/2-q| + (2q+1) sgn(2q-v) log|v-2q|]
double at_db_ref(int v, const std::vector<int>& b) {
  double s = 0;
  for (int q = 0; q <= v; ++q) {
    if (2 * q == v || b[q] == 0) continue;
    const double sgn = 2 * q > v ? 1 : -1;
    s += (q % 2 ? -1 : 1) * b[q] * (std::log(c_ref(std::abs(v / 2.0 - q))) + (2 * q + 1) * sgn * std::log(std::abs(v - 2 * q)));
  }
  return s / 2;
}
}  // namespace

TEST_SUITE("model") {
  TEST_CASE("c constants") {
    CHECK(c_const(1) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(c_const(0.5) == doctest::Approx(std::numbers::pi).epsilon(1e-14));
    for (double q : {0.25, 1.5, 2.0, 3.5, 7.0}) CHECK(c_const(q) == doctest::Approx(c_ref(q)).epsilon(1e-13));
    CHECK_THROWS_AS(c_const(0.0), Error);
  }

  TEST_CASE("model determinant: the three printed values") {
    CHECK(logdet_model(0.0) == 0.0);
    CHECK(logdet_model(1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(std::abs(logdet_model(1.0)) < 1e-15);
    CHECK(logdet_model(-1.0) == doctest::Approx(2 * kLog2).epsilon(1e-15));
  }

  TEST_CASE("model determinant: sum and difference identities") {
    for (double a = 0.25; a <= 3.0 + 1e-12; a += 0.25) {
      CHECK(std::abs(logdet_model(a) + logdet_model(-a) - 2 * std::log(c_const(a))) < 1e-12);
      CHECK(std::abs(logdet_model(a) - logdet_model(-a) + 2 * std::log(2 * a)) < 1e-12);
    }
  }

  TEST_CASE("b-operator contribution against a direct sum") {
    CHECK(at_db(2, {1, 0, 1}) == doctest::Approx(3 * kLog2).epsilon(1e-14));
    CHECK(at_db(2, {1, 0, 1}) == doctest::Approx(at_db_ref(2, {1, 0, 1})).epsilon(1e-14));
    CHECK(at_db(4, {1, 2, 0, 2, 1}) == doctest::Approx(at_db_ref(4, {1, 2, 0, 2, 1})).epsilon(1e-13));
    CHECK(at_db(3, {1, 1, 1, 1}) == doctest::Approx(at_db_ref(3, {1, 1, 1, 1})).epsilon(1e-13));
  }

  TEST_CASE("Witt failures name the middle degree") {
    try {
      at_db(2, {1, 1, 1});
      FAIL("expected a precondition failure");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Precondition);
      CHECK(std::string(e.what()).find("degree 1") != std::string::npos);
    }
    BettiProfile p{3, {1, 1, 1}, {1, 1, 1}, {0, 0, 0}, {}};
    CHECK_THROWS_AS(p.validate(), Error);
  }

  TEST_CASE("assembly cancels the c-terms on random Witt profiles") {
    for (unsigned long long seed = 1; seed <= 50; ++seed) {
      for (int m : {3, 5, 7}) {
        const BettiProfile p = random_profile(seed, m, false);
        REQUIRE_NOTHROW(p.validate());
        const double parts = at_db(p.v(), p.b) + at_small(p.m, p.bplus, p.jdet) + harmonic_correction(p.m, p.bH);
        CHECK(std::abs(parts - at_assembly(p)) < 1e-12);
      }
    }
  }

  TEST_CASE("orthogonal reductions agree on mirrored profiles") {
    for (unsigned long long seed = 1; seed <= 50; ++seed) {
      for (int m : {3, 5, 7}) {  // v even
        const BettiProfile p = random_profile(seed, m, true);
        CHECK(std::abs(at_db_orth(p.v(), p.b) - at_db(p.v(), p.b)) < 1e-12);
        CHECK(std::abs(at_small_orth(p.m, p.bplus, p.jdet) - at_small(p.m, p.bplus, p.jdet)) < 1e-12);
        CHECK(std::abs(harmonic_correction_orth(p.m, p.bH) - harmonic_correction(p.m, p.bH)) < 1e-12);
        CHECK(std::abs(at_assembly_orth(p) - at_assembly(p)) < 1e-12);
      }
    }
  }

  TEST_CASE("defect sums on S^1 x S^2 link data") {
    const auto d = cm_defect(3, {1, 0, 1});
    CHECK(d.general.log2_term == doctest::Approx(-0.25 * kLog2));
    CHECK(d.general.dimension_term == doctest::Approx(-0.5 * 2 * kLog2));
    CHECK(d.general.total == doctest::Approx(-1.25 * kLog2));
    // Euclidean form: -chi/8 log 2 - 1/2 sum_{q < 1} b_q (2 - 2q) log(2 - 2q)
    CHECK(d.euclidean.total == doctest::Approx(-2.0 / 8 * kLog2 - kLog2));
    CHECK_THROWS_AS(cm_defect(4, {1, 0, 0, 1}), Error);
  }

  TEST_CASE("even-dimensional closed form") {
    CHECK(std::abs(even_cusp_at(2, {1, 1})) < 1e-15);
    CHECK(even_cusp_at(4, {1, 0, 0, 1}) == doctest::Approx(2 * std::log(3.0)).epsilon(1e-15));
    CHECK(even_cusp_at(6, {1, 2, 0, 0, 2, 1}) ==
          doctest::Approx(3 * (std::log(5.0) - 2 * std::log(3.0))).epsilon(1e-14));
    CHECK_THROWS_AS(even_cusp_at(3, {1, 0, 1}), Error);
  }

  TEST_CASE("error function identity by quadrature") {
    for (double a : {-2.0, 0.5, 1.0, 2.0})
      for (double t : {0.1, 1.0, 9.0}) CHECK(std::abs(strint_quadrature(a, t) - strint_rhs(a, t)) < 1e-12);
    CHECK(strint_rhs(1, 1) == doctest::Approx(std::erf(1.0)));
  }

  TEST_CASE("renormalized traces and constants") {
    CHECK(rtr_closed(TraceKind::P0, 1.0) == doctest::Approx(kLog2 / std::sqrt(std::numbers::pi)));
    CHECK(rtr_closed(TraceKind::P1m1, 2.0) == doctest::Approx(std::exp(-2.0) * kLog2 / std::sqrt(2 * std::numbers::pi)));
    CHECK(trace_kind_from_string("P1m1") == TraceKind::P1m1);
    CHECK_THROWS_AS(trace_kind_from_string("Q"), Error);
    CHECK(wolpert_c1() < 0);
    CHECK(wolpert_c1() == doctest::Approx(wolpert_c1(true)).epsilon(1e-13));
    CHECK(wolpert_c1() == doctest::Approx(-0.0146609053369111).epsilon(1e-12));
    CHECK(burger_coeff(1, 1) == doctest::Approx(2 / std::numbers::pi));
  }

  TEST_CASE("small eigenvalue rate and product exponents") {
    const auto r = small_eig_rate(5, 0, 2.0);
    CHECK(r.exponent == 4);
    CHECK(r.coefficient == doctest::Approx(2.0 / c_const(2.0)));
    CHECK_THROWS_AS(small_eig_rate(5, 2, 1.0), Error);
    BettiProfile p{3, {1, 0, 1}, {1, 0, 1}, {0, 0, 0}, {2.0, 1.0, 0.5, 1.0}};
    const auto lp = small_eig_log_product(p, 0);
    CHECK(lp.exponent == 2);
    CHECK(lp.log_coefficient == doctest::Approx(2 * std::log(2.0) - std::log(c_const(1.0))));
  }

  TEST_CASE("random profiles are seeded") {
    const auto a = random_profile(42, 5, true), b = random_profile(42, 5, true);
    CHECK(a.b == b.b);
    CHECK(a.jdet == b.jdet);
    for (int q = 0; q <= a.v(); ++q) CHECK(a.betti(q) == a.betti(a.v() - q));
  }
}
