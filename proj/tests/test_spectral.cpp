#include "cusp/errors.hpp"
#include "cusp/model_formulas.hpp"
#include "cusp/spectral_sim.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace cusp;
using namespace cusp::sim;

TEST_SUITE("spectral") {
  TEST_CASE("free operator converges at second order") {
    // lowest Dirichlet eigenvalue (pi / 2L)^2 on [-L, L]
    const double L = 5.0;
    const double exact = std::pow(std::numbers::pi / (2 * L), 2);
    double prev = 0;
    for (int n : {199, 399, 799}) {
      const double err = std::abs(discretize(0.0, {L, n}).lowest(1)[0] - exact);
      if (prev > 0) {
        const double order = std::log2(prev / err);
        CHECK(order >= 1.8);
        CHECK(order <= 2.2);
      }
      prev = err;
    }
  }

  TEST_CASE("weight -1 is the free operator shifted by one") {
    const Grid1D g{10.0, 300};
    const Vector free = discretize(0.0, g).eigenvalues();
    const Vector shifted = discretize(-1.0, g).eigenvalues();
    CHECK((shifted - free - Vector::Ones(free.size())).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(model_potential(-1.0, 0.3) == doctest::Approx(1.0));
    CHECK(model_potential(1.0, 0.0) == doctest::Approx(-1.0));
  }

  TEST_CASE("relative heat trace is odd in the weight and matches erf") {
    const Grid1D g = trace_grid(1.0, 2000);
    const double plus = relative_heat_trace(0.7, 1.0, g);
    CHECK(relative_heat_trace(-0.7, 1.0, g) == doctest::Approx(-plus).epsilon(1e-12));
    CHECK(std::abs(relative_heat_trace(0.0, 1.0, g)) < 1e-14);
    CHECK(std::abs(plus - model::strint_rhs(0.7, 1.0)) < 1e-3);
  }

  TEST_CASE("truncation guard rail") {
    const Grid1D short_box{10.0, 1000};
    try {
      relative_heat_trace(1.0, 4.0, short_box);
      FAIL("expected a guard rail");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::GuardRail);
    }
    CHECK_NOTHROW(relative_heat_trace(1.0, 4.0, short_box, false));
    CHECK(required_half_width(4.0) == doctest::Approx(36.0));
    CHECK_THROWS_AS((Grid1D{40.0, 500}.validate(true)), Error);  // h > 0.05
    CHECK_THROWS_AS((Grid1D{1.0, 50}.validate()), Error);
  }

  TEST_CASE("paired exponential differences keep small gaps accurate") {
    Vector x(2), y(2);
    x << 1.0, 2.0;
    y << 1.0 + 1e-12, 2.0;
    CHECK(paired_exp_difference(x, y, 1.0) == doctest::Approx(std::exp(-1.0) * 1e-12).epsilon(1e-6));
  }

  TEST_CASE("relative log-determinant at a = 1/2") {
    const auto r = relative_logdet(0.5, {40.0, 8000});
    CHECK(r.target == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(std::abs(r.value - r.target) < 0.02);
    CHECK(std::abs(r.value - r.spectral_value) < 1e-3);
  }

  TEST_CASE("renormalized volume finite part") {
    const auto r = renorm_volume_check();
    CHECK(std::abs(r.finite_part - 2 * std::log(2.0)) < 1e-6);
    CHECK(r.slope == doctest::Approx(-2.0).epsilon(1e-8));
    CHECK(std::abs(r.halving_change) < 1e-8);
  }

  TEST_CASE("heat trace series provenance") {
    HeatTraceSeries s{{0.1, 1.0}, {0.2, 0.3}, "numeric"};
    CHECK_NOTHROW(s.validate());
    s.provenance = "guess";
    CHECK_THROWS_AS(s.validate(), Error);
    const auto t = log_spaced(0.1, 10.0, 3);
    CHECK(t[1] == doctest::Approx(1.0));
  }
}
