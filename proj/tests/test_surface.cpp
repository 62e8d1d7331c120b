#include "cusp/errors.hpp"
#include "cusp/model_formulas.hpp"
#include "cusp/surface.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace cusp;
using namespace cusp::sim;

TEST_SUITE("surface") {
  TEST_CASE("round sphere spectrum") {
    const auto s = builtin_surface("sphere", 0.1);
    const auto v = neck_spectrum(s, 16, 0.005).values();
    CHECK(std::abs(v[0]) < 1e-9);
    for (int i = 1; i <= 3; ++i) CHECK(v[i] == doctest::Approx(2.0).epsilon(1e-3));
    for (int i = 4; i <= 8; ++i) CHECK(v[i] == doctest::Approx(6.0).epsilon(1e-3));
    for (int i = 9; i <= 15; ++i) CHECK(v[i] == doctest::Approx(12.0).epsilon(1e-3));
    CHECK(s.area() == doctest::Approx(4 * std::numbers::pi).epsilon(1e-6));
    CHECK(s.euler_characteristic() == 2);
  }

  TEST_CASE("geometry of the neck surfaces") {
    const auto d = builtin_surface("symmetric", 1e-2);
    const auto h = builtin_surface("handle", 1e-2);
    CHECK(d.euler_characteristic() == 2);
    CHECK(h.euler_characteristic() == 0);
    CHECK(d.radius(0.0) == doctest::Approx(1e-2 / d.theta_period).epsilon(0.5));
    CHECK(d.neck_half_length() == doctest::Approx(std::asinh(100.0)));
    const auto [v1, v2] = d.limit_piece_areas();
    CHECK(v1 == doctest::Approx(v2));
    CHECK(d.area() == doctest::Approx(v1 + v2).epsilon(0.05));
    CHECK_THROWS_AS(h.limit_piece_areas(), Error);
    CHECK_THROWS_AS(builtin_surface("klein", 0.1), Error);
    NeckSurface bad = d;
    bad.eps = 0;
    CHECK_THROWS_AS(bad.validate(), Error);
  }

  TEST_CASE("gap scan on synthetic spectra") {
    const auto g = gap_scan({0.0, 1e-4, 0.3, 0.5, 0.9});
    CHECK(g.zeros == 1);
    CHECK(g.small == 1);
    CHECK(g.delta > 1e-4);
    CHECK(g.delta < 0.3);
    const auto none = gap_scan({0.0, 0.3, 0.5, 0.9});
    CHECK(none.small == 0);
    CHECK(count_small({0.0, 1e-5, 2e-5, 1.0}, 1e-3) == 2);
  }

  TEST_CASE("small-eigenvalue accounting") {
    const auto d = neck_spectrum(builtin_surface("symmetric", 2e-3), 12).values();
    const auto h = neck_spectrum(builtin_surface("handle", 2e-3), 12).values();
    const auto s = neck_spectrum(builtin_surface("sphere", 2e-3), 12).values();
    CHECK(gap_scan(d).small == 1);
    CHECK(gap_scan(h).small == 0);
    CHECK(gap_scan(s).small == 0);
    CHECK(gap_scan(d).zeros == 1);
  }

  TEST_CASE("small eigenvalue matches the two-piece prediction") {
    const auto base = builtin_surface("symmetric", 1e-3);
    const double lambda = neck_spectrum(base, 3).values()[1];
    const auto [v1, v2] = base.limit_piece_areas();
    CHECK(lambda / 1e-3 == doctest::Approx(model::burger_coeff(v1, v2)).epsilon(0.01));
  }

  TEST_CASE("enlarging a cap lowers the small eigenvalue") {
    auto s = builtin_surface("symmetric", 2e-3);
    double prev = INFINITY;
    for (double r : {0.8, 1.0, 1.3, 1.7}) {
      s.cap_right = r;
      const double lambda = neck_spectrum(s, 3).values()[1];
      CHECK(lambda < prev);
      prev = lambda;
    }
  }

  TEST_CASE("mode cutoff guard rail") {
    try {
      neck_spectrum(builtin_surface("symmetric", 1e-2), 20, 0.01, 0);
      FAIL("expected a guard rail");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::GuardRail);
    }
  }

  TEST_CASE("log det of the unit sphere") {
    SurfaceLogDetOptions opt;
    opt.t_min_cap = 4e-3;
    const auto r = surface_logdet(builtin_surface("sphere", 0.1), opt);
    CHECK(r.logdet == doctest::Approx(sphere_logdet(1.0)).epsilon(1e-3));
    CHECK(sphere_logdet(1.0) == doctest::Approx(0.5 - 4 * (-0.16542114370045092921)).epsilon(1e-14));
    CHECK(sphere_logdet(2.0) - sphere_logdet(1.0) == doctest::Approx(4.0 / 3 * std::log(2.0)));
  }

  TEST_CASE("log det fit recovers synthetic coefficients") {
    std::vector<double> eps{0.6, 0.4, 0.25, 0.16, 0.1, 0.06}, y;
    for (double e : eps) y.push_back(-3.0 / e + 0.5 * std::log(std::log(1 / e)) - 0.25 * std::log(e) + 1.5);
    const auto f = fit_logdet_series(eps, y);
    CHECK(f.c_inv_eps == doctest::Approx(-3.0).epsilon(1e-9));
    CHECK(f.c_loglog == doctest::Approx(0.5).epsilon(1e-7));
    CHECK(f.c_log == doctest::Approx(-0.25).epsilon(1e-7));
    CHECK(f.c_const == doctest::Approx(1.5).epsilon(1e-7));
    CHECK(f.monotone);
    CHECK_THROWS_AS(fit_logdet_series({0.1, 0.2}, {1.0, 2.0}), Error);
  }
}
