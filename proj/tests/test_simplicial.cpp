#include "cusp/errors.hpp"
#include "cusp/simplicial.hpp"

#include <doctest.h>

#include <cmath>

using namespace cusp;
using namespace cusp::simplicial;

namespace {
FlatSystem circle_holonomy(int n, double h) {
  FlatSystem f(1);
  f.set_holonomy(0, n - 1, Matrix::Constant(1, 1, h));
  return f;
}
}  // namespace

TEST_SUITE("simplicial") {
  TEST_CASE("Betti numbers of standard complexes") {
    CHECK(chain::betti_numbers(twisted_complex(circle(4), FlatSystem(1))) == std::vector<int>{1, 1});
    CHECK(chain::betti_numbers(twisted_complex(simplex_boundary(3), FlatSystem(1))) == std::vector<int>{1, 0, 1});
    const auto torus = product(circle(3), circle(3));
    CHECK(chain::betti_numbers(twisted_complex(torus, FlatSystem(1))) == std::vector<int>{1, 2, 1});
    CHECK(torus.euler_characteristic() == 0);
    CHECK(product(circle(3), simplex_boundary(3)).euler_characteristic() == 0);
    CHECK(path(4).components() == 1);
  }

  TEST_CASE("holonomy -1 kills the cohomology of the circle") {
    for (int n : {3, 4, 7}) {
      const auto c = twisted_complex(circle(n), circle_holonomy(n, -1.0));
      CHECK(chain::betti_numbers(c) == std::vector<int>{0, 0});
    }
  }

  TEST_CASE("circle torsion does not depend on the triangulation") {
    const double ref = chain::log_torsion(twisted_complex(circle(3), circle_holonomy(3, -1.0))).log_torsion;
    CHECK(std::abs(ref) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    for (int n : {4, 5, 9})
      CHECK(chain::log_torsion(twisted_complex(circle(n), circle_holonomy(n, -1.0))).log_torsion ==
            doctest::Approx(ref).epsilon(1e-12));
  }

  TEST_CASE("flatness is checked") {
    const auto tri = SimplicialComplex::from_simplices({{0, 1, 2}});
    FlatSystem f(1);
    f.set_holonomy(0, 1, Matrix::Constant(1, 1, -1.0));
    CHECK_THROWS_AS(f.validate(tri), Error);
    f.set_holonomy(1, 2, Matrix::Constant(1, 1, -1.0));
    CHECK_NOTHROW(f.validate(tri));
  }

  TEST_CASE("cutting S^1 x S^2 along a sphere") {
    const auto c = builtin_case("s1xs2");
    const auto cut = cut_along(c.complex, c.z_vertices);
    CHECK(cut.pieces == 1);
    CHECK(cut.link.dimension() == 2);
    CHECK(chain::betti_numbers(twisted_complex(cut.cut, FlatSystem(1))) == std::vector<int>{1, 0, 1, 0});
  }

  TEST_CASE("cut identities on the built-in cases") {
    for (const char* name : {"s1xs2", "s1xs2-twisted"}) {
      CAPTURE(name);
      const auto c = builtin_case(name);
      const auto r = verify_cut_identities(c.complex, c.system, c.z_vertices, c.dimension);
      CHECK(r.witt);
      CHECK(r.milnor_cut_residual < 1e-9);
      CHECK(r.milnor_mv_residual < 1e-9);
      CHECK(r.rt3_residual < 1e-8);
      // the glued identity holds once the sqrt(2) normalisation of the identification is dropped
      CHECK(r.rt10_residual_without_sqrt2 < 1e-8);
    }
  }

  TEST_CASE("the cut basis seed does not move the identities") {
    const auto c = builtin_case("s1xs2");
    const auto a = verify_cut_identities(c.complex, c.system, c.z_vertices, 3, 1);
    const auto b = verify_cut_identities(c.complex, c.system, c.z_vertices, 3, 99);
    CHECK(b.rt3_residual < 1e-8);
    CHECK(a.log_tau_m == doctest::Approx(b.log_tau_m).epsilon(1e-12));
  }

  TEST_CASE("barycentric subdivision preserves torsion") {
    for (const char* name : {"s1xs2", "s1xs2-twisted", "torus"}) {
      CAPTURE(name);
      const auto c = builtin_case(name);
      CHECK(subdivision_check(c.complex, c.system).defect < 1e-8);
      const auto cut = cut_along(c.complex, c.z_vertices);
      CHECK(subdivision_check(cut.cut, c.system.pullback(cut.cut, cut.to_original)).defect < 1e-8);
    }
    const auto sd = barycentric_subdivide(circle(3), FlatSystem(1));
    CHECK(sd.complex.count(0) == 6);
    CHECK(sd.complex.count(1) == 6);
  }

  TEST_CASE("truncated cone cohomology") {
    // cone on S^2 in dimension 3: cutoff 1 keeps only degree 0 of the link cohomology
    const auto cone = truncated_cone(simplex_boundary(3), FlatSystem(1), 3);
    CHECK(chain::betti_numbers(cone.complex) == std::vector<int>{1, 0, 0});
  }

  TEST_CASE("unknown built-in") { CHECK_THROWS_AS(builtin_case("klein"), Error); }
}
