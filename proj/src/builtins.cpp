#include "cusp/errors.hpp"
#include "cusp/simplicial.hpp"

namespace cusp::simplicial {

namespace {

FlatSystem circle_holonomy(const SimplicialComplex& total, const SimplicialComplex& circ, const SimplicialComplex& other,
                           double h) {
  FlatSystem on_circle(1);
  on_circle.set_holonomy(0, circ.max_label(), Matrix::Constant(1, 1, h));
  return on_circle.pullback(total, product_projection_first(circ, other));
}

}  // namespace

std::vector<std::string> builtin_case_names() { return {"s1xs2", "s1xs2-twisted", "torus", "dumbbell"}; }

CutCase builtin_case(const std::string& name) {
  CutCase c;
  c.name = name;
  if (name == "s1xs2" || name == "s1xs2-twisted") {
    SimplicialComplex s1 = circle(3), s2 = simplex_boundary(3);
    c.complex = product(s1, s2);
    c.system = name == "s1xs2" ? FlatSystem(1) : circle_holonomy(c.complex, s1, s2, -1.0);
    c.z_vertices = {0, 1, 2, 3};
    c.dimension = 3;
  } else if (name == "torus") {
    SimplicialComplex s1 = circle(3);
    c.complex = product(s1, s1);
    c.system = FlatSystem(1);
    c.z_vertices = {0, 1, 2};
    c.dimension = 2;
  } else if (name == "dumbbell") {
    // cylinder over a circle, both ends capped by cones; Z is the middle circle
    SimplicialComplex s1 = circle(3), p = path(5);
    SimplicialComplex cyl = product(s1, p);
    SimplicialComplex k = add_cone(cyl, cyl.full_subcomplex({0, 5, 10}), 15);
    c.complex = add_cone(k, k.full_subcomplex({4, 9, 14}), 16);
    c.system = FlatSystem(1);
    c.z_vertices = {2, 7, 12};
    c.dimension = 2;
  } else {
    fail(ErrorKind::InvalidArgument, "unknown built-in case '" + name + "'");
  }
  return c;
}

}  // namespace cusp::simplicial
