#include "cusp/errors.hpp"
#include "cusp/io.hpp"

#include <doctest.h>

#include <cmath>

using namespace cusp;
using namespace cusp::io;

TEST_SUITE("io") {
  TEST_CASE("cochain complex round trip") {
    const json j = parse_json(R"({"dims": [1, 2, 1], "differentials": [[[1], [-1]], [[1, 1]]]})");
    const auto c = complex_from_json(j);
    CHECK(c.dims() == std::vector<int>{1, 2, 1});
    const auto back = complex_from_json(complex_to_json(c));
    CHECK(back.dims() == c.dims());
    CHECK((back.d(0) - c.d(0)).norm() == 0.0);
    CHECK(complex_to_json(back) == complex_to_json(c));
  }

  TEST_CASE("empty differential list means the zero map") {
    const auto c = complex_from_json(parse_json(R"({"dims": [1, 1], "differentials": [[]]})"));
    CHECK(chain::betti_numbers(c) == std::vector<int>{1, 1});
  }

  TEST_CASE("simplicial input round trip") {
    const json j = parse_json(R"({"simplices": [[0, 1], [1, 2], [0, 2]], "rank": 1,
                                   "holonomy": [{"edge": [2, 0], "matrix": -1}],
                                   "dimension": 1, "collar": {"z": [1]}})");
    const auto in = simplicial_from_json(j);
    CHECK(in.complex.count(1) == 3);
    CHECK(in.system.transport(0, 2)(0, 0) == doctest::Approx(-1.0));
    const auto again = simplicial_from_json(simplicial_to_json(in));
    CHECK(simplicial_to_json(again) == simplicial_to_json(in));
    CHECK(again.z_vertices == std::vector<int>{1});
  }

  TEST_CASE("profile and surface input") {
    const auto p = profile_from_json(parse_json(R"({"m": 3, "b": [1, 0, 1], "bplus": [1, 0, 1], "bH": [0, 0, 0]})"));
    CHECK(profile_from_json(profile_to_json(p)).b == p.b);
    const auto s = surface_from_json(parse_json(R"({"topology": "dumbbell", "cap_left": 0.8, "cap_right": 1.5})"), 1e-2);
    CHECK(s.cap_right == 1.5);
    CHECK(surface_from_json(parse_json(R"("handle")"), 1e-2).topology == sim::SurfaceTopology::Handle);
  }

  TEST_CASE("malformed input is a parse error") {
    for (const char* text : {"{bad", R"({"dims": [1, 1]})", R"({"simplices": [[0, 0]]})", R"({"m": "three", "b": []})"}) {
      CAPTURE(text);
      try {
        const json j = parse_json(text);
        if (j.contains("dims")) complex_from_json(j);
        else if (j.contains("simplices")) simplicial_from_json(j);
        else profile_from_json(j);
        FAIL("expected a parse error");
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Parse);
      }
    }
    CHECK_THROWS_AS(read_file("/nonexistent/file.json"), Error);
  }

  TEST_CASE("number formatting and CSV") {
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(2.0) == "2");
    CHECK(format_number(NAN) == "nan");
    CsvWriter w({"a", "b"});
    w.row({"1", "x,y"});
    CHECK(w.str() == "a,b\n1,\"x,y\"\n");
    CHECK_THROWS_AS(w.row({"1"}), Error);
  }
}
