#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "oswave/errors.hpp"
#include "oswave/io.hpp"

using namespace oswave;
using namespace oswave::io;

TEST_SUITE("io") {
  TEST_CASE("doubles round trip") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-17, 6.02214076e23, std::nextafter(1.0, 2.0)}) {
      const auto s = format_double(v);
      CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
  }

  TEST_CASE("csv layout") {
    const Table t{{"a", "b"}, {{1.0, 0.5}, {2.0, -0.25}}};
    CHECK(to_csv(t) == "a,b\n1,0.5\n2,-0.25\n");
    std::ostringstream os;
    write_csv(os, t);
    CHECK(os.str() == to_csv(t));
  }

  TEST_CASE("ragged table") {
    const Table t{{"a", "b"}, {{1.0}}};
    CHECK_THROWS_AS(to_csv(t), InvalidArgument);
  }

  TEST_CASE("complex json") {
    const auto j = complex_json(Complex(1.5, -2.0));
    CHECK(j["re"].get<double>() == 1.5);
    CHECK(j["im"].get<double>() == -2.0);
    CHECK(j.dump() == R"({"re":1.5,"im":-2.0})");
  }
}
