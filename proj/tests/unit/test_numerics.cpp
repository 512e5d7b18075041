#include <doctest.h>

#include <cmath>

#include "oswave/errors.hpp"
#include "oswave/numerics.hpp"

using namespace oswave;
using namespace oswave::numerics;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_SUITE("numerics") {
  TEST_CASE("ode exponential growth") {
    auto rhs = [](Complex, std::span<const Complex> s, std::span<Complex> d) { d[0] = s[0]; };
    const auto out = integrate_ode(rhs, Contour::segment(0.0, 1.0), {1.0});
    CHECK(rel(out[0], std::exp(1.0)) < 1e-10);
  }

  TEST_CASE("ode constant field leaves the state untouched") {
    auto rhs = [](Complex, std::span<const Complex>, std::span<Complex> d) {
      d[0] = 0.0;
      d[1] = 0.0;
    };
    const Complex v0(0.3, -2.0), v1(7.0, 1.0);
    const auto out = integrate_ode(rhs, Contour::segment(Complex(0.2, 0.1), Complex(3.0, -1.0)), {v0, v1});
    CHECK(out[0] == v0);
    CHECK(out[1] == v1);
  }

  TEST_CASE("ode gaussian along a complex segment") {
    auto rhs = [](Complex y, std::span<const Complex> s, std::span<Complex> d) { d[0] = -2.0 * y * s[0]; };
    const Complex end(1.0, 1.0);
    const auto out = integrate_ode(rhs, Contour::segment(0.0, end), {1.0});
    CHECK(rel(out[0], std::exp(-end * end)) < 1e-9);
  }

  TEST_CASE("ode result does not depend on how the contour is split") {
    auto rhs = [](Complex y, std::span<const Complex> s, std::span<Complex> d) {
      d[0] = s[1];
      d[1] = -(1.0 + y) * s[0];
    };
    const Complex pts[] = {0.0, Complex(0.7, 0.4), Complex(1.5, -0.2), 2.5};
    const Contour path = Contour::polyline(pts);
    OdeSettings s;
    const auto whole = integrate_ode(rhs, path, {1.0, 0.0}, s);
    for (std::size_t k = 1; k < path.segments().size(); ++k) {
      const auto [a, b] = path.split_at(k);
      const auto mid = integrate_ode(rhs, a, {1.0, 0.0}, s);
      const auto end = integrate_ode(rhs, b, mid, s);
      CHECK(rel(end[0], whole[0]) < 10 * s.rel_tol);
      CHECK(rel(end[1], whole[1]) < 10 * s.rel_tol);
    }
  }

  TEST_CASE("ode step limit") {
    auto rhs = [](Complex, std::span<const Complex> s, std::span<Complex> d) { d[0] = 50.0 * kI * s[0]; };
    OdeSettings s;
    s.max_steps = 5;
    try {
      integrate_ode(rhs, Contour::segment(0.0, 10.0), {1.0}, s);
      FAIL("expected StepLimitExceeded");
    } catch (const NumericalError& e) {
      CHECK(e.kind() == ErrorKind::StepLimitExceeded);
    }
  }

  TEST_CASE("ode non-finite state") {
    auto rhs = [](Complex, std::span<const Complex>, std::span<Complex> d) { d[0] = NAN; };
    try {
      integrate_ode(rhs, Contour::segment(0.0, 1.0), {1.0});
      FAIL("expected NonFiniteState");
    } catch (const NumericalError& e) {
      CHECK(e.kind() == ErrorKind::NonFiniteState);
    }
  }

  TEST_CASE("quadrature of elementary integrands") {
    CHECK(std::abs(adaptive_quadrature([](Complex) { return Complex(1.0); }, Contour::segment(0.0, 1.0)) - 1.0) < 1e-14);
    const Complex e = adaptive_quadrature([](Complex y) { return std::exp(-y); }, Contour::segment(0.0, 40.0), 1e-13);
    CHECK(std::abs(e - (1.0 - std::exp(-40.0))) < 1e-12);
    const Complex s(0.5, 0.1);
    const Complex l = adaptive_quadrature([&](Complex y) { return 1.0 / (y - s); }, Contour::segment(0.0, 1.0), 1e-12);
    CHECK(rel(l, std::log((1.0 - s) / (-s))) < 1e-10);
  }

  TEST_CASE("quadrature is additive over concatenation") {
    auto f = [](Complex y) { return std::sin(3.0 * y) * std::exp(-0.2 * y); };
    const Contour a = Contour::segment(0.0, Complex(1.0, 0.5));
    const Contour b = Contour::segment(Complex(1.0, 0.5), 4.0);
    const double tol = 1e-11;
    const Complex whole = adaptive_quadrature(f, a.then(b), tol);
    const Complex parts = adaptive_quadrature(f, a, tol) + adaptive_quadrature(f, b, tol);
    CHECK(rel(parts, whole) < 10 * tol);
  }

  TEST_CASE("cauchy theorem on homotopic paths") {
    const Complex pole(0.5, 0.0);
    auto f = [&](Complex y) { return std::exp(y) / (y - pole); };
    const double tol = 1e-11;
    const Complex below = adaptive_quadrature(f, indented_contour(0.0, 1.0, pole, 0.05, Side::Below), tol);
    const Complex deep = adaptive_quadrature(f, indented_contour(0.0, 1.0, pole, 0.2, Side::Below), tol);
    CHECK(rel(deep, below) < 10 * tol);
    const Complex above = adaptive_quadrature(f, indented_contour(0.0, 1.0, pole, 0.05, Side::Above), tol);
    // The two sides differ by the residue 2 pi i e^{1/2}.
    CHECK(rel(below - above, 2.0 * kPi * kI * std::exp(0.5)) < 1e-9);
  }

  TEST_CASE("indentation geometry") {
    const auto straight = indented_contour(0.0, 1.0, Complex(0.5, 0.3), 0.05, Side::Below);
    CHECK(straight.segments().size() == 1);
    const auto far = indented_contour(0.0, 1.0, 2.0, 0.05, Side::Below);
    CHECK(far.segments().size() == 1);
    const auto c = indented_contour(0.0, 1.0, 0.5, 0.05, Side::Below);
    const auto w = c.waypoints();
    REQUIRE(w.size() == 4);
    CHECK(std::abs(w[1] - 0.45) < 1e-15);
    CHECK(std::abs(w[2] - 0.55) < 1e-15);
    const auto& arc = c.segments()[1];
    CHECK(arc.kind == Segment::Kind::Arc);
    CHECK(std::abs(arc.point(0.5) - Complex(0.5, -0.05)) < 1e-15);
    CHECK(std::abs(c.length() - (0.9 + kPi * 0.05)) < 1e-14);
  }

  TEST_CASE("quadrature subdivision limit") {
    auto f = [](Complex y) { return std::sin(1e4 * y); };
    try {
      adaptive_quadrature(f, Contour::segment(0.0, 100.0), 1e-14, 1e-300, 10);
      FAIL("expected SubdivisionLimit");
    } catch (const NumericalError& e) {
      CHECK(e.kind() == ErrorKind::SubdivisionLimit);
    }
  }
}
