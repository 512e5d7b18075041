#include <doctest.h>

#include <cmath>
#include <vector>

#include "oswave/errors.hpp"
#include "oswave/profile.hpp"

using namespace oswave;
using namespace oswave::profile;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

std::string code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const InvalidArgument& e) {
    return e.code();
  }
  return "";
}

}  // namespace

TEST_SUITE("profile") {
  TEST_CASE("construction and normalisation") {
    const std::vector<Term> one{{1.0, 1.0}};
    const auto p = make_profile(one, 1.0);
    CHECK(std::abs(p.eval(2.0) - (1.0 - std::exp(-2.0))) < 1e-15);

    const std::vector<Term> two{{2.0, 1.0}};
    const auto q = make_profile(two, 1.0);
    CHECK(q.terms()[0].a == doctest::Approx(1.0));

    const std::vector<Term> mix{{0.5, 1.0}, {0.5, 2.0}};
    const auto m = make_profile(mix, 1.0);
    CHECK(m.wall_shear() == doctest::Approx(1.5));
    CHECK(m.beta() == doctest::Approx(1.0));
    CHECK(std::abs(m.eval(0.7) - (1.0 - 0.5 * std::exp(-0.7) - 0.5 * std::exp(-1.4))) < 1e-15);
  }

  TEST_CASE("invalid specs") {
    CHECK(code_of([] { make_profile(std::vector<Term>{}, 1.0); }) == "EmptySpec");
    CHECK(code_of([] { make_profile(std::vector<Term>{{-1.0, 1.0}}, 1.0); }) == "NonPositiveCoefficient");
    CHECK(code_of([] { make_profile(std::vector<Term>{{1.0, 0.0}}, 1.0); }) == "NonPositiveCoefficient");
    CHECK(code_of([] { profile_from_json("{\"uplus\": 1}"); }) == "MalformedProfile");
    CHECK(code_of([] { profile_from_json("not json"); }) == "MalformedProfile");
  }

  TEST_CASE("json round trip") {
    const auto p = profile_from_json(R"({"uplus": 2.0, "terms": [{"a": 1.0, "b": 1.0}, {"a": 1.0, "b": 3.0}]})");
    CHECK(p.uplus() == 2.0);
    CHECK(p.wall_shear() == doctest::Approx(4.0));
    const auto q = profile_from_json(profile_to_json(p));
    CHECK(q.terms().size() == 2);
    CHECK(std::abs(q.eval(0.3) - p.eval(0.3)) < 1e-15);
  }

  TEST_CASE("exponential profile values") {
    const auto p = exponential_profile();
    CHECK(std::abs(p.eval(0.0, 1) - 1.0) < 1e-15);
    CHECK(std::abs(p.eval(std::log(2.0)) - 0.5) < 1e-15);
    const Complex y(0.3, 0.1);
    CHECK(std::abs(p.eval(y, 2) + std::exp(-y)) < 1e-15);
    CHECK(p.wall_curvature() == doctest::Approx(-1.0));
  }

  TEST_CASE("concavity on the half line") {
    const auto p = make_profile(std::vector<Term>{{0.3, 0.5}, {0.7, 4.0}}, 1.0);
    for (double y = 0.0; y < 30.0; y += 0.25) CHECK(p.eval(y, 2).real() <= 0.0);
  }

  TEST_CASE("derivatives are complex-differentiable") {
    const auto p = make_profile(std::vector<Term>{{0.5, 1.0}, {0.5, 2.0}}, 1.0);
    const double h = 1e-6;
    for (Complex y : {Complex(0.3, 0.1), Complex(2.0, -0.4)})
      for (int order = 0; order < 3; ++order)
        for (Complex d : {Complex(h, 0.0), Complex(0.0, h)}) {
          const Complex fd = (p.eval(y + d, order) - p.eval(y - d, order)) / (2.0 * d);
          CHECK(rel(fd, p.eval(y, order + 1)) < 1e-6);
        }
  }

  TEST_CASE("taylor coefficients") {
    const auto p = exponential_profile();
    const Complex y0(0.4, 0.05);
    const auto t = p.taylor(y0, 6);
    double fact = 1.0;
    for (int k = 1; k < 4; ++k) {
      fact *= k;
      CHECK(rel(t[k] * fact, p.eval(y0, k)) < 1e-14);
    }
  }

  TEST_CASE("critical layer") {
    const auto p = exponential_profile();
    CHECK(std::abs(critical_layer(p, 0.1) - (-std::log(0.9))) < 1e-14);
    CHECK(std::abs(critical_layer(p, 0.0)) < 1e-15);
    const Complex c(0.1, 0.05);
    CHECK(std::abs(critical_layer(p, c) - (-std::log(1.0 - c))) < 1e-14);
  }

  TEST_CASE("critical layer inverts the profile") {
    const auto p = make_profile(std::vector<Term>{{0.5, 1.0}, {0.5, 2.0}}, 1.0);
    for (double re = 0.02; re <= 0.3; re += 0.04)
      for (double im = -0.1; im <= 0.1; im += 0.05) {
        const Complex c(re, im);
        CHECK(std::abs(p.eval(critical_layer(p, c)) - c) < 1e-10);
      }
  }

  TEST_CASE("critical layer derivative") {
    const auto p = exponential_profile();
    const Complex c(0.12, 0.01);
    const double h = 1e-6;
    const Complex fd = (critical_layer(p, c + h) - critical_layer(p, c - h)) / (2.0 * h);
    CHECK(rel(fd, 1.0 / p.eval(critical_layer(p, c), 1)) < 1e-5);
  }

  TEST_CASE("wave context") {
    const auto p = exponential_profile();
    const double alpha = 0.05, nu = 1e-6;
    const Complex c(0.09, 0.004);
    const auto w = make_context(p, alpha, nu, c);
    CHECK(std::abs(w.epsilon - nu / (kI * alpha)) < 1e-20);
    CHECK(std::abs(w.c_tilde - (c + 2.0 * kI * nu * alpha)) < 1e-16);
    CHECK(std::abs(p.eval(w.y_c) - w.c_tilde) < 1e-12);
    const double arg = std::arg(w.gamma);
    CHECK(arg > 0.0);
    CHECK(arg < kPi / 3.0);
    CHECK(rel(w.gamma * w.gamma * w.gamma * w.epsilon, w.u1_c) < 1e-14);
    CHECK(std::abs(w.lambda - (-kI * alpha * c)) < 1e-16);
    CHECK(std::abs(w.xi1 + w.gamma * w.y_c) < 1e-14);
    CHECK(std::abs(-std::polar(1.0, kPi / 6.0) * w.z - w.xi1) < 1e-13);
    CHECK(std::abs(physical_speed(alpha, nu, w.c_tilde) - c) < 1e-16);
  }
}
