#include <doctest.h>

#include <cmath>

#include "oswave/errors.hpp"
#include "oswave/profile.hpp"
#include "oswave/rayleigh.hpp"

using namespace oswave;
using namespace oswave::rayleigh;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

const auto kExp = profile::exponential_profile();

// Closed form of the boundary integral for U = 1 - e^{-y}, a = 1 - c.
Complex omega0_exact(Complex c) {
  const Complex a = 1.0 - c;
  return -(1.0 / (a * a)) *
         ((0.5 - 2.0 * a) / (a * a) + std::log(c) - kI * kPi - std::log(1.0 - c) + a / c + 1.0);
}

}  // namespace

TEST_SUITE("rayleigh") {
  TEST_CASE("omega0 against the closed form") {
    for (Complex c : {Complex(0.1, 0.05), Complex(0.08, 0.003), Complex(0.2, -0.01), Complex(0.05, -0.02),
                      Complex(0.3, 0.1), Complex(0.001, 0.0), Complex(0.002, 1e-5)}) {
      CAPTURE(c);
      CHECK(rel(omega0(kExp, c, 0.1, kDefaultIndent, 1e-12), omega0_exact(c)) < 1e-8);
    }
  }

  TEST_CASE("omega0 with the critical layer near the indentation") {
    for (double im : {-0.02, -0.025, -0.03, -0.039, -0.045, -0.06}) {
      const Complex yc(0.08, im);
      const Complex c = 1.0 - std::exp(-yc);
      CAPTURE(im);
      CHECK(rel(omega0(kExp, c, 0.12, kDefaultIndent, 1e-12), omega0_exact(c)) < 1e-8);
    }
  }

  TEST_CASE("omega0 pinned value") {
    const Complex v = omega0(kExp, Complex(0.1, 0.05), 0.1, kDefaultIndent, 1e-12);
    CHECK(rel(v, omega0_exact(Complex(0.1, 0.05))) < 1e-10);
  }

  TEST_CASE("omega0 dominant term near the real axis") {
    const Complex c(0.01, 1e-6);
    const Complex yc = profile::critical_layer(kExp, c);
    const Complex u1 = kExp.eval(yc, 1);
    const Complex lead = (1.0 - c) * (1.0 - c) / (u1 * u1 * yc);
    const Complex v = omega0(kExp, c, 0.1, kDefaultIndent, 1e-12);
    CHECK(std::abs(std::abs(v.real()) - std::abs(lead.real())) / std::abs(lead.real()) < 0.1);
  }

  TEST_CASE("omega0 imaginary part on the real axis") {
    const double cr = 0.1;
    const Complex up = omega0(kExp, Complex(cr, 1e-4), 0.1, kDefaultIndent, 1e-12);
    const Complex dn = omega0(kExp, Complex(cr, -1e-4), 0.1, kDefaultIndent, 1e-12);
    const double expected = kPi / ((1.0 - cr) * (1.0 - cr));
    CHECK(std::abs(up.imag() - expected) / expected < 5e-2);
    CHECK(std::abs(dn.imag() - expected) / expected < 5e-2);
  }

  TEST_CASE("omega0 schwarz reflection") {
    const auto p = profile::make_profile(std::vector<profile::Term>{{0.5, 1.0}, {0.5, 2.0}}, 1.0);
    const Complex c(0.15, 0.2);
    const Complex a = omega0(p, c, 0.1, kDefaultIndent, 1e-12);
    const Complex cb = std::conj(c), e = p.uplus() - cb;
    auto integrand = [&](Complex y) {
      const Complex d = p.eval(y) - cb;
      return (d * d) / (e * e) - (e * e) / (d * d);
    };
    const auto above = numerics::Contour::segment(0.0, tail_cutoff(0.1));
    const Complex b = -numerics::adaptive_quadrature(integrand, above, 1e-12) / (e * e);
    CHECK(rel(b, std::conj(a)) < 1e-8);
  }

  TEST_CASE("contour independence") {
    for (Complex c : {Complex(0.08, 0.003), Complex(0.12, -0.01)}) {
      CHECK(rel(omega0(kExp, c, 0.1, 0.05, 1e-12), omega0(kExp, c, 0.1, 0.1, 1e-12)) < 1e-7);
      const auto s1 = miles_slope(kExp, 0.05, c, 0.05, 1e-11);
      const auto s2 = miles_slope(kExp, 0.05, c, 0.1, 1e-11);
      CHECK(rel(s1.slope_exact, s2.slope_exact) < 1e-7);
    }
  }

  TEST_CASE("miles slope relations") {
    const double alpha = 0.02;
    const Complex c(0.046, 0.002);
    const auto s = miles_slope(kExp, alpha, c, kDefaultIndent, 1e-12);
    CHECK(std::abs(s.slope_exact - (-1.0 / c - 1.0 / (c * c * s.omega_at_0))) < 1e-10 * std::abs(s.slope_exact));
    CHECK(rel(s.slope_expansion, slope_expansion(kExp, alpha, c, s.omega0)) < 1e-14);
    const auto tight = miles_slope(kExp, alpha, c, kDefaultIndent, 1e-13);
    CHECK(rel(s.slope_exact, tight.slope_exact) < 1e-9);
  }

  TEST_CASE("miles slope leading term") {
    const Complex c(0.1, 0.05);
    const auto s = miles_slope(kExp, 1e-4, c, kDefaultIndent, 1e-12);
    CHECK(rel(s.slope_exact, -1.0 / c) < 1e-2);
  }

  TEST_CASE("expansion error is third order in alpha") {
    const Complex c(0.1, 0.05);
    auto gap = [&](double a) {
      const auto s = miles_slope(kExp, a, c, kDefaultIndent, 1e-12);
      return std::abs(s.slope_exact - s.slope_expansion);
    };
    const double g1 = gap(0.02), g2 = gap(0.01), g3 = gap(0.005);
    CHECK(g1 / g2 > 4.0);
    CHECK(g1 / g2 < 16.0);
    CHECK(g2 / g3 > 4.0);
    CHECK(g2 / g3 < 16.0);
  }

  TEST_CASE("frobenius leading coefficients and residual") {
    const double alpha = 0.1;
    const Complex c(0.08, 0.003);
    const auto f = frobenius(kExp, alpha, c, 40);
    const Complex yc = profile::critical_layer(kExp, c);
    CHECK(std::abs(f.a[0] - 1.0) < 1e-15);
    CHECK(std::abs(f.b[0] - 1.0) < 1e-15);
    CHECK(rel(f.a[1], kExp.eval(yc, 2) / (2.0 * kExp.eval(yc, 1))) < 1e-13);
    CHECK(rel(f.log_coeff, kExp.eval(yc, 2) / kExp.eval(yc, 1)) < 1e-14);
    for (double th = 0.0; th < 2 * kPi; th += kPi / 8) {
      const Complex y = yc + 0.5 * f.radius * std::polar(1.0, th);
      for (int which = 0; which < 2; ++which) {
        const Complex psi = which ? f.psi_b(y) : f.psi_a(y);
        const Complex pp = which ? f.psi_b(y, 2) : f.psi_a(y, 2);
        const Complex r = rayleigh_operator(kExp, alpha, c, y, psi, pp);
        CHECK(std::abs(r) <= 1e-8 * (std::abs(psi) + std::abs(kExp.eval(y, 2) * psi)));
      }
    }
  }

  TEST_CASE("frobenius wronskian") {
    const double alpha = 0.1;
    const Complex c(0.08, 0.003);
    const auto f = frobenius(kExp, alpha, c, 40);
    for (double th : {0.4, 2.0, 4.0}) {
      const Complex y = f.y_c + 0.4 * f.radius * std::polar(1.0, th);
      const Complex w = f.psi_a(y) * f.psi_b(y, 1) - f.psi_a(y, 1) * f.psi_b(y);
      const Complex w_ref = (f.psi_a(f.y_c + 0.1 * f.radius) * f.psi_b(f.y_c + 0.1 * f.radius, 1) -
                             f.psi_a(f.y_c + 0.1 * f.radius, 1) * f.psi_b(f.y_c + 0.1 * f.radius));
      CHECK(rel(w, w_ref) < 1e-10);
    }
  }

  TEST_CASE("frobenius is continuous at alpha = 0") {
    const Complex c(0.08, 0.003);
    const auto f0 = frobenius(kExp, 0.0, c, 20);
    const auto f1 = frobenius(kExp, 1e-8, c, 20);
    for (std::size_t n = 0; n < f0.a.size(); ++n) CHECK(std::abs(f0.a[n] - f1.a[n]) <= 1e-12 * (1.0 + std::abs(f0.a[n])));
  }

  TEST_CASE("local solve") {
    const double alpha = 0.1;
    const Complex c(0.08, 0.003);
    const Series zero(20, Complex{});
    const auto z = ray_local_solve(kExp, alpha, c, zero, zero, 20, 0.1);
    for (const auto& v : z.P) CHECK(std::abs(v) == 0.0);
    for (const auto& v : z.Q) CHECK(std::abs(v) == 0.0);

    Series one(20, Complex{});
    one[0] = 1.0;
    const auto s = ray_local_solve(kExp, alpha, c, zero, one, 20, 0.1);
    const Complex yc = profile::critical_layer(kExp, c);
    CHECK(std::abs(s.Q[0]) == 0.0);
    CHECK(rel(s.Q[1], 1.0 / (2.0 * kExp.eval(yc, 1))) < 1e-13);
    CHECK(series_norm(s.Q, s.rho) <= s.bound * series_norm(one, s.rho));
  }

  TEST_CASE("local solve radius too large") {
    Series one(20, Complex{});
    one[0] = 1.0;
    CHECK_THROWS_AS(ray_local_solve(kExp, 0.1, Complex(0.08, 0.003), one, one, 20, 50.0), NumericalError);
  }

  TEST_CASE("vorticity") {
    CHECK(std::abs(vorticity_of(kExp, 0.1, 0.0, 1.0)) == 0.0);
    const double e = std::exp(-1.0);
    CHECK(std::abs(vorticity_of(kExp, 0.1, 1.0, 1.0) - (-e / (1.0 - e - 0.1))) < 1e-15);
    CHECK_THROWS_AS(vorticity_of(kExp, 0.5, 1.0, std::log(2.0)), NumericalError);
    // Far field decay at rate beta = 1 whatever alpha is.
    const double slope = std::log(std::abs(vorticity_of(kExp, 0.1, 1.0, 20.0)) /
                                  std::abs(vorticity_of(kExp, 0.1, 1.0, 10.0))) / 10.0;
    CHECK(slope == doctest::Approx(-1.0).epsilon(1e-4));
  }
}
