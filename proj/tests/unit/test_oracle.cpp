#include <doctest.h>

#include <cmath>

#include "oswave/dispersion.hpp"
#include "oswave/errors.hpp"
#include "oswave/oracle.hpp"
#include "oswave/profile.hpp"

using namespace oswave;
using namespace oswave::oracle;

namespace {

const auto kExp = profile::exponential_profile();

}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("fast rate") {
    const double alpha = 0.1, nu = 1e-5;
    const Complex c(0.13, 0.003);
    const Complex mu = fast_rate(kExp, alpha, nu, c);
    CHECK(mu.real() > 0.0);
    CHECK(std::abs(mu * mu - (alpha * alpha + kI * alpha / nu * (1.0 - c))) < 1e-9 * std::norm(mu));
  }

  TEST_CASE("eigenvalues from an independent collocation solver") {
    // Chebyshev collocation, 340 points, algebraic map of length 2.
    struct Case {
      double nu, alpha;
      Complex c;
    };
    const Case cases[] = {
        {1e-5, 0.1505, {0.1329677, 0.0026247}},
        {1.0 / 47047.0, 0.1555, {0.1556274, -6.089e-5}},
    };
    for (const auto& k : cases) {
      const auto s = shoot_eigenvalue(kExp, k.alpha, k.nu, k.c * 1.01);
      CAPTURE(k.alpha);
      CHECK(std::abs(s.c - k.c) < 5e-5);
      CHECK(s.mu_f.real() > 0.0);
      CHECK(s.determinant_residual < 1e-6);
    }
  }

  TEST_CASE("determinant symmetry") {
    const double alpha = 0.12, nu = 1e-5;
    const Complex c(0.11, 0.004);
    const auto a = shoot_determinant(kExp, alpha, nu, c);
    const auto b = shoot_determinant(kExp, -alpha, nu, std::conj(c));
    CHECK(std::abs(b.value - std::conj(a.value)) < 1e-7 * std::abs(a.value) + 1e-12);
    double n = 0.0;
    for (const auto& y : a.compound) n += std::norm(y);
    CHECK(std::abs(a.value - a.compound[0] / std::sqrt(n)) < 1e-14);
  }

  TEST_CASE("asymptotic seed lies in the basin for small viscosity") {
    const double nu = 1e-7, alpha = 2.7 * std::pow(nu, 0.25);
    const auto e = dispersion::continued_eigenvalue(kExp, alpha, nu);
    const double near = std::abs(shoot_determinant(kExp, alpha, nu, e.c).value);
    const double far = std::abs(shoot_determinant(kExp, alpha, nu, 1.2 * e.c).value);
    CHECK(near / far <= 0.2);
  }

  TEST_CASE("asymptotic model converges to the shooting eigenvalue") {
    double prev = 1e9;
    for (double nu : {1e-5, 1e-6, 1e-7}) {
      const double alpha = 2.7 * std::pow(nu, 0.25);
      const auto e = dispersion::continued_eigenvalue(kExp, alpha, nu);
      const auto s = shoot_eigenvalue(kExp, alpha, nu, e.c);
      const double rel = std::abs(s.c - e.c) / std::abs(s.c);
      CAPTURE(nu);
      CHECK(rel < prev);
      CHECK(rel < 0.1);
      prev = rel;
    }
  }

  TEST_CASE("lower-branch seed is nearly neutral under shooting") {
    const double nu = 1e-7, alpha = std::pow(1.002 * nu, 0.25);
    const auto s = shoot_eigenvalue(kExp, alpha, nu, dispersion::lower_branch_seed(kExp, alpha));
    CHECK(std::abs(s.c.imag()) / std::abs(s.c) <= 0.1);
  }

  TEST_CASE("inviscid evolution stays bounded") {
    const auto r = evolve_semigroup(kExp, 0.3, 0.0, 200.0, 1000, 40.0);
    REQUIRE(r.omega_norm.size() == r.times.size());
    for (double v : r.omega_norm) CHECK(v < 10.0 * r.omega_norm.front());
  }

  TEST_CASE("evolution outside the unstable window decays") {
    const double nu = 1e-4;
    const auto r = evolve_semigroup(kExp, 3.0 * std::pow(nu, 1.0 / 6.0), nu, 2000.0, 2000, 40.0);
    CHECK(r.fitted_rate < 0.0);
    CHECK(r.fit_r2 > 0.9);
  }

  TEST_CASE("evolution rate moves toward the eigenvalue under refinement") {
    const double nu = 1e-5, alpha = 0.1505, target = alpha * 0.0026248;
    const auto coarse = evolve_semigroup(kExp, alpha, nu, 20000.0, 2000, 40.0);
    const auto fine = evolve_semigroup(kExp, alpha, nu, 20000.0, 8000, 40.0);
    CHECK(std::abs(fine.fitted_rate - target) < std::abs(coarse.fitted_rate - target));
    CHECK(fine.fitted_rate > 0.0);
  }

  TEST_CASE("evolve arguments") {
    CHECK_THROWS_AS(evolve_semigroup(kExp, 0.1, 1e-5, 10.0, 2, 40.0), InvalidArgument);
    CHECK_THROWS_AS(evolve_semigroup(kExp, 0.1, 1e-5, 10.0, 2000, 10.0), InvalidArgument);
  }
}
