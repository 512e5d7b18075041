#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oswave/dispersion.hpp"
#include "oswave/errors.hpp"
#include "oswave/modes.hpp"
#include "oswave/profile.hpp"

using namespace oswave;

namespace {

const auto kExp = profile::exponential_profile();

const modes::ModeProfile& mode() {
  static const modes::ModeProfile m = [] {
    const double nu = 1e-6, alpha = 2.7 * std::pow(nu, 0.25);
    const auto e = dispersion::continued_eigenvalue(kExp, alpha, nu);
    return modes::build_mode(kExp, e, 40.0, 4000);
  }();
  return m;
}

double max_abs(const std::vector<Complex>& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

TEST_SUITE("modes") {
  TEST_CASE("grid and normalisation") {
    const auto& m = mode();
    REQUIRE(m.y_grid.size() == m.psi.size());
    CHECK(m.y_grid.front() == 0.0);
    CHECK(m.y_grid.back() == doctest::Approx(40.0));
    CHECK(std::is_sorted(m.y_grid.begin(), m.y_grid.end()));
    CHECK(max_abs(m.psi) == doctest::Approx(1.0));
    CHECK(m.y_match > m.y_c.real());
  }

  TEST_CASE("wall conditions") {
    const auto& m = mode();
    CHECK(std::abs(m.psi.front()) < 1e-8);
    CHECK(std::abs(m.u.front()) < 1e-2 * max_abs(m.u));
  }

  TEST_CASE("velocity identities") {
    const auto& m = mode();
    for (std::size_t k = 0; k < m.psi.size(); k += 97) CHECK(std::abs(m.v[k] - (-kI * m.alpha * m.psi[k])) < 1e-14);
    for (std::size_t k = 1; k + 1 < m.y_grid.size(); ++k) {
      const double h0 = m.y_grid[k] - m.y_grid[k - 1], h1 = m.y_grid[k + 1] - m.y_grid[k];
      if (std::abs(h0 - h1) > 1e-12 || h0 < 5e-3 || m.y_grid[k] < m.y_match + 1.0) continue;
      const Complex fd = (m.psi[k + 1] - m.psi[k - 1]) / (2.0 * h0);
      CHECK(std::abs(fd - m.u[k]) < 1e-3 * std::max(1.0, std::abs(m.u[k])) + 1e-4);
    }
  }

  TEST_CASE("exponential tail") {
    const auto& m = mode();
    std::size_t a = 0, b = 0;
    for (std::size_t k = 0; k < m.y_grid.size(); ++k) {
      if (m.y_grid[k] <= 20.0) a = k;
      if (m.y_grid[k] <= 30.0) b = k;
    }
    const double rate = std::log(std::abs(m.psi[b]) / std::abs(m.psi[a])) / (m.y_grid[b] - m.y_grid[a]);
    CHECK(rate == doctest::Approx(-m.alpha).epsilon(1e-3));
  }

  TEST_CASE("critical layer structure") {
    const auto& m = mode();
    const double aw = std::abs(m.amplitude * m.gamma);
    CHECK(aw >= 0.05);
    CHECK(aw <= 20.0);
    double outer = 0.0;
    for (std::size_t k = 0; k < m.y_grid.size(); ++k)
      if (m.y_grid[k] > m.y_match) outer = std::max(outer, std::abs(m.omega[k]));
    CHECK(max_abs(m.omega) >= std::abs(m.gamma) / 10.0 * outer);
  }

  TEST_CASE("argument validation") {
    const auto e = dispersion::continued_eigenvalue(kExp, 0.08, 1e-6);
    CHECK_THROWS_AS(modes::build_mode(kExp, e, 40.0, 10), InvalidArgument);
    CHECK_THROWS_AS(modes::build_mode(kExp, e, -1.0, 1000), InvalidArgument);
  }
}
