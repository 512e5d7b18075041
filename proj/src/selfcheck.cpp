#include "oswave/selfcheck.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <algorithm>
#include <functional>
#include <ostream>
#include <random>

#include "oswave/dispersion.hpp"
#include "oswave/io.hpp"
#include "oswave/langer.hpp"
#include "oswave/modes.hpp"
#include "oswave/profile.hpp"
#include "oswave/rayleigh.hpp"
#include "oswave/specfun.hpp"

namespace oswave::selfcheck {

namespace {

using profile::ShearProfile;

constexpr double kNu = 1e-6;

struct Outcome {
  double value;
  std::string detail;
};

CheckResult run_one(const std::string& module, const std::string& name,
                    double tolerance, bool upper,
                    const std::function<Outcome()>& body) {
  CheckResult r;
  r.module = module;
  r.name = name;
  r.tolerance = tolerance;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const Outcome o = body();
    r.value = o.value;
    r.detail = o.detail;
    r.passed = std::isfinite(o.value) &&
               (upper ? o.value <= tolerance : o.value >= tolerance);
  } catch (const std::exception& e) {
    r.value = NAN;
    r.detail = e.what();
    r.passed = false;
  }
  r.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

Outcome airy_wronskian() {
  double worst = 0.0;
  // Points where |Ai Bi'| stays O(1) so the identity is not swamped by
  // cancellation.
  for (Complex z : {Complex(0.0), Complex(0.5, 0.3), Complex(-6.0), Complex(3.0, 1.0),
                    Complex(5.0), Complex(0.0, 2.0), Complex(-2.0, -2.0),
                    Complex(-3.0, 0.5), Complex(12.0, 7.0), Complex(20.0),
                    Complex(45.0, 3.0)}) {
    const auto b = specfun::airy_eval(z);
    const Complex w = b.ai * b.bi_prime - b.ai_prime * b.bi;
    worst = std::max(worst, std::abs(w - 1.0 / kPi) * kPi);
  }
  return {worst, "max relative |W[Ai,Bi] - 1/pi|"};
}

Outcome tietjens_constants() {
  const auto r = specfun::tietjens_root();
  const double e = std::max({std::abs(r.z0 - 2.297), std::abs(r.ti.real() - 0.5645),
                             std::abs(r.ti_prime.real() + 0.1197) / 2.0,
                             std::abs(r.ti_prime.imag() - 0.2307) / 2.0});
  return {e, "z0 = " + io::format_double(r.z0)};
}

Outcome langer_identity(const ShearProfile& p) {
  const double alpha = 0.08;
  const auto ctx = profile::make_context(p, alpha, kNu, Complex(0.075, 0.002));
  double worst = 0.0;
  const double h = 1e-3;
  for (double y : {0.3, 0.6, 1.0, 2.0, 4.0}) {
    auto g = [&](double t) { return langer::langer_g(p, ctx, t, 1e-13); };
    const Complex gp =
        (-g(y + 2 * h) + 8.0 * g(y + h) - 8.0 * g(y - h) + g(y - 2 * h)) / (12.0 * h);
    const Complex lhs = gp * gp * (g(y) - ctx.y_c) * ctx.u1_c;
    const Complex rhs = p.eval(y) - ctx.c_tilde;
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
  }
  return {worst, "max |g'^2 (g - y_c) U'_c - (U - c)| / |U - c|"};
}

Outcome riccati_order(const ShearProfile& p) {
  const Complex c(0.1, 0.05);
  auto gap = [&](double a) {
    const auto s = rayleigh::miles_slope(p, a, c, rayleigh::kDefaultIndent, 1e-12);
    return std::abs(s.slope_exact - s.slope_expansion);
  };
  const double order = std::log2(gap(0.01) / gap(0.005));
  return {std::abs(order - 3.0), "observed order " + io::format_double(order)};
}

Outcome frobenius_residual(const ShearProfile& p) {
  double worst = 0.0;
  for (Complex c : {Complex(0.08, 0.003), Complex(0.2, -0.01), Complex(0.05, 0.02)}) {
    const double alpha = 0.1;
    const auto f = rayleigh::frobenius(p, alpha, c);
    for (double t : {0.1, 0.3, 0.5}) {
      for (double th : {0.3, 1.5, 2.8}) {
        const Complex y = f.y_c + t * f.radius * std::polar(1.0, th);
        for (int which = 0; which < 2; ++which) {
          const Complex psi = which ? f.psi_b(y) : f.psi_a(y);
          const Complex pp = which ? f.psi_b(y, 2) : f.psi_a(y, 2);
          const Complex r = rayleigh::rayleigh_operator(p, alpha, c, y, psi, pp);
          const double scale = std::abs(p.eval(y, 2) * psi) + std::abs(psi);
          worst = std::max(worst, std::abs(r) / scale);
        }
      }
    }
  }
  return {worst, "max relative Rayleigh residual of psi_A, psi_B"};
}

Outcome contour_independence(const ShearProfile& p) {
  double worst = 0.0;
  for (Complex c : {Complex(0.08, 0.003), Complex(0.12, -0.01), Complex(0.3, 0.05)}) {
    const Complex a = rayleigh::omega0(p, c, 0.1, 0.05, 1e-12);
    const Complex b = rayleigh::omega0(p, c, 0.1, 0.1, 1e-12);
    worst = std::max(worst, std::abs(a - b) / std::abs(a));
  }
  return {worst, "max relative Omega_0 change between indents 0.05 and 0.1"};
}

Outcome newton_order(const ShearProfile& p) {
  const double alpha = 2.7 * std::pow(kNu, 0.25);
  const auto ref = dispersion::solve_eigenvalue(
      p, alpha, kNu, dispersion::lower_branch_seed(p, alpha) * 0.8);
  const auto run = dispersion::solve_eigenvalue(p, alpha, kNu, ref.c * Complex(1.1, 0.05));
  std::vector<double> e;
  for (const auto& ct : run.iterates) e.push_back(std::abs(ct - ref.c_tilde));
  double best = 0.0;
  for (std::size_t k = 2; k < e.size(); ++k) {
    if (e[k] < 1e-11 * std::abs(ref.c_tilde) || e[k - 1] >= e[k - 2]) continue;
    best = std::max(best, std::log(e[k] / e[k - 1]) / std::log(e[k - 1] / e[k - 2]));
  }
  return {best, "max observed local order over " + std::to_string(e.size()) + " steps"};
}

Outcome multistart(const ShearProfile& p) {
  const auto [lo, hi] = dispersion::default_scan(kNu);
  const auto mp = dispersion::marginal_curves(p, kNu);
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> pert(-0.3, 0.3);
  double worst = 0.0;
  for (int k = 0; k < 5; ++k) {
    const double t = (k + 1) / 6.0;
    const double alpha = mp.alpha_minus * std::pow(mp.alpha_plus / mp.alpha_minus, t);
    const auto b = dispersion::trace_branch(p, kNu, lo, alpha, 30);
    const Complex ref =
        dispersion::solve_eigenvalue(p, alpha, kNu, dispersion::require_complete(b).back().c).c;
    for (int s = 0; s < 20; ++s) {
      const Complex seed(ref.real() * (1.0 + pert(rng)), ref.imag() * (1.0 + pert(rng)));
      const Complex c = dispersion::solve_eigenvalue(p, alpha, kNu, seed).c;
      worst = std::max(worst, std::abs(c - ref));
    }
  }
  (void)hi;
  return {worst, "max |c - c_ref| over 5 alphas x 20 seeds"};
}

Outcome growth_identity(const ShearProfile& p) {
  const auto b = dispersion::trace_branch(p, kNu, 0.02, 0.15, 40);
  double worst = 0.0;
  for (const auto& pt : b.points)
    worst = std::max(worst, std::abs(pt.lambda.real() - pt.alpha * pt.c.imag()));
  return {worst, "max |Re lambda - alpha Im c| along the branch"};
}

Outcome mode_wall(const ShearProfile& p) {
  const double alpha = 2.7 * std::pow(kNu, 0.25);
  const auto b = dispersion::trace_branch(p, kNu, 0.5 * std::pow(kNu, 0.25), alpha, 30);
  const auto e = dispersion::solve_eigenvalue(p, alpha, kNu,
                                              dispersion::require_complete(b).back().c);
  const auto m = modes::build_mode(p, e, 60.0, 2000);
  double umax = 0.0;
  for (const auto& u : m.u) umax = std::max(umax, std::abs(u));
  return {std::max(std::abs(m.psi[0]) * 1e6, std::abs(m.u[0]) / umax),
          "max(|psi(0)| 1e6, |u(0)| / max|u|)"};
}

}  // namespace

std::vector<CheckResult> run_all() {
  const ShearProfile p = profile::exponential_profile();
  std::vector<CheckResult> out;
  out.push_back(run_one("specfun", "airy_wronskian", 1e-9, true, airy_wronskian));
  out.push_back(run_one("specfun", "tietjens_constants", 1e-3, true, tietjens_constants));
  out.push_back(run_one("langer", "langer_identity", 1e-8, true,
                        [&] { return langer_identity(p); }));
  out.push_back(run_one("rayleigh", "riccati_order", 1.0, true,
                        [&] { return riccati_order(p); }));
  out.push_back(run_one("rayleigh", "frobenius_residual", 1e-8, true,
                        [&] { return frobenius_residual(p); }));
  out.push_back(run_one("rayleigh", "contour_independence", 1e-7, true,
                        [&] { return contour_independence(p); }));
  out.push_back(run_one("dispersion", "newton_quadratic", 1.8, false,
                        [&] { return newton_order(p); }));
  out.push_back(run_one("dispersion", "multistart_uniqueness", 1e-8, true,
                        [&] { return multistart(p); }));
  out.push_back(run_one("dispersion", "growth_identity", 1e-15, true,
                        [&] { return growth_identity(p); }));
  out.push_back(run_one("modes", "wall_conditions", 1e-2, true,
                        [&] { return mode_wall(p); }));
  return out;
}

void print_table(std::ostream& os, const std::vector<CheckResult>& results) {
  char line[256];
  std::snprintf(line, sizeof line, "%-11s %-22s %-5s %-12s %-12s %s\n", "module",
                "check", "pass", "value", "tolerance", "seconds");
  os << line;
  for (const auto& r : results) {
    std::snprintf(line, sizeof line, "%-11s %-22s %-5s %-12.4g %-12.4g %.2f\n",
                  r.module.c_str(), r.name.c_str(), r.passed ? "PASS" : "FAIL", r.value,
                  r.tolerance, r.seconds);
    os << line;
    if (!r.passed && !r.detail.empty()) os << "    " << r.detail << '\n';
  }
}

}  // namespace oswave::selfcheck
