#include "oswave/dispersion.hpp"

#include <algorithm>
#include <cmath>

#include "oswave/errors.hpp"
#include "oswave/langer.hpp"
#include "oswave/rayleigh.hpp"
#include "oswave/specfun.hpp"

namespace oswave::dispersion {

std::string to_string(Method m) {
  switch (m) {
    case Method::Expansion: return "expansion";
    case Method::Miles: return "miles";
    case Method::Shoot: return "shoot";
  }
  return "expansion";
}

Method method_from_string(const std::string& s) {
  if (s == "expansion") return Method::Expansion;
  if (s == "miles") return Method::Miles;
  if (s == "shoot") return Method::Shoot;
  throw InvalidArgument("UnknownMethod", "unknown method '" + s + "'");
}

namespace {

constexpr double kQuadTol = 1e-12;

Complex expansion_residual(const ShearProfile& p,
                           const profile::WaveContext& w) {
  const double a = w.alpha;
  const Complex c = w.c_tilde;
  const double u0 = p.wall_shear();
  const Complex d2 = (p.uplus() - c) * (p.uplus() - c);
  const Complex o0 = rayleigh::omega0(p, c, a, rayleigh::kDefaultIndent,
                                      kQuadTol);
  const Complex rhs = 1.0 - (a / c) * d2 / u0 +
                      (a * a / c) * (d2 * d2 / u0) * (1.0 / (u0 * c) + o0);
  return (1.0 + w.Lambda) * specfun::tietjens(w.z).ti - rhs;
}

Complex miles_residual(const ShearProfile& p, const profile::WaveContext& w) {
  const Complex c = w.c_tilde;
  const Complex om =
      rayleigh::miles_omega(p, w.alpha, c, rayleigh::kDefaultIndent, 1e-11);
  const Complex r = -p.wall_shear() / c - 1.0 / (c * c * om);
  const auto a = specfun::airy_ai(w.xi1);
  return (w.gamma * a.ai1 - r * a.ai2) / (r * a.ai2);
}

}  // namespace

Complex residual_tilde(const ShearProfile& p, double alpha, double nu,
                       Complex c_tilde, Method method) {
  // Negative wavenumbers are the mirror image: E(-a, c) = conj E(a, conj c).
  if (alpha < 0.0)
    return std::conj(residual_tilde(p, -alpha, nu, std::conj(c_tilde), method));
  const auto w = profile::make_context_tilde(p, alpha, nu, c_tilde);
  switch (method) {
    case Method::Expansion: return expansion_residual(p, w);
    case Method::Miles: return miles_residual(p, w);
    case Method::Shoot: break;
  }
  throw InvalidArgument("UnknownMethod",
                        "shooting has no asymptotic residual; use the oracle");
}

Complex residual(const ShearProfile& p, double alpha, double nu, Complex c,
                 Method method) {
  return residual_tilde(p, alpha, nu, profile::modified_speed(alpha, nu, c),
                        method);
}

EigenResult solve_eigenvalue(const ShearProfile& p, double alpha, double nu,
                             Complex c_seed, Method method,
                             const NewtonSettings& settings) {
  auto R = [&](Complex ct) { return residual_tilde(p, alpha, nu, ct, method); };
  auto finite = [](Complex v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  };

  Complex ct = profile::modified_speed(alpha, nu, c_seed);
  Complex E = R(ct);
  EigenResult out;
  bool converged = false;
  int it = 0;
  for (; it < settings.max_iterations && !converged; ++it) {
    const double h = 1e-7 * std::abs(ct);
    const Complex dE = (R(ct + h) - R(ct - h)) / (2.0 * h);
    const Complex step = -E / dE;
    if (!finite(step))
      throw NumericalError(ErrorKind::NewtonDivergence,
                           "non-finite Newton step");
    Complex trial = ct + step;
    Complex E_trial;
    bool accepted = false;
    double scale = 1.0;
    for (int k = 0; k <= settings.max_halvings; ++k) {
      trial = ct + scale * step;
      try {
        E_trial = R(trial);
        if (finite(E_trial) && std::abs(E_trial) < std::abs(E)) {
          accepted = true;
          break;
        }
      } catch (const NumericalError&) {
      }
      scale *= 0.5;
    }
    if (!accepted) {
      // At the noise floor a full step no longer lowers |E|.
      if (std::abs(step) <= 1e-9 * std::abs(ct)) {
        ct += step;
        out.iterates.push_back(ct);
        converged = true;
        break;
      }
      throw NumericalError(ErrorKind::OutOfBasin,
                           "residual did not decrease after damping");
    }
    const Complex delta = trial - ct;
    ct = trial;
    E = E_trial;
    out.iterates.push_back(ct);
    if (std::abs(E) <= settings.residual_tol ||
        std::abs(delta) <= settings.step_tol * std::max(1.0, std::abs(ct)))
      converged = true;
  }
  if (!converged)
    throw NumericalError(ErrorKind::NewtonDivergence,
                         "Newton iteration limit reached");

  const bool mirrored = alpha < 0.0;
  const auto w = profile::make_context_tilde(p, std::abs(alpha), nu,
                                             mirrored ? std::conj(ct) : ct);
  auto m = [&](Complex v) { return mirrored ? std::conj(v) : v; };
  out.alpha = alpha;
  out.nu = nu;
  out.c_tilde = ct;
  out.c = m(w.c);
  out.lambda = -kI * alpha * out.c;
  out.residual = std::abs(R(ct));
  out.iterations = int(out.iterates.size());
  out.method = method;
  out.z = m(w.z);
  out.gamma = m(w.gamma);
  return out;
}

Complex lower_branch_seed(const ShearProfile& p, double alpha) {
  return 2.296 * p.uplus() * p.uplus() * alpha / p.wall_shear();
}

Branch trace_branch(const ShearProfile& p, double nu, double alpha_min,
                    double alpha_max, int n_points, Method method,
                    std::optional<Complex> first_seed) {
  if (!(alpha_min > 0.0) || !(alpha_max > alpha_min) || n_points < 2)
    throw InvalidArgument("trace_branch needs 0 < alpha_min < alpha_max");
  Branch out;
  const double ratio = std::pow(alpha_max / alpha_min, 1.0 / (n_points - 1));
  double alpha = alpha_min;
  for (int k = 0; k < n_points; ++k, alpha *= ratio) {
    if (k == n_points - 1) alpha = alpha_max;
    Complex seed;
    const auto& pts = out.points;
    if (pts.empty()) {
      seed = first_seed ? *first_seed : lower_branch_seed(p, alpha);
    } else if (pts.size() == 1) {
      seed = pts.back().c * (alpha / pts.back().alpha);
    } else {
      const auto& a = pts[pts.size() - 2];
      const auto& b = pts.back();
      seed = b.c + (b.c - a.c) * (alpha - b.alpha) / (b.alpha - a.alpha);
    }
    try {
      const auto r = solve_eigenvalue(p, alpha, nu, seed, method);
      if (!pts.empty() &&
          std::abs(r.c - pts.back().c) > 0.5 * std::abs(pts.back().c))
        throw NumericalError(ErrorKind::BranchBreak,
                             "branch jumped between consecutive points");
      const double re = r.lambda.real();
      out.points.push_back({alpha, r.c, r.lambda, re > 0 ? 1 : (re < 0 ? -1 : 0)});
    } catch (const NumericalError& e) {
      out.break_alpha = alpha;
      out.break_reason = e.what();
      break;
    }
  }
  return out;
}

EigenResult continued_eigenvalue(const ShearProfile& p, double alpha,
                                 double nu, Method method) {
  const double lo = default_scan(nu).first;
  if (alpha <= lo)
    return solve_eigenvalue(p, alpha, nu, lower_branch_seed(p, alpha), method);
  const auto b = trace_branch(p, nu, lo, alpha, 40, method);
  return solve_eigenvalue(p, alpha, nu, require_complete(b).back().c, method);
}

const std::vector<BranchPoint>& require_complete(const Branch& b) {
  if (b.break_alpha)
    throw NumericalError(ErrorKind::BranchBreak,
                         "branch broke at alpha = " +
                             std::to_string(*b.break_alpha) + ": " +
                             b.break_reason);
  return b.points;
}

std::pair<double, double> default_scan(double nu) {
  return {0.5 * std::pow(nu, 0.25),
          std::min(0.45, 6.0 * std::pow(nu, 1.0 / 6.0))};
}

namespace {

/// Refines a sign change of Im c between two branch points.
std::pair<double, Complex> refine_marginal(const ShearProfile& p, double nu,
                                           Method method, BranchPoint lo,
                                           BranchPoint hi) {
  double a0 = lo.alpha, a1 = hi.alpha;
  double f0 = lo.c.imag(), f1 = hi.c.imag();
  Complex c0 = lo.c, c1 = hi.c;
  int side = 0;
  for (int it = 0; it < 60; ++it) {
    double a = (a0 * f1 - a1 * f0) / (f1 - f0);
    if (!(a > std::min(a0, a1) && a < std::max(a0, a1))) a = 0.5 * (a0 + a1);
    const Complex seed = c0 + (c1 - c0) * (a - a0) / (a1 - a0);
    const auto r = solve_eigenvalue(p, a, nu, seed, method);
    const double f = r.c.imag();
    if (std::abs(f) <= 1e-9 || std::abs(a1 - a0) <= 1e-14 * a)
      return {a, r.c};
    if ((f > 0) == (f0 > 0)) {
      a0 = a;
      f0 = f;
      c0 = r.c;
      if (side == -1) f1 *= 0.5;
      side = -1;
    } else {
      a1 = a;
      f1 = f;
      c1 = r.c;
      if (side == 1) f0 *= 0.5;
      side = 1;
    }
  }
  throw NumericalError(ErrorKind::NewtonDivergence,
                       "marginal secant iteration did not converge");
}

}  // namespace

MarginalPair marginal_curves(const ShearProfile& p, double nu, Method method,
                             int n_scan) {
  if (!(nu >= 1e-10 && nu <= 1e-3))
    throw InvalidArgument("OutOfRange", "nu must lie in [1e-10, 1e-3]");
  const auto [lo, hi] = default_scan(nu);
  const auto branch = trace_branch(p, nu, lo, hi, n_scan, method);
  const auto& pts = branch.points;
  int up = -1, down = -1;
  for (std::size_t k = 1; k < pts.size(); ++k) {
    if (up < 0 && pts[k - 1].c.imag() <= 0 && pts[k].c.imag() > 0)
      up = int(k);
    if (up >= 0 && down < 0 && pts[k - 1].c.imag() > 0 && pts[k].c.imag() <= 0)
      down = int(k);
  }
  if (up < 0 || down < 0) {
    if (branch.break_alpha) require_complete(branch);
    throw NumericalError(ErrorKind::WindowNotFound,
                         "Im c is never positive on the scan");
  }
  MarginalPair m;
  m.nu = nu;
  std::tie(m.alpha_minus, m.c_minus) =
      refine_marginal(p, nu, method, pts[up - 1], pts[up]);
  std::tie(m.alpha_plus, m.c_plus) =
      refine_marginal(p, nu, method, pts[down - 1], pts[down]);
  return m;
}

GrowthCurve growth_curve(const ShearProfile& p, double nu, int n_points,
                         Method method) {
  const auto [lo, hi] = default_scan(nu);
  const auto branch = trace_branch(p, nu, lo, hi, n_points, method);
  const auto& pts = require_complete(branch);
  GrowthCurve g;
  g.nu = nu;
  const double s = std::pow(nu, 0.25);
  std::size_t best = 0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    g.samples.push_back(
        {pts[k].alpha, pts[k].alpha / s, pts[k].lambda.real(), pts[k].c});
    if (pts[k].lambda.real() > pts[best].lambda.real()) best = k;
  }
  g.argmax_alpha_scaled = pts[best].alpha / s;
  g.max_re_lambda = pts[best].lambda.real();
  if (best == 0 || best + 1 == pts.size()) return g;

  // Golden-section refinement of the maximum between the neighbours.
  auto rate = [&](double a, Complex seed, Complex* c_out) {
    const auto r = solve_eigenvalue(p, a, nu, seed, method);
    if (c_out) *c_out = r.c;
    return r.lambda.real();
  };
  double a = pts[best - 1].alpha, b = pts[best + 1].alpha;
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  Complex seed = pts[best].c;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  Complex cx1, cx2;
  double f1 = rate(x1, seed * (x1 / pts[best].alpha), &cx1);
  double f2 = rate(x2, seed * (x2 / pts[best].alpha), &cx2);
  while (b - a > 1e-7 * b) {
    if (f1 > f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      cx2 = cx1;
      x1 = b - phi * (b - a);
      f1 = rate(x1, cx2 * (x1 / x2), &cx1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      cx1 = cx2;
      x2 = a + phi * (b - a);
      f2 = rate(x2, cx1 * (x2 / x1), &cx2);
    }
  }
  const double am = 0.5 * (a + b);
  const double fm = rate(am, 0.5 * (cx1 + cx2), nullptr);
  if (fm > g.max_re_lambda) {
    g.argmax_alpha_scaled = am / s;
    g.max_re_lambda = fm;
  }
  return g;
}

Complex large_z_reduction(const ShearProfile& p, double nu, double alpha) {
  const double u0 = p.wall_shear();
  const double up = p.uplus();
  const double theta0 = u0 / (up * up);
  const Complex c = alpha / theta0;
  const Complex d2 = (up - c) * (up - c);
  const Complex A = d2 / u0;
  const Complex o0 = rayleigh::omega0(p, c, alpha);
  const Complex B = d2 * d2 / u0 * (1.0 / (u0 * c) + o0);
  const Complex y_c = profile::critical_layer(p, c);
  const Complex uc = p.eval(y_c, 1);
  return 1.0 / A + B * alpha / (A * A) -
         std::polar(1.0, kPi / 4.0) * std::sqrt(nu) * std::pow(u0, 1.5) /
             (std::sqrt(uc) * std::pow(A, 2.5) * alpha * alpha);
}

}  // namespace oswave::dispersion
