#include "oswave/langer.hpp"

#include <cmath>

#include "oswave/errors.hpp"
#include "oswave/specfun.hpp"

namespace oswave::langer {

namespace {

/// K^{2/3} with g = y_c + (y - y_c) K^{2/3}.
Complex stretch(const ShearProfile& p, const WaveContext& ctx, Complex y,
                double rel_tol) {
  const Complex d = y - ctx.y_c;
  const Complex u1 = ctx.u1_c;
  if (std::abs(d) < 1e-3) {
    // g = y_c + d + kappa d^2 / 10 + O(d^3)
    const Complex kappa = ctx.u2_c / u1;
    return 1.0 + kappa * d / 10.0;
  }
  auto integrand = [&](Complex tc) {
    const double t = tc.real();
    const double s = t * t;
    if (s == 0.0) return Complex{};
    const Complex h = (p.eval(ctx.y_c + s * d) - ctx.c_tilde) / (s * d);
    const Complex q = h / u1;
    if (std::abs(h) < 1e-14 * std::abs(u1) ||
        (q.real() < 0.0 && std::abs(q.imag()) < 1e-3 * std::abs(q)))
      throw NumericalError(ErrorKind::BranchAmbiguity,
                           "U - c vanishes or changes branch on the g path");
    return 2.0 * s * std::sqrt(q);
  };
  const Complex J = numerics::adaptive_quadrature(
      integrand, numerics::Contour::segment(0.0, 1.0), rel_tol);
  // J here already carries the 1/sqrt(U'_c) factor.
  return std::pow(1.5 * J, 2.0 / 3.0);
}

}  // namespace

Complex langer_g(const ShearProfile& p, const WaveContext& ctx, Complex y,
                 double rel_tol) {
  return ctx.y_c + (y - ctx.y_c) * stretch(p, ctx, y, rel_tol);
}

Complex langer_g_prime(const ShearProfile& p, const WaveContext& ctx,
                       Complex y) {
  const Complex d = y - ctx.y_c;
  const Complex k = stretch(p, ctx, y, 1e-12);
  if (std::abs(d) < 1e-3) return k + ctx.u2_c / ctx.u1_c * d / 10.0;
  const Complex gp =
      std::sqrt((p.eval(y) - ctx.c_tilde) / (ctx.u1_c * d * k));
  return (gp.real() * k.real() + gp.imag() * k.imag()) >= 0.0 ? gp : -gp;
}

Complex langer_f(const ShearProfile& p, const WaveContext& ctx, Complex y) {
  return 1.0 / std::sqrt(langer_g_prime(p, ctx, y));
}

Complex modified_airy(const ShearProfile& p, const WaveContext& ctx,
                      Complex y) {
  const Complex g = langer_g(p, ctx, y);
  return langer_f(p, ctx, y) * specfun::airy_ai(ctx.gamma * (g - ctx.y_c)).ai;
}

bool outside_pencil(const WaveContext& ctx, Complex y) {
  return std::abs(y.imag()) > 1.0 / std::abs(ctx.gamma);
}

FastBoundary fast_boundary_values(const WaveContext& ctx) {
  const Complex arg = ctx.gamma * ctx.y_c;
  if (std::abs(arg) > 50.0)
    throw NumericalError(ErrorKind::ArgumentOutOfRange,
                         "|gamma y_c| exceeds 50");
  const auto a = specfun::airy_ai(-arg);
  FastBoundary out;
  out.phi_f0 = a.ai2;
  out.dphi_f0 = ctx.gamma * a.ai1;
  out.ratio = out.dphi_f0 / out.phi_f0;
  return out;
}

}  // namespace oswave::langer
