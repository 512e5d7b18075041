#include "oswave/modes.hpp"

#include <algorithm>
#include <cmath>

#include "oswave/errors.hpp"
#include "oswave/rayleigh.hpp"
#include "oswave/specfun.hpp"

namespace oswave::modes {

namespace {

std::vector<double> mode_grid(double y_max, int n_grid, double centre,
                              double half_width) {
  std::vector<double> y;
  y.reserve(n_grid + 200);
  for (int j = 0; j < n_grid; ++j) y.push_back(y_max * j / (n_grid - 1));
  const double lo = std::max(0.0, centre - half_width);
  const double hi = std::min(y_max, centre + half_width);
  if (hi > lo)
    for (int j = 0; j < 200; ++j) y.push_back(lo + (hi - lo) * (j + 0.5) / 200);
  std::sort(y.begin(), y.end());
  y.erase(std::unique(y.begin(), y.end(),
                      [](double a, double b) { return std::abs(a - b) < 1e-14; }),
          y.end());
  return y;
}

}  // namespace

ModeProfile build_mode(const profile::ShearProfile& p,
                       const dispersion::EigenResult& eigen, double y_max,
                       int n_grid) {
  if (n_grid < 64) throw InvalidArgument("OutOfRange", "n_grid must be >= 64");
  if (!(y_max > 0.0)) throw InvalidArgument("OutOfRange", "y_max must be positive");
  const double alpha = eigen.alpha;
  const auto ctx =
      profile::make_context_tilde(p, alpha, eigen.nu, eigen.c_tilde);
  const Complex c = ctx.c_tilde;
  const Complex g = ctx.gamma;
  const double up = p.uplus();
  const double u0 = p.wall_shear();
  // alpha U+^2/U'(0) completed with the O(alpha^2) terms of the slow
  // solution, so that psi'(0) vanishes at a root of the dispersion relation.
  const Complex d2 = (up - c) * (up - c);
  const Complex o0 =
      rayleigh::omega0(p, c, alpha, rayleigh::kDefaultIndent, 1e-12);
  const Complex shift =
      alpha * d2 / u0 - alpha * alpha * (d2 * d2 / u0) * (1.0 / (u0 * c) + o0);

  const Complex a0 = specfun::airy_ai(-g * ctx.y_c).ai2;
  if (std::abs(a0) == 0.0)
    throw NumericalError(ErrorKind::DivisionNearZero, "Ai(-gamma y_c, 2) vanishes");
  const Complex a = -(-c + shift) / a0;

  ModeProfile m;
  m.alpha = alpha;
  m.nu = eigen.nu;
  m.c = eigen.c;
  m.amplitude = a;
  m.gamma = g;
  m.y_c = ctx.y_c;
  m.y_match = ctx.y_c.real() + 20.0 / std::abs(g);
  m.y_grid = mode_grid(y_max, n_grid, ctx.y_c.real(), 10.0 / std::abs(g));

  const Complex K = up - c + shift;
  // Smooth switch chi = exp(-alpha L log(1 + e^{(y - y_match)/L})).
  const double L = std::min(0.5, m.y_match / 40.0);
  const std::size_t n = m.y_grid.size();
  m.psi.resize(n);
  m.u.resize(n);
  m.v.resize(n);
  m.omega.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double y = m.y_grid[j];
    const Complex U = p.eval(y), U1 = p.eval(y, 1), U2 = p.eval(y, 2);
    const double x = (y - m.y_match) / L;
    const double sp = x > 30.0 ? x : std::log1p(std::exp(x));
    const double sg = 1.0 / (1.0 + std::exp(-x));
    const double chi = std::exp(-alpha * L * sp);
    const double chi1 = -alpha * sg * chi;
    const double chi2 = (alpha * alpha * sg * sg - alpha * sg * (1.0 - sg) / L) * chi;
    Complex psi = (U - up) + K * chi;
    Complex u = U1 + K * chi1;
    Complex omega = -U2 - K * chi2 + alpha * alpha * psi;
    if (y <= m.y_match) {
      const auto ai = specfun::airy_ai(g * (y - ctx.y_c));
      psi += a * ai.ai2;
      u += a * g * ai.ai1;
      omega += -g * g * a * ai.ai + alpha * alpha * a * ai.ai2;
    }
    m.psi[j] = psi;
    m.u[j] = u;
    m.omega[j] = omega;
  }
  double scale = 0.0;
  for (const auto& v : m.psi) scale = std::max(scale, std::abs(v));
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw NumericalError(ErrorKind::NonFiniteState, "mode has no finite amplitude");
  m.scale = scale;
  for (std::size_t j = 0; j < n; ++j) {
    m.psi[j] /= scale;
    m.u[j] /= scale;
    m.omega[j] /= scale;
    m.v[j] = -kI * alpha * m.psi[j];
  }
  return m;
}

}  // namespace oswave::modes
