#include "oswave/rayleigh.hpp"

#include <algorithm>
#include <cmath>

#include "oswave/errors.hpp"

namespace oswave::rayleigh {

double tail_cutoff(double alpha) { return std::max(40.0, 40.0 / alpha); }

namespace {

std::vector<Complex> graded_tail(double from, double anchor, double y_max) {
  std::vector<Complex> pts{from};
  double h = std::max(from - anchor, 1e-3);
  while (anchor + 2.0 * h < y_max) {
    h *= 2.0;
    pts.push_back(anchor + h);
  }
  pts.push_back(y_max);
  return pts;
}

}  // namespace

numerics::Contour critical_contour(Complex y_c, double y_max, double radius) {
  using numerics::Contour;
  using numerics::Segment;
  const double x = y_c.real();
  const double r = std::min(radius, 0.5 * x);
  if (!(r > 0.0) || x + r >= y_max || y_c.imag() >= r) {
    if (!(x > 0.0) || x >= y_max) return Contour::polyline(graded_tail(0.0, 0.0, y_max));
    return Contour::segment(0.0, x).then(Contour::polyline(graded_tail(x, x, y_max)));
  }
  const auto tail = Contour::polyline(graded_tail(x + r, x, y_max));
  if (y_c.imag() > -0.5 * r) {
    return Contour({Segment::line(0.0, x - r), Segment::arc(x, r, kPi, 2.0 * kPi)})
        .then(tail);
  }
  const double d = std::abs(y_c.imag()) + r;
  const std::vector<Complex> pts{0.0, Complex(x - r, 0.0), Complex(x - r, -d),
                                 Complex(x + r, -d), Complex(x + r, 0.0)};
  return Contour::polyline(pts).then(tail);
}

Complex critical_log(Complex y, Complex y_c) {
  Complex l = std::log(y - y_c);
  if (l.imag() > 0.5 * kPi) l -= Complex(0.0, 2.0 * kPi);
  return l;
}

Complex omega0(const ShearProfile& p, Complex c, double alpha_hint,
               double radius, double rel_tol) {
  const Complex y_c = profile::critical_layer(p, c);
  const Complex d = p.uplus() - c;
  const Complex d2 = d * d;
  auto f = [&](Complex y) {
    const Complex s = p.eval(y) - c;
    const Complex s2 = s * s;
    return s2 / d2 - d2 / s2;
  };
  const auto path = critical_contour(y_c, tail_cutoff(alpha_hint), radius);
  const Complex integral = numerics::adaptive_quadrature(f, path, rel_tol);
  return -integral / d2;
}

Complex miles_omega(const ShearProfile& p, double alpha, Complex c,
                    double radius, double rel_tol) {
  const Complex y_c = profile::critical_layer(p, c);
  const double y_max = tail_cutoff(alpha);
  const auto path = critical_contour(y_c, y_max, radius).reversed();
  const double a2 = alpha * alpha;
  auto rhs = [&](Complex y, std::span<const Complex> s, std::span<Complex> ds) {
    const Complex u = p.eval(y) - c;
    const Complex Y = u * u;
    ds[0] = a2 * Y * s[0] * s[0] - 1.0 / Y;
  };
  auto guard = [](Complex, std::span<Complex> s) {
    if (std::abs(s[0]) > 1e12)
      throw NumericalError(ErrorKind::RiccatiBlowup,
                           "Miles variable exceeded 1e12");
  };
  const Complex d = p.uplus() - c;
  numerics::OdeSettings settings;
  settings.rel_tol = rel_tol;
  settings.abs_tol = rel_tol * 1e-2;
  const auto out = numerics::integrate_ode(
      rhs, path, {1.0 / (alpha * d * d)}, settings, guard);
  return out[0];
}

Complex slope_expansion(const ShearProfile& p, double alpha, Complex c,
                        Complex omega0_value) {
  const Complex d2 = (p.uplus() - c) * (p.uplus() - c);
  const Complex c2 = c * c;
  return -p.wall_shear() / c - alpha * d2 / c2 +
         alpha * alpha * d2 * d2 * omega0_value / c2;
}

RayleighSlope miles_slope(const ShearProfile& p, double alpha, Complex c,
                          double radius, double rel_tol) {
  RayleighSlope s;
  s.omega0 = omega0(p, c, alpha, radius, rel_tol);
  s.omega_at_0 = miles_omega(p, alpha, c, radius, rel_tol);
  s.slope_exact = -p.wall_shear() / c - 1.0 / (c * c * s.omega_at_0);
  s.slope_expansion = slope_expansion(p, alpha, c, s.omega0);
  return s;
}

double series_norm(const Series& s, double rho) {
  double n = 0.0, r = 1.0;
  for (const auto& v : s) {
    n += std::abs(v) * r;
    r *= rho;
  }
  return n;
}

Complex series_eval(const Series& s, Complex Y, int derivative) {
  Complex acc = 0.0;
  for (int n = int(s.size()) - 1; n >= derivative; --n) {
    double f = 1.0;
    for (int k = 0; k < derivative; ++k) f *= double(n - k);
    acc = acc * Y + f * s[n];
  }
  return acc;
}

Complex FrobeniusSeries::psi_a(Complex y, int derivative) const {
  const Complex Y = y - y_c;
  switch (derivative) {
    case 0: return Y * series_eval(a, Y);
    case 1: return series_eval(a, Y) + Y * series_eval(a, Y, 1);
    default: return 2.0 * series_eval(a, Y, 1) + Y * series_eval(a, Y, 2);
  }
}

Complex FrobeniusSeries::psi_b(Complex y, int derivative) const {
  const Complex Y = y - y_c;
  const Complex L = critical_log(y, y_c);
  const Complex pa = series_eval(a, Y);
  switch (derivative) {
    case 0: return series_eval(b, Y) + log_coeff * psi_a(y) * L;
    case 1:
      return series_eval(b, Y, 1) + log_coeff * (psi_a(y, 1) * L + pa);
    default:
      return series_eval(b, Y, 2) +
             log_coeff * (psi_a(y, 2) * L + pa / Y + 2.0 * series_eval(a, Y, 1));
  }
}

double isolation_radius(const ShearProfile& p, Complex c, Complex y_c) {
  const Complex u1 = p.eval(y_c, 1);
  double r = 1.0;
  for (; r > 1e-6; r *= 0.9) {
    bool ok = true;
    for (int k = 0; k < 128 && ok; ++k) {
      const Complex Y = std::polar(r, 2.0 * kPi * k / 128.0);
      const Complex rest = p.eval(y_c + Y) - c - u1 * Y;
      ok = std::abs(rest) < std::abs(u1 * Y);
    }
    if (ok) break;
  }
  return std::min(0.5, 0.5 * r);
}

namespace {

/// (U - c) and U'' expanded about y_c, with the constant term of U - c
/// removed.
struct LocalProfile {
  Series u;  // U - c
  Series w;  // U''
};

LocalProfile local_profile(const ShearProfile& p, Complex y_c, int n) {
  LocalProfile lp;
  lp.u = p.taylor(y_c, n + 3);
  lp.u[0] = 0.0;
  lp.w.resize(n + 1);
  for (int k = 0; k <= n; ++k)
    lp.w[k] = double(k + 2) * double(k + 1) * lp.u[k + 2];
  return lp;
}

Complex at(const Series& s, int k) {
  return (k >= 0 && k < int(s.size())) ? s[k] : Complex{};
}

}  // namespace

FrobeniusSeries frobenius(const ShearProfile& p, double alpha, Complex c,
                          int n_terms) {
  if (n_terms < 4) throw InvalidArgument("frobenius needs n_terms >= 4");
  const int N = n_terms;
  const Complex y_c = profile::critical_layer(p, c);
  const LocalProfile lp = local_profile(p, y_c, N + 2);
  const Series& u = lp.u;
  const Series& w = lp.w;
  const double a2 = alpha * alpha;
  const Complex u1 = u[1];

  // psi_A = sum_{n>=1} A_n Y^n.
  Series A(N + 2, Complex{});
  Series phi(N + 1, Complex{});
  A[1] = 1.0;
  for (int m = 1; m <= N; ++m) {
    Complex s = 0.0;
    for (int k = 0; k <= m - 1; ++k) s += w[k] * A[m - k];
    for (int k = 2; k <= m; ++k) s -= u[k] * phi[m - k];
    phi[m - 1] = s / u1;
    A[m + 1] = (phi[m - 1] + a2 * A[m - 1]) / (double(m + 1) * double(m));
  }

  const Complex kappa = w[0] / u1;
  Series B(N + 2, Complex{});
  Series chi(N + 1, Complex{});
  B[0] = 1.0;
  B[1] = 3.0 * u[3] / u1 - kappa * kappa + 0.5 * a2;
  for (int m = 1; m <= N; ++m) {
    Complex r = u[m + 1] * A[1];
    for (int k = 1; k <= m; ++k)
      r += u[k] * double(2 * (m - k) + 3) * A[m - k + 2];
    Complex s = -kappa * r;
    for (int k = 0; k <= m; ++k) s += w[k] * B[m - k];
    for (int k = 2; k <= m; ++k) s -= u[k] * chi[m - k];
    chi[m - 1] = s / u1;
    B[m + 1] = (chi[m - 1] + a2 * B[m - 1]) / (double(m + 1) * double(m));
  }

  FrobeniusSeries out;
  out.a.assign(A.begin() + 1, A.begin() + 1 + N);
  out.b.assign(B.begin(), B.begin() + N);
  out.log_coeff = kappa;
  out.radius = isolation_radius(p, c, y_c);
  out.y_c = y_c;
  out.alpha = alpha;
  return out;
}

Complex rayleigh_operator(const ShearProfile& p, double alpha, Complex c,
                          Complex y, Complex psi, Complex psi_pp) {
  return (p.eval(y) - c) * (psi_pp - alpha * alpha * psi) - p.eval(y, 2) * psi;
}

LocalSolution ray_local_solve(const ShearProfile& p, double alpha, Complex c,
                              const Series& rhs_p, const Series& rhs_q,
                              int n_terms, double rho) {
  const int N = std::max(n_terms, 4);
  const Complex y_c = profile::critical_layer(p, c);
  const LocalProfile lp = local_profile(p, y_c, N + 2);
  const double a2 = alpha * alpha;
  if (rho <= 0.0) rho = isolation_radius(p, c, y_c);

  // phi2 = Y / (U - c), phi1 = phi2 U'' + alpha^2 Y.
  Series phi2(N + 1), phi1(N + 1);
  const Complex u1 = lp.u[1];
  phi2[0] = 1.0 / u1;
  for (int n = 1; n <= N; ++n) {
    Complex s = 0.0;
    for (int k = 1; k <= n; ++k) s += lp.u[k + 1] * phi2[n - k];
    phi2[n] = -s / u1;
  }
  for (int n = 0; n <= N; ++n) {
    Complex s = 0.0;
    for (int k = 0; k <= n; ++k) s += phi2[k] * lp.w[n - k];
    phi1[n] = s + (n == 1 ? a2 : 0.0);
  }

  LocalSolution out;
  out.rho = rho;
  out.phi1_norm = series_norm(phi1, rho);
  out.phi2_norm = series_norm(phi2, rho);
  if (rho * out.phi1_norm >= 0.5)
    throw NumericalError(ErrorKind::RadiusTooLarge,
                         "rho * ||phi_1||_rho >= 1/2");
  out.bound = 3.0 * rho * out.phi2_norm;

  Series Q(N + 1, Complex{});
  for (int n = 0; n < N; ++n) {
    Complex s = 0.0;
    for (int j = 0; j <= n; ++j)
      s += phi1[n - j] * Q[j] + phi2[n - j] * at(rhs_q, j);
    Q[n + 1] = s / (double(n + 1) * double(n + 2));
  }

  Series P(N + 1, Complex{});
  Series g(N + 1, Complex{});  // U'' P + P_1
  if (std::abs(lp.w[0]) < 1e-300) {
    if (std::abs(at(rhs_p, 0)) > 0.0)
      throw NumericalError(ErrorKind::DivisionNearZero,
                           "U''(y_c) vanishes, P(y_c) undetermined");
  } else {
    P[0] = -at(rhs_p, 0) / lp.w[0];
  }
  P[1] = 0.0;
  for (int n = 1; n < N; ++n) {
    for (int j = n - 1; j <= n; ++j) {
      Complex s = at(rhs_p, j);
      for (int i = 0; i <= j; ++i) s += lp.w[i] * P[j - i];
      g[j] = s;
    }
    Complex s = a2 * P[n - 1] - double(2 * n + 1) * Q[n];
    for (int k = 0; k <= n; ++k) s += phi2[k] * g[n - k];
    P[n + 1] = s / (double(n + 1) * double(n));
  }

  const double qn = series_norm(Q, rho);
  const double tail = std::abs(Q[N]) * std::pow(rho, N) +
                      std::abs(P[N]) * std::pow(rho, N);
  if (tail > 1e-6 * (qn + series_norm(P, rho)) && tail > 1e-300)
    throw NumericalError(ErrorKind::RadiusTooLarge,
                         "series coefficients not summable at rho");
  out.P = std::move(P);
  out.Q = std::move(Q);
  return out;
}

Complex vorticity_of(const ShearProfile& p, Complex c, Complex psi, Complex y) {
  const Complex d = p.eval(y) - c;
  if (std::abs(d) < 1e-12)
    throw NumericalError(ErrorKind::CriticalLayerSingularity,
                         "vorticity evaluated at the critical layer");
  return p.eval(y, 2) / d * psi;
}

}  // namespace oswave::rayleigh
