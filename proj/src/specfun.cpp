#include "oswave/specfun.hpp"

#include <array>
#include <cmath>

#include "oswave/errors.hpp"

namespace oswave::specfun {

namespace {

constexpr double kSqrtPi = 1.77245385090551602729816748334;
const Complex kOmega = std::polar(1.0, 2.0 * kPi / 3.0);  // e^{2 pi i/3}

// Radius inside which the Maclaurin series is summed directly.
constexpr double kSeriesRadius = 2.0;
// Radius beyond which the asymptotic expansions are used directly.
constexpr double kAsymptoticRadius = 40.0;
// Anchor radius for inward stepping in the sector where Ai decays.
constexpr double kAnchorRadius = 12.0;

/// Advances (Ai2, Ai1, Ai, Ai') from z0 to z0 + t using the local Taylor
/// expansion of w'' = z w. The same routine sums the Maclaurin series when
/// z0 = 0.
AiryPrimitives taylor_step(const AiryPrimitives& s, Complex z0, Complex t) {
  Complex a_prev2{};       // a_{n-1}
  Complex a_prev = s.ai;   // a_n, starts at n = 0
  Complex a_cur = s.ai_prime;  // a_{n+1}
  Complex tp = 1.0;        // t^n
  Complex w = 0.0, wp = 0.0, p1 = s.ai1, p2 = s.ai2 + s.ai1 * t;
  int quiet = 0;
  for (int n = 0; n < 200; ++n) {
    const Complex term = a_prev * tp;
    w += term;
    if (n > 0) wp += double(n) * a_prev * tp / t;
    p1 += term * t / double(n + 1);
    p2 += term * t * t / (double(n + 1) * double(n + 2));
    const double scale =
        std::abs(w) + std::abs(wp * t) + 1e-300;
    if (std::abs(term) < 1e-18 * scale && n > 4) {
      if (++quiet >= 3) break;
    } else {
      quiet = 0;
    }
    // a_{n+2} = (z0 a_n + a_{n-1}) / ((n+2)(n+1))
    const Complex a_next =
        (z0 * a_prev + a_prev2) / (double(n + 2) * double(n + 1));
    a_prev2 = a_prev;
    a_prev = a_cur;
    a_cur = a_next;
    tp *= t;
  }
  if (t == Complex{}) wp = s.ai_prime;
  return {p2, p1, w, wp};
}

AiryPrimitives origin_state() {
  return {Complex(-kAiPrime0), Complex(-1.0 / 3.0), Complex(kAi0),
          Complex(kAiPrime0)};
}

AiryPrimitives maclaurin(Complex z) {
  return taylor_step(origin_state(), 0.0, z);
}

/// Moves along the straight path from `from` to `to` in steps short enough
/// that sqrt|z| * h stays below ~1.
AiryPrimitives march(AiryPrimitives s, Complex from, Complex to) {
  Complex z0 = from;
  while (std::abs(to - z0) > 0.0) {
    const double h = std::min(0.6, 1.0 / std::sqrt(std::abs(z0) + 1.0));
    const Complex d = to - z0;
    const Complex step = std::abs(d) <= h ? d : d * (h / std::abs(d));
    s = taylor_step(s, z0, step);
    z0 += step;
    if (std::abs(step) == std::abs(d)) break;
  }
  return s;
}

/// Sums sum_k c_k zeta^{-k} for a coefficient generator, stopping at the
/// smallest term of the asymptotic series.
template <typename Coeff>
Complex asymptotic_sum(Coeff&& coeff, Complex inv_zeta) {
  Complex sum = coeff(0);
  Complex p = 1.0;
  double last = std::abs(sum);
  for (int k = 1; k < 80; ++k) {
    p *= inv_zeta;
    const Complex term = coeff(k) * p;
    const double mag = std::abs(term);
    if (mag > last) break;
    sum += term;
    if (mag < 1e-17 * std::abs(sum)) break;
    last = mag;
  }
  return sum;
}

struct AsymptoticCoefficients {
  static constexpr int kTerms = 80;
  std::array<double, kTerms> s{};  // (-1)^k u_k
  std::array<double, kTerms> v{};  // (-1)^k v_k
  std::array<double, kTerms> t{};  // first primitive
  std::array<double, kTerms> r{};  // second primitive

  AsymptoticCoefficients() {
    double u = 1.0;
    for (int k = 0; k < kTerms; ++k) {
      if (k > 0)
        u *= double(6 * k - 5) * double(6 * k - 3) * double(6 * k - 1) /
             (double(2 * k - 1) * 216.0 * double(k));
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      s[k] = sign * u;
      v[k] = sign * (k == 0 ? 1.0 : -double(6 * k + 1) / double(6 * k - 1) * u);
      t[k] = k == 0 ? 1.0 : s[k] - (double(k) - 0.5) * t[k - 1];
      r[k] = k == 0 ? 1.0 : t[k] - (double(k) - 1.0 / 6.0) * r[k - 1];
    }
  }
};

const AsymptoticCoefficients& coefficients() {
  static const AsymptoticCoefficients table;
  return table;
}

/// Large-|z| expansions valid for |arg z| <= 2 pi / 3.
AiryPrimitives asymptotic(Complex z) {
  const auto& c = coefficients();
  const Complex logz = std::log(z);
  const Complex zeta = (2.0 / 3.0) * std::exp(1.5 * logz);
  const Complex inv = 1.0 / zeta;
  const Complex pref = std::exp(-zeta) / (2.0 * kSqrtPi);
  const Complex su = asymptotic_sum([&](int k) { return c.s[k]; }, inv);
  const Complex sv = asymptotic_sum([&](int k) { return c.v[k]; }, inv);
  const Complex st = asymptotic_sum([&](int k) { return c.t[k]; }, inv);
  const Complex sr = asymptotic_sum([&](int k) { return c.r[k]; }, inv);
  AiryPrimitives out;
  out.ai = pref * std::exp(-0.25 * logz) * su;
  out.ai_prime = -pref * std::exp(0.25 * logz) * sv;
  out.ai1 = -pref * std::exp(-0.75 * logz) * st;
  out.ai2 = pref * std::exp(-1.25 * logz) * sr;
  return out;
}

AiryPrimitives conj(const AiryPrimitives& a) {
  return {std::conj(a.ai2), std::conj(a.ai1), std::conj(a.ai),
          std::conj(a.ai_prime)};
}

}  // namespace

AiryPrimitives airy_ai(Complex z) {
  if (z.imag() < 0.0) return conj(airy_ai(std::conj(z)));
  const double r = std::abs(z);
  const double theta = std::arg(z);  // in [0, pi]
  if (r <= kSeriesRadius) return maclaurin(z);
  if (r > kAsymptoticRadius) {
    if (theta <= 2.0 * kPi / 3.0) return asymptotic(z);
    // Connection formulas move both arguments into |arg| <= 2 pi / 3.
    const Complex w = kOmega, w2 = kOmega * kOmega;
    const AiryPrimitives a = asymptotic(w * z);
    const AiryPrimitives b = asymptotic(w2 * z);
    AiryPrimitives out;
    out.ai = -w * a.ai - w2 * b.ai;
    out.ai_prime = -w2 * a.ai_prime - w * b.ai_prime;
    out.ai1 = -a.ai1 - b.ai1 - 1.0;
    out.ai2 = -w2 * a.ai2 - w * b.ai2 - z;
    return out;
  }
  const Complex dir = std::polar(1.0, theta);
  if (theta < kPi / 3.0) {
    // Ai is recessive here: start from the asymptotic anchor and march
    // inwards, which is the numerically stable direction.
    const Complex anchor = std::max(r, kAnchorRadius) * dir;
    AiryPrimitives s = asymptotic(anchor);
    return march(s, anchor, z);
  }
  const Complex start = kSeriesRadius * dir;
  return march(maclaurin(start), start, z);
}

AiryBundle airy_eval(Complex z) {
  const AiryPrimitives a = airy_ai(z);
  const Complex e = std::polar(1.0, kPi / 6.0);
  const AiryPrimitives p = airy_ai(kOmega * z);
  const AiryPrimitives m = airy_ai(std::conj(kOmega) * z);
  AiryBundle out;
  out.ai = a.ai;
  out.ai_prime = a.ai_prime;
  out.ai1 = a.ai1;
  out.ai2 = a.ai2;
  out.bi = e * p.ai + std::conj(e) * m.ai;
  out.bi_prime =
      e * kOmega * p.ai_prime + std::conj(e) * std::conj(kOmega) * m.ai_prime;
  out.ci = -kI * kPi * (out.ai + kI * out.bi);
  return out;
}

TietjensValue tietjens(Complex z) {
  const Complex xi = -std::polar(1.0, kPi / 6.0) * z;
  const AiryPrimitives a = airy_ai(xi);
  const Complex den = xi * a.ai1;
  if (std::abs(den) < 1e-300)
    throw NumericalError(ErrorKind::DivisionNearZero,
                         "Tietjens denominator vanishes");
  return {z, a.ai2 / den, xi};
}

TietjensRoot tietjens_root(double tol) {
  double lo = 1.5, hi = 3.5;
  auto im_ti = [](double z) { return tietjens(z).ti.imag(); };
  double f_lo = im_ti(lo);
  const double f_hi = im_ti(hi);
  if (f_lo * f_hi > 0.0)
    throw NumericalError(ErrorKind::BracketFailure,
                         "Im Ti does not change sign on [1.5, 3.5]");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = im_ti(mid);
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  const double z0 = 0.5 * (lo + hi);
  constexpr double h = 1e-5;
  const Complex d = (tietjens(z0 + h).ti - tietjens(z0 - h).ti) / (2.0 * h);
  return {z0, tietjens(z0).ti, d};
}

}  // namespace oswave::specfun
