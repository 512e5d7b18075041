#include "oswave/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>

#include "oswave/errors.hpp"

namespace oswave::numerics {

// ---------------------------------------------------------------------------
// Contours

Segment Segment::line(Complex a, Complex b) {
  Segment s;
  s.kind = Kind::Line;
  s.start = a;
  s.end = b;
  return s;
}

Segment Segment::arc(Complex center, double radius, double theta0,
                     double theta1) {
  Segment s;
  s.kind = Kind::Arc;
  s.center = center;
  s.radius = radius;
  s.theta0 = theta0;
  s.theta1 = theta1;
  s.start = center + std::polar(radius, theta0);
  s.end = center + std::polar(radius, theta1);
  return s;
}

Complex Segment::point(double t) const {
  if (kind == Kind::Line) return start + t * (end - start);
  return center + std::polar(radius, theta0 + t * (theta1 - theta0));
}

Complex Segment::tangent(double t) const {
  if (kind == Kind::Line) return end - start;
  const double th = theta0 + t * (theta1 - theta0);
  return kI * std::polar(radius, th) * (theta1 - theta0);
}

double Segment::length() const {
  if (kind == Kind::Line) return std::abs(end - start);
  return radius * std::abs(theta1 - theta0);
}

Contour::Contour(std::vector<Segment> segments)
    : segments_(std::move(segments)) {
  validate();
}

void Contour::validate() const {
  if (segments_.empty()) throw InvalidArgument("contour has no segments");
  for (std::size_t k = 0; k < segments_.size(); ++k) {
    if (!(segments_[k].length() > 0.0))
      throw InvalidArgument("contour segment has zero length");
    if (k > 0 && std::abs(segments_[k].start - segments_[k - 1].end) >
                     1e-12 * (1.0 + std::abs(segments_[k].start)))
      throw InvalidArgument("contour segments are not contiguous");
  }
}

Contour Contour::polyline(std::span<const Complex> points) {
  if (points.size() < 2)
    throw InvalidArgument("polyline needs at least two waypoints");
  std::vector<Segment> segs;
  for (std::size_t k = 1; k < points.size(); ++k)
    segs.push_back(Segment::line(points[k - 1], points[k]));
  return Contour(std::move(segs));
}

Contour Contour::segment(Complex a, Complex b) {
  const std::array<Complex, 2> pts{a, b};
  return polyline(pts);
}

std::vector<Complex> Contour::waypoints() const {
  std::vector<Complex> pts;
  pts.push_back(segments_.front().start);
  for (const auto& s : segments_) pts.push_back(s.end);
  return pts;
}

double Contour::length() const {
  double len = 0.0;
  for (const auto& s : segments_) len += s.length();
  return len;
}

Contour Contour::reversed() const {
  std::vector<Segment> segs;
  segs.reserve(segments_.size());
  for (auto it = segments_.rbegin(); it != segments_.rend(); ++it) {
    if (it->kind == Segment::Kind::Line)
      segs.push_back(Segment::line(it->end, it->start));
    else
      segs.push_back(Segment::arc(it->center, it->radius, it->theta1,
                                  it->theta0));
  }
  return Contour(std::move(segs));
}

Contour Contour::then(const Contour& next) const {
  std::vector<Segment> segs = segments_;
  segs.insert(segs.end(), next.segments_.begin(), next.segments_.end());
  return Contour(std::move(segs));
}

std::pair<Contour, Contour> Contour::split_at(std::size_t index) const {
  if (index == 0 || index >= segments_.size())
    throw InvalidArgument("split index must be an interior waypoint");
  std::vector<Segment> head(segments_.begin(), segments_.begin() + index);
  std::vector<Segment> tail(segments_.begin() + index, segments_.end());
  return {Contour(std::move(head)), Contour(std::move(tail))};
}

Contour indented_contour(double a, double b, Complex singularity,
                         double radius, Side side) {
  if (!(a < b)) throw InvalidArgument("indented_contour requires a < b");
  if (!(radius > 0.0)) throw InvalidArgument("indentation radius must be > 0");
  const double x = singularity.real();
  const bool near_axis = std::abs(singularity.imag()) < radius;
  const bool fits = (x - radius > a) && (x + radius < b);
  if (!near_axis || !fits) return Contour::segment(a, b);

  // Below: angle pi -> 2pi passes through x - i*radius. Above: pi -> 0.
  const double theta1 = side == Side::Below ? 2.0 * kPi : 0.0;
  std::vector<Segment> segs;
  segs.push_back(Segment::line(a, x - radius));
  segs.push_back(Segment::arc(Complex(x, 0.0), radius, kPi, theta1));
  segs.back().end = Complex(x + radius, 0.0);
  segs.push_back(Segment::line(x + radius, b));
  return Contour(std::move(segs));
}

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4)

namespace {

constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// Differences between 5th and embedded 4th order weights.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Stepper {
  const OdeRhs& rhs;
  const Segment& seg;
  std::size_t n;
  std::array<ComplexVector, 7> k;
  ComplexVector tmp;

  Stepper(const OdeRhs& r, const Segment& s, std::size_t dim)
      : rhs(r), seg(s), n(dim), tmp(dim) {
    for (auto& v : k) v.assign(dim, Complex{});
  }

  // Derivative with respect to the real segment parameter t.
  void eval(double t, const ComplexVector& s, ComplexVector& out) {
    rhs(seg.point(t), s, out);
    const Complex dy = seg.tangent(t);
    for (auto& v : out) v *= dy;
  }
};

bool all_finite(std::span<const Complex> v) {
  for (const auto& x : v)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
  return true;
}

}  // namespace

ComplexVector integrate_ode(const OdeRhs& rhs, const Contour& contour,
                            ComplexVector state, const OdeSettings& settings,
                            const StepObserver& observer) {
  if (!(settings.rel_tol > 0.0) || !(settings.abs_tol > 0.0) ||
      settings.max_steps < 1)
    throw InvalidArgument("ODE tolerances must be positive");
  const std::size_t n = state.size();
  if (n == 0) throw InvalidArgument("empty ODE state");

  long steps = 0;
  for (const auto& seg : contour.segments()) {
    Stepper st(rhs, seg, n);
    ComplexVector next(n);
    double t = 0.0;
    double h = 0.01;
    double err_prev = 1e-4;
    st.eval(0.0, state, st.k[0]);
    {
      // Initial step from the size of the derivative.
      double d0 = 0.0, d1 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double sc =
            settings.abs_tol + settings.rel_tol * std::abs(state[i]);
        d0 = std::max(d0, std::abs(state[i]) / sc);
        d1 = std::max(d1, std::abs(st.k[0][i]) / sc);
      }
      h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-3 : 0.01 * d0 / d1;
      h = std::clamp(h, 1e-12, 1.0);
    }
    while (t < 1.0) {
      if (++steps > settings.max_steps)
        throw NumericalError(ErrorKind::StepLimitExceeded,
                             "ODE integration exceeded max_steps");
      if (t + h > 1.0) h = 1.0 - t;
      auto& k = st.k;
      auto& y = st.tmp;
      for (std::size_t i = 0; i < n; ++i) y[i] = state[i] + h * a21 * k[0][i];
      st.eval(t + c2 * h, y, k[1]);
      for (std::size_t i = 0; i < n; ++i)
        y[i] = state[i] + h * (a31 * k[0][i] + a32 * k[1][i]);
      st.eval(t + c3 * h, y, k[2]);
      for (std::size_t i = 0; i < n; ++i)
        y[i] = state[i] + h * (a41 * k[0][i] + a42 * k[1][i] + a43 * k[2][i]);
      st.eval(t + c4 * h, y, k[3]);
      for (std::size_t i = 0; i < n; ++i)
        y[i] = state[i] + h * (a51 * k[0][i] + a52 * k[1][i] +
                               a53 * k[2][i] + a54 * k[3][i]);
      st.eval(t + c5 * h, y, k[4]);
      for (std::size_t i = 0; i < n; ++i)
        y[i] = state[i] + h * (a61 * k[0][i] + a62 * k[1][i] +
                               a63 * k[2][i] + a64 * k[3][i] + a65 * k[4][i]);
      st.eval(t + h, y, k[5]);
      for (std::size_t i = 0; i < n; ++i)
        next[i] = state[i] + h * (b1 * k[0][i] + b3 * k[2][i] + b4 * k[3][i] +
                                  b5 * k[4][i] + b6 * k[5][i]);
      st.eval(t + h, next, k[6]);

      double err = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const Complex e =
            h * (e1 * k[0][i] + e3 * k[2][i] + e4 * k[3][i] + e5 * k[4][i] +
                 e6 * k[5][i] + e7 * k[6][i]);
        const double sc =
            settings.abs_tol +
            settings.rel_tol * std::max(std::abs(state[i]), std::abs(next[i]));
        err = std::max(err, std::abs(e) / sc);
      }
      if (!std::isfinite(err)) {
        if (!all_finite(next) && h < 1e-14)
          throw NumericalError(ErrorKind::NonFiniteState,
                               "ODE state became non-finite");
        h *= 0.25;
        continue;
      }
      if (err <= 1.0) {
        t += h;
        state.swap(next);
        if (!all_finite(state))
          throw NumericalError(ErrorKind::NonFiniteState,
                               "ODE state became non-finite");
        if (observer) {
          observer(seg.point(t), state);
          st.eval(t, state, k[0]);
        } else {
          k[0].swap(k[6]);
        }
        // PI controller (beta = 0.04, alpha = 0.2 - 0.75*beta).
        const double e = std::max(err, 1e-10);
        double fac = 0.9 * std::pow(e, -0.17) * std::pow(err_prev, 0.04);
        fac = std::clamp(fac, 0.2, 5.0);
        h *= fac;
        err_prev = e;
      } else {
        h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      }
      if (h < 1e-15)
        throw NumericalError(ErrorKind::StepLimitExceeded,
                             "ODE step size underflow");
    }
  }
  return state;
}

// ---------------------------------------------------------------------------
// Gauss-Kronrod 7/15

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

struct Piece {
  std::size_t segment;
  double t0, t1;
  Complex value;
  double error;
  bool operator<(const Piece& o) const { return error < o.error; }
};

Piece gk15(const std::function<Complex(Complex)>& f, const Segment& seg,
           std::size_t index, double t0, double t1) {
  const double half = 0.5 * (t1 - t0);
  const double mid = 0.5 * (t0 + t1);
  auto g = [&](double t) { return f(seg.point(t)) * seg.tangent(t); };
  const Complex fc = g(mid);
  Complex kron = fc * kWgk[7];
  Complex gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const Complex sum = g(mid - dx) + g(mid + dx);
    kron += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  kron *= half;
  gauss *= half;
  return Piece{index, t0, t1, kron, std::abs(kron - gauss)};
}

}  // namespace

Complex adaptive_quadrature(const std::function<Complex(Complex)>& f,
                            const Contour& contour, double rel_tol,
                            double abs_tol, int max_subdivisions) {
  if (!(rel_tol > 0.0)) throw InvalidArgument("rel_tol must be positive");
  std::priority_queue<Piece> heap;
  Complex total{};
  double err_total = 0.0;
  const auto& segs = contour.segments();
  for (std::size_t s = 0; s < segs.size(); ++s) {
    // Seed with a few pieces per segment so narrow features are not missed.
    constexpr int kSeed = 4;
    for (int j = 0; j < kSeed; ++j) {
      Piece p = gk15(f, segs[s], s, double(j) / kSeed, double(j + 1) / kSeed);
      total += p.value;
      err_total += p.error;
      heap.push(p);
    }
  }
  int subdivisions = 0;
  while (err_total > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (++subdivisions > max_subdivisions)
      throw NumericalError(ErrorKind::SubdivisionLimit,
                           "adaptive quadrature exceeded subdivision limit");
    Piece worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.t0 + worst.t1);
    Piece left = gk15(f, segs[worst.segment], worst.segment, worst.t0, mid);
    Piece right = gk15(f, segs[worst.segment], worst.segment, mid, worst.t1);
    total += left.value + right.value - worst.value;
    err_total += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    if (heap.size() % 64 == 0) {
      // Re-sum to keep cancellation drift out of the running totals.
      auto copy = heap;
      total = 0.0;
      err_total = 0.0;
      while (!copy.empty()) {
        total += copy.top().value;
        err_total += copy.top().error;
        copy.pop();
      }
    }
  }
  return total;
}

double adaptive_quadrature_real(const std::function<double(double)>& f,
                                double a, double b, double rel_tol) {
  const auto g = [&](Complex y) { return Complex(f(y.real()), 0.0); };
  return adaptive_quadrature(g, Contour::segment(a, b), rel_tol).real();
}

Complex cpow(Complex z, double p) {
  if (z == Complex{}) return Complex{};
  return std::exp(p * std::log(z));
}

}  // namespace oswave::numerics
