#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace oswave {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

namespace numerics {

/// One piece of a contour: a straight segment or a circular arc.
struct Segment {
  enum class Kind { Line, Arc };

  Kind kind = Kind::Line;
  Complex start;
  Complex end;
  // Arc data (unused for lines): point(t) = center + radius*exp(i*theta(t)).
  Complex center;
  double radius = 0.0;
  double theta0 = 0.0;
  double theta1 = 0.0;

  static Segment line(Complex a, Complex b);
  static Segment arc(Complex center, double radius, double theta0,
                     double theta1);

  /// Position for t in [0, 1].
  Complex point(double t) const;
  /// d(point)/dt.
  Complex tangent(double t) const;
  double length() const;
};

/// Piecewise contour in the complex height plane, traversed from the first
/// waypoint to the last.
class Contour {
 public:
  Contour() = default;
  explicit Contour(std::vector<Segment> segments);

  /// Straight-line path through the given points.
  static Contour polyline(std::span<const Complex> points);
  static Contour segment(Complex a, Complex b);

  const std::vector<Segment>& segments() const { return segments_; }
  std::vector<Complex> waypoints() const;
  Complex start() const { return segments_.front().start; }
  Complex end() const { return segments_.back().end; }
  double length() const;

  /// Same path traversed in the opposite direction.
  Contour reversed() const;
  /// This path followed by `next`; `next` must start where this one ends.
  Contour then(const Contour& next) const;
  /// Splits the contour at segment boundary `index` (1 <= index < size).
  std::pair<Contour, Contour> split_at(std::size_t index) const;

 private:
  void validate() const;

  std::vector<Segment> segments_;
};

enum class Side { Below, Above };

/// Straight path a -> b with a semicircular detour of the given radius around
/// Re(singularity), inserted only when |Im(singularity)| < radius and the
/// detour fits inside (a, b).
Contour indented_contour(double a, double b, Complex singularity,
                         double radius, Side side = Side::Below);

struct OdeSettings {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  long max_steps = 200000;
};

/// dstate/dy = rhs(y, state); writes the derivative into the third argument.
using OdeRhs = std::function<void(Complex, std::span<const Complex>,
                                  std::span<Complex>)>;
/// Invoked after every accepted step with the current position and state; may
/// rescale the state in place (linear systems) or throw to abort.
using StepObserver = std::function<void(Complex, std::span<Complex>)>;

/// Dormand-Prince 5(4) with PI step control along a piecewise contour.
ComplexVector integrate_ode(const OdeRhs& rhs, const Contour& contour,
                            ComplexVector initial_state,
                            const OdeSettings& settings = {},
                            const StepObserver& observer = {});

/// Globally adaptive Gauss-Kronrod (7/15) estimate of the contour integral.
Complex adaptive_quadrature(const std::function<Complex(Complex)>& f,
                            const Contour& contour, double rel_tol = 1e-10,
                            double abs_tol = 1e-300,
                            int max_subdivisions = 4000);

/// Real-interval convenience wrapper used by tests and the Airy oracles.
double adaptive_quadrature_real(const std::function<double(double)>& f,
                                double a, double b, double rel_tol = 1e-12);

/// Principal complex power that stays finite at zero.
Complex cpow(Complex z, double p);

}  // namespace numerics
}  // namespace oswave
