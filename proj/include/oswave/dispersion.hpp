#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oswave/numerics.hpp"
#include "oswave/profile.hpp"

namespace oswave::dispersion {

using profile::ShearProfile;

enum class Method { Expansion, Miles, Shoot };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

/// Dispersion residual at the modified speed c_tilde.
///  Expansion: (1 + Lambda) Ti(z) - [1 - (a/c)(U+-c)^2/U'(0)
///             + (a^2/c)((U+-c)^4/U'(0)) (1/(U'(0) c) + Omega_0)].
///  Miles:     (gamma Ai1 - r Ai2) / (r Ai2) at -gamma y_c, r the exact
///             Rayleigh slope.
/// alpha < 0 is mapped to the mirror problem at -alpha and conj(c).
Complex residual_tilde(const ShearProfile& p, double alpha, double nu,
                       Complex c_tilde, Method method);

/// Same, taking the physical phase speed.
Complex residual(const ShearProfile& p, double alpha, double nu, Complex c,
                 Method method);

struct EigenResult {
  double alpha = 0.0;
  double nu = 0.0;
  Complex c;       // physical phase speed
  Complex c_tilde;
  Complex lambda;  // -i alpha c
  double residual = 0.0;
  int iterations = 0;
  Method method = Method::Expansion;
  Complex z;
  Complex gamma;
  std::vector<Complex> iterates;  // c_tilde after each Newton step
};

struct NewtonSettings {
  int max_iterations = 50;
  int max_halvings = 8;
  double residual_tol = 1e-12;
  double step_tol = 1e-14;
};

/// Damped complex Newton on the residual, derivative by central
/// differences. Throws NewtonDivergence or OutOfBasin.
EigenResult solve_eigenvalue(const ShearProfile& p, double alpha, double nu,
                             Complex c_seed, Method method = Method::Expansion,
                             const NewtonSettings& settings = {});

/// Seed on the lower marginal branch: c = 2.296 U+^2 alpha / U'(0).
Complex lower_branch_seed(const ShearProfile& p, double alpha);

/// Root at alpha reached by continuation from the lower end of the default
/// scan window (direct solve from the lower-branch seed below it).
EigenResult continued_eigenvalue(const ShearProfile& p, double alpha,
                                 double nu, Method method = Method::Expansion);

struct BranchPoint {
  double alpha;
  Complex c;
  Complex lambda;
  int stable_flag;  // sign of Re lambda
};

struct Branch {
  std::vector<BranchPoint> points;
  std::optional<double> break_alpha;
  std::string break_reason;
};

/// Geometric alpha grid, continuation from the lower-branch seed (or
/// `first_seed` if given) with linear extrapolation. Stops at the first
/// failure and records it in break_alpha.
Branch trace_branch(const ShearProfile& p, double nu, double alpha_min,
                    double alpha_max, int n_points,
                    Method method = Method::Expansion,
                    std::optional<Complex> first_seed = std::nullopt);

/// Throws BranchBreak if the trace stopped early.
const std::vector<BranchPoint>& require_complete(const Branch& b);

struct MarginalPair {
  double nu;
  double alpha_minus;
  double alpha_plus;
  Complex c_minus;
  Complex c_plus;
};

/// Default scan window [0.5 nu^{1/4}, min(0.45, 6 nu^{1/6})].
std::pair<double, double> default_scan(double nu);

/// Roots of Im c(alpha) = 0 along the branch, refined by secant iteration.
/// Throws WindowNotFound.
MarginalPair marginal_curves(const ShearProfile& p, double nu,
                             Method method = Method::Expansion,
                             int n_scan = 60);

struct GrowthSample {
  double alpha;
  double alpha_scaled;  // alpha / nu^{1/4}
  double re_lambda;
  Complex c;
};

struct GrowthCurve {
  double nu;
  std::vector<GrowthSample> samples;
  double argmax_alpha_scaled;
  double max_re_lambda;
};

GrowthCurve growth_curve(const ShearProfile& p, double nu, int n_points,
                         Method method = Method::Expansion);

/// theta = alpha / c from the large-z form of the dispersion relation:
/// theta = 1/A + B alpha / A^2
///         - e^{i pi/4} nu^{1/2} U'(0)^{3/2} U'_c^{-1/2} A^{-5/2} alpha^{-2},
/// A = (U+-c)^2/U'(0), B = (U+-c)^4/U'(0) (1/(U'(0)c) + Omega_0(c)),
/// evaluated at c = alpha U+^2 / U'(0).
Complex large_z_reduction(const ShearProfile& p, double nu, double alpha);

}  // namespace oswave::dispersion
