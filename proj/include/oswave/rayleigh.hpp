#pragma once

#include <vector>

#include "oswave/numerics.hpp"
#include "oswave/profile.hpp"

namespace oswave::rayleigh {

using profile::ShearProfile;
using Series = std::vector<Complex>;  // coefficients in powers of (y - y_c)

inline constexpr double kDefaultIndent = 0.05;

/// Far-field truncation for half-line integrals.
double tail_cutoff(double alpha);

/// Path 0 -> y_max passing below y_c: a semicircle when y_c is close to the
/// real axis, a rectangular dip when y_c lies below it, a straight line when
/// y_c is above. The indentation radius never exceeds Re(y_c) / 2, and the
/// path keeps a distance of at least half that radius from y_c. Past y_c the
/// path is split into pieces of geometrically growing length.
numerics::Contour critical_contour(Complex y_c, double y_max,
                                   double radius = kDefaultIndent);

/// log(y - y_c) with the cut running upward from y_c, so arg lies in
/// (-3 pi / 2, pi / 2].
Complex critical_log(Complex y, Complex y_c);

/// Omega_0(0, c), the half-line integral over the contour above.
Complex omega0(const ShearProfile& p, Complex c, double alpha_hint,
               double radius = kDefaultIndent, double rel_tol = 1e-10);

struct RayleighSlope {
  Complex omega0;
  Complex slope_expansion;  // -U'(0)/c - a(U+-c)^2/c^2 + a^2(U+-c)^4 O0/c^2
  Complex slope_exact;      // -U'(0)/c - 1/(c^2 Omega(0))
  Complex omega_at_0;
};

/// Integrates Omega' = a^2 Y Omega^2 - 1/Y, Y = (U - c)^2, from the far
/// field to the wall. Throws RiccatiBlowup when |Omega| > 1e12.
Complex miles_omega(const ShearProfile& p, double alpha, Complex c,
                    double radius = kDefaultIndent, double rel_tol = 1e-10);

RayleighSlope miles_slope(const ShearProfile& p, double alpha, Complex c,
                          double radius = kDefaultIndent,
                          double rel_tol = 1e-10);

/// Expansion slope -U'(0)/c - a(U+-c)^2/c^2 + a^2 (U+-c)^4 Omega_0 / c^2.
Complex slope_expansion(const ShearProfile& p, double alpha, Complex c,
                        Complex omega0_value);

/// psi_A = (y - y_c) P_A,  psi_B = P_B + kappa psi_A log(y - y_c).
struct FrobeniusSeries {
  Series a;         // P_A, a[0] = 1
  Series b;         // P_B, b[0] = 1
  Complex log_coeff;  // kappa = U''_c / U'_c
  double radius;
  Complex y_c;
  double alpha;

  Complex psi_a(Complex y, int derivative = 0) const;
  Complex psi_b(Complex y, int derivative = 0) const;
};

/// Radius of a disc around y_c free of other roots of U = c, halved and
/// capped at 0.5.
double isolation_radius(const ShearProfile& p, Complex c, Complex y_c);

FrobeniusSeries frobenius(const ShearProfile& p, double alpha, Complex c,
                          int n_terms = 40);

/// Rayleigh operator (U - c)(psi'' - a^2 psi) - U'' psi for given values.
Complex rayleigh_operator(const ShearProfile& p, double alpha, Complex c,
                          Complex y, Complex psi, Complex psi_pp);

struct LocalSolution {
  Series P;
  Series Q;
  double rho;
  double phi1_norm;  // ||phi_1||_rho
  double phi2_norm;  // ||phi_2||_rho
  double bound;      // K with ||Q||_rho <= K ||Q_1||_rho
};

/// Local solution of Ray(phi) = P_1 + Y log(Y) Q_1 of the form
/// phi = P + Y log(Y) Q, normalised by Q(y_c) = 0 and P'(y_c) = 0.
/// rho <= 0 selects the isolation radius.
LocalSolution ray_local_solve(const ShearProfile& p, double alpha, Complex c,
                              const Series& rhs_p, const Series& rhs_q,
                              int n_terms = 40, double rho = 0.0);

/// Series helpers.
double series_norm(const Series& s, double rho);
Complex series_eval(const Series& s, Complex Y, int derivative = 0);

/// omega = U'' psi / (U - c). Throws CriticalLayerSingularity near y_c.
Complex vorticity_of(const ShearProfile& p, Complex c, Complex psi, Complex y);

}  // namespace oswave::rayleigh
