#pragma once

#include <array>
#include <vector>

#include "oswave/numerics.hpp"
#include "oswave/profile.hpp"

namespace oswave::oracle {

using profile::ShearProfile;

struct ShootSettings {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  long max_steps = 2000000;
  int max_iterations = 40;
  double y_max = 0.0;  // 0 selects max(40, 10/|alpha|)
};

/// Orr-Sommerfeld determinant at y = 0 from the compound system started
/// with the two decaying far-field solutions: the (psi, psi') minor divided
/// by the Euclidean norm of the compound vector.
struct ShootDeterminant {
  Complex value;
  std::array<Complex, 6> compound;
  Complex mu_f;
  double y_max;
};

ShootDeterminant shoot_determinant(const ShearProfile& p, double alpha,
                                   double nu, Complex c,
                                   const ShootSettings& s = {});

/// Fast decay rate sqrt(alpha^2 + (i alpha / nu)(U+ - c)), Re > 0.
Complex fast_rate(const ShearProfile& p, double alpha, double nu, Complex c);

struct ShootResult {
  Complex c;
  double determinant_residual;  // |D(c)| / |D(seed)|
  Complex mu_f;
  double y_max_used;
  int iterations;
  Complex seed_determinant;
};

/// Secant-Newton on the compound determinant. Throws StiffnessFailure on
/// step collapse and NewtonDivergence.
ShootResult shoot_eigenvalue(const ShearProfile& p, double alpha, double nu,
                             Complex c_seed, const ShootSettings& s = {});

struct EvolveSettings {
  double dt = 1.0;
  double bump_center = 1.0;
  double bump_width = 0.5;
  int sample_every = 1;
};

struct EvolveResult {
  std::vector<double> times;
  std::vector<double> omega_norm;  // L2 norm of the vorticity
  double fitted_rate = 0.0;
  double fit_r2 = 0.0;
  double predicted_rate = 0.0;  // alpha Im c from the dispersion relation
  bool predicted_available = false;
  bool cfl_warning = false;
};

/// Crank-Nicolson finite differences for
///   omega_t = -i a U omega - i a U'' psi + nu (D^2 - a^2) omega,
///   (D^2 - a^2) psi = -omega,  psi(0) = psi'(0) = 0 (nu > 0),
/// on a uniform grid of n_y intervals over [0, y_max]. nu = 0 drops the
/// no-slip condition. The fitted rate is the least-squares slope of
/// log ||omega|| over [t_final / 2, t_final].
EvolveResult evolve_semigroup(const ShearProfile& p, double alpha, double nu,
                              double t_final, int n_y, double y_max,
                              const EvolveSettings& s = {});

}  // namespace oswave::oracle
