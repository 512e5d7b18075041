#pragma once

#include <vector>

#include "oswave/dispersion.hpp"
#include "oswave/numerics.hpp"
#include "oswave/profile.hpp"

namespace oswave::modes {

struct ModeProfile {
  std::vector<double> y_grid;
  std::vector<Complex> psi;
  std::vector<Complex> u;
  std::vector<Complex> v;
  std::vector<Complex> omega;
  double alpha = 0.0;
  double nu = 0.0;
  Complex c;
  Complex amplitude;  // a, before normalisation
  Complex gamma;
  Complex y_c;
  double y_match = 0.0;
  double scale = 1.0;  // max |psi| before normalisation
};

/// psi = U - c + alpha U+^2/U'(0) + a Ai(gamma (y - y_c), 2) near the wall,
/// a chosen so that psi(0) = 0. Past y_match = Re y_c + 20/|gamma| the
/// Airy term is dropped and the constant part decays as e^{-alpha y}.
/// Output is normalised to max |psi| = 1.
ModeProfile build_mode(const profile::ShearProfile& p,
                       const dispersion::EigenResult& eigen, double y_max,
                       int n_grid);

}  // namespace oswave::modes
