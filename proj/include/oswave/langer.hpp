#pragma once

#include "oswave/numerics.hpp"
#include "oswave/profile.hpp"

namespace oswave::langer {

using profile::ShearProfile;
using profile::WaveContext;

/// g(y) = y_c + (3 / (2 sqrt(U'_c)) int_{y_c}^{y} sqrt(U - c))^{2/3}.
Complex langer_g(const ShearProfile& p, const WaveContext& ctx, Complex y,
                 double rel_tol = 1e-12);

/// g'(y) from the Langer identity U'_c (g - y_c) g'^2 = U - c.
Complex langer_g_prime(const ShearProfile& p, const WaveContext& ctx,
                       Complex y);

/// f = g'^{-1/2}.
Complex langer_f(const ShearProfile& p, const WaveContext& ctx, Complex y);

/// Ai_a(y) = g'(y)^{-1/2} Ai(gamma (g(y) - y_c)).
Complex modified_airy(const ShearProfile& p, const WaveContext& ctx,
                      Complex y);

/// True when |Im y| exceeds the critical-layer width 1/|gamma|.
bool outside_pencil(const WaveContext& ctx, Complex y);

struct FastBoundary {
  Complex phi_f0;   // Ai(-gamma y_c, 2)
  Complex dphi_f0;  // gamma Ai(-gamma y_c, 1)
  Complex ratio;    // dphi_f0 / phi_f0
};

/// Throws ArgumentOutOfRange if |gamma y_c| > 50.
FastBoundary fast_boundary_values(const WaveContext& ctx);

}  // namespace oswave::langer
