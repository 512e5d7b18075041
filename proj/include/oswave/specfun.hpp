#pragma once

#include "oswave/numerics.hpp"

namespace oswave::specfun {

/// Airy function family at one complex point. The primitives are normalised
/// to vanish as z -> +infinity along the positive real axis:
///   ai1(z) = -int_z^inf Ai,   ai2(z) = -int_z^inf ai1.
struct AiryBundle {
  Complex ai;
  Complex ai_prime;
  Complex ai1;
  Complex ai2;
  Complex bi;
  Complex bi_prime;
  Complex ci;  // -i*pi*(Ai + i*Bi)
};

/// Ai with its derivative and both primitives (no Bi work).
struct AiryPrimitives {
  Complex ai2;
  Complex ai1;
  Complex ai;
  Complex ai_prime;
};

inline constexpr double kAi0 = 0.355028053887817239260063186004;
inline constexpr double kAiPrime0 = -0.258819403792806798405183560189;
inline constexpr double kBi0 = 0.614926627446000735150922369094;
inline constexpr double kBiPrime0 = 0.448288357353826357914823710399;

AiryPrimitives airy_ai(Complex z);
AiryBundle airy_eval(Complex z);

struct TietjensValue {
  Complex z;
  Complex ti;
  Complex xi1;  // -e^{i pi/6} z
};

/// Ti(z) = Ai(xi1, 2) / (xi1 * Ai(xi1, 1)),  xi1 = -e^{i pi/6} z.
TietjensValue tietjens(Complex z);

struct TietjensRoot {
  double z0;
  Complex ti;
  Complex ti_prime;
};

/// Positive real root of Im Ti(z) = 0 in [1.5, 3.5] by bisection.
TietjensRoot tietjens_root(double tol = 1e-10);

}  // namespace oswave::specfun
