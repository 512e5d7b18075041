#pragma once

#include <span>
#include <string>
#include <vector>

#include "oswave/numerics.hpp"

namespace oswave::profile {

struct Term {
  double a;
  double b;
};

/// U(y) = uplus - sum_k a_k exp(-b_k y), with sum_k a_k = uplus.
class ShearProfile {
 public:
  ShearProfile(double uplus, std::vector<Term> terms);

  double uplus() const { return uplus_; }
  const std::vector<Term>& terms() const { return terms_; }
  double beta() const { return beta_; }

  /// d^order U / dy^order at complex y.
  Complex eval(Complex y, int order = 0) const;
  /// Taylor coefficients U^(k)(y0)/k! for k = 0..n-1.
  std::vector<Complex> taylor(Complex y0, int n) const;

  double wall_shear() const { return eval(0.0, 1).real(); }
  double wall_curvature() const { return eval(0.0, 2).real(); }

 private:
  double uplus_;
  std::vector<Term> terms_;
  double beta_;
};

/// Validates and normalises a profile spec so that sum a_k = uplus.
/// Throws InvalidArgument with code EmptySpec or NonPositiveCoefficient.
ShearProfile make_profile(std::span<const Term> spec, double uplus);

/// U = 1 - exp(-y).
ShearProfile exponential_profile();

/// Parses {"uplus": u, "terms": [{"a": .., "b": ..}, ...]}.
ShearProfile profile_from_json(const std::string& text);
ShearProfile load_profile(const std::string& path);
std::string profile_to_json(const ShearProfile& p);

Complex eval(const ShearProfile& p, Complex y, int order = 0);

/// Root of U(y) = c_tilde continued from y = 0 at c_tilde = 0.
Complex critical_layer(const ShearProfile& p, Complex c_tilde);

/// Derived quantities for one (alpha, nu, c).
struct WaveContext {
  double alpha;
  double nu;
  Complex c;        // physical phase speed
  Complex epsilon;  // nu / (i alpha)
  Complex c_tilde;  // c - 2 epsilon alpha^2
  Complex y_c;      // U(y_c) = c_tilde
  Complex u1_c;     // U'(y_c)
  Complex u2_c;     // U''(y_c)
  Complex gamma;    // (i alpha U'(y_c) / nu)^{1/3}
  Complex z;        // Tietjens argument, -e^{i pi/6} z = -gamma y_c
  Complex xi1;      // -gamma y_c
  Complex Lambda;   // U'(0) y_c / c_tilde - 1
  Complex lambda;   // -i alpha c
};

WaveContext make_context(const ShearProfile& p, double alpha, double nu,
                         Complex c);
WaveContext make_context_tilde(const ShearProfile& p, double alpha, double nu,
                               Complex c_tilde);

/// c = c_tilde + 2 epsilon alpha^2.
Complex physical_speed(double alpha, double nu, Complex c_tilde);
Complex modified_speed(double alpha, double nu, Complex c);

}  // namespace oswave::profile
