#include "oswave/profile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "oswave/errors.hpp"

namespace oswave::profile {

ShearProfile::ShearProfile(double uplus, std::vector<Term> terms)
    : uplus_(uplus), terms_(std::move(terms)) {
  if (terms_.empty()) throw InvalidArgument("EmptySpec", "profile has no terms");
  beta_ = terms_.front().b;
  for (const auto& t : terms_) beta_ = std::min(beta_, t.b);
}

Complex ShearProfile::eval(Complex y, int order) const {
  if (order < 0 || order > 3)
    throw InvalidArgument("profile derivative order must be 0..3");
  Complex s = 0.0;
  for (const auto& t : terms_) {
    const double f = std::pow(-t.b, order);
    s += t.a * f * std::exp(-t.b * y);
  }
  return order == 0 ? uplus_ - s : -s;
}

std::vector<Complex> ShearProfile::taylor(Complex y0, int n) const {
  std::vector<Complex> out(std::max(n, 0), Complex{});
  for (const auto& t : terms_) {
    Complex term = -t.a * std::exp(-t.b * y0);
    for (int k = 0; k < n; ++k) {
      out[k] += term;
      term *= -t.b / double(k + 1);
    }
  }
  if (n > 0) out[0] += uplus_;
  return out;
}

ShearProfile make_profile(std::span<const Term> spec, double uplus) {
  if (spec.empty()) throw InvalidArgument("EmptySpec", "profile has no terms");
  if (!(uplus > 0.0))
    throw InvalidArgument("NonPositiveCoefficient", "uplus must be positive");
  double total = 0.0;
  for (const auto& t : spec) {
    if (!(t.a > 0.0) || !(t.b > 0.0) || !std::isfinite(t.a) ||
        !std::isfinite(t.b))
      throw InvalidArgument("NonPositiveCoefficient",
                            "profile coefficients must be positive");
    total += t.a;
  }
  std::vector<Term> terms;
  for (const auto& t : spec) terms.push_back({t.a * uplus / total, t.b});
  return ShearProfile(uplus, std::move(terms));
}

ShearProfile exponential_profile() {
  const Term t{1.0, 1.0};
  return make_profile(std::span<const Term>(&t, 1), 1.0);
}

ShearProfile profile_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("MalformedProfile", e.what());
  }
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    throw InvalidArgument("MalformedProfile", "profile needs a terms array");
  const double uplus = j.value("uplus", 1.0);
  std::vector<Term> terms;
  for (const auto& t : j["terms"]) {
    if (!t.contains("a") || !t.contains("b") || !t["a"].is_number() ||
        !t["b"].is_number())
      throw InvalidArgument("MalformedProfile", "each term needs numeric a, b");
    terms.push_back({t["a"].get<double>(), t["b"].get<double>()});
  }
  return make_profile(terms, uplus);
}

ShearProfile load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("MalformedProfile", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return profile_from_json(ss.str());
}

std::string profile_to_json(const ShearProfile& p) {
  nlohmann::json j;
  j["uplus"] = p.uplus();
  j["terms"] = nlohmann::json::array();
  for (const auto& t : p.terms()) j["terms"].push_back({{"a", t.a}, {"b", t.b}});
  return j.dump();
}

Complex eval(const ShearProfile& p, Complex y, int order) {
  return p.eval(y, order);
}

Complex critical_layer(const ShearProfile& p, Complex c_tilde) {
  Complex y = c_tilde / p.wall_shear();
  for (int it = 0; it < 50; ++it) {
    const Complex f = p.eval(y) - c_tilde;
    const Complex step = f / p.eval(y, 1);
    y -= step;
    if (!std::isfinite(y.real()) || !std::isfinite(y.imag())) break;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(y))) {
      if (std::abs(p.eval(y) - c_tilde) <= 1e-12) return y;
    }
  }
  throw NumericalError(ErrorKind::NewtonDivergence,
                       "critical layer Newton iteration did not converge");
}

Complex physical_speed(double alpha, double nu, Complex c_tilde) {
  const Complex eps = nu / (kI * alpha);
  return c_tilde + 2.0 * eps * alpha * alpha;
}

Complex modified_speed(double alpha, double nu, Complex c) {
  const Complex eps = nu / (kI * alpha);
  return c - 2.0 * eps * alpha * alpha;
}

WaveContext make_context_tilde(const ShearProfile& p, double alpha, double nu,
                               Complex c_tilde) {
  WaveContext w{};
  w.alpha = alpha;
  w.nu = nu;
  w.epsilon = nu / (kI * alpha);
  w.c_tilde = c_tilde;
  w.c = c_tilde + 2.0 * w.epsilon * alpha * alpha;
  w.y_c = critical_layer(p, c_tilde);
  w.u1_c = p.eval(w.y_c, 1);
  w.u2_c = p.eval(w.y_c, 2);
  w.gamma = std::pow(kI * alpha * w.u1_c / nu, 1.0 / 3.0);
  w.xi1 = -w.gamma * w.y_c;
  w.z = w.gamma * w.y_c * std::polar(1.0, -kPi / 6.0);
  w.Lambda = p.wall_shear() * w.y_c / c_tilde - 1.0;
  w.lambda = -kI * alpha * w.c;
  return w;
}

WaveContext make_context(const ShearProfile& p, double alpha, double nu,
                         Complex c) {
  return make_context_tilde(p, alpha, nu, modified_speed(alpha, nu, c));
}

}  // namespace oswave::profile
