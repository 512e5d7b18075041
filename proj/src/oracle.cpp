#include "oswave/oracle.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>

#include "oswave/dispersion.hpp"
#include "oswave/errors.hpp"

namespace oswave::oracle {

namespace {

// Compound component order: (0,1) (0,2) (0,3) (1,2) (1,3) (2,3).
constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

int pair_index(int i, int j) {
  for (int k = 0; k < 6; ++k)
    if (kPairs[k][0] == i && kPairs[k][1] == j) return k;
  return -1;
}

/// Entry (i, j) of the antisymmetric matrix built from compound values.
Complex wedge(std::span<const Complex> s, int i, int j) {
  if (i == j) return 0.0;
  if (i < j) return s[pair_index(i, j)];
  return -s[pair_index(j, i)];
}

}  // namespace

Complex fast_rate(const ShearProfile& p, double alpha, double nu, Complex c) {
  Complex mu = std::sqrt(alpha * alpha + kI * alpha / nu * (p.uplus() - c));
  if (mu.real() < 0.0) mu = -mu;
  return mu;
}

ShootDeterminant shoot_determinant(const ShearProfile& p, double alpha,
                                   double nu, Complex c,
                                   const ShootSettings& s) {
  const double a = std::abs(alpha);
  const double a2 = alpha * alpha;
  const double y_max = s.y_max > 0.0 ? s.y_max : std::max(40.0, 10.0 / a);
  const Complex iar = kI * alpha / nu;
  const Complex mu = fast_rate(p, alpha, nu, c);

  auto rhs = [&](Complex y, std::span<const Complex> st, std::span<Complex> ds) {
    const Complex u = p.eval(y) - c;
    const Complex upp = p.eval(y, 2);
    // Companion matrix of psi'''' = A30 psi + A32 psi''.
    const Complex A30 = -a2 * a2 - iar * (u * a2 + upp);
    const Complex A32 = 2.0 * a2 + iar * u;
    // Scalar shift removing the local growth of the dominant pair; it
    // rescales every component equally and leaves D unchanged.
    Complex mloc = std::sqrt(a2 + iar * u);
    if (mloc.real() < 0.0) mloc = -mloc;
    const Complex shift = a + mloc;
    auto A = [&](int i, int k) -> Complex {
      if (i < 3) return k == i + 1 ? Complex(1.0) : Complex(0.0);
      if (k == 0) return A30;
      if (k == 2) return A32;
      return 0.0;
    };
    for (int m = 0; m < 6; ++m) {
      const int i = kPairs[m][0], j = kPairs[m][1];
      Complex v = 0.0;
      for (int k = 0; k < 4; ++k) {
        const Complex aik = A(i, k), ajk = A(j, k);
        if (aik != Complex{}) v += aik * wedge(st, k, j);
        if (ajk != Complex{}) v += ajk * wedge(st, i, k);
      }
      ds[m] = v + shift * st[m];
    }
  };

  const std::array<Complex, 4> slow{1.0, -a, a2, -a2 * a};
  const std::array<Complex, 4> fast{1.0, -mu, mu * mu, -mu * mu * mu};
  ComplexVector init(6);
  double scale = 0.0;
  for (int m = 0; m < 6; ++m) {
    const int i = kPairs[m][0], j = kPairs[m][1];
    init[m] = slow[i] * fast[j] - slow[j] * fast[i];
    scale = std::max(scale, std::abs(init[m]));
  }
  for (auto& v : init) v /= scale;

  auto renorm = [](Complex, std::span<Complex> st) {
    double m = 0.0;
    for (const auto& v : st) m = std::max(m, std::abs(v));
    if (m > 0.0)
      for (auto& v : st) v /= m;
  };
  numerics::OdeSettings os;
  os.rel_tol = s.rel_tol;
  os.abs_tol = s.abs_tol;
  os.max_steps = s.max_steps;
  ComplexVector out;
  try {
    out = numerics::integrate_ode(
        rhs, numerics::Contour::segment(y_max, 0.0), init, os, renorm);
  } catch (const NumericalError& e) {
    if (e.kind() == ErrorKind::StepLimitExceeded)
      throw NumericalError(ErrorKind::StiffnessFailure, e.what());
    throw;
  }
  ShootDeterminant d;
  std::copy(out.begin(), out.end(), d.compound.begin());
  double n2 = 0.0;
  for (const auto& v : out) n2 += std::norm(v);
  d.value = out[0] / std::sqrt(n2);
  d.mu_f = mu;
  d.y_max = y_max;
  return d;
}

ShootResult shoot_eigenvalue(const ShearProfile& p, double alpha, double nu,
                             Complex c_seed, const ShootSettings& s) {
  auto D = [&](Complex c) { return shoot_determinant(p, alpha, nu, c, s).value; };
  // The normalised minor is analytic up to a positive factor, so Newton is
  // run on (Re D, Im D) with a finite-difference Jacobian.
  Complex c = c_seed;
  Complex f = D(c);
  const Complex f_seed = f;
  int it = 0;
  bool done = false;
  for (; it < s.max_iterations && !done; ++it) {
    const double h = 1e-7 * std::abs(c);
    const Complex fx = (D(c + h) - D(c - h)) / (2.0 * h);
    const Complex fy = (D(c + kI * h) - D(c - kI * h)) / (2.0 * h);
    const double det = fx.real() * fy.imag() - fy.real() * fx.imag();
    if (!(std::abs(det) > 0.0) || !std::isfinite(det))
      throw NumericalError(ErrorKind::NewtonDivergence,
                           "singular shooting Jacobian");
    const double dx = -(fy.imag() * f.real() - fy.real() * f.imag()) / det;
    const double dy = -(-fx.imag() * f.real() + fx.real() * f.imag()) / det;
    const Complex step(dx, dy);
    double damp = 1.0;
    Complex trial = c + step, f_trial = D(trial);
    for (int k = 0; k < 8 && std::abs(f_trial) >= std::abs(f); ++k) {
      damp *= 0.5;
      trial = c + damp * step;
      f_trial = D(trial);
    }
    c = trial;
    f = f_trial;
    if (std::abs(c) > 10.0 * (std::abs(c_seed) + 1.0))
      throw NumericalError(ErrorKind::NewtonDivergence,
                           "shooting iterate left the search region");
    done = std::abs(damp * step) <= 1e-12 * std::abs(c) ||
           std::abs(f) <= 1e-14;
  }
  if (!done)
    throw NumericalError(ErrorKind::NewtonDivergence,
                         "shooting Newton iteration limit reached");
  const auto fin = shoot_determinant(p, alpha, nu, c, s);
  ShootResult r;
  r.c = c;
  r.determinant_residual = std::abs(fin.value) / std::max(std::abs(f_seed), 1e-300);
  r.mu_f = fin.mu_f;
  r.y_max_used = fin.y_max;
  r.iterations = it;
  r.seed_determinant = f_seed;
  return r;
}

EvolveResult evolve_semigroup(const ShearProfile& p, double alpha, double nu,
                              double t_final, int n_y, double y_max,
                              const EvolveSettings& s) {
  if (n_y < 1000) throw InvalidArgument("OutOfRange", "n_y must be >= 1000");
  if (y_max < 40.0) throw InvalidArgument("OutOfRange", "y_max must be >= 40");
  if (!(t_final > 0.0) || !(s.dt > 0.0))
    throw InvalidArgument("OutOfRange", "t_final and dt must be positive");
  using SpMat = Eigen::SparseMatrix<Complex>;
  using Trip = Eigen::Triplet<Complex>;

  const int N = n_y;
  const double h = y_max / N;
  const double h2 = h * h;
  const double a2 = alpha * alpha;
  const bool viscous = nu > 0.0;
  // Unknown layout: omega_j -> 2j (j = 0..N-1), psi_j -> 2j - 1 (j = 1..N-1).
  const int n = 2 * N - 1;
  auto W = [](int j) { return 2 * j; };
  auto P = [](int j) { return 2 * j - 1; };

  std::vector<Complex> U(N + 1), Upp(N + 1);
  for (int j = 0; j <= N; ++j) {
    U[j] = p.eval(j * h);
    Upp[j] = p.eval(j * h, 2);
  }

  std::vector<Trip> lhs, rhs;
  const double half = 0.5 * s.dt;
  auto add_evolution = [&](int j) {
    const int r = W(j);
    const Complex diag = -kI * alpha * U[j] - nu * a2 - 2.0 * nu / h2;
    lhs.emplace_back(r, W(j), 1.0 - half * diag);
    rhs.emplace_back(r, W(j), 1.0 + half * diag);
    if (viscous) {
      if (j + 1 < N) {
        lhs.emplace_back(r, W(j + 1), -half * nu / h2);
        rhs.emplace_back(r, W(j + 1), half * nu / h2);
      }
      if (j - 1 >= 0) {
        lhs.emplace_back(r, W(j - 1), -half * nu / h2);
        rhs.emplace_back(r, W(j - 1), half * nu / h2);
      }
    }
    if (j >= 1) {
      const Complex cpl = -kI * alpha * Upp[j];
      lhs.emplace_back(r, P(j), -half * cpl);
      rhs.emplace_back(r, P(j), half * cpl);
    }
  };
  if (viscous) {
    // psi'(0) = 0 with psi(0) = 0: (4 psi_1 - psi_2) / (2h) = 0.
    lhs.emplace_back(W(0), P(1), 4.0 / h2);
    if (N > 2) lhs.emplace_back(W(0), P(2), -1.0 / h2);
  } else {
    add_evolution(0);
  }
  for (int j = 1; j < N; ++j) {
    add_evolution(j);
    const int r = P(j);
    lhs.emplace_back(r, P(j), -2.0 / h2 - a2);
    if (j + 1 < N) lhs.emplace_back(r, P(j + 1), 1.0 / h2);
    if (j - 1 >= 1) lhs.emplace_back(r, P(j - 1), 1.0 / h2);
    lhs.emplace_back(r, W(j), 1.0);
  }
  SpMat A(n, n), B(n, n);
  A.setFromTriplets(lhs.begin(), lhs.end());
  B.setFromTriplets(rhs.begin(), rhs.end());
  A.makeCompressed();
  Eigen::SparseLU<SpMat> lu;
  lu.compute(A);
  if (lu.info() != Eigen::Success)
    throw NumericalError(ErrorKind::SingularSolve,
                         "Crank-Nicolson matrix factorisation failed");

  // Initial vorticity bump; psi from the Dirichlet Helmholtz problem.
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(n);
  {
    std::vector<Trip> ht;
    Eigen::VectorXcd b(N - 1);
    for (int j = 1; j < N; ++j) {
      ht.emplace_back(j - 1, j - 1, -2.0 / h2 - a2);
      if (j + 1 < N) ht.emplace_back(j - 1, j, 1.0 / h2);
      if (j > 1) ht.emplace_back(j - 1, j - 2, 1.0 / h2);
    }
    for (int j = 0; j < N; ++j) {
      const double d = (j * h - s.bump_center) / s.bump_width;
      x[W(j)] = std::exp(-d * d);
      if (j >= 1) b[j - 1] = -x[W(j)];
    }
    SpMat H(N - 1, N - 1);
    H.setFromTriplets(ht.begin(), ht.end());
    Eigen::SparseLU<SpMat> hl;
    hl.compute(H);
    const Eigen::VectorXcd psi = hl.solve(b);
    for (int j = 1; j < N; ++j) x[P(j)] = psi[j - 1];
  }

  // With no-slip the wall vorticity acts as the multiplier of the psi'(0)
  // constraint and alternates sign between steps, so it is left out.
  auto norm = [&](const Eigen::VectorXcd& v) {
    double acc = 0.0;
    for (int j = viscous ? 1 : 0; j < N; ++j)
      acc += std::norm(v[W(j)]) * (j == 0 ? 0.5 * h : h);
    return std::sqrt(acc);
  };

  EvolveResult r;
  r.cfl_warning = s.dt * std::abs(alpha) * p.uplus() > 0.5;
  const long steps = std::lround(std::ceil(t_final / s.dt));
  r.times.push_back(0.0);
  r.omega_norm.push_back(norm(x));
  for (long k = 1; k <= steps; ++k) {
    const Eigen::VectorXcd b = B * x;
    x = lu.solve(b);
    if (lu.info() != Eigen::Success)
      throw NumericalError(ErrorKind::SingularSolve, "Crank-Nicolson solve failed");
    if (k % s.sample_every == 0 || k == steps) {
      const double nv = norm(x);
      if (!std::isfinite(nv))
        throw NumericalError(ErrorKind::NonFiniteState,
                             "vorticity norm became non-finite");
      r.times.push_back(k * s.dt);
      r.omega_norm.push_back(nv);
    }
  }

  // Least-squares slope of log ||omega|| over the second half.
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  int m = 0;
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    if (r.times[k] < 0.5 * t_final) continue;
    const double tx = r.times[k], ty = std::log(r.omega_norm[k]);
    sx += tx;
    sy += ty;
    sxx += tx * tx;
    sxy += tx * ty;
    syy += ty * ty;
    ++m;
  }
  if (m >= 2) {
    const double vx = sxx - sx * sx / m;
    const double vy = syy - sy * sy / m;
    const double cxy = sxy - sx * sy / m;
    r.fitted_rate = cxy / vx;
    r.fit_r2 = vy > 0.0 ? cxy * cxy / (vx * vy) : 1.0;
  }

  if (viscous) {
    try {
      const Complex c = dispersion::continued_eigenvalue(p, alpha, nu).c;
      r.predicted_rate = alpha * c.imag();
      r.predicted_available = true;
    } catch (const std::exception&) {
      r.predicted_available = false;
    }
  }
  return r;
}

}  // namespace oswave::oracle
