#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oswave/dispersion.hpp"
#include "oswave/errors.hpp"
#include "oswave/io.hpp"
#include "oswave/modes.hpp"
#include "oswave/oracle.hpp"
#include "oswave/profile.hpp"
#include "oswave/selfcheck.hpp"
#include "oswave/specfun.hpp"

namespace {

using namespace oswave;
using io::Json;

enum Exit { kOk = 0, kValidation = 2, kNumerical = 3 };

struct Common {
  std::string profile_path;
  std::string output;
};

unsigned worker_count() {
  if (const char* env = std::getenv("OSWAVE_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return unsigned(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs job(i) for i in [0, n) on a small pool; results land by index.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& job) {
  const unsigned workers = std::min<std::size_t>(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < n;) {
        try {
          job(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

profile::ShearProfile load(const Common& c) {
  return c.profile_path.empty() ? profile::exponential_profile()
                                : profile::load_profile(c.profile_path);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument("OutOfRange", what);
}

void check_nu(double nu) { require(nu > 0.0 && nu < 1.0, "nu must lie in (0, 1)"); }

void check_alpha(double alpha) {
  require(alpha > 0.0 && alpha < 0.5, "alpha must lie in (0, 0.5)");
}

/// CSV to the output target; the summary goes to stdout when the table went
/// to a file and to stderr otherwise.
void emit(const Common& c, const io::Table& t, const Json& summary) {
  io::write_output(c.output, io::to_csv(t));
  (c.output.empty() || c.output == "-" ? std::cerr : std::cout)
      << summary.dump() << std::endl;
}

void emit_json(const Common& c, const Json& j) {
  io::write_output(c.output, j.dump(2) + "\n");
}

Json eigen_json(const dispersion::EigenResult& r) {
  return Json{{"alpha", r.alpha},
              {"nu", r.nu},
              {"method", dispersion::to_string(r.method)},
              {"c", io::complex_json(r.c)},
              {"c_tilde", io::complex_json(r.c_tilde)},
              {"lambda", io::complex_json(r.lambda)},
              {"residual", r.residual},
              {"iterations", r.iterations},
              {"z", io::complex_json(r.z)},
              {"gamma", io::complex_json(r.gamma)}};
}

int cmd_tietjens(const Common& c, double zmin, double zmax, int n) {
  require(n >= 2, "n must be >= 2");
  require(zmax > zmin, "zmax must exceed zmin");
  io::Table t{{"z", "re_ti", "im_ti"}, {}};
  for (int k = 0; k < n; ++k) {
    const double z = zmin + (zmax - zmin) * k / (n - 1);
    const Complex ti = specfun::tietjens(z).ti;
    t.rows.push_back({z, ti.real(), ti.imag()});
  }
  const auto root = specfun::tietjens_root();
  emit(c, t,
       Json{{"z0", root.z0},
            {"ti", io::complex_json(root.ti)},
            {"ti_prime", io::complex_json(root.ti_prime)}});
  return kOk;
}

int cmd_eigen(const Common& c, double alpha, double nu, std::optional<double> sre,
              std::optional<double> sim, const std::string& method) {
  check_alpha(alpha);
  check_nu(nu);
  const auto m = dispersion::method_from_string(method);
  require(m != dispersion::Method::Shoot, "use the shoot subcommand for shooting");
  const auto p = load(c);
  dispersion::EigenResult r;
  if (sre || sim)
    r = dispersion::solve_eigenvalue(p, alpha, nu, Complex(sre.value_or(0.0), sim.value_or(0.0)), m);
  else
    r = dispersion::continued_eigenvalue(p, alpha, nu, m);
  emit_json(c, eigen_json(r));
  return kOk;
}

int cmd_branch(const Common& c, const std::vector<double>& nus, std::optional<double> amin,
               std::optional<double> amax, int n, const std::string& method, bool par) {
  require(!nus.empty(), "at least one nu is required");
  for (double nu : nus) check_nu(nu);
  require(n >= 2, "n must be >= 2");
  const auto m = dispersion::method_from_string(method);
  require(m != dispersion::Method::Shoot, "branches use the asymptotic residual");
  const auto p = load(c);
  std::vector<dispersion::Branch> out(nus.size());
  auto job = [&](std::size_t i) {
    const auto [lo, hi] = dispersion::default_scan(nus[i]);
    const double a0 = amin.value_or(lo), a1 = amax.value_or(hi);
    check_alpha(a0);
    check_alpha(a1);
    require(a1 > a0, "alpha-max must exceed alpha-min");
    out[i] = dispersion::trace_branch(p, nus[i], a0, a1, n, m);
  };
  if (par)
    parallel_for(nus.size(), job);
  else
    for (std::size_t i = 0; i < nus.size(); ++i) job(i);

  const bool multi = nus.size() > 1;
  io::Table t;
  if (multi) t.header.push_back("nu");
  for (const char* h : {"alpha", "re_c", "im_c", "re_lambda", "im_lambda"}) t.header.push_back(h);
  Json breaks = Json::array();
  for (std::size_t i = 0; i < nus.size(); ++i) {
    for (const auto& pt : out[i].points) {
      std::vector<double> row;
      if (multi) row.push_back(nus[i]);
      row.insert(row.end(), {pt.alpha, pt.c.real(), pt.c.imag(), pt.lambda.real(), pt.lambda.imag()});
      t.rows.push_back(row);
    }
    breaks.push_back(out[i].break_alpha ? Json(*out[i].break_alpha) : Json(nullptr));
  }
  emit(c, t, Json{{"points", t.rows.size()}, {"break_alpha", breaks}});
  for (const auto& b : out)
    if (b.break_alpha)
      throw NumericalError(ErrorKind::BranchBreak, b.break_reason);
  return kOk;
}

int cmd_marginal(const Common& c, const std::vector<double>& nus, const std::string& method) {
  require(!nus.empty(), "at least one nu is required");
  for (double nu : nus) require(nu >= 1e-10 && nu <= 1e-3, "nu must lie in [1e-10, 1e-3]");
  const auto m = dispersion::method_from_string(method);
  require(m != dispersion::Method::Shoot, "marginal curves use the asymptotic residual");
  const auto p = load(c);
  std::vector<dispersion::MarginalPair> out(nus.size());
  parallel_for(nus.size(), [&](std::size_t i) { out[i] = dispersion::marginal_curves(p, nus[i], m); });
  io::Table t{{"nu", "alpha_minus", "alpha_plus", "re_c_minus", "im_c_minus", "re_c_plus",
               "im_c_plus"},
              {}};
  for (const auto& r : out)
    t.rows.push_back({r.nu, r.alpha_minus, r.alpha_plus, r.c_minus.real(), r.c_minus.imag(),
                      r.c_plus.real(), r.c_plus.imag()});
  Json s = Json::array();
  for (const auto& r : out)
    s.push_back(Json{{"nu", r.nu},
                     {"alpha_minus", r.alpha_minus},
                     {"alpha_plus", r.alpha_plus},
                     {"lower_scaled", std::pow(r.alpha_minus, 4) / r.nu},
                     {"c_over_alpha_minus", r.c_minus.real() / r.alpha_minus}});
  emit(c, t, Json{{"marginal", s}});
  return kOk;
}

int cmd_growth(const Common& c, const std::vector<double>& nus, int n, const std::string& method) {
  require(!nus.empty(), "at least one nu is required");
  for (double nu : nus) check_nu(nu);
  require(n >= 8, "n must be >= 8");
  const auto m = dispersion::method_from_string(method);
  require(m != dispersion::Method::Shoot, "growth curves use the asymptotic residual");
  const auto p = load(c);
  std::vector<dispersion::GrowthCurve> out(nus.size());
  parallel_for(nus.size(), [&](std::size_t i) { out[i] = dispersion::growth_curve(p, nus[i], n, m); });
  const bool multi = nus.size() > 1;
  io::Table t;
  if (multi) t.header.push_back("nu");
  for (const char* h : {"alpha_scaled", "re_lambda", "im_c", "re_c"}) t.header.push_back(h);
  Json s = Json::array();
  for (const auto& g : out) {
    for (const auto& x : g.samples) {
      std::vector<double> row;
      if (multi) row.push_back(g.nu);
      row.insert(row.end(), {x.alpha_scaled, x.re_lambda, x.c.imag(), x.c.real()});
      t.rows.push_back(row);
    }
    s.push_back(Json{{"nu", g.nu},
                     {"argmax_alpha_scaled", g.argmax_alpha_scaled},
                     {"max_re_lambda", g.max_re_lambda}});
  }
  emit(c, t, multi ? Json{{"curves", s}} : s[0]);
  return kOk;
}

int cmd_mode(const Common& c, double alpha, double nu, double y_max, int n) {
  check_alpha(alpha);
  check_nu(nu);
  require(n >= 64, "n must be >= 64");
  require(y_max > 0.0, "ymax must be positive");
  const auto p = load(c);
  const auto e = dispersion::continued_eigenvalue(p, alpha, nu);
  const auto md = modes::build_mode(p, e, y_max, n);
  io::Table t{{"y", "re_psi", "im_psi", "re_u", "im_u", "re_v", "im_v", "re_omega", "im_omega"}, {}};
  for (std::size_t j = 0; j < md.y_grid.size(); ++j)
    t.rows.push_back({md.y_grid[j], md.psi[j].real(), md.psi[j].imag(), md.u[j].real(),
                      md.u[j].imag(), md.v[j].real(), md.v[j].imag(), md.omega[j].real(),
                      md.omega[j].imag()});
  emit(c, t,
       Json{{"c", io::complex_json(md.c)},
            {"amplitude", io::complex_json(md.amplitude)},
            {"gamma", io::complex_json(md.gamma)},
            {"y_c", io::complex_json(md.y_c)},
            {"y_match", md.y_match},
            {"scale", md.scale}});
  return kOk;
}

int cmd_shoot(const Common& c, double alpha, double nu, std::optional<double> sre,
              std::optional<double> sim) {
  require(alpha > 0.0, "alpha must be positive");
  check_nu(nu);
  const auto p = load(c);
  Json j;
  Complex seed;
  if (sre || sim) {
    seed = Complex(sre.value_or(0.0), sim.value_or(0.0));
  } else {
    const auto e = dispersion::continued_eigenvalue(p, alpha, nu);
    seed = e.c;
    j["asymptotic"] = eigen_json(e);
  }
  const auto r = oracle::shoot_eigenvalue(p, alpha, nu, seed);
  j["alpha"] = alpha;
  j["nu"] = nu;
  j["seed"] = io::complex_json(seed);
  j["c"] = io::complex_json(r.c);
  j["lambda"] = io::complex_json(-kI * alpha * r.c);
  j["determinant_residual"] = r.determinant_residual;
  j["mu_f"] = io::complex_json(r.mu_f);
  j["y_max_used"] = r.y_max_used;
  j["iterations"] = r.iterations;
  j["relative_difference"] = std::abs(r.c - seed) / std::abs(r.c);
  emit_json(c, j);
  return kOk;
}

int cmd_evolve(const Common& c, double alpha, double nu, double t_final, int n_y,
               double y_max, double dt) {
  require(alpha > 0.0, "alpha must be positive");
  require(nu >= 0.0 && nu < 1.0, "nu must lie in [0, 1)");
  const auto p = load(c);
  oracle::EvolveSettings s;
  s.dt = dt;
  const auto r = oracle::evolve_semigroup(p, alpha, nu, t_final, n_y, y_max, s);
  io::Table t{{"t", "omega_norm"}, {}};
  for (std::size_t k = 0; k < r.times.size(); ++k) t.rows.push_back({r.times[k], r.omega_norm[k]});
  Json j{{"fitted_rate", r.fitted_rate}, {"fit_r2", r.fit_r2}, {"cfl_warning", r.cfl_warning}};
  j["predicted_rate"] = r.predicted_available ? Json(r.predicted_rate) : Json(nullptr);
  if (r.cfl_warning)
    std::cerr << Json{{"warning", "CFLWarning"}, {"dt_alpha_uplus", dt * alpha * p.uplus()}}.dump()
              << std::endl;
  emit(c, t, j);
  return kOk;
}

int cmd_selfcheck(const Common& c) {
  const auto results = selfcheck::run_all();
  std::ostringstream os;
  selfcheck::print_table(os, results);
  io::write_output(c.output, os.str());
  const bool ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  return ok ? kOk : kNumerical;
}

void error_json(const std::string& kind, const std::string& code, const std::string& msg) {
  std::cerr << Json{{"error", kind}, {"code", code}, {"message", msg}}.dump() << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Long-wave viscous instability of concave shear layers"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--profile", common.profile_path, "profile JSON file")->check(CLI::ExistingFile);
  app.add_option("-o,--output", common.output, "output file (default stdout)");

  double nu = 1e-6, alpha = 0.0, zmin = 0.5, zmax = 10.0, y_max = 60.0, t_final = 2000.0, dt = 1.0;
  double ev_ymax = 40.0;
  int n = 100, n_grid = 2000, n_y = 2000;
  std::vector<double> nus{1e-6};
  std::optional<double> seed_re, seed_im, amin, amax;
  std::string method = "expansion";
  bool par = false;

  auto* tj = app.add_subcommand("tietjens", "tabulate Ti(z) on a real grid");
  tj->add_option("--zmin", zmin);
  tj->add_option("--zmax", zmax);
  tj->add_option("--n", n);

  auto* eg = app.add_subcommand("eigen", "solve the dispersion relation at one alpha");
  eg->add_option("--alpha", alpha)->required();
  eg->add_option("--nu", nu);
  eg->add_option("--seed-re", seed_re);
  eg->add_option("--seed-im", seed_im);
  eg->add_option("--method", method)->check(CLI::IsMember({"expansion", "miles"}));

  auto* br = app.add_subcommand("branch", "trace c(alpha) by continuation");
  br->add_option("--nu", nus);
  br->add_option("--alpha-min", amin);
  br->add_option("--alpha-max", amax);
  br->add_option("--n", n);
  br->add_option("--method", method)->check(CLI::IsMember({"expansion", "miles"}));
  br->add_flag("--par", par, "one worker per nu");

  auto* mg = app.add_subcommand("marginal", "lower and upper marginal wavenumbers");
  mg->add_option("--nu", nus);
  mg->add_option("--method", method)->check(CLI::IsMember({"expansion", "miles"}));

  auto* gr = app.add_subcommand("growth", "growth rate along the branch");
  gr->add_option("--nu", nus);
  gr->add_option("--n", n);
  gr->add_option("--method", method)->check(CLI::IsMember({"expansion", "miles"}));

  auto* md = app.add_subcommand("mode", "unstable mode profile");
  md->add_option("--alpha", alpha)->required();
  md->add_option("--nu", nu);
  md->add_option("--ymax", y_max);
  md->add_option("--n", n_grid);

  auto* sh = app.add_subcommand("shoot", "compound-matrix shooting eigenvalue");
  sh->add_option("--alpha", alpha)->required();
  sh->add_option("--nu", nu);
  sh->add_option("--seed-re", seed_re);
  sh->add_option("--seed-im", seed_im);

  auto* ev = app.add_subcommand("evolve", "Crank-Nicolson linearised evolution");
  ev->add_option("--alpha", alpha)->required();
  ev->add_option("--nu", nu);
  ev->add_option("--tfinal", t_final);
  ev->add_option("--ny", n_y);
  ev->add_option("--ymax", ev_ymax);
  ev->add_option("--dt", dt);

  auto* sc = app.add_subcommand("selfcheck", "run the invariant suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Error& e) {
    error_json("ValidationError", e.get_name(), e.what());
    return kValidation;
  }

  try {
    if (*tj) return cmd_tietjens(common, zmin, zmax, n);
    if (*eg) return cmd_eigen(common, alpha, nu, seed_re, seed_im, method);
    if (*br) return cmd_branch(common, nus, amin, amax, n, method, par);
    if (*mg) return cmd_marginal(common, nus, method);
    if (*gr) return cmd_growth(common, nus, n, method);
    if (*md) return cmd_mode(common, alpha, nu, y_max, n_grid);
    if (*sh) return cmd_shoot(common, alpha, nu, seed_re, seed_im);
    if (*ev) return cmd_evolve(common, alpha, nu, t_final, n_y, ev_ymax, dt);
    if (*sc) return cmd_selfcheck(common);
  } catch (const InvalidArgument& e) {
    error_json("ValidationError", e.code(), e.what());
    return kValidation;
  } catch (const NumericalError& e) {
    error_json("NumericalError", std::string(to_string(e.kind())), e.what());
    return kNumerical;
  } catch (const std::exception& e) {
    error_json("NumericalError", "Unexpected", e.what());
    return kNumerical;
  }
  return kValidation;
}
