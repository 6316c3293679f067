#include "coulombgas/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include "coulombgas/expansion.hpp"
#include "coulombgas/free_energy.hpp"
#include "coulombgas/measure.hpp"
#include "coulombgas/norms.hpp"
#include "coulombgas/specfun.hpp"

namespace coulombgas::verify {

namespace {

using norms::ChargedEnsemble;
using norms::Kind;

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// Exact functionals of the spherical background measure, used where the
// checks target the coefficient algebra rather than the quadrature layer.
measure::MeasureFunctionals spherical_exact_functionals() {
  return {0.5, -2.0, 0.0, 1.0, 1.0, -2.0};
}

constexpr double kCharges[3] = {0.0, 0.5, 1.7};
constexpr Kind kKinds[2] = {Kind::Determinantal, Kind::Pfaffian};

CriterionResult criterion_norm_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto m = measure::spherical();
  const int N = 64;
  double worst = 0.0;
  for (double alpha : kCharges)
    for (double c : kCharges)
      for (Kind kind : kKinds) {
        const ChargedEnsemble e(m, N, alpha, c, kind);
        for (int j = 0; j < e.norm_index_count(); ++j) {
          const double got = norms::log_norm(e, j).log_value;
          const double want =
              free_energy::log_norm_spherical_closed_form(N, alpha, c, kind, j);
          const double rel =
              std::abs(got - want) / std::max(1.0, std::abs(want));
          worst = std::max(worst, rel);
        }
      }
  const double elapsed = seconds_since(t0);
  const bool ok = worst <= 1e-10 && elapsed <= 10.0;
  return {1, "quadrature norms vs gamma-ratio closed form (N=64)", ok,
          fmt("max rel err %.3g, %.2fs", worst, elapsed)};
}

CriterionResult criterion_partition_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto m = measure::spherical();
  std::vector<int> sizes;
  for (int N = 1; N <= 32; ++N) sizes.push_back(N);
  sizes.push_back(64);
  sizes.push_back(128);
  double worst = 0.0;
  for (int N : sizes)
    for (double alpha : kCharges)
      for (double c : kCharges)
        for (Kind kind : kKinds) {
          const ChargedEnsemble e(m, N, alpha, c, kind);
          const double got = free_energy::log_z_exact(e).log_z;
          const double want =
              free_energy::log_z_spherical_closed_form(N, alpha, c, kind);
          worst = std::max(worst, std::abs(got - want));
        }
  const double elapsed = seconds_since(t0);
  const bool ok = worst <= 1e-8 && elapsed <= 30.0;
  return {2, "log Z quadrature vs Barnes-G closed form (N<=128)", ok,
          fmt("max abs err %.3g, %.2fs", worst, elapsed)};
}

CriterionResult criterion_coefficient_consistency() {
  const auto f = spherical_exact_functionals();
  const double grid[4] = {0.0, 0.5, 1.0, 1.7};
  double worst = 0.0;
  bool structural = true;
  for (double alpha : grid)
    for (double c : grid)
      for (Kind kind : kKinds) {
        const auto general = kind == Kind::Determinantal
                                 ? expansion::det_coefficients(f, alpha, c)
                                 : expansion::pfaff_coefficients(f, alpha, c);
        const auto explicit_form =
            expansion::spherical_example_coefficients(alpha, c, kind);
        for (int i = 1; i <= 5; ++i)
          worst = std::max(worst, std::abs(general.coefficient(i) -
                                           explicit_form.coefficient(i)));
        const double log_n_coeff =
            kind == Kind::Determinantal
                ? 0.5 * (alpha * alpha + c * c) + 1.0 / 3.0
                : alpha * alpha + 0.5 * alpha + c * c + 0.5 * c + 5.0 / 12.0;
        if (general.c4 != log_n_coeff) structural = false;
      }
  const bool ok = worst <= 1e-12 && structural;
  return {3, "expansion coefficients vs explicit spherical expansion", ok,
          fmt("max coeff diff %.3g, log N coefficient ", worst) +
              (structural ? "exact" : "MISMATCH")};
}

CriterionResult criterion_residual_law() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto f = spherical_exact_functionals();
  bool ok = true;
  std::string detail;
  for (Kind kind : kKinds) {
    const auto coeffs = kind == Kind::Determinantal
                            ? expansion::det_coefficients(f, 0.0, 0.0)
                            : expansion::pfaff_coefficients(f, 0.0, 0.0);
    auto residual = [&](int N) {
      return free_energy::log_z_spherical_closed_form(N, 0.0, 0.0, kind) -
             expansion::evaluate(coeffs, N);
    };
    for (int N : {100, 200}) {
      const double ratio = residual(2 * N) / residual(N);
      if (!(ratio >= 0.35 && ratio <= 0.65)) ok = false;
      detail += fmt("r(%g)/r: %.3f ", 2.0 * N, ratio);
    }
    const double scaled = std::abs(residual(400)) * 400.0;
    if (!(scaled <= 10.0)) ok = false;
    detail += fmt("400|r(400)|=%.3f; ", scaled);
  }
  const double elapsed = seconds_since(t0);
  if (elapsed > 5.0) ok = false;
  return {4, "O(1/N) residual decay of the spherical expansions", ok,
          detail + fmt("%.2fs", elapsed)};
}

CriterionResult criterion_general_measure() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto m = measure::mixture(0.5, 2.0);
  const int decay_grid[4] = {50, 100, 200, 400};
  auto report = expansion::residual_sweep(m, 0.0, 0.0, Kind::Determinantal,
                                          decay_grid, false);
  bool decreasing = true;
  for (std::size_t i = 1; i < report.residual.size(); ++i)
    if (std::abs(report.residual[i]) >= std::abs(report.residual[i - 1]))
      decreasing = false;

  // The five-function least-squares basis needs at least five samples, so
  // the fit runs on a grid refining the decay grid above.
  const int fit_grid[7] = {50, 75, 100, 150, 200, 300, 400};
  auto fit_report = expansion::residual_sweep(m, 0.0, 0.0, Kind::Determinantal,
                                              fit_grid, true);
  const auto f = measure::functionals(m);
  const auto coeffs = expansion::det_coefficients(f, 0.0, 0.0);
  const auto& fitted = *fit_report.fitted_constants;
  const double d1 = std::abs(fitted[0] - coeffs.c1);
  const double d2 = std::abs(fitted[1] - coeffs.c2);
  const double d3 = std::abs(fitted[2] - coeffs.c3);
  const double elapsed = seconds_since(t0);
  const bool ok =
      decreasing && d1 <= 1e-4 && d2 <= 1e-3 && d3 <= 1e-2 && elapsed <= 120.0;
  std::string detail = decreasing ? "residuals decreasing, " : "residuals NOT decreasing, ";
  detail += fmt("fit dC1=%.2g dC2=%.2g", d1, d2) + fmt(" dC3=%.2g", d3) +
            fmt(" (fitted C5=%.6f reported, not asserted), %.2fs", fitted[4],
                elapsed);
  return {5, "mixture measure: residual decay and coefficient recovery", ok,
          detail};
}

CriterionResult criterion_regime_predictors() {
  const auto m = measure::spherical();
  auto closed = [](int N, double alpha, double c, int j) {
    return free_energy::log_norm_spherical_closed_form(N, alpha, c,
                                                       Kind::Determinantal, j);
  };
  auto origin_err = [&](int N) {
    const ChargedEnsemble e(m, N, 0.0, 0.7, Kind::Determinantal);
    return std::abs(norms::predicted_log_norm_origin(e, 0) -
                    closed(N, 0.0, 0.7, 0));
  };
  auto bulk_err = [&](int N) {
    const ChargedEnsemble e(m, N, 0.0, 0.7, Kind::Determinantal);
    return std::abs(norms::predicted_log_norm_bulk(e, N / 2) -
                    closed(N, 0.0, 0.7, N / 2));
  };
  auto infinity_err = [&](int N) {
    const ChargedEnsemble e(m, N, 0.7, 0.0, Kind::Determinantal);
    return std::abs(norms::predicted_log_norm_infinity(e, N - 1) -
                    closed(N, 0.7, 0.0, N - 1));
  };
  const double o100 = origin_err(100), o400 = origin_err(400);
  const double b100 = bulk_err(100), b400 = bulk_err(400);
  const double i100 = infinity_err(100), i400 = infinity_err(400);
  const bool ok = o400 <= 0.02 && o100 / o400 >= 1.7 && b100 / b400 >= 3.0 &&
                  i400 <= 0.02 && i100 / i400 >= 1.7;
  return {6, "regime predictors converge to exact norms", ok,
          fmt("origin %.2g (x%.2f), ", o400, o100 / o400) +
              fmt("bulk x%.1f, ", b100 / b400, 0.0) +
              fmt("infinity %.2g (x%.2f)", i400, i100 / i400)};
}

CriterionResult criterion_special_functions() {
  using specfun::log_barnes_g;
  using specfun::log_factorial;
  using specfun::log_gamma;
  double worst_recursion = 0.0;
  for (double x = 0.5; x <= 50.0; x += 0.25)
    worst_recursion =
        std::max(worst_recursion, std::abs(log_barnes_g(x + 1.0) -
                                           log_barnes_g(x) - log_gamma(x)));
  const double g32 = std::log(2.0) / 24.0 +
                     1.5 * specfun::zeta_prime_minus_one() +
                     0.25 * specfun::constants().log_pi;
  const double g32_err = std::abs(log_barnes_g(1.5) - g32);
  double worst_integer = 0.0;
  for (int n = 1; n <= 30; ++n) {
    double sum = 0.0;
    for (int k = 1; k <= n - 2; ++k) sum += log_factorial(k);
    worst_integer = std::max(worst_integer, std::abs(log_barnes_g(n) - sum));
  }
  const bool ok =
      worst_recursion <= 1e-11 && g32_err <= 1e-11 && worst_integer <= 1e-11;
  return {7, "Barnes G recursion, G(3/2) identity, integer values", ok,
          fmt("recursion %.3g, G(3/2) %.3g", worst_recursion, g32_err) +
              fmt(", integers %.3g", worst_integer)};
}

CriterionResult criterion_measure_covariance() {
  const auto base = measure::functionals(measure::spherical());
  double worst = std::abs(base.curvature_integral - (-2.0));
  for (double a : {0.5, 2.0, 5.0}) {
    const auto f = measure::functionals(measure::scaled(a));
    const double la = std::log(a);
    worst = std::max(worst, std::abs(f.energy - (base.energy + la)));
    worst = std::max(worst, std::abs(f.entropy - (base.entropy - 2.0 * la)));
    worst = std::max(worst, std::abs(f.u_zero - (base.u_zero - la)));
    worst = std::max(worst, std::abs(f.rho0 - base.rho0 / (a * a)));
    worst = std::max(worst, std::abs(f.rho_tilde0 - base.rho_tilde0 * a * a));
    worst = std::max(worst,
                     std::abs(f.curvature_integral - base.curvature_integral));
  }
  const bool ok = worst <= 1e-9;
  return {8, "scaling covariance of the measure functionals", ok,
          fmt("max deviation %.3g", worst)};
}

CriterionResult criterion_geometry_conversion() {
  const auto m = measure::spherical();
  bool ok = true;
  for (int N : {1, 2, 7})
    for (Kind kind : kKinds) {
      const ChargedEnsemble e(m, N, 0.0, 0.0, kind);
      const auto plane = free_energy::log_z_exact(e);
      const auto sphere = free_energy::to_sphere_geometry(plane);
      const double constant =
          (kind == Kind::Determinantal ? N * (N - 1.0) : 2.0 * N * double(N)) *
          0.69314718055994530942;
      if (sphere.log_z != plane.log_z + constant) ok = false;
      if (free_energy::to_plane_geometry(sphere).log_z != plane.log_z)
        ok = false;
    }
  return {9, "plane/sphere conversion adds the exact 2-power constant", ok,
          ok ? "bit-exact for N in {1,2,7}, both kinds" : "MISMATCH"};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(int only_id) {
  const std::function<CriterionResult()> criteria[] = {
      criterion_norm_oracle,          criterion_partition_oracle,
      criterion_coefficient_consistency, criterion_residual_law,
      criterion_general_measure,      criterion_regime_predictors,
      criterion_special_functions,    criterion_measure_covariance,
      criterion_geometry_conversion};
  std::vector<CriterionResult> results;
  int id = 0;
  for (const auto& run : criteria) {
    ++id;
    if (only_id > 0 && id != only_id) continue;
    try {
      results.push_back(run());
    } catch (const std::exception& err) {
      results.push_back({id, "criterion threw", false, err.what()});
    }
  }
  return results;
}

}  // namespace coulombgas::verify
