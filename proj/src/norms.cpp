#include "coulombgas/norms.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "coulombgas/numerics.hpp"
#include "coulombgas/specfun.hpp"

namespace coulombgas::norms {

using numerics::find_critical_point;
using numerics::integrate_half_line;
using numerics::QuadratureResult;

ChargedEnsemble::ChargedEnsemble(measure::RadialMeasure m, int n_particles,
                                 double alpha, double c, Kind kind)
    : measure_(std::move(m)),
      n_particles_(n_particles),
      alpha_(alpha),
      c_(c),
      kind_(kind) {
  if (n_particles_ < 1)
    throw std::invalid_argument("ChargedEnsemble: need at least one particle");
  if (!(alpha_ >= 0.0) || !(c_ >= 0.0))
    throw std::invalid_argument("ChargedEnsemble: point charges must be >= 0");
}

int ChargedEnsemble::norm_index_count() const {
  return kind_ == Kind::Determinantal ? n_particles_ : 2 * n_particles_;
}

namespace {

void check_index(const ChargedEnsemble& e, int j) {
  if (j < 0 || j >= e.norm_index_count())
    throw std::out_of_range("norm index " + std::to_string(j) +
                            " outside [0," +
                            std::to_string(e.norm_index_count()) + ")");
}

constexpr double kQuadTol = 1e-12;

}  // namespace

double tau_c(const ChargedEnsemble& e, int j) {
  return (2.0 * (j + e.c()) + 1.0) / (2.0 * e.total_charge());
}

double tau_alpha(const ChargedEnsemble& e, int j) {
  return (2.0 * (j + e.alpha()) + 1.0) / (2.0 * e.total_charge());
}

double tilde_tau_c(const ChargedEnsemble& e, int j) {
  return (2.0 * j + 4.0 * e.c() + 1.0) / (4.0 * e.total_charge());
}

double tilde_tau_alpha(const ChargedEnsemble& e, int j) {
  return (2.0 * j + 4.0 * e.alpha() + 1.0) / (4.0 * e.total_charge());
}

double v_j(const ChargedEnsemble& e, int j, double r) {
  check_index(e, j);
  if (!(r > 0.0))
    throw std::domain_error("v_j: r must be positive");
  const double tau =
      e.kind() == Kind::Determinantal ? tau_c(e, j) : tilde_tau_c(e, j);
  return -2.0 * e.background().log_potential(r) - 2.0 * tau * std::log(r);
}

LogNorm log_norm(const ChargedEnsemble& e, int j) {
  check_index(e, j);
  const auto& m = e.background();
  const bool pfaffian = e.kind() == Kind::Pfaffian;
  const double n = e.total_charge();
  const double scale = pfaffian ? 2.0 * n : n;
  const double tau = pfaffian ? tilde_tau_c(e, j) : tau_c(e, j);
  const double peak = find_critical_point(m, tau);

  auto potential = [&m, tau](double r) {
    return -2.0 * m.log_potential(r) - 2.0 * tau * std::log(r);
  };

  double log_value;
  QuadratureResult q;
  if (tau <= 0.5) {
    const double ref = potential(peak);
    auto integrand = [&potential, scale, ref](double r) {
      return 2.0 * std::exp(-scale * (potential(r) - ref));
    };
    q = integrate_half_line(integrand, peak, kQuadTol);
    log_value = -scale * ref + std::log(q.value);
  } else {
    // Past the equator the peak drifts to large radii; invert through
    // u = 1/r, whose Jacobian shifts the stationary point to the root of
    // F(1/u) = 1 - tau - 1/scale.
    const double tau_shifted = tau + 1.0 / scale;
    const double u_peak = tau_shifted < 1.0
                              ? 1.0 / find_critical_point(m, tau_shifted)
                              : 1.0 / peak;
    auto inverted = [&potential, scale](double u) {
      return potential(1.0 / u) + (2.0 / scale) * std::log(u);
    };
    const double ref = inverted(u_peak);
    auto integrand = [&inverted, scale, ref](double u) {
      return 2.0 * std::exp(-scale * (inverted(u) - ref));
    };
    q = integrate_half_line(integrand, u_peak, kQuadTol);
    log_value = -scale * ref + std::log(q.value);
  }
  return {j, log_value, peak, q.abs_error_estimate / q.value};
}

double log_skew_norm(const ChargedEnsemble& e, int k) {
  if (e.kind() != Kind::Pfaffian)
    throw std::invalid_argument("log_skew_norm: requires a Pfaffian ensemble");
  if (k < 0 || k >= e.n_particles())
    throw std::out_of_range("log_skew_norm: k outside [0,N)");
  return std::log(2.0) + log_norm(e, 2 * k + 1).log_value;
}

SkewPolynomial skew_poly_even_coefficients(const ChargedEnsemble& e, int k) {
  if (e.kind() != Kind::Pfaffian)
    throw std::invalid_argument(
        "skew_poly_even_coefficients: requires a Pfaffian ensemble");
  if (k < 0 || k >= e.n_particles())
    throw std::out_of_range("skew_poly_even_coefficients: k outside [0,N)");
  std::vector<double> log_h(2 * k + 2);
  for (int idx = 1; idx <= 2 * k + 1; ++idx)
    log_h[idx] = log_norm(e, idx).log_value;

  SkewPolynomial poly;
  poly.k = k;
  poly.even_coefficients.assign(k + 1, 0.0);
  poly.even_coefficients[k] = 1.0;  // monic
  for (int l = 0; l < k; ++l) {
    double log_coeff = 0.0;
    for (int j = 0; j < k - l; ++j)
      log_coeff += log_h[2 * l + 2 * j + 2] - log_h[2 * l + 2 * j + 1];
    if (log_coeff > 709.0)
      throw std::overflow_error(
          "skew_poly_even_coefficients: coefficient of z^" +
          std::to_string(2 * l) + " overflows double range");
    poly.even_coefficients[l] = std::exp(log_coeff);
  }
  poly.log_skew_norm = std::log(2.0) + log_h[2 * k + 1];
  return poly;
}

double b1_functional(const measure::RadialMeasure& m, double r) {
  if (!(r > 0.0)) throw std::domain_error("b1_functional: r must be positive");
  const double rho = m.rho(r);
  const double d1 = m.drho(r);
  const double d2 = m.d2rho(r);
  return -1.0 / (24.0 * r * r * rho) - 7.0 * d1 / (96.0 * r * rho * rho) -
         d2 / (32.0 * rho * rho) + 5.0 * d1 * d1 / (96.0 * rho * rho * rho);
}

double predicted_log_norm_bulk(const ChargedEnsemble& e, int j) {
  check_index(e, j);
  const auto& m = e.background();
  const double log_two_pi = specfun::constants().log_two_pi;
  const double n = e.total_charge();
  if (e.kind() == Kind::Determinantal) {
    const double t = find_critical_point(m, tau_c(e, j));
    const double v = v_j(e, j, t);
    return -n * v + 0.5 * (log_two_pi - std::log(n) - std::log(m.rho(t))) +
           b1_functional(m, t) / n;
  }
  const double t = find_critical_point(m, tilde_tau_c(e, j));
  const double v = v_j(e, j, t);
  return -2.0 * n * v +
         0.5 * (log_two_pi - std::log(2.0 * n) - std::log(m.rho(t))) +
         b1_functional(m, t) / (2.0 * n);
}

double predicted_log_norm_origin(const ChargedEnsemble& e, int j) {
  check_index(e, j);
  const auto& m = e.background();
  const double n = e.total_charge();
  const double u0 = measure::u_at_zero(m);
  const double rho0 = m.rho(0.0);
  if (e.kind() == Kind::Determinantal)
    return 2.0 * n * u0 - (j + e.c() + 1.0) * std::log(n * rho0) +
           specfun::log_gamma(j + e.c() + 1.0);
  return 4.0 * n * u0 - (j + 2.0 * e.c() + 1.0) * std::log(2.0 * n * rho0) +
         specfun::log_gamma(j + 2.0 * e.c() + 1.0);
}

double predicted_log_norm_infinity(const ChargedEnsemble& e, int j) {
  check_index(e, j);
  const auto& m = e.background();
  const double n = e.total_charge();
  const double amp = measure::rho_tilde_zero(m);
  const int N = e.n_particles();
  if (e.kind() == Kind::Determinantal)
    return -(N - j + e.alpha()) * std::log(n * amp) +
           specfun::log_gamma(N - j + e.alpha());
  return -(2.0 * N - j + 2.0 * e.alpha() + 1.0) * std::log(2.0 * n * amp) +
         specfun::log_gamma(2.0 * N - j + 2.0 * e.alpha() + 1.0);
}

double critical_point_asymptote(const ChargedEnsemble& e, int j) {
  check_index(e, j);
  const double rho0 = e.background().rho(0.0);
  const double amp = e.background().tail_amplitude();
  if (e.kind() == Kind::Determinantal) {
    const double tc = tau_c(e, j);
    if (tc <= 0.5) return std::sqrt(tc / rho0);
    return std::sqrt(amp / tau_alpha(e, e.n_particles() - j));
  }
  const double tc = tilde_tau_c(e, j);
  if (tc <= 0.5) return std::sqrt(tc / rho0);
  return std::sqrt(amp / tilde_tau_alpha(e, 2 * e.n_particles() - j + 1));
}

}  // namespace coulombgas::norms
