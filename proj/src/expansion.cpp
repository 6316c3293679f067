#include "coulombgas/expansion.hpp"

#include <cmath>
#include <stdexcept>

#include "coulombgas/free_energy.hpp"
#include "coulombgas/specfun.hpp"

namespace coulombgas::expansion {

namespace {

double sum_terms(const std::vector<NamedTerm>& terms) {
  double s = 0.0;
  for (const auto& t : terms) s += t.value;
  return s;
}

void set_coefficient(ExpansionCoefficients& out, int i,
                     std::vector<NamedTerm> terms) {
  double* slots[5] = {&out.c1, &out.c2, &out.c3, &out.c4, &out.c5};
  *slots[i - 1] = sum_terms(terms);
  out.term_breakdown[i - 1] = std::move(terms);
}

}  // namespace

double ExpansionCoefficients::coefficient(int i) const {
  switch (i) {
    case 1: return c1;
    case 2: return c2;
    case 3: return c3;
    case 4: return c4;
    case 5: return c5;
  }
  throw std::out_of_range("ExpansionCoefficients::coefficient: i outside [1,5]");
}

ExpansionCoefficients det_coefficients(const measure::MeasureFunctionals& f,
                                       double alpha, double c) {
  using specfun::log_barnes_g;
  const double log_two_pi = specfun::constants().log_two_pi;
  const double zp = specfun::zeta_prime_minus_one();
  const double beta = alpha + c + 1.0;

  ExpansionCoefficients out;
  out.kind = norms::Kind::Determinantal;
  out.alpha = alpha;
  out.c = c;
  set_coefficient(out, 1, {{"energy", -f.energy}});
  set_coefficient(out, 2, {{"universal", 0.5}});
  set_coefficient(out, 3, {{"universal", 0.5 * log_two_pi - 1.0},
                           {"energy", -2.0 * beta * f.energy},
                           {"entropy", -0.5 * f.entropy},
                           {"potential_origin", -2.0 * c * f.u_zero}});
  set_coefficient(out, 4, {{"point_charge", 0.5 * (alpha * alpha + c * c)},
                           {"universal", 1.0 / 3.0}});
  set_coefficient(
      out, 5,
      {{"energy", -beta * beta * f.energy},
       {"entropy", -beta * 0.5 * f.entropy},
       {"potential_origin", -beta * 2.0 * c * f.u_zero},
       {"density_origin", 0.5 * (c * c + c + 1.0 / 3.0) * std::log(f.rho0)},
       {"density_infinity",
        0.5 * (alpha * alpha + alpha + 1.0 / 3.0) * std::log(f.rho_tilde0)},
       {"universal", 0.5 * beta * (log_two_pi - 1.0) + 2.0 * zp - 5.0 / 12.0},
       {"barnes_g", -(log_barnes_g(c + 1.0) + log_barnes_g(alpha + 1.0))},
       {"curvature", -f.curvature_integral / 6.0}});
  return out;
}

ExpansionCoefficients pfaff_coefficients(const measure::MeasureFunctionals& f,
                                         double alpha, double c) {
  using specfun::log_barnes_g;
  const double log_two_pi = specfun::constants().log_two_pi;
  const double log_four_pi = log_two_pi + std::log(2.0);
  const double zp = specfun::zeta_prime_minus_one();
  const double beta = alpha + c + 1.0;

  ExpansionCoefficients out;
  out.kind = norms::Kind::Pfaffian;
  out.alpha = alpha;
  out.c = c;
  set_coefficient(out, 1, {{"energy", -2.0 * f.energy}});
  set_coefficient(out, 2, {{"universal", 0.5}});
  set_coefficient(out, 3, {{"universal", 0.5 * log_four_pi - 1.0},
                           {"energy", -4.0 * beta * f.energy},
                           {"entropy", -0.5 * f.entropy},
                           {"potential_origin", -(4.0 * c + 1.0) * f.u_zero}});
  set_coefficient(out, 4,
                  {{"point_charge",
                    alpha * alpha + 0.5 * alpha + c * c + 0.5 * c},
                   {"universal", 5.0 / 12.0}});
  set_coefficient(
      out, 5,
      {{"energy", -2.0 * beta * beta * f.energy},
       {"entropy", -beta * 0.5 * f.entropy},
       {"potential_origin", -beta * (4.0 * c + 1.0) * f.u_zero},
       {"density_origin", (c * c + c + 5.0 / 24.0) * std::log(f.rho0)},
       {"density_infinity",
        (alpha * alpha + alpha + 5.0 / 24.0) * std::log(f.rho_tilde0)},
       {"universal", beta * (log_two_pi - 0.5) + 4.0 * zp - 5.0 / 24.0},
       {"barnes_g", -(log_barnes_g(c + 1.0) + log_barnes_g(c + 1.5) +
                      log_barnes_g(alpha + 1.0) + log_barnes_g(alpha + 1.5))},
       {"curvature", -f.curvature_integral / 12.0}});
  return out;
}

double evaluate(const ExpansionCoefficients& coeffs, int N) {
  if (N < 1) throw std::invalid_argument("evaluate: N < 1");
  const double dN = N;
  const double logN = std::log(dN);
  return coeffs.c1 * dN * dN + coeffs.c2 * dN * logN + coeffs.c3 * dN +
         coeffs.c4 * logN + coeffs.c5;
}

double evaluate_n_form(const measure::MeasureFunctionals& f, double alpha,
                       double c, int N, norms::Kind kind) {
  if (N < 1) throw std::invalid_argument("evaluate_n_form: N < 1");
  using specfun::log_barnes_g;
  const double log_two_pi = specfun::constants().log_two_pi;
  const double zp = specfun::zeta_prime_minus_one();
  const double dN = N;
  const double n = dN + alpha + c + 1.0;
  const double logN = std::log(dN), logn = std::log(n);

  if (kind == norms::Kind::Determinantal) {
    return -f.energy * n * n - (0.5 * f.entropy + 2.0 * c * f.u_zero) * n +
           dN * logN - 0.5 * dN * logn + (0.5 * log_two_pi - 1.0) * dN +
           0.5 * logN + 0.5 * (alpha * alpha + c * c - 1.0 / 3.0) * logn +
           0.5 * (c * c + c + 1.0 / 3.0) * std::log(f.rho0) +
           0.5 * (alpha * alpha + alpha + 1.0 / 3.0) * std::log(f.rho_tilde0) +
           0.5 * (alpha + c + 1.0) * log_two_pi + 2.0 * zp -
           (log_barnes_g(c + 1.0) + log_barnes_g(alpha + 1.0)) - 5.0 / 12.0 -
           f.curvature_integral / 6.0;
  }
  const double log_four_pi = log_two_pi + std::log(2.0);
  return -2.0 * f.energy * n * n -
         (0.5 * f.entropy + (4.0 * c + 1.0) * f.u_zero) * n + dN * logN -
         0.5 * dN * logn + (0.5 * log_four_pi - 1.0) * dN + 0.5 * logN +
         (alpha * alpha + c * c + 0.5 * (alpha + c) - 1.0 / 12.0) * logn +
         (c * c + c + 5.0 / 24.0) * std::log(f.rho0) +
         (alpha * alpha + alpha + 5.0 / 24.0) * std::log(f.rho_tilde0) +
         (alpha + c + 1.0) * log_two_pi + 4.0 * zp -
         (log_barnes_g(c + 1.0) + log_barnes_g(c + 1.5) +
          log_barnes_g(alpha + 1.0) + log_barnes_g(alpha + 1.5)) -
         5.0 / 24.0 - f.curvature_integral / 12.0;
}

ExpansionCoefficients spherical_example_coefficients(double alpha, double c,
                                                     norms::Kind kind) {
  using specfun::log_barnes_g;
  const double log_two_pi = specfun::constants().log_two_pi;
  const double zp = specfun::zeta_prime_minus_one();
  const double s = alpha + c;

  ExpansionCoefficients out;
  out.kind = kind;
  out.alpha = alpha;
  out.c = c;
  if (kind == norms::Kind::Determinantal) {
    set_coefficient(out, 1, {{"universal", -0.5}});
    set_coefficient(out, 2, {{"universal", 0.5}});
    set_coefficient(out, 3, {{"universal", 0.5 * log_two_pi - 1.0},
                             {"point_charge", -s}});
    set_coefficient(out, 4, {{"point_charge", 0.5 * (alpha * alpha + c * c)},
                             {"universal", 1.0 / 3.0}});
    set_coefficient(
        out, 5,
        {{"universal", 0.5 * log_two_pi - 1.0 / 12.0 + 2.0 * zp},
         {"point_charge", -0.5 * s * (s + 1.0 - log_two_pi)},
         {"barnes_g", -(log_barnes_g(alpha + 1.0) + log_barnes_g(c + 1.0))}});
    return out;
  }
  const double log_four_pi = log_two_pi + std::log(2.0);
  set_coefficient(out, 1, {{"universal", -1.0}});
  set_coefficient(out, 2, {{"universal", 0.5}});
  set_coefficient(out, 3, {{"universal", 0.5 * log_four_pi - 2.0},
                           {"point_charge", -2.0 * s}});
  set_coefficient(out, 4,
                  {{"point_charge",
                    alpha * alpha + 0.5 * alpha + c * c + 0.5 * c},
                   {"universal", 5.0 / 12.0}});
  set_coefficient(
      out, 5,
      {{"universal", log_two_pi - 13.0 / 24.0 + 4.0 * zp},
       {"point_charge", -0.5 * s * (2.0 * s + 3.0 - 2.0 * log_two_pi)},
       {"barnes_g",
        -(log_barnes_g(alpha + 1.0) + log_barnes_g(alpha + 1.5) +
          log_barnes_g(c + 1.0) + log_barnes_g(c + 1.5))}});
  return out;
}

double spherical_example_expansion(int N, double alpha, double c,
                                   norms::Kind kind) {
  return evaluate(spherical_example_coefficients(alpha, c, kind), N);
}

std::array<double, 5> fit_expansion_coefficients(
    std::span<const int> n_grid, std::span<const double> values) {
  const std::size_t rows = n_grid.size();
  if (rows != values.size())
    throw std::invalid_argument("fit_expansion_coefficients: size mismatch");
  if (rows < 5)
    throw std::invalid_argument(
        "fit_expansion_coefficients: need at least 5 sample points");

  // Column-scaled design matrix {N^2, N log N, N, log N, 1}.
  std::vector<std::array<double, 5>> a(rows);
  std::vector<double> rhs(values.begin(), values.end());
  for (std::size_t i = 0; i < rows; ++i) {
    const double dN = n_grid[i];
    const double logN = std::log(dN);
    a[i] = {dN * dN, dN * logN, dN, logN, 1.0};
  }
  std::array<double, 5> col_scale{};
  for (int j = 0; j < 5; ++j) {
    double norm = 0.0;
    for (std::size_t i = 0; i < rows; ++i) norm += a[i][j] * a[i][j];
    col_scale[j] = std::sqrt(norm);
    for (std::size_t i = 0; i < rows; ++i) a[i][j] /= col_scale[j];
  }

  // Householder QR, applied to the right-hand side on the fly.
  for (int j = 0; j < 5; ++j) {
    double norm = 0.0;
    for (std::size_t i = j; i < rows; ++i) norm += a[i][j] * a[i][j];
    norm = std::sqrt(norm);
    if (norm == 0.0)
      throw std::invalid_argument(
          "fit_expansion_coefficients: rank-deficient design matrix");
    if (a[j][j] > 0.0) norm = -norm;
    std::vector<double> v(rows, 0.0);
    for (std::size_t i = j; i < rows; ++i) v[i] = a[i][j];
    v[j] -= norm;
    double vnorm2 = 0.0;
    for (std::size_t i = j; i < rows; ++i) vnorm2 += v[i] * v[i];
    if (vnorm2 == 0.0) continue;
    for (int col = j; col < 5; ++col) {
      double dot = 0.0;
      for (std::size_t i = j; i < rows; ++i) dot += v[i] * a[i][col];
      const double factor = 2.0 * dot / vnorm2;
      for (std::size_t i = j; i < rows; ++i) a[i][col] -= factor * v[i];
    }
    double dot = 0.0;
    for (std::size_t i = j; i < rows; ++i) dot += v[i] * rhs[i];
    const double factor = 2.0 * dot / vnorm2;
    for (std::size_t i = j; i < rows; ++i) rhs[i] -= factor * v[i];
  }

  std::array<double, 5> x{};
  for (int i = 4; i >= 0; --i) {
    double acc = rhs[i];
    for (int j = i + 1; j < 5; ++j) acc -= a[i][j] * x[j];
    x[i] = acc / a[i][i];
  }
  for (int j = 0; j < 5; ++j) x[j] /= col_scale[j];
  return x;
}

ResidualReport residual_sweep(const measure::RadialMeasure& m, double alpha,
                              double c, norms::Kind kind,
                              std::span<const int> n_grid, bool fit) {
  if (n_grid.empty())
    throw std::invalid_argument("residual_sweep: empty N grid");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < 2)
      throw std::invalid_argument("residual_sweep: every N must be >= 2");
    if (i > 0 && n_grid[i] <= n_grid[i - 1])
      throw std::invalid_argument("residual_sweep: N grid must be ascending");
  }

  const measure::MeasureFunctionals f = measure::functionals(m);
  const ExpansionCoefficients coeffs = kind == norms::Kind::Determinantal
                                           ? det_coefficients(f, alpha, c)
                                           : pfaff_coefficients(f, alpha, c);
  ResidualReport report;
  report.n_grid.assign(n_grid.begin(), n_grid.end());
  for (int N : n_grid) {
    const norms::ChargedEnsemble e(m, N, alpha, c, kind);
    const double exact = free_energy::log_z_exact(e).log_z;
    const double predicted = evaluate(coeffs, N);
    report.exact.push_back(exact);
    report.predicted.push_back(predicted);
    report.residual.push_back(exact - predicted);
  }
  if (fit && report.n_grid.size() >= 5)
    report.fitted_constants =
        fit_expansion_coefficients(report.n_grid, report.exact);
  return report;
}

}  // namespace coulombgas::expansion
