#include <cmath>
#include <stdexcept>
#include <doctest.h>

#include "coulombgas/expansion.hpp"
#include "coulombgas/free_energy.hpp"
#include "coulombgas/measure.hpp"
#include "coulombgas/specfun.hpp"

using namespace coulombgas;
using namespace coulombgas::expansion;
using norms::Kind;

namespace {

// exact functionals of the spherical measure, for algebra-level checks
measure::MeasureFunctionals spherical_exact() {
  return {0.5, -2.0, 0.0, 1.0, 1.0, -2.0};
}

double log_two_pi() { return specfun::constants().log_two_pi; }

}  // namespace

TEST_CASE("determinantal coefficients at zero charge") {
  const auto coeffs = det_coefficients(spherical_exact(), 0.0, 0.0);
  CHECK(coeffs.c1 == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(coeffs.c2 == 0.5);
  CHECK(coeffs.c3 == doctest::Approx(0.5 * log_two_pi() - 1.0).epsilon(1e-15));
  CHECK(coeffs.c4 == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(coeffs.c5 ==
        doctest::Approx(0.5 * log_two_pi() - 1.0 / 12.0 +
                        2.0 * specfun::zeta_prime_minus_one())
            .epsilon(1e-12));
}

TEST_CASE("determinantal coefficients with charges") {
  for (double alpha : {0.0, 0.5, 1.7})
    for (double c : {0.0, 1.0}) {
      const auto coeffs = det_coefficients(spherical_exact(), alpha, c);
      CHECK(coeffs.c3 == doctest::Approx(0.5 * log_two_pi() - 1.0 -
                                         (alpha + c))
                             .epsilon(1e-14));
      CHECK(coeffs.c4 ==
            doctest::Approx(0.5 * (alpha * alpha + c * c) + 1.0 / 3.0)
                .epsilon(1e-15));
    }
  // energy covariance moves c1
  const auto scaled_coeffs =
      det_coefficients(measure::functionals(measure::scaled(2.0)), 0.0, 0.0);
  CHECK(scaled_coeffs.c1 ==
        doctest::Approx(-(0.5 + std::log(2.0))).epsilon(1e-10));
}

TEST_CASE("pfaffian coefficients") {
  const auto coeffs = pfaff_coefficients(spherical_exact(), 0.0, 0.0);
  const double log_four_pi = log_two_pi() + std::log(2.0);
  CHECK(coeffs.c1 == -1.0);
  CHECK(coeffs.c2 == 0.5);
  CHECK(coeffs.c3 == doctest::Approx(0.5 * log_four_pi - 2.0).epsilon(1e-14));
  CHECK(coeffs.c4 == doctest::Approx(5.0 / 12.0).epsilon(1e-15));
  CHECK(coeffs.c5 == doctest::Approx(0.5 * log_two_pi() +
                                     5.0 * std::log(2.0) / 12.0 +
                                     specfun::zeta_prime_minus_one() -
                                     13.0 / 24.0)
                         .epsilon(1e-13));
  // the Barnes block pairs integer and half-integer shifts of both charges
  const auto charged = pfaff_coefficients(spherical_exact(), 0.7, 0.3);
  double barnes = 0.0;
  for (const auto& term : charged.term_breakdown[4])
    if (term.name == "barnes_g") barnes = term.value;
  CHECK(barnes ==
        doctest::Approx(-(specfun::log_barnes_g(1.3) + specfun::log_barnes_g(1.8) +
                          specfun::log_barnes_g(1.7) + specfun::log_barnes_g(2.2)))
            .epsilon(1e-14));
}

TEST_CASE("structural invariants of the coefficients") {
  const auto f = measure::functionals(measure::mixture(0.5, 2.0));
  for (double alpha : {0.0, 0.4, 2.2})
    for (double c : {0.0, 1.3}) {
      CHECK(det_coefficients(f, alpha, c).c2 == 0.5);
      CHECK(pfaff_coefficients(f, alpha, c).c2 == 0.5);
      // c4 is symmetric under swapping the two charges
      CHECK(det_coefficients(f, alpha, c).c4 ==
            det_coefficients(f, c, alpha).c4);
      // breakdown sums reproduce each coefficient exactly
      for (const auto& coeffs :
           {det_coefficients(f, alpha, c), pfaff_coefficients(f, alpha, c)}) {
        for (int i = 1; i <= 5; ++i) {
          double sum = 0.0;
          for (const auto& term : coeffs.term_breakdown[i - 1])
            sum += term.value;
          CHECK(sum == coeffs.coefficient(i));
        }
      }
    }
}

TEST_CASE("series evaluation") {
  ExpansionCoefficients flat;
  flat.c5 = 4.25;
  CHECK(evaluate(flat, 1) == 4.25);
  CHECK(evaluate(flat, 117) == 4.25);

  const auto coeffs = det_coefficients(spherical_exact(), 0.0, 0.0);
  CHECK(evaluate(coeffs, 1) ==
        doctest::Approx(coeffs.c1 + coeffs.c3 + coeffs.c5).epsilon(1e-15));
  CHECK_THROWS_AS(evaluate(coeffs, 0), std::invalid_argument);
}

TEST_CASE("n-form agrees with the coefficient form to O(1/N)") {
  const auto f = spherical_exact();
  const auto coeffs = det_coefficients(f, 0.0, 0.0);
  double previous = 1e9;
  for (int N : {50, 100, 200, 400, 800}) {
    const double diff =
        std::abs(evaluate_n_form(f, 0.0, 0.0, N, Kind::Determinantal) -
                 evaluate(coeffs, N));
    CHECK(diff <= 1.0 / N);  // beta = 1; the gap is 1/(12N) + O(1/N^2)
    CHECK(diff < previous);
    previous = diff;
  }
  // general charges, both kinds
  const auto det1 = det_coefficients(f, 1.0, 0.0);
  CHECK(std::abs(evaluate_n_form(f, 1.0, 0.0, 100, Kind::Determinantal) -
                 evaluate(det1, 100)) <= 4.0 / 100.0);
  const auto pf = pfaff_coefficients(f, 0.5, 1.7);
  CHECK(std::abs(evaluate_n_form(f, 0.5, 1.7, 100, Kind::Pfaffian) -
                 evaluate(pf, 100)) <= 26.0 / 100.0);

  // the n^2 coefficient is the energy one: shifting I by delta moves the
  // value by -delta n^2 (determinantal) and -2 delta n^2 (Pfaffian)
  auto shifted = f;
  shifted.energy += 0.25;
  const double n = 100 + 0.0 + 0.0 + 1.0;
  CHECK(evaluate_n_form(shifted, 0.0, 0.0, 100, Kind::Determinantal) -
            evaluate_n_form(f, 0.0, 0.0, 100, Kind::Determinantal) ==
        doctest::Approx(-0.25 * n * n).epsilon(1e-12));
  CHECK(evaluate_n_form(shifted, 0.0, 0.0, 100, Kind::Pfaffian) -
            evaluate_n_form(f, 0.0, 0.0, 100, Kind::Pfaffian) ==
        doctest::Approx(-0.5 * n * n).epsilon(1e-12));
}

TEST_CASE("explicit spherical expansion equals the general one") {
  const auto f = spherical_exact();
  for (double alpha : {0.0, 0.5, 1.0, 1.7})
    for (double c : {0.0, 0.5, 1.0, 1.7})
      for (Kind kind : {Kind::Determinantal, Kind::Pfaffian}) {
        const auto general = kind == Kind::Determinantal
                                 ? det_coefficients(f, alpha, c)
                                 : pfaff_coefficients(f, alpha, c);
        const auto explicit_form =
            spherical_example_coefficients(alpha, c, kind);
        for (int i = 1; i <= 5; ++i)
          CHECK(std::abs(general.coefficient(i) -
                         explicit_form.coefficient(i)) <= 1e-12);
        CHECK(spherical_example_expansion(173, alpha, c, kind) ==
              doctest::Approx(evaluate(explicit_form, 173)).epsilon(1e-15));
      }
  // log N coefficients at zero charge
  CHECK(spherical_example_coefficients(0, 0, Kind::Determinantal).c4 ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(spherical_example_coefficients(0, 0, Kind::Pfaffian).c4 ==
        doctest::Approx(5.0 / 12.0).epsilon(1e-15));
}

TEST_CASE("expansion residual of the closed form decays like 1/N") {
  for (Kind kind : {Kind::Determinantal, Kind::Pfaffian}) {
    auto residual = [kind](int N) {
      return free_energy::log_z_spherical_closed_form(N, 0, 0, kind) -
             spherical_example_expansion(N, 0, 0, kind);
    };
    for (int N : {100, 200})
      CHECK(residual(2 * N) / residual(N) == doctest::Approx(0.5).epsilon(0.4));
  }
}

TEST_CASE("residual sweep on the spherical ensemble") {
  const int grid[4] = {50, 100, 200, 400};
  const auto report = residual_sweep(measure::spherical(), 0.0, 0.0,
                                     Kind::Determinantal, grid, false);
  REQUIRE(report.residual.size() == 4);
  // residual * N approximately constant
  double lo = 1e300, hi = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const double scaled = std::abs(report.residual[i]) * report.n_grid[i];
    lo = std::min(lo, scaled);
    hi = std::max(hi, scaled);
  }
  CHECK(hi / lo <= 2.0);
  CHECK_FALSE(report.fitted_constants.has_value());
  CHECK_THROWS_AS(residual_sweep(measure::spherical(), 0, 0,
                                 Kind::Determinantal, std::array<int, 2>{100, 50},
                                 false),
                  std::invalid_argument);
}

TEST_CASE("residual sweep with coefficient recovery") {
  const int grid[7] = {100, 150, 200, 250, 300, 350, 400};
  const auto report = residual_sweep(measure::spherical(), 0.0, 0.0,
                                     Kind::Determinantal, grid, true);
  REQUIRE(report.fitted_constants.has_value());
  CHECK(std::abs((*report.fitted_constants)[0] + 0.5) <= 1e-5);
}

TEST_CASE("least-squares fit recovers planted coefficients") {
  const int grid[6] = {40, 80, 120, 200, 300, 500};
  std::vector<double> values;
  for (int N : grid) {
    const double x = N;
    values.push_back(-0.7 * x * x + 0.5 * x * std::log(x) + 1.9 * x -
                     2.2 * std::log(x) + 0.37);
  }
  const auto fit = fit_expansion_coefficients(grid, values);
  CHECK(fit[0] == doctest::Approx(-0.7).epsilon(1e-10));
  CHECK(fit[1] == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(fit[2] == doctest::Approx(1.9).epsilon(1e-8));
  CHECK(fit[3] == doctest::Approx(-2.2).epsilon(1e-7));
  CHECK(fit[4] == doctest::Approx(0.37).epsilon(1e-6));
  CHECK_THROWS_AS(
      fit_expansion_coefficients(std::array<int, 2>{1, 2},
                                 std::array<double, 2>{0.0, 1.0}),
      std::invalid_argument);
}
