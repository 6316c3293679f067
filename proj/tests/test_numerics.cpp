#include <cmath>
#include <random>
#include <vector>
#include <doctest.h>

#include "coulombgas/measure.hpp"
#include "coulombgas/numerics.hpp"
#include "coulombgas/specfun.hpp"

using namespace coulombgas::numerics;

TEST_CASE("half-line quadrature on reference integrals") {
  auto q1 = integrate_half_line([](double r) { return std::exp(-r); }, 1.0,
                                1e-13);
  CHECK(std::abs(q1.value - 1.0) <= 1e-13);
  CHECK(q1.evaluations > 0);

  auto q2 = integrate_half_line(
      [](double r) {
        const double d = 1.0 + r * r;
        return 2.0 * r / (d * d);
      },
      1.0, 1e-12);
  CHECK(std::abs(q2.value - 1.0) <= 1e-12);

  // Beta integral: int 2 r^3 (1+r^2)^-5 dr = Gamma(2)Gamma(3)/Gamma(5)
  auto q3 = integrate_half_line(
      [](double r) { return 2.0 * std::pow(r, 3) * std::pow(1.0 + r * r, -5); },
      0.7, 1e-12);
  CHECK(q3.value == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
}

TEST_CASE("quadrature error reporting") {
  auto q = integrate_interval([](double x) { return x * x; }, 0.0, 2.0);
  CHECK(q.value == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
  CHECK(q.abs_error_estimate >= 0.0);
  CHECK(std::isfinite(q.abs_error_estimate));
  CHECK_THROWS_AS(integrate_half_line([](double) { return 1.0; }, 0.0, 1e-10),
                  std::domain_error);
}

TEST_CASE("critical point inversion on closed-form tails") {
  const auto sph = coulombgas::measure::spherical();
  // F(t) = 1/(1+t^2) inverts to t = sqrt(tau/(1-tau))
  CHECK(find_critical_point(sph, 0.5) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(find_critical_point(sph, 0.8) == doctest::Approx(2.0).epsilon(1e-13));
  const auto big = coulombgas::measure::scaled(3.5);
  for (double tau : {0.01, 0.2, 0.5, 0.9, 0.999})
    CHECK(find_critical_point(big, tau) ==
          doctest::Approx(3.5 * find_critical_point(sph, tau)).epsilon(1e-12));
  CHECK_THROWS_AS(find_critical_point(sph, 0.0), std::domain_error);
  CHECK_THROWS_AS(find_critical_point(sph, 1.0), std::domain_error);
}

TEST_CASE("critical point residuals over a log-spaced tau grid") {
  const auto mix = coulombgas::measure::mixture(0.3, 2.0);
  for (double tau = 1e-4; tau < 1.0; tau = std::min(1.0 - (1.0 - tau) * 0.35,
                                                    tau * 3.1)) {
    const double t = find_critical_point(mix, tau);
    CHECK(std::abs(mix.mass_tail(t) - (1.0 - tau)) <=
          1e-13 * std::max(tau, 1.0 - tau));
  }
}

TEST_CASE("euler-maclaurin exactness for low-degree polynomials") {
  SmoothSummand linear{[](double x) { return x; },
                       {[](double) { return 1.0; }},
                       [](double a, double b) { return 0.5 * (b * b - a * a); }};
  CHECK(euler_maclaurin_sum(linear, 0, 10, 1) == doctest::Approx(55.0).epsilon(1e-15));

  SmoothSummand square{[](double x) { return x * x; },
                       {[](double x) { return 2.0 * x; }},
                       [](double a, double b) {
                         return (b * b * b - a * a * a) / 3.0;
                       }};
  CHECK(euler_maclaurin_sum(square, 1, 100, 1) ==
        doctest::Approx(338350.0).epsilon(1e-15));

  // one correction term already covers cubics: sum_{j=0}^{10} j^3 = 3025
  SmoothSummand cubic{[](double x) { return x * x * x; },
                      {[](double x) { return 3.0 * x * x; }},
                      [](double a, double b) {
                        return 0.25 * (b * b * b * b - a * a * a * a);
                      }};
  CHECK(euler_maclaurin_sum(cubic, 0, 10, 1) ==
        doctest::Approx(3025.0).epsilon(1e-15));

  // degree five needs two Bernoulli corrections: sum_{j=0}^{10} j^5 = 220825
  SmoothSummand quintic{
      [](double x) { return std::pow(x, 5); },
      {[](double x) { return 5.0 * std::pow(x, 4); },
       [](double x) { return 60.0 * x * x; }},
      [](double a, double b) { return (std::pow(b, 6) - std::pow(a, 6)) / 6.0; }};
  CHECK(euler_maclaurin_sum(quintic, 0, 10, 2) ==
        doctest::Approx(220825.0).epsilon(1e-14));
  // one correction term is not enough for degree five
  CHECK(std::abs(euler_maclaurin_sum(quintic, 0, 10, 1) - 220825.0) > 1.0);
}

TEST_CASE("euler-maclaurin against log-factorial") {
  SmoothSummand log_summand{[](double x) { return std::log(x); },
                            {[](double x) { return 1.0 / x; }},
                            [](double a, double b) {
                              return b * std::log(b) - b - a * std::log(a) + a;
                            }};
  const double em = euler_maclaurin_sum(log_summand, 1, 50, 1);
  const double exact = coulombgas::specfun::log_factorial(50);
  // remainder is governed by the first omitted Bernoulli term
  const double next_term = (-1.0 / 30.0) / 24.0 * (2.0 / (50.0 * 50.0 * 50.0) - 2.0);
  CHECK(std::abs(em - exact) <= 2.0 * std::abs(next_term));
  CHECK_THROWS_AS(euler_maclaurin_sum(log_summand, 1, 50, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(euler_maclaurin_sum(log_summand, 9, 3, 1),
                  std::invalid_argument);
}

TEST_CASE("compensated summation") {
  const std::vector<double> cancel{1e16, 1.0, -1e16};
  CHECK(compensated_sum(cancel) == 1.0);

  std::vector<double> tenths(10'000'000, 0.1);
  CHECK(std::abs(compensated_sum(tenths) - 1e6) <= 1e-6);

  // order invariance within a tight budget
  std::vector<double> values;
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) values.push_back(std::exp(8.0 * dist(rng)));
  const double reference = compensated_sum(values);
  std::shuffle(values.begin(), values.end(), rng);
  CHECK(std::abs(compensated_sum(values) - reference) <=
        1e-12 * std::abs(reference));
}
