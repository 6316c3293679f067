#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

// Generic numeric kernels: adaptive Gauss-Kronrod quadrature on finite
// intervals and on the half line, bracketed Newton inversion of the tail-mass
// function, Euler-Maclaurin summation, and compensated summation.

namespace coulombgas::measure {
class RadialMeasure;
}

namespace coulombgas::numerics {

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  long evaluations = 0;
};

class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Adaptive 15-point Gauss-Kronrod integration of f over [a, b].  Subdivides
// until the error estimate is below max(rel_tol * |value|, abs_tol); throws
// IntegrationError when the subdivision budget is exhausted first.
QuadratureResult integrate_interval(const std::function<double(double)>& f,
                                    double a, double b, double rel_tol = 1e-12,
                                    double abs_tol = 0.0);

// Integral of f over (0, inf) for an integrand peaked near peak_hint > 0.
// The domain is split at the peak and the tail is pulled back to a finite
// interval through r = peak / u, which handles polynomially decaying tails.
QuadratureResult integrate_half_line(const std::function<double(double)>& f,
                                     double peak_hint, double rel_tol = 1e-12);

// Radius t with F(t) = 1 - tau, where F is the measure's tail mass.  F is
// strictly decreasing from 1 to 0, so the root is bracketed geometrically and
// then polished with Newton steps using F'(t) = -2 t rho(t).
double find_critical_point(const measure::RadialMeasure& m, double tau);

// Summand bundle for Euler-Maclaurin: the value, the odd derivatives
// f', f''', f^(5), ... needed for the Bernoulli corrections, and optionally a
// closed-form integral over [a, b] (numerical quadrature otherwise).
struct SmoothSummand {
  std::function<double(double)> value;
  std::vector<std::function<double(double)>> odd_derivatives;
  std::function<double(double, double)> integral;
};

// sum_{j=m}^{n} f(j) approximated by the Euler-Maclaurin formula with the
// requested number of Bernoulli correction terms (exact for polynomials of
// degree <= 2*orders + 1).
double euler_maclaurin_sum(const SmoothSummand& s, long m, long n, int orders);

// Neumaier-compensated sum; deterministic for a fixed input order.
double compensated_sum(std::span<const double> values);

}  // namespace coulombgas::numerics
