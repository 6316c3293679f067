#pragma once

// Real-argument special functions backing the closed-form partition function
// oracles and the expansion constants: log Gamma, log factorial, log Barnes G,
// and zeta'(-1).

namespace coulombgas::specfun {

struct SpecialConstants {
  double zeta_prime_minus_one;
  double log_two_pi;
  double log_pi;
};

const SpecialConstants& constants();

// log Gamma(x) for finite x > 0.  Relative error below 1e-13 (absolute near
// the zeros at x = 1 and x = 2).
double log_gamma(double x);

// log n!, n >= 0.
double log_factorial(long long n);

// log G(x) for x > 0, where G is the Barnes G-function defined by
// G(1) = 1 and G(x+1) = Gamma(x) G(x).
double log_barnes_g(double x);

// zeta'(-1), the derivative of the Riemann zeta function at -1.
double zeta_prime_minus_one();

}  // namespace coulombgas::specfun
