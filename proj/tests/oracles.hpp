#pragma once

// Independent oracles used only by the tests.  Each one reaches a target
// value through a route disjoint from the library implementation it checks:
// Euler-Maclaurin constants, a genuine double integral for the logarithmic
// energy, and fine-grid composite Simpson for the entropy and curvature
// integrals.

#include "coulombgas/measure.hpp"

namespace oracles {

double euler_gamma();        // Euler-Mascheroni constant
double zeta_prime_two();     // zeta'(2) = -sum log n / n^2
double zeta_prime_minus_one();  // via the Glaisher-constant identity

// I[mu] from the rotationally averaged double integral
// int int log(max(r,s)) dmu(r) dmu(s), no use of the potential shortcut.
double energy_double_integral(const coulombgas::measure::RadialMeasure& m);

// Composite-Simpson evaluations on [0,1] plus the inverted tail.
double entropy_simpson(const coulombgas::measure::RadialMeasure& m);
double curvature_simpson(const coulombgas::measure::RadialMeasure& m);

}  // namespace oracles
