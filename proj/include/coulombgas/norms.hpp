#pragma once

#include <vector>

#include "coulombgas/measure.hpp"

// Orthogonal-norm machinery: exact log norms log h_{j,m} of the monomials
// against the ensemble weight, skew norms and skew-orthogonal polynomial
// coefficients for the Pfaffian case, and the per-regime asymptotic
// predictors.

namespace coulombgas::norms {

enum class Kind { Determinantal, Pfaffian };

// A background measure with N particles, point charges alpha (at infinity)
// and c (at the origin), and an integrable-structure kind.  The total
// background charge is n = N + alpha + c + 1.
class ChargedEnsemble {
 public:
  ChargedEnsemble(measure::RadialMeasure m, int n_particles, double alpha,
                  double c, Kind kind);

  const measure::RadialMeasure& background() const { return measure_; }
  int n_particles() const { return n_particles_; }
  double alpha() const { return alpha_; }
  double c() const { return c_; }
  Kind kind() const { return kind_; }

  double total_charge() const {  // n
    return n_particles_ + alpha_ + c_ + 1.0;
  }
  // Number of valid norm indices: N for determinantal, 2N for Pfaffian.
  int norm_index_count() const;

 private:
  measure::RadialMeasure measure_;
  int n_particles_;
  double alpha_, c_;
  Kind kind_;
};

struct LogNorm {
  int j = 0;
  double log_value = 0.0;
  double peak = 0.0;              // critical radius, in original coordinates
  double quadrature_error = 0.0;  // absolute error estimate on log_value
};

// Mass fractions entering the critical-point equations F(t) = 1 - tau.
double tau_c(const ChargedEnsemble& e, int j);
double tau_alpha(const ChargedEnsemble& e, int j);
double tilde_tau_c(const ChargedEnsemble& e, int j);
double tilde_tau_alpha(const ChargedEnsemble& e, int j);

// Effective single-particle potential whose Laplace weight produces the j-th
// norm: -2 U(r) - ((2j+2c+1)/n) log r, with the Pfaffian variant using
// (2j+4c+1)/(2n).
double v_j(const ChargedEnsemble& e, int j, double r);

// Exact log h_{j,N} (determinantal) or log h_{j,2N} (Pfaffian) by
// peak-normalized quadrature in the log domain.  Valid for all j in range;
// indices with tail fraction above 1/2 are integrated in inverted coordinates
// s = 1/r to keep the transformed peak well conditioned.
LogNorm log_norm(const ChargedEnsemble& e, int j);

// log r_k = log 2 + log h_{2k+1,2N}; Pfaffian ensembles only.
double log_skew_norm(const ChargedEnsemble& e, int k);

struct SkewPolynomial {
  int k = 0;
  std::vector<double> even_coefficients;  // coefficient of z^{2l}, l = 0..k
  double log_skew_norm = 0.0;
};

// Even skew-orthogonal polynomial q_{2k} for a radial weight: monic, with
// the coefficient of z^{2l} given by prod_j h_{2l+2j+2} / h_{2l+2j+1}.
// Products are formed in the log domain; an overflowing coefficient is
// reported, never saturated.
SkewPolynomial skew_poly_even_coefficients(const ChargedEnsemble& e, int k);

// Subleading Laplace correction functional of the density.
double b1_functional(const measure::RadialMeasure& m, double r);

// Three-regime asymptotic predictors for log norms; diagnostics only, the
// exact values always come from log_norm.
double predicted_log_norm_bulk(const ChargedEnsemble& e, int j);
double predicted_log_norm_origin(const ChargedEnsemble& e, int j);
double predicted_log_norm_infinity(const ChargedEnsemble& e, int j);

// Leading-order peak location sqrt(tau/rho(0)) (or the inverted-coordinate
// analogue past the equator).
double critical_point_asymptote(const ChargedEnsemble& e, int j);

}  // namespace coulombgas::norms
