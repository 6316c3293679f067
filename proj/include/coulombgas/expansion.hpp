#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coulombgas/measure.hpp"
#include "coulombgas/norms.hpp"

// Five-term free-energy expansion coefficients for both ensemble kinds, the
// rearranged series in the total background charge n, the explicit
// spherical-ensemble expansions, and residual sweeps against exact values.

namespace coulombgas::expansion {

struct NamedTerm {
  std::string name;
  double value;
};

// Coefficients of  c1 N^2 + c2 N log N + c3 N + c4 log N + c5.  For the
// Pfaffian kind the c* fields hold the D-coefficients.  Each coefficient is
// the exact in-order sum of its term breakdown.
struct ExpansionCoefficients {
  norms::Kind kind = norms::Kind::Determinantal;
  double alpha = 0.0;
  double c = 0.0;
  double c1 = 0.0, c2 = 0.0, c3 = 0.0, c4 = 0.0, c5 = 0.0;
  std::array<std::vector<NamedTerm>, 5> term_breakdown;

  double coefficient(int i) const;  // i in [1,5]
};

ExpansionCoefficients det_coefficients(const measure::MeasureFunctionals& f,
                                       double alpha, double c);
ExpansionCoefficients pfaff_coefficients(const measure::MeasureFunctionals& f,
                                         double alpha, double c);

// The five-term value at N (natural logs throughout).
double evaluate(const ExpansionCoefficients& coeffs, int N);

// The same expansion rearranged in n = N + alpha + c + 1, keeping the
// -(N/2) log(n/N) cross term intact: energy multiplies n^2, entropy and
// point-charge terms multiply n.  Agrees with evaluate() up to O(1/N).
double evaluate_n_form(const measure::MeasureFunctionals& f, double alpha,
                       double c, int N, norms::Kind kind);

// Explicit expansion coefficients for the spherical background measure.
ExpansionCoefficients spherical_example_coefficients(double alpha, double c,
                                                     norms::Kind kind);
double spherical_example_expansion(int N, double alpha, double c,
                                   norms::Kind kind);

struct ResidualReport {
  std::vector<int> n_grid;
  std::vector<double> exact;
  std::vector<double> predicted;
  std::vector<double> residual;  // exact - predicted
  std::optional<std::array<double, 5>> fitted_constants;
};

// Exact log Z versus the five-term prediction on an ascending N grid.
// With fit = true (grid size >= 5) the exact values are least-squares
// projected on {N^2, N log N, N, log N, 1}.
ResidualReport residual_sweep(const measure::RadialMeasure& m, double alpha,
                              double c, norms::Kind kind,
                              std::span<const int> n_grid, bool fit = false);

// Least-squares coefficients of values against {N^2, N log N, N, log N, 1};
// Householder QR on the column-scaled design matrix.
std::array<double, 5> fit_expansion_coefficients(std::span<const int> n_grid,
                                                 std::span<const double> values);

}  // namespace coulombgas::expansion
