#pragma once

#include <functional>
#include <string>

// Radially symmetric background measures on the plane and the functionals of
// them that parameterize the free-energy expansions.

namespace coulombgas::measure {

using RealFn = std::function<double(double)>;

// A probability density rho(|z|) with respect to dA = d^2z / pi, smooth and
// strictly positive, decaying like tail_amplitude / r^4 so that the pushed
// forward density on the sphere stays positive at the north pole.  Analytic
// first and second radial derivatives are mandatory; the tail mass F and the
// logarithmic potential U may be supplied in closed form and are otherwise
// evaluated by quadrature.  Immutable after construction.
class RadialMeasure {
 public:
  RadialMeasure(std::string label, RealFn rho, RealFn drho, RealFn d2rho,
                double tail_amplitude, RealFn closed_form_mass_tail = nullptr,
                RealFn closed_form_potential = nullptr);

  double rho(double r) const { return rho_(r); }
  double drho(double r) const { return drho_(r); }
  double d2rho(double r) const { return d2rho_(r); }
  double tail_amplitude() const { return tail_amplitude_; }
  const std::string& label() const { return label_; }
  bool has_closed_form_mass_tail() const { return bool(mass_tail_); }
  bool has_closed_form_potential() const { return bool(potential_); }

  // F(t) = int_t^inf 2 r rho(r) dr, the mass outside radius t.  F(0) = 1 and
  // F decreases strictly to 0.
  double mass_tail(double t) const;

  // U(r) = -log r - int_r^inf F(s)/s ds, the logarithmic potential of the
  // measure at |z| = r > 0 (the r = 0 value is exposed via u_at_zero).
  double log_potential(double r) const;

 private:
  std::string label_;
  RealFn rho_, drho_, d2rho_;
  double tail_amplitude_;
  RealFn mass_tail_, potential_;
};

struct MeasureFunctionals {
  double energy;              // I[mu]
  double entropy;             // E[mu]
  double u_zero;              // U_mu(0)
  double rho0;                // rho(0)
  double rho_tilde0;          // tail amplitude, the density at the north pole
  double curvature_integral;  // int (rho''/rho - (5/4)(rho'/rho)^2) t dt
};

// U_mu(0) = -int_0^inf log(t) 2 t rho(t) dt.
double u_at_zero(const RadialMeasure& m);

// Logarithmic energy I[mu] = -int U_mu dmu, reduced to the single integral
// -U_mu(0) + int_0^inf F(t)(1 - F(t))/t dt.
double energy(const RadialMeasure& m);

// E[mu] = int_0^inf log(rho(t)) 2 t rho(t) dt.
double entropy(const RadialMeasure& m);

// Tail amplitude of the density, cross-checked against s^-4 rho(1/s) at
// small s; a mismatch signals a mis-specified measure.
double rho_tilde_zero(const RadialMeasure& m);

// int_0^inf (rho''/rho - (5/4)(rho'/rho)^2) t dt.
double curvature_integral(const RadialMeasure& m);

MeasureFunctionals functionals(const RadialMeasure& m);

// Built-in families.
RadialMeasure spherical();                    // rho(r) = (1+r^2)^-2
RadialMeasure scaled(double a);               // rho(r) = a^2 (a^2+r^2)^-2
RadialMeasure mixture(double theta, double a);  // theta*spherical + (1-theta)*scaled(a)

// Parses "spherical", "scaled:a=<float>", "mixture:theta=<float>,a=<float>".
RadialMeasure parse_measure(const std::string& spec);

}  // namespace coulombgas::measure
