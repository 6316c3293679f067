#include "coulombgas/free_energy.hpp"

#include <cmath>
#include <exception>
#include <stdexcept>

#include "coulombgas/numerics.hpp"
#include "coulombgas/specfun.hpp"

namespace coulombgas::free_energy {

namespace {

constexpr double kLog2 = 0.69314718055994530942;

// One norm per particle: index j for determinantal, 2j+1 for Pfaffian.
int norm_index(const norms::ChargedEnsemble& e, int slot) {
  return e.kind() == norms::Kind::Determinantal ? slot : 2 * slot + 1;
}

std::vector<norms::LogNorm> compute_norms(const norms::ChargedEnsemble& e,
                                          bool parallel) {
  const int count = e.n_particles();
  std::vector<norms::LogNorm> out(count);
  std::exception_ptr failure;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#else
  (void)parallel;
#endif
  for (int slot = 0; slot < count; ++slot) {
    try {
      out[slot] = norms::log_norm(e, norm_index(e, slot));
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

FreeEnergy assemble(const norms::ChargedEnsemble& e,
                    std::vector<norms::LogNorm> per_norm) {
  std::vector<double> values;
  values.reserve(per_norm.size());
  for (const auto& ln : per_norm) values.push_back(ln.log_value);
  const double norm_sum = numerics::compensated_sum(values);
  double log_z = specfun::log_factorial(e.n_particles()) + norm_sum;
  if (e.kind() == norms::Kind::Pfaffian)
    log_z += e.n_particles() * kLog2;  // each skew norm is 2 h_{2k+1,2N}
  return {e, log_z, Geometry::Plane, log_z, std::move(per_norm)};
}

}  // namespace

FreeEnergy log_z_exact(const norms::ChargedEnsemble& e) {
  return assemble(e, compute_norms(e, true));
}

FreeEnergy log_z_exact_serial(const norms::ChargedEnsemble& e) {
  return assemble(e, compute_norms(e, false));
}

double log_z_spherical_closed_form(int N, double alpha, double c,
                                   norms::Kind kind) {
  if (N < 1) throw std::invalid_argument("log_z_spherical_closed_form: N < 1");
  if (!(alpha >= 0.0) || !(c >= 0.0))
    throw std::invalid_argument(
        "log_z_spherical_closed_form: charges must be >= 0");
  using specfun::log_barnes_g;
  using specfun::log_factorial;
  using specfun::log_gamma;
  const double n = N + alpha + c + 1.0;
  if (kind == norms::Kind::Determinantal)
    return log_factorial(N) - N * log_gamma(n) + log_barnes_g(N + c + 1.0) -
           log_barnes_g(c + 1.0) + log_barnes_g(N + alpha + 1.0) -
           log_barnes_g(alpha + 1.0);
  const double two_q = 2.0 * N + 2.0 * alpha + 2.0 * c;
  return log_factorial(N) +
         N * ((two_q + 1.0) * kLog2 - specfun::constants().log_pi -
              log_gamma(two_q + 2.0)) +
         log_barnes_g(N + c + 1.0) - log_barnes_g(c + 1.0) +
         log_barnes_g(N + c + 1.5) - log_barnes_g(c + 1.5) +
         log_barnes_g(N + alpha + 1.0) - log_barnes_g(alpha + 1.0) +
         log_barnes_g(N + alpha + 1.5) - log_barnes_g(alpha + 1.5);
}

double log_norm_spherical_closed_form(int N, double alpha, double c,
                                      norms::Kind kind, int j) {
  if (N < 1) throw std::invalid_argument("log_norm_spherical_closed_form: N < 1");
  using specfun::log_gamma;
  const double n = N + alpha + c + 1.0;
  if (kind == norms::Kind::Determinantal) {
    if (j < 0 || j >= N)
      throw std::out_of_range("log_norm_spherical_closed_form: j outside [0,N)");
    return log_gamma(j + c + 1.0) + log_gamma(N + alpha - j) - log_gamma(n);
  }
  if (j < 0 || j >= 2 * N)
    throw std::out_of_range("log_norm_spherical_closed_form: j outside [0,2N)");
  return log_gamma(j + 2.0 * c + 1.0) + log_gamma(2.0 * n - j - 2.0 * c - 1.0) -
         log_gamma(2.0 * n);
}

double sphere_conversion_constant(const norms::ChargedEnsemble& e) {
  const double N = e.n_particles();
  return (e.kind() == norms::Kind::Determinantal ? N * (N - 1.0)
                                                 : 2.0 * N * N) *
         kLog2;
}

FreeEnergy to_sphere_geometry(const FreeEnergy& fe) {
  if (fe.geometry != Geometry::Plane)
    throw std::invalid_argument("to_sphere_geometry: input is not planar");
  FreeEnergy out = fe;
  out.log_z = fe.log_z_plane + sphere_conversion_constant(fe.ensemble);
  out.geometry = Geometry::Sphere;
  return out;
}

FreeEnergy to_plane_geometry(const FreeEnergy& fe) {
  if (fe.geometry != Geometry::Sphere)
    throw std::invalid_argument("to_plane_geometry: input is not spherical");
  FreeEnergy out = fe;
  out.log_z = fe.log_z_plane;
  out.geometry = Geometry::Plane;
  return out;
}

}  // namespace coulombgas::free_energy
