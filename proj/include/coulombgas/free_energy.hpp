#pragma once

#include <vector>

#include "coulombgas/norms.hpp"

// Exact log partition functions assembled from norms, the closed-form
// spherical-ensemble oracles, and plane/sphere normalization conversions.

namespace coulombgas::free_energy {

enum class Geometry { Plane, Sphere };

struct FreeEnergy {
  norms::ChargedEnsemble ensemble;
  double log_z = 0.0;  // in the normalization indicated by `geometry`
  Geometry geometry = Geometry::Plane;
  double log_z_plane = 0.0;  // planar value kept for exact round trips
  std::vector<norms::LogNorm> per_norm;  // ascending index order
};

// log Z = log N! + sum_j log h_{j,N} (determinantal) or
// log Z = log N! + sum_k log(2 h_{2k+1,2N}) (Pfaffian), planar geometry.
// Norm evaluations run in parallel; the reduction is a fixed-order
// compensated sum, so the result does not depend on the thread count.
FreeEnergy log_z_exact(const norms::ChargedEnsemble& e);

// Plain-loop reference path, kept for testing the parallel kernel against.
FreeEnergy log_z_exact_serial(const norms::ChargedEnsemble& e);

// Closed form for the spherical background measure:
// determinantal  N! Gamma(n)^-N G(N+c+1)G(N+alpha+1) / (G(c+1)G(alpha+1)),
// Pfaffian       N! (2^{2N+2a+2c+1} / (pi Gamma(2N+2a+2c+2)))^N times the
//                four Barnes ratios at c+1, c+3/2, alpha+1, alpha+3/2.
double log_z_spherical_closed_form(int N, double alpha, double c,
                                   norms::Kind kind);

// Closed form for a single norm of the spherical weight:
// determinantal  h_{j,N}  = Gamma(j+c+1) Gamma(N+alpha-j) / Gamma(n),
// Pfaffian       h_{j,2N} = Gamma(j+2c+1) Gamma(2n-j-2c-1) / Gamma(2n).
double log_norm_spherical_closed_form(int N, double alpha, double c,
                                      norms::Kind kind, int j);

// 2-power conversion constant between planar and spherical normalizations:
// N(N-1) log 2 for determinantal, 2N^2 log 2 for Pfaffian ensembles.
double sphere_conversion_constant(const norms::ChargedEnsemble& e);

FreeEnergy to_sphere_geometry(const FreeEnergy& fe);
FreeEnergy to_plane_geometry(const FreeEnergy& fe);

}  // namespace coulombgas::free_energy
