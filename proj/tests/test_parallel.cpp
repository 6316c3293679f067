#include <cmath>
#include <doctest.h>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "coulombgas/free_energy.hpp"
#include "coulombgas/measure.hpp"

using namespace coulombgas;
using norms::ChargedEnsemble;
using norms::Kind;

TEST_CASE("parallel kernel is bit-identical to the serial reference") {
  const auto sph = measure::spherical();
  const auto mix = measure::mixture(0.5, 2.0);
  const ChargedEnsemble cases[] = {
      ChargedEnsemble(sph, 64, 0.0, 0.0, Kind::Determinantal),
      ChargedEnsemble(sph, 48, 0.5, 1.7, Kind::Pfaffian),
      ChargedEnsemble(mix, 40, 1.0, 0.0, Kind::Determinantal),
  };
  for (const auto& e : cases) {
    const auto serial = free_energy::log_z_exact_serial(e);
    const auto parallel = free_energy::log_z_exact(e);
    CHECK(serial.log_z == parallel.log_z);
    REQUIRE(serial.per_norm.size() == parallel.per_norm.size());
    for (std::size_t i = 0; i < serial.per_norm.size(); ++i) {
      CHECK(serial.per_norm[i].log_value == parallel.per_norm[i].log_value);
      CHECK(serial.per_norm[i].peak == parallel.per_norm[i].peak);
    }
  }
}

#ifdef _OPENMP
TEST_CASE("result does not depend on the thread count") {
  const auto sph = measure::spherical();
  const ChargedEnsemble e(sph, 56, 1.7, 0.5, Kind::Pfaffian);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const double one = free_energy::log_z_exact(e).log_z;
  omp_set_num_threads(saved > 1 ? saved : 2);
  const double many = free_energy::log_z_exact(e).log_z;
  omp_set_num_threads(saved);
  CHECK(one == many);
}
#endif
