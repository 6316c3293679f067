// Compares the OpenMP norm kernel against the serial reference path and
// reports the speedup.  The fixed-order compensated reduction makes the two
// results bit-identical, which is asserted here as well.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "coulombgas/free_energy.hpp"
#include "coulombgas/measure.hpp"
#include "coulombgas/norms.hpp"

using namespace coulombgas;
using clock_type = std::chrono::steady_clock;

namespace {

double run_case(const char* name, const norms::ChargedEnsemble& e) {
  auto t0 = clock_type::now();
  const auto serial = free_energy::log_z_exact_serial(e);
  auto t1 = clock_type::now();
  const auto parallel = free_energy::log_z_exact(e);
  auto t2 = clock_type::now();
  const double ts = std::chrono::duration<double>(t1 - t0).count();
  const double tp = std::chrono::duration<double>(t2 - t1).count();
  const bool identical = serial.log_z == parallel.log_z;
  std::printf("%-24s serial %8.3fs  parallel %8.3fs  speedup %5.2fx  %s\n",
              name, ts, tp, ts / tp, identical ? "bit-identical" : "MISMATCH");
  if (!identical) std::exit(1);
  return ts / tp;
}

}  // namespace

int main(int argc, char** argv) {
  int n = argc > 1 ? std::atoi(argv[1]) : 4096;
  if (n < 2) n = 4096;
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif
  const auto sph = measure::spherical();
  const auto mix = measure::mixture(0.5, 2.0);
  run_case("spherical det", norms::ChargedEnsemble(sph, n, 0.0, 0.0,
                                                   norms::Kind::Determinantal));
  run_case("spherical pfaff", norms::ChargedEnsemble(sph, n / 2, 0.5, 1.0,
                                                     norms::Kind::Pfaffian));
  run_case("mixture det", norms::ChargedEnsemble(mix, n / 2, 0.0, 0.0,
                                                 norms::Kind::Determinantal));
  return 0;
}
