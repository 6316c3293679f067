#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <doctest.h>

#ifndef CLI_BINARY
#define CLI_BINARY "./coulombgas"
#endif

namespace {

struct RunResult {
  int status;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(CLI_BINARY) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  const int raw = pclose(pipe);
  return {WEXITSTATUS(raw), out};
}

double field(const std::string& json, const std::string& key) {
  const auto pos = json.find("\"" + key + "\":");
  REQUIRE(pos != std::string::npos);
  return std::strtod(json.c_str() + pos + key.size() + 3, nullptr);
}

}  // namespace

TEST_CASE("free-energy command") {
  const auto r = run("free-energy --measure spherical --N 2 --alpha 0 --c 0 --kind det");
  CHECK(r.status == 0);
  CHECK(std::abs(field(r.out, "log_z") - std::log(0.5)) <= 1e-10);

  const auto sphere = run("free-energy --measure spherical --N 2 --kind det --geometry sphere");
  CHECK(std::abs(field(sphere.out, "log_z") -
                 (std::log(0.5) + 2.0 * std::log(2.0))) <= 1e-10);
}

TEST_CASE("functionals command") {
  const auto r = run("functionals --measure spherical");
  CHECK(r.status == 0);
  CHECK(std::abs(field(r.out, "I") - 0.5) <= 1e-9);
  CHECK(std::abs(field(r.out, "E") + 2.0) <= 1e-9);
  CHECK(std::abs(field(r.out, "U0")) <= 1e-9);

  const auto csv = run("functionals --measure scaled:a=2 --format csv");
  CHECK(csv.status == 0);
  CHECK(csv.out.rfind("I,E,U0,rho0,rho_tilde0,curvature_integral\n", 0) == 0);
}

TEST_CASE("norms command emits the documented columns") {
  const auto r = run("norms --measure spherical --N 4 --kind det --format csv");
  CHECK(r.status == 0);
  CHECK(r.out.rfind("j,tau,peak,log_h,err_estimate\n", 0) == 0);
  // four data rows follow the header
  int rows = -1;
  for (char ch : r.out)
    if (ch == '\n') ++rows;
  CHECK(rows == 4);
}

TEST_CASE("expansion and residuals commands") {
  const auto r = run("expansion --measure spherical --kind det --N 10");
  CHECK(r.status == 0);
  CHECK(std::abs(field(r.out, "c1") + 0.5) <= 1e-9);
  CHECK(std::abs(field(r.out, "c2") - 0.5) <= 1e-15);

  const auto res = run(
      "residuals --measure spherical --kind det --N-grid 10,20,40 --format csv");
  CHECK(res.status == 0);
  CHECK(res.out.rfind("N,exact,predicted,residual\n", 0) == 0);
}

TEST_CASE("determinism of repeated runs") {
  const std::string cmd =
      "free-energy --measure mixture:theta=0.5,a=2 --N 16 --kind pfaff --alpha 0.5";
  const auto first = run(cmd + " --threads 1");
  const auto second = run(cmd + " --threads 4");
  CHECK(first.status == 0);
  CHECK(first.out == second.out);
}

TEST_CASE("invalid arguments exit with 2") {
  CHECK(run("free-energy --measure spherical --kind det").status == 2);  // no N
  CHECK(run("free-energy --measure nope --N 2 --kind det").status == 2);
  CHECK(run("free-energy --measure spherical --N 2 --kind banana").status == 2);
  CHECK(run("free-energy --measure spherical --N 2 --kind det --alpha -1").status == 2);
  CHECK(run("norms --measure spherical --N 0 --kind det").status == 2);
  CHECK(run("bogus-subcommand").status == 2);
  CHECK(run("--help").status == 0);
}
