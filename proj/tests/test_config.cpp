#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "json.hpp"
#include "spinbath/config.hpp"
#include "spinbath/io.hpp"

using namespace spinbath;

namespace {

const char* kExample = R"(
# example run
[model]
type = sib

[system]
epsilon = 10
initial = coherent

[bath]
xi = 0.01
lambda_kappa = 1.125
omega0 = 10
damping = 52
band = medium
temperature_k = 0.01

[grid]
dt = 0.5
steps = 100

[propagation]
kmax = 3
)";

}  // namespace

TEST_CASE("config parse and resolve") {
  const RunConfig c = parse_config(kExample);
  CHECK(c.model == "sib");
  CHECK(c.epsilon == 10.0);
  CHECK(c.lambda_kappa == 1.125);
  const ResolvedRun run = resolve(c);
  CHECK(run.system.epsilon == 10.0);
  CHECK(run.system.delta == 1.0);
  // T = 0.01 K at delta_scale 5e9 -> beta = 5e9/(1.3092e11 * 0.01)
  CHECK(run.bath.beta == doctest::Approx(3.8191).epsilon(1e-4));
  CHECK(run.bath.band.omega_max == doctest::Approx(11.0));
  const auto& eff = std::get<EffectiveDensity>(run.bath.density);
  CHECK(eff.coupling_product == 1.125);
  CHECK(eff.cutoff == doctest::Approx(11.0));
  CHECK(run.rho0(0, 1) == std::complex<double>(0.5, 0.0));
}

TEST_CASE("config round-trip is the identity") {
  const RunConfig c = parse_config(kExample);
  CHECK(parse_config(serialize_config(c)) == c);

  RunConfig sweep = c;
  sweep.sweep_param1 = "bath.lambda_kappa";
  sweep.sweep_values1 = {1.0, 1.125};
  CHECK(parse_config(serialize_config(sweep)) == sweep);
}

TEST_CASE("config diagnostics name the offending field") {
  // missing required field
  try {
    resolve(parse_config("[bath]\nxi = 0.01\nbeta = 3.8\nband = medium\n"));
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("system.epsilon") != std::string::npos);
  }
  // unknown key
  CHECK_THROWS_AS(parse_config("[bath]\nxii = 0.01\n"), ConfigError);
  // malformed line
  CHECK_THROWS_AS(parse_config("[bath]\nxi 0.01\n"), ConfigError);
  // key outside a section
  CHECK_THROWS_AS(parse_config("xi = 0.01\n"), ConfigError);
  // non-numeric value
  CHECK_THROWS_AS(parse_config("[bath]\nxi = lots\n"), ConfigError);
}

TEST_CASE("mutually exclusive forms are rejected") {
  RunConfig c = parse_config(kExample);
  c.epsilon_si = 5e10;
  CHECK_THROWS_AS(resolve(c), ConfigError);

  RunConfig t = parse_config(kExample);
  t.beta = 3.8191;  // temperature_k already set
  CHECK_THROWS_AS(resolve(t), ConfigError);

  // SI form converts through delta_scale
  RunConfig si = parse_config(kExample);
  si.epsilon.reset();
  si.epsilon_si = 5e10;
  CHECK(resolve(si).system.epsilon == doctest::Approx(10.0));

  // SIB fields on an SB model
  RunConfig sb = parse_config(kExample);
  sb.model = "sb";
  CHECK_THROWS_AS(resolve(sb), ConfigError);
}

TEST_CASE("overrides") {
  RunConfig c = parse_config(kExample);
  apply_override(c, "propagation.kmax=5");
  apply_override(c, "bath.lambda_kappa=1.0");
  CHECK(c.kmax == 5);
  CHECK(c.lambda_kappa == 1.0);
  CHECK_THROWS_AS(apply_override(c, "nonsense"), ConfigError);
  CHECK_THROWS_AS(apply_override(c, "bath.unknown=1"), ConfigError);
}

TEST_CASE("trajectory CSV round-trips at 17 significant digits") {
  Trajectory traj;
  traj.grid = TimeGrid{0.5, 2};
  traj.system = QubitHamiltonian{1.0, 1.0};
  traj.kmax = 3;
  for (int k = 0; k <= 2; ++k) {
    DensityMatrix rho = DensityMatrix::Zero();
    rho(0, 0) = 1.0 / 3.0 + 1e-16 * k;
    rho(1, 1) = 1.0 - rho(0, 0).real();
    rho(0, 1) = std::complex<double>(0.123456789012345678, -1.0 / 7.0);
    rho(1, 0) = std::conj(rho(0, 1));
    traj.states.push_back(rho);
    traj.trace_drift.push_back(1e-15 * k);
  }
  const std::string csv = trajectory_csv(traj);
  std::istringstream is(csv);
  std::string header, line;
  std::getline(is, header);
  CHECK(header == "t,re_rho11,re_rho22,re_rho12,im_rho12,trace_drift");
  std::getline(is, line);
  double t, r11, r22, r12, i12, drift;
  REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf", &t, &r11, &r22,
                      &r12, &i12, &drift) == 6);
  CHECK(r11 == traj.states[0](0, 0).real());  // bit-exact round trip
  CHECK(i12 == traj.states[0](0, 1).imag());

  const auto dir = std::filesystem::temp_directory_path() / "spinbath_io_test";
  std::filesystem::remove_all(dir);
  write_trajectory_csv(traj, dir / "traj.csv");
  CHECK(std::filesystem::exists(dir / "traj.csv"));
  CHECK(!std::filesystem::exists(dir / "traj.csv.tmp"));

  write_metadata_json(traj, {{"bath.xi", "0.01"}}, dir / "traj.meta.json");
  std::ifstream meta(dir / "traj.meta.json");
  const nlohmann::json j = nlohmann::json::parse(meta);
  CHECK(j["kmax"] == 3);
  CHECK(j["grid"]["dt"] == 0.5);
  CHECK(j["params"]["bath.xi"] == "0.01");
  CHECK(j.contains("version"));
  CHECK(j.contains("warnings"));

  write_column(traj, "abs_rho12", dir / "traj.dat");
  CHECK(std::filesystem::exists(dir / "traj.dat"));
  CHECK_THROWS_AS(write_column(traj, "bogus", dir / "x.dat"),
                  std::invalid_argument);
  std::filesystem::remove_all(dir);
}
