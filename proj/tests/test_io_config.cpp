#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bcb/config.hpp"
#include "bcb/dynamics.hpp"
#include "bcb/io.hpp"
#include "bcb/rng.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace bcb;

namespace {

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

TrajectoryRecord short_run(std::uint64_t seed = 9) {
  Rng rng(seed);
  const ControlParams p = ControlParams::common(1.0, 0.5, -0.4, 0.2);
  return integrate(sample_world_state(rng, {}), p, 0.5, 1e-3);
}

}  // namespace

TEST_SUITE("io_config") {

TEST_CASE("fmt17 round-trips doubles exactly") {
  Rng rng(53);
  for (int i = 0; i < 2000; ++i) {
    const double exponent = rng.uniform(-12, 12);
    const double v = rng.uniform(-1, 1) * std::pow(10.0, exponent);
    const std::string text = fmt17(v);
    CHECK(std::strtod(text.c_str(), nullptr) == v);
  }
  CHECK(std::strtod(fmt17(0.1).c_str(), nullptr) == 0.1);
  CHECK(std::strtod(fmt17(-1.0 / 3.0).c_str(), nullptr) == -1.0 / 3.0);
}

TEST_CASE("trajectory CSV writes the pinned header and round-trips exactly") {
  const TrajectoryRecord record = short_run();
  const auto path = temp_file("bcb_test_traj.csv");
  write_trajectory_csv(path.string(), record);

  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == kTrajectoryCsvHeader);

  const auto rows = read_trajectory_csv(path.string());
  REQUIRE(rows.size() == record.samples.size());
  for (std::size_t i = 0; i < rows.size(); i += 37) {
    CHECK(rows[i].t() == record.samples[i].t);
    CHECK(rows[i].agent1().r.x == record.samples[i].state.agent1.r.x);
    CHECK(rows[i].shape().xtilde == record.samples[i].shape.xtilde);
  }
  std::filesystem::remove(path);
}

TEST_CASE("identical seed and config produce byte-identical CSV") {
  const TrajectoryRecord a = short_run(1234);
  const TrajectoryRecord b = short_run(1234);
  std::ostringstream sa, sb;
  write_trajectory_csv(sa, a);
  write_trajectory_csv(sb, b);
  CHECK(sa.str() == sb.str());
  CHECK(sa.str().find('\r') == std::string::npos);
}

TEST_CASE("verify accepts emitted rows and rejects corrupted ones") {
  const TrajectoryRecord record = short_run();
  const auto path = temp_file("bcb_test_verify.csv");
  write_trajectory_csv(path.string(), record);
  auto rows = read_trajectory_csv(path.string());
  std::filesystem::remove(path);

  const VerifyReport good = verify_trajectory_rows(rows);
  CHECK(good.ok);
  CHECK(good.rows == record.samples.size());
  CHECK(good.max_frame_violation < 1e-9);

  rows[rows.size() / 2].values[4] += 1e-3;  // bend one frame axis
  const VerifyReport bad = verify_trajectory_rows(rows);
  CHECK_FALSE(bad.ok);
}

TEST_CASE("read_trajectory_csv reports malformed content with line numbers") {
  const auto path = temp_file("bcb_test_bad.csv");
  {
    std::ofstream out(path);
    out << kTrajectoryCsvHeader << "\n";
    out << "0,1,2,not_a_number\n";
  }
  try {
    read_trajectory_csv(path.string());
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  std::filesystem::remove(path);
}

TEST_CASE("parse_config accepts the documented schema example") {
  const RunConfig c = parse_config(
      "lambda = 0.5\nmu = 2\na = -0.5\na0 = 0\npreset = prop1\nt_max = 200\n"
      "dt = 0.001");
  CHECK(c.preset == "prop1");
  CHECK(c.initial_kind == InitialKind::Preset);
  CHECK(c.t_max == 200.0);
  CHECK(c.dt == 1e-3);
  const ControlParams& p = c.control_params();
  CHECK(p.mu() == 2.0);
  CHECK(p.lambda() == 0.5);
  CHECK(p.a() == -0.5);
  CHECK(p.a0() == 0.0);
}

TEST_CASE("parse_config accepts sections and comments") {
  const RunConfig c = parse_config(
      "# scenario\n[params]\nmu = 1\nlambda = 0.25  # balance\na = -0.4\na0 = 0.2\n"
      "[run]\nt_max = 5\nseed = 7\noutputs = trajectory,report\n");
  CHECK(c.seed == 7);
  CHECK(c.outputs.size() == 2);
  CHECK(c.outputs.count(OutputKind::Trajectory) == 1);
  CHECK(c.outputs.count(OutputKind::Shape) == 0);
}

TEST_CASE("parse_config rejects invariant violations with the invariant named") {
  try {
    parse_config("mu = 1\nlambda = 1.0\na = -0.4\na0 = 0.2\n");
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("lambda") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("mu = 1\nlambda = 0.5\na = 1.5\na0 = 0.2\n"),
                  ValidationError);
  CHECK_THROWS_AS(parse_config("mu = -2\nlambda = 0.5\na = 0.5\na0 = 0.2\n"),
                  ValidationError);
}

TEST_CASE("parse_config rejects unknown keys with the line number") {
  try {
    parse_config("mu = 1\nlambda = 0.5\nbogus = 3\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("per-agent keys override common keys") {
  const RunConfig c = parse_config(
      "mu = 1\nmu_2 = 3\nmu_b = 2\nlambda = 0.5\na = -0.4\na_1b = 0.6\na0 = 0.2\n"
      "initial = random\n");
  const ControlParams& p = c.control_params();
  CHECK(p.mu_1() == 1.0);
  CHECK(p.mu_2() == 3.0);
  CHECK(p.mu_1b() == 2.0);
  CHECK(p.mu_2b() == 2.0);
  CHECK(p.a_1b() == 0.6);
  CHECK(p.a_2b() == 0.2);
  CHECK_FALSE(p.symmetric());
}

TEST_CASE("parse_config rejects conflicting initial sources") {
  CHECK_THROWS_AS(parse_config("preset = prop1\nshape = 10 5 5 0 0 0 0 -1\n"),
                  ValidationError);
}

TEST_CASE("shape and state-literal initial conditions resolve") {
  Rng rng(5);
  const RunConfig via_shape = parse_config(
      "mu = 1\nlambda = 0.5\na = -0.4\na0 = 0.2\nshape = 10,5,5,0,0,0,0,-1\n");
  const WorldState w = resolve_initial(via_shape, rng);
  CHECK(std::abs(w.rho() - 10.0) < 1e-12);

  const RunConfig via_state = parse_config(
      "mu = 1\nlambda = 0.5\na = -0.4\na0 = 0.2\n"
      "r1 = 5 0 0\nx1 = 0 1 0\nr2 = -5 0 0\nx2 = 0 -1 0\n");
  const WorldState s = resolve_initial(via_state, rng);
  CHECK((s.agent1.frame.x_axis - Vec3{0, 1, 0}).norm() < 1e-15);
  CHECK(s.beacon.norm() == 0.0);
}

TEST_CASE("presets pin the documented parameter values") {
  const Preset& p1 = find_preset("prop1");
  CHECK(p1.params.mu() == 2.0);
  CHECK(p1.params.a() == -0.5);
  CHECK(p1.rho_1b_choice == 3.0);
  CHECK(p1.equilibrium_shape().rho == doctest::Approx(2.0));

  const Preset& p2a = find_preset("prop2a");
  CHECK(p2a.equilibrium_shape().rho_1b == doctest::Approx(5.0));

  const Preset& p2b = find_preset("prop2b");
  CHECK(p2b.equilibrium_shape().xtilde == 1.0);
  CHECK_THROWS_AS(find_preset("nope"), ValidationError);
  CHECK(preset_names().size() == 3);
}

TEST_CASE("random initial conditions respect the sampler options") {
  const RunConfig c = parse_config(
      "mu = 1\nlambda = 0.5\na = -0.4\na0 = 0.2\ninitial = random\nseed = 11\n"
      "box = 3\nmin_sep = 0.5\n");
  Rng rng(c.seed);
  const WorldState w = resolve_initial(c, rng);
  CHECK(w.rho() >= 0.5);
  CHECK(std::abs(w.agent1.r.x) <= 3.0);
}

}  // TEST_SUITE
