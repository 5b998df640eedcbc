// bcbsim: simulate and analyze beacon-referenced mutual CB pursuit.
//
// Subcommands: run, sweep, equilibrium, verify, embed. All state flows
// through flags and config files; no environment variables.

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "bcb/analysis.hpp"
#include "bcb/config.hpp"
#include "bcb/dynamics.hpp"
#include "bcb/equilibria.hpp"
#include "bcb/io.hpp"
#include "bcb/rng.hpp"
#include "bcb/sweep.hpp"
#include "json.hpp"

using json = nlohmann::json;
using namespace bcb;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSingular = 2;
constexpr int kExitIo = 3;
constexpr int kExitVerifyFailed = 4;

[[noreturn]] void fail(const std::string& code, const std::string& message, int exit_code) {
  const json err = {{"error", {{"code", code}, {"message", message}}}};
  std::cerr << err.dump() << "\n";
  std::exit(exit_code);
}

json to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

json to_json(const EffectiveShape& s) {
  return json{{"rho", s.rho},         {"rho1b", s.rho_1b},   {"rho2b", s.rho_2b},
              {"xbar1", s.xbar_1},    {"xbar2", s.xbar_2},   {"xbar1b", s.xbar_1b},
              {"xbar2b", s.xbar_2b},  {"xtilde", s.xtilde}};
}

json to_json(const ControlParams& p) {
  return json{{"mu_1", p.mu_1()},   {"mu_2", p.mu_2()},   {"mu_1b", p.mu_1b()},
              {"mu_2b", p.mu_2b()}, {"lambda", p.lambda()}, {"a_1", p.a_1()},
              {"a_2", p.a_2()},     {"a_1b", p.a_1b()},   {"a_2b", p.a_2b()}};
}

json to_json(const CircleFit& c) {
  return json{{"center", to_json(c.center)},
              {"normal", to_json(c.normal)},
              {"radius", c.radius},
              {"rms", c.rms}};
}

json to_json(const CirclingReport& c) {
  json out{{"converged", c.converged},
           {"window", c.window},
           {"tol", c.tol},
           {"max_beacon_bearing", c.max_beacon_bearing},
           {"max_bearing_sum", c.max_bearing_sum},
           {"max_shape_drift", c.max_shape_drift},
           {"terminal_shape", to_json(c.terminal_shape)}};
  out["circle1"] = c.circle1 ? to_json(*c.circle1) : json(nullptr);
  out["circle2"] = c.circle2 ? to_json(*c.circle2) : json(nullptr);
  if (c.circle1 && c.circle2) {
    out["normal_angle"] = c.normal_angle;
    out["common_axis_deviation"] = c.common_axis_deviation;
    out["plane_separation"] = c.plane_separation;
  }
  return out;
}

json to_json(const WorldState& w) {
  const auto agent = [](const AgentState& a) {
    return json{{"r", to_json(a.r)},
                {"x", to_json(a.frame.x_axis)},
                {"y", to_json(a.frame.y_axis)},
                {"z", to_json(a.frame.z_axis)}};
  };
  return json{{"agent1", agent(w.agent1)},
              {"agent2", agent(w.agent2)},
              {"beacon", to_json(w.beacon)}};
}

/// Distances of a terminal shape from each equilibrium family's prediction.
json equilibrium_matches(const EffectiveShape& terminal, const ControlParams& p) {
  json matches = json::array();
  const auto distance = [&](const EffectiveShape& predicted) {
    const auto a = terminal.as_array();
    const auto b = predicted.as_array();
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
  };
  if (!p.symmetric()) return matches;
  if (p.a0() == 0.0) {
    json entry{{"class", "prop1"}};
    const ExistenceCondition cond = prop1_condition(p);
    entry["exists"] = cond.holds;
    entry["condition"] = cond.inequality;
    if (cond.holds) {
      // The beacon distance is a free parameter; match it to the run.
      const double rho = 2.0 * p.lambda() / ((1.0 - p.lambda()) * p.mu() * (-p.a()));
      const double choice = std::max(terminal.rho_1b, rho / 2.0);
      const auto eq = prop1_equilibrium(p, choice);
      entry["predicted"] = to_json(eq->shape);
      entry["distance"] = distance(eq->shape);
    }
    matches.push_back(entry);
  } else {
    for (int which : {0, 1}) {
      const char* name = which == 0 ? "prop2a" : "prop2b";
      const auto eq = which == 0 ? prop2a_equilibrium(p) : prop2b_equilibrium(p);
      const ExistenceCondition cond =
          which == 0 ? prop2a_condition(p) : prop2b_condition(p);
      json entry{{"class", name}, {"exists", cond.holds}, {"condition", cond.inequality}};
      if (eq) {
        entry["predicted"] = to_json(eq->shape);
        entry["distance"] = distance(eq->shape);
      }
      matches.push_back(entry);
    }
  }
  return matches;
}

struct CommonFlags {
  std::string config_path;
  std::string preset;
  std::string out_dir;
  std::optional<double> t_max;
  std::optional<double> dt;
  std::optional<long long> seed;
  std::string format{"json"};
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags, bool with_run_knobs = true) {
  cmd->add_option("--config", flags.config_path, "Config file (key = value schema)");
  cmd->add_option("--preset", flags.preset, "Scenario preset: prop1, prop2a, prop2b");
  cmd->add_option("--out", flags.out_dir, "Output directory");
  if (with_run_knobs) {
    cmd->add_option("--t-max", flags.t_max, "Integration horizon (s)");
    cmd->add_option("--dt", flags.dt, "Fixed integration step (s)");
    cmd->add_option("--seed", flags.seed, "PRNG seed for randomized choices");
  }
  cmd->add_option("--format", flags.format, "Stdout format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
}

RunConfig assemble_config(const CommonFlags& flags) {
  if (!flags.config_path.empty() && !flags.preset.empty()) {
    throw ValidationError("give the preset inside the config file or as a flag, "
                          "not both");
  }
  RunConfig config;
  if (!flags.config_path.empty()) {
    config = load_config(flags.config_path);
  } else if (!flags.preset.empty()) {
    config = parse_config("preset = " + flags.preset);
  } else {
    throw ValidationError("either --config or --preset is required");
  }
  if (flags.t_max) {
    if (*flags.t_max < 0.0) throw ValidationError("t_max must be nonnegative");
    config.t_max = *flags.t_max;
  }
  if (flags.dt) {
    if (!(*flags.dt > 0.0)) throw ValidationError("dt must be positive");
    config.dt = *flags.dt;
  }
  if (flags.seed) {
    if (*flags.seed < 0) throw ValidationError("seed must be nonnegative");
    config.seed = static_cast<std::uint64_t>(*flags.seed);
  }
  return config;
}

std::filesystem::path ensure_out_dir(const std::string& dir) {
  const std::filesystem::path path = dir.empty() ? "out" : dir;
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) {
    fail("IoError", "cannot create output directory '" + path.string() + "'", kExitIo);
  }
  return path;
}

int cmd_run(const CommonFlags& flags) {
  const RunConfig config = assemble_config(flags);
  const ControlParams& params = config.control_params();
  Rng rng(config.seed);
  const WorldState initial = resolve_initial(config, rng);
  const TrajectoryRecord record =
      integrate(initial, params, config.t_max, config.dt, {.stride = config.stride});

  const std::filesystem::path out_dir = ensure_out_dir(flags.out_dir);
  json summary{{"schema", "bcbsim-run-summary/1"},
               {"preset", config.preset ? json(*config.preset) : json(nullptr)},
               {"params", to_json(params)},
               {"run",
                {{"t_max", config.t_max},
                 {"dt", config.dt},
                 {"seed", config.seed},
                 {"stride", config.stride},
                 {"perturb", config.perturb},
                 {"t_end", record.t_end()},
                 {"samples", record.samples.size()}}},
               {"termination",
                {{"reason", record.termination == Termination::Completed
                                ? "completed"
                                : "singular_configuration"},
                 {"detail", record.termination_detail}}}};

  double min_slack = 0.0;
  bool first = true;
  for (const TrajectorySample& s : record.samples) {
    const double slack = constraint_residuals(s.shape).min_slack();
    min_slack = first ? slack : std::min(min_slack, slack);
    first = false;
  }
  summary["invariants"] = {{"max_frame_violation", record.max_frame_violation},
                           {"min_constraint_slack", min_slack}};

  if (!record.samples.empty()) {
    summary["terminal_shape"] = to_json(record.back().shape);
    summary["equilibrium_matches"] =
        equilibrium_matches(record.back().shape, params);
    try {
      summary["circling"] =
          to_json(detect_circling(record, config.window, config.tolerance));
    } catch (const InsufficientData&) {
      summary["circling"] = nullptr;
    }
  }

  try {
    if (config.outputs.count(OutputKind::Trajectory)) {
      const auto path = out_dir / "trajectory.csv";
      write_trajectory_csv(path.string(), record);
      summary["files"]["trajectory"] = path.string();
    }
    if (config.outputs.count(OutputKind::Shape)) {
      const auto path = out_dir / "shape.csv";
      write_shape_csv(path.string(), record);
      summary["files"]["shape"] = path.string();
    }
    if (config.outputs.count(OutputKind::Report)) {
      const auto path = out_dir / "summary.json";
      std::ofstream out(path, std::ios::binary);
      if (!out) throw IoError("cannot open '" + path.string() + "'");
      out << summary.dump(2) << "\n";
      summary["files"]["report"] = path.string();
    }
  } catch (const IoError& e) {
    fail("IoError", e.what(), kExitIo);
  }

  std::cout << summary.dump(2) << "\n";
  return record.termination == Termination::Completed ? kExitOk : kExitSingular;
}

std::string opt_num(const std::optional<double>& v) {
  return v ? fmt17(*v) : std::string();
}
std::string opt_bool(const std::optional<bool>& v) {
  return v ? (*v ? "true" : "false") : std::string();
}

int cmd_sweep(const CommonFlags& flags) {
  if (flags.config_path.empty()) {
    throw ValidationError("sweep requires --config with a [sweep] section");
  }
  // Grid lists live in the same schema; re-read the raw text for them.
  std::ifstream in(flags.config_path, std::ios::binary);
  if (!in) fail("IoError", "cannot open config '" + flags.config_path + "'", kExitIo);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const RunConfig base = parse_config(text);

  SweepGrid grid;
  grid.t_max = base.t_max;
  grid.dt = base.dt;
  grid.seed = flags.seed ? static_cast<std::uint64_t>(*flags.seed) : base.seed;
  grid.perturb = base.perturb > 0.0 ? base.perturb : 0.01;
  grid.window = base.window;
  grid.tolerance = base.tolerance;
  if (flags.t_max) grid.t_max = *flags.t_max;
  if (flags.dt) grid.dt = *flags.dt;
  if (base.params) {
    grid.mu = {base.params->mu_1()};
    grid.lambda = {base.params->lambda()};
  }

  const auto raw_value = [&](const std::string& key)
      -> std::optional<std::pair<std::string, int>> {
    std::istringstream lines(text);
    std::string line;
    int line_no = 0;
    auto trim = [](std::string s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.erase(s.begin());
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.pop_back();
      return s;
    };
    while (std::getline(lines, line)) {
      ++line_no;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      if (trim(line.substr(0, eq)) != key) continue;
      return std::pair{trim(line.substr(eq + 1)), line_no};
    }
    return std::nullopt;
  };
  const auto parse_list = [&](const std::string& key) -> std::optional<std::vector<double>> {
    const auto raw = raw_value(key);
    if (!raw) return std::nullopt;
    std::string rhs = raw->first;
    for (char& c : rhs)
      if (c == ',') c = ' ';
    std::istringstream nums(rhs);
    std::vector<double> out;
    double v;
    while (nums >> v) out.push_back(v);
    if (!nums.eof()) {
      throw ParseError(raw->second, "malformed list for '" + key + "'");
    }
    return out;
  };
  if (auto v = parse_list("a_values")) grid.a = *v;
  if (auto v = parse_list("a0_values")) grid.a0 = *v;
  if (auto v = parse_list("lambda_values")) grid.lambda = *v;
  if (auto v = parse_list("mu_values")) grid.mu = *v;
  if (auto v = raw_value("simulate")) {
    if (v->first != "true" && v->first != "false") {
      throw ParseError(v->second, "simulate must be true or false");
    }
    grid.simulate = v->first == "true";
  }
  if (grid.a.empty() || grid.a0.empty()) {
    throw ValidationError("sweep needs a_values and a0_values lists");
  }

  const std::vector<SweepCell> cells = run_sweep(grid);

  static constexpr const char* kHeader =
      "mu,lambda,a,a0,prop1_exists,prop1_rho,prop2a_exists,prop2a_rho1b,"
      "prop2a_rho,prop2b_exists,prop2b_rho1b,prop2b_rho,simulated_class,"
      "sim_converged,sim_terminal_rho,error";
  const auto cell_csv = [&](const SweepCell& c) {
    std::string row = fmt17(c.mu) + ',' + fmt17(c.lambda) + ',' + fmt17(c.a) + ',' +
                      fmt17(c.a0) + ',' + opt_bool(c.prop1_exists) + ',' +
                      opt_num(c.prop1_rho) + ',' + opt_bool(c.prop2a_exists) + ',' +
                      opt_num(c.prop2a_rho_1b) + ',' + opt_num(c.prop2a_rho) + ',' +
                      opt_bool(c.prop2b_exists) + ',' + opt_num(c.prop2b_rho_1b) +
                      ',' + opt_num(c.prop2b_rho) + ',' +
                      (c.simulated_class ? *c.simulated_class : "") + ',' +
                      opt_bool(c.sim_converged) + ',' + opt_num(c.sim_terminal_rho) +
                      ',' + c.error;
    return row;
  };

  json jcells = json::array();
  for (const SweepCell& c : cells) {
    json e{{"mu", c.mu}, {"lambda", c.lambda}, {"a", c.a}, {"a0", c.a0}};
    if (c.prop1_exists) {
      e["prop1"] = {{"exists", *c.prop1_exists}};
      if (c.prop1_rho) e["prop1"]["rho"] = *c.prop1_rho;
    }
    if (c.prop2a_exists) {
      e["prop2a"] = {{"exists", *c.prop2a_exists}};
      if (c.prop2a_rho) {
        e["prop2a"]["rho"] = *c.prop2a_rho;
        e["prop2a"]["rho1b"] = *c.prop2a_rho_1b;
      }
    }
    if (c.prop2b_exists) {
      e["prop2b"] = {{"exists", *c.prop2b_exists}};
      if (c.prop2b_rho) {
        e["prop2b"]["rho"] = *c.prop2b_rho;
        e["prop2b"]["rho1b"] = *c.prop2b_rho_1b;
      }
    }
    if (c.simulated_class) e["simulated_class"] = *c.simulated_class;
    if (c.sim_converged) e["sim_converged"] = *c.sim_converged;
    if (c.sim_terminal_rho) e["sim_terminal_rho"] = *c.sim_terminal_rho;
    if (!c.error.empty()) e["error"] = c.error;
    jcells.push_back(e);
  }

  const std::filesystem::path out_dir = ensure_out_dir(flags.out_dir);
  try {
    std::ofstream csv(out_dir / "sweep.csv", std::ios::binary);
    csv << kHeader << '\n';
    for (const SweepCell& c : cells) csv << cell_csv(c) << '\n';
    if (!csv) throw IoError("sweep.csv write failed");
    std::ofstream js(out_dir / "sweep.json", std::ios::binary);
    js << jcells.dump(2) << "\n";
    if (!js) throw IoError("sweep.json write failed");
  } catch (const IoError& e) {
    fail("IoError", e.what(), kExitIo);
  }

  if (flags.format == "csv") {
    std::cout << kHeader << '\n';
    for (const SweepCell& c : cells) std::cout << cell_csv(c) << '\n';
  } else {
    std::cout << jcells.dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_equilibrium(const CommonFlags& flags) {
  const RunConfig config = assemble_config(flags);
  const ControlParams& p = config.control_params();
  p.require_symmetric();

  json out = json::array();
  const auto add = [&](const char* name, const ExistenceCondition& cond,
                       const std::optional<EquilibriumSpec>& eq) {
    json e{{"class", name},
           {"exists", cond.holds},
           {"condition", cond.inequality},
           {"condition_lhs", cond.lhs}};
    if (eq) {
      e["shape"] = to_json(eq->shape);
      e["rho_1b_is_free_parameter"] = eq->rho_1b_is_free_parameter;
    }
    out.push_back(e);
  };
  if (p.a0() == 0.0) {
    const double choice = config.preset ? find_preset(*config.preset).rho_1b_choice : 0.0;
    const ExistenceCondition cond = prop1_condition(p);
    std::optional<EquilibriumSpec> eq;
    if (cond.holds) {
      const double rho = 2.0 * p.lambda() / ((1.0 - p.lambda()) * p.mu() * (-p.a()));
      eq = prop1_equilibrium(p, choice > 0.0 ? choice : rho);
    }
    add("prop1", cond, eq);
  } else {
    add("prop2a", prop2a_condition(p), prop2a_equilibrium(p));
    add("prop2b", prop2b_condition(p), prop2b_equilibrium(p));
  }

  if (flags.format == "csv") {
    std::cout << "class,exists,rho,rho1b,rho2b,xtilde\n";
    for (const auto& e : out) {
      std::cout << e["class"].get<std::string>() << ','
                << (e["exists"].get<bool>() ? "true" : "false");
      if (e.contains("shape")) {
        const auto& s = e["shape"];
        std::cout << ',' << fmt17(s["rho"].get<double>()) << ','
                  << fmt17(s["rho1b"].get<double>()) << ','
                  << fmt17(s["rho2b"].get<double>()) << ','
                  << fmt17(s["xtilde"].get<double>());
      } else {
        std::cout << ",,,,";
      }
      std::cout << '\n';
    }
  } else {
    std::cout << out.dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_verify(const std::string& path, const CommonFlags& flags) {
  const auto rows = read_trajectory_csv(path);
  const VerifyReport report = verify_trajectory_rows(rows);
  const json out{{"file", path},
                 {"rows", report.rows},
                 {"max_frame_violation", report.max_frame_violation},
                 {"max_shape_mismatch", report.max_shape_mismatch},
                 {"min_constraint_slack", report.min_constraint_slack},
                 {"ok", report.ok}};
  if (flags.format == "csv") {
    std::cout << "rows,max_frame_violation,max_shape_mismatch,min_constraint_slack,ok\n"
              << report.rows << ',' << fmt17(report.max_frame_violation) << ','
              << fmt17(report.max_shape_mismatch) << ','
              << fmt17(report.min_constraint_slack) << ','
              << (report.ok ? "true" : "false") << '\n';
  } else {
    std::cout << out.dump(2) << "\n";
  }
  return report.ok ? kExitOk : kExitVerifyFailed;
}

int cmd_embed(const std::vector<double>& values, const CommonFlags& flags) {
  const EffectiveShape shape{values[0], values[1], values[2], values[3],
                             values[4], values[5], values[6], values[7]};
  const WorldState w = embed_shape(shape);
  const EffectiveShape round_trip = effective_shape(w);
  if (flags.format == "csv") {
    std::cout << "r1x,r1y,r1z,x1x,x1y,x1z,y1x,y1y,y1z,z1x,z1y,z1z,"
                 "r2x,r2y,r2z,x2x,x2y,x2z,y2x,y2y,y2z,z2x,z2y,z2z\n";
    const auto put = [](const Vec3& v, bool last = false) {
      std::cout << fmt17(v.x) << ',' << fmt17(v.y) << ',' << fmt17(v.z)
                << (last ? '\n' : ',');
    };
    put(w.agent1.r);
    put(w.agent1.frame.x_axis);
    put(w.agent1.frame.y_axis);
    put(w.agent1.frame.z_axis);
    put(w.agent2.r);
    put(w.agent2.frame.x_axis);
    put(w.agent2.frame.y_axis);
    put(w.agent2.frame.z_axis, true);
  } else {
    const json out{{"state", to_json(w)},
                   {"shape", to_json(shape)},
                   {"round_trip_shape", to_json(round_trip)}};
    std::cout << out.dump(2) << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Beacon-referenced constant-bearing pursuit simulator"};
  app.require_subcommand(1);

  CommonFlags run_flags, sweep_flags, eq_flags, verify_flags, embed_flags;
  std::string verify_path;
  std::vector<double> embed_values;

  CLI::App* run = app.add_subcommand("run", "Integrate a scenario and emit files");
  add_common_flags(run, run_flags);

  CLI::App* sweep = app.add_subcommand("sweep", "Classify a parameter grid");
  add_common_flags(sweep, sweep_flags);

  CLI::App* equilibrium =
      app.add_subcommand("equilibrium", "Print the circling equilibria for parameters");
  add_common_flags(equilibrium, eq_flags, false);

  CLI::App* verify = app.add_subcommand("verify", "Re-check invariants on a CSV");
  verify->add_option("csv", verify_path, "Trajectory CSV path")->required();
  verify->add_option("--format", verify_flags.format, "Stdout format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  CLI::App* embed = app.add_subcommand(
      "embed", "Reconstruct a configuration from eight shape values");
  embed
      ->add_option("shape", embed_values,
                   "rho rho1b rho2b xbar1 xbar2 xbar1b xbar2b xtilde")
      ->expected(8);
  embed->add_option("--format", embed_flags.format, "Stdout format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_flags);
    if (sweep->parsed()) return cmd_sweep(sweep_flags);
    if (equilibrium->parsed()) return cmd_equilibrium(eq_flags);
    if (verify->parsed()) return cmd_verify(verify_path, verify_flags);
    if (embed->parsed()) return cmd_embed(embed_values, embed_flags);
  } catch (const ParseError& e) {
    fail("ParseError", e.what(), kExitUsage);
  } catch (const ValidationError& e) {
    fail("ValidationError", e.what(), kExitUsage);
  } catch (const ParameterViolation& e) {
    fail("ParameterViolation", e.what(), kExitUsage);
  } catch (const UnrealizableShape& e) {
    fail("UnrealizableShape", e.what(), kExitUsage);
  } catch (const SingularConfiguration& e) {
    fail("SingularConfiguration", e.what(), kExitSingular);
  } catch (const IoError& e) {
    fail("IoError", e.what(), kExitIo);
  } catch (const Error& e) {
    fail("Error", e.what(), kExitUsage);
  }
  return kExitUsage;
}
