#include "bcb/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "bcb/errors.hpp"

namespace bcb {

const ControlParams& RunConfig::control_params() const {
  if (!params) {
    throw ValidationError("control parameters are not set (provide [params] keys "
                          "or a preset)");
  }
  return *params;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& value, int line) {
  const char* p = value.c_str();
  char* end = nullptr;
  const double v = std::strtod(p, &end);
  if (end == p || *end != '\0') {
    throw ParseError(line, "expected a number, got '" + value + "'");
  }
  return v;
}

long long parse_int(const std::string& value, int line) {
  const char* p = value.c_str();
  char* end = nullptr;
  const long long v = std::strtoll(p, &end, 10);
  if (end == p || *end != '\0') {
    throw ParseError(line, "expected an integer, got '" + value + "'");
  }
  return v;
}

std::vector<double> parse_tuple(const std::string& value, std::size_t count, int line) {
  std::string normalized = value;
  for (char& c : normalized) {
    if (c == ',') c = ' ';
  }
  std::istringstream in(normalized);
  std::vector<double> out;
  double v;
  while (in >> v) out.push_back(v);
  if (!in.eof() || out.size() != count) {
    throw ParseError(line, "expected " + std::to_string(count) + " numbers, got '" +
                               value + "'");
  }
  return out;
}

// Raw key-value store collected during the line scan; parameter and state
// assembly happens after the whole file is read so overrides are
// order-independent.
struct RawConfig {
  std::map<std::string, std::pair<std::string, int>> values;  // key -> (value, line)

  bool has(const std::string& key) const { return values.count(key) != 0; }
  std::optional<double> number(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end()) return std::nullopt;
    return parse_double(it->second.first, it->second.second);
  }
};

const std::set<std::string> kKnownKeys = {
    // [params]
    "mu", "mu_b", "lambda", "a", "a0", "mu_1", "mu_2", "mu_1b", "mu_2b", "a_1",
    "a_2", "a_1b", "a_2b",
    // [initial]
    "preset", "perturb", "initial", "shape", "r1", "x1", "r2", "x2", "beacon",
    // [run]
    "t_max", "dt", "seed", "outputs", "stride", "box", "min_sep", "window", "tol",
    // [sweep]
    "a_values", "a0_values", "lambda_values", "mu_values", "simulate"};

const std::set<std::string> kKnownSections = {"params", "initial", "run", "sweep"};

}  // namespace

RunConfig parse_config(const std::string& text) {
  RawConfig raw;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t comment = line.find('#');
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ParseError(line_no, "unterminated section header");
      }
      const std::string section = trim(line.substr(1, line.size() - 2));
      if (!kKnownSections.count(section)) {
        throw ParseError(line_no, "unknown section [" + section + "]");
      }
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(line_no, "expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!kKnownKeys.count(key)) {
      throw ParseError(line_no, "unknown key '" + key + "'");
    }
    if (value.empty()) {
      throw ParseError(line_no, "missing value for '" + key + "'");
    }
    if (raw.values.count(key)) {
      throw ParseError(line_no, "duplicate key '" + key + "'");
    }
    raw.values[key] = {value, line_no};
  }

  RunConfig config;

  // Initial-condition selection and preset defaults.
  const Preset* preset = nullptr;
  if (raw.has("preset")) {
    const auto& [name, pline] = raw.values.at("preset");
    preset = &find_preset(name);  // throws ValidationError for unknown names
    config.preset = name;
    config.t_max = preset->default_t_max;
    config.perturb = preset->default_perturb;
    (void)pline;
  }

  // Control parameters: preset values as the base, common keys next,
  // per-agent keys last.
  double mu_1 = 1.0, mu_2 = 1.0, mu_1b = 1.0, mu_2b = 1.0;
  double lambda = 0.5, a_1 = 0.0, a_2 = 0.0, a_1b = 0.0, a_2b = 0.0;
  bool have_params = false;
  if (preset) {
    const ControlParams& p = preset->params;
    mu_1 = p.mu_1();
    mu_2 = p.mu_2();
    mu_1b = p.mu_1b();
    mu_2b = p.mu_2b();
    lambda = p.lambda();
    a_1 = p.a_1();
    a_2 = p.a_2();
    a_1b = p.a_1b();
    a_2b = p.a_2b();
    have_params = true;
  }
  if (auto v = raw.number("mu")) {
    mu_1 = mu_2 = mu_1b = mu_2b = *v;
    have_params = true;
  }
  if (auto v = raw.number("mu_b")) {
    mu_1b = mu_2b = *v;
  }
  if (auto v = raw.number("lambda")) {
    lambda = *v;
  }
  if (auto v = raw.number("a")) {
    a_1 = a_2 = *v;
  }
  if (auto v = raw.number("a0")) {
    a_1b = a_2b = *v;
  }
  if (auto v = raw.number("mu_1")) mu_1 = *v;
  if (auto v = raw.number("mu_2")) mu_2 = *v;
  if (auto v = raw.number("mu_1b")) mu_1b = *v;
  if (auto v = raw.number("mu_2b")) mu_2b = *v;
  if (auto v = raw.number("a_1")) a_1 = *v;
  if (auto v = raw.number("a_2")) a_2 = *v;
  if (auto v = raw.number("a_1b")) a_1b = *v;
  if (auto v = raw.number("a_2b")) a_2b = *v;
  if (raw.has("mu") || raw.has("lambda") || raw.has("a") || raw.has("a0") ||
      raw.has("mu_1") || raw.has("mu_2") || raw.has("mu_1b") || raw.has("mu_2b") ||
      raw.has("a_1") || raw.has("a_2") || raw.has("a_1b") || raw.has("a_2b") ||
      raw.has("mu_b")) {
    have_params = true;
  }
  if (have_params) {
    config.params =
        ControlParams(mu_1, mu_2, mu_1b, mu_2b, lambda, a_1, a_2, a_1b, a_2b);
  }

  // Initial-condition literals.
  const bool has_state_literal =
      raw.has("r1") || raw.has("x1") || raw.has("r2") || raw.has("x2");
  int initial_sources = 0;
  if (preset) ++initial_sources;
  if (raw.has("shape")) ++initial_sources;
  if (has_state_literal) ++initial_sources;
  if (raw.has("initial")) ++initial_sources;
  if (initial_sources > 1) {
    throw ValidationError(
        "conflicting initial-condition sources; give exactly one of preset, "
        "shape, state literal (r1/x1/r2/x2), or initial = random");
  }

  if (preset) {
    config.initial_kind = InitialKind::Preset;
  } else if (raw.has("shape")) {
    const auto& [value, line] = raw.values.at("shape");
    const auto v = parse_tuple(value, EffectiveShape::kDim, line);
    config.initial_shape = EffectiveShape::from_array(
        {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7]});
    config.initial_kind = InitialKind::Shape;
  } else if (has_state_literal) {
    for (const char* key : {"r1", "x1", "r2", "x2"}) {
      if (!raw.has(key)) {
        throw ValidationError(std::string("state literal requires key '") + key + "'");
      }
    }
    const auto vec = [&](const char* key) {
      const auto& [value, line] = raw.values.at(key);
      const auto v = parse_tuple(value, 3, line);
      return Vec3{v[0], v[1], v[2]};
    };
    WorldState state;
    state.beacon = raw.has("beacon") ? vec("beacon") : Vec3{0.0, 0.0, 0.0};
    const Vec3 x1 = vec("x1");
    const Vec3 x2 = vec("x2");
    if (x1.norm() == 0.0 || x2.norm() == 0.0) {
      throw ValidationError("headings x1, x2 must be nonzero");
    }
    state.agent1 = AgentState{vec("r1"), frame_from_heading(x1)};
    state.agent2 = AgentState{vec("r2"), frame_from_heading(x2)};
    state.require_separated();
    config.initial_state = state;
    config.initial_kind = InitialKind::StateLiteral;
  } else if (raw.has("initial")) {
    const auto& [value, line] = raw.values.at("initial");
    if (value != "random") {
      throw ParseError(line, "initial must be 'random' (or use preset/shape/state keys)");
    }
    config.initial_kind = InitialKind::Random;
  } else {
    config.initial_kind = InitialKind::Random;
  }

  // [run] scalars.
  if (auto v = raw.number("perturb")) {
    if (*v < 0.0) throw ValidationError("perturb must be nonnegative");
    config.perturb = *v;
  }
  if (auto v = raw.number("t_max")) {
    if (*v < 0.0) throw ValidationError("t_max must be nonnegative");
    config.t_max = *v;
  }
  if (auto v = raw.number("dt")) {
    if (!(*v > 0.0)) throw ValidationError("dt must be positive");
    config.dt = *v;
  }
  if (raw.has("seed")) {
    const auto& [value, line] = raw.values.at("seed");
    const long long s = parse_int(value, line);
    if (s < 0) throw ValidationError("seed must be nonnegative");
    config.seed = static_cast<std::uint64_t>(s);
  }
  if (raw.has("stride")) {
    const auto& [value, line] = raw.values.at("stride");
    const long long s = parse_int(value, line);
    if (s < 1) throw ValidationError("stride must be >= 1");
    config.stride = s;
  }
  if (auto v = raw.number("box")) {
    if (!(*v > 0.0)) throw ValidationError("box must be positive");
    config.box_halfwidth = *v;
  }
  if (auto v = raw.number("min_sep")) {
    if (!(*v > 0.0)) throw ValidationError("min_sep must be positive");
    config.min_separation = *v;
  }
  if (auto v = raw.number("window")) {
    if (!(*v > 0.0)) throw ValidationError("window must be positive");
    config.window = *v;
  }
  if (auto v = raw.number("tol")) {
    if (!(*v > 0.0)) throw ValidationError("tol must be positive");
    config.tolerance = *v;
  }
  if (raw.has("outputs")) {
    const auto& [value, line] = raw.values.at("outputs");
    config.outputs.clear();
    std::string item;
    std::istringstream items(value);
    while (std::getline(items, item, ',')) {
      item = trim(item);
      if (item == "trajectory") {
        config.outputs.insert(OutputKind::Trajectory);
      } else if (item == "shape") {
        config.outputs.insert(OutputKind::Shape);
      } else if (item == "report") {
        config.outputs.insert(OutputKind::Report);
      } else {
        throw ParseError(line, "unknown output '" + item +
                                   "' (expected trajectory, shape, report)");
      }
    }
  }

  if (config.initial_kind == InitialKind::Random && !config.params) {
    throw ValidationError("random initial conditions require [params] keys");
  }
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open config '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

WorldState resolve_initial(const RunConfig& config, Rng& rng) {
  switch (config.initial_kind) {
    case InitialKind::Preset: {
      const Preset& preset = find_preset(*config.preset);
      WorldState state = embed_shape(preset.equilibrium_shape());
      if (config.perturb > 0.0) {
        state = perturb_state(state, config.perturb, rng);
      }
      return state;
    }
    case InitialKind::Random: {
      SampleOptions options;
      options.box_halfwidth = config.box_halfwidth;
      options.min_separation = config.min_separation;
      return sample_world_state(rng, options);
    }
    case InitialKind::Shape: {
      WorldState state = embed_shape(*config.initial_shape);
      if (config.perturb > 0.0) {
        state = perturb_state(state, config.perturb, rng);
      }
      return state;
    }
    case InitialKind::StateLiteral:
      return *config.initial_state;
  }
  throw ValidationError("unresolved initial condition");
}

}  // namespace bcb
