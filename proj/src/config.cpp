// Copyright 2026 The modesched Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "modesched/config.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "modesched/cartpole.hpp"
#include "modesched/double_integrator.hpp"
#include "modesched/table_system.hpp"

namespace modesched {

namespace {

using nlohmann::json;

// Strict object reader: every consumed key is recorded and finish() rejects
// anything left over, so typos in config files fail loudly.
class Obj {
 public:
  Obj(const json& j, std::string path) : j_(&j), path_(std::move(path)) {
    if (!j.is_object()) throw ConfigError(path_ + ": expected an object");
  }

  bool has(const char* key) const { return j_->contains(key); }

  double number(const char* key, double fallback) {
    if (!has(key)) return fallback;
    const json& v = mark(key);
    if (!v.is_number()) throw ConfigError(field(key) + ": expected a number");
    return v.get<double>();
  }

  std::int64_t integer(const char* key, std::int64_t fallback) {
    if (!has(key)) return fallback;
    const json& v = mark(key);
    if (!v.is_number_integer() && !v.is_number_unsigned()) {
      throw ConfigError(field(key) + ": expected an integer");
    }
    return v.get<std::int64_t>();
  }

  std::uint64_t uinteger(const char* key, std::uint64_t fallback) {
    if (!has(key)) return fallback;
    const json& v = mark(key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
      return static_cast<std::uint64_t>(v.get<std::int64_t>());
    }
    throw ConfigError(field(key) + ": expected a non-negative integer");
  }

  bool boolean(const char* key, bool fallback) {
    if (!has(key)) return fallback;
    const json& v = mark(key);
    if (!v.is_boolean()) throw ConfigError(field(key) + ": expected a boolean");
    return v.get<bool>();
  }

  std::string str(const char* key, std::string fallback) {
    if (!has(key)) return fallback;
    const json& v = mark(key);
    if (!v.is_string()) throw ConfigError(field(key) + ": expected a string");
    return v.get<std::string>();
  }

  std::vector<double> number_array(const char* key, std::vector<double> fallback) {
    if (!has(key)) return fallback;
    const json& v = mark(key);
    if (!v.is_array()) throw ConfigError(field(key) + ": expected an array of numbers");
    std::vector<double> out;
    for (const json& e : v) {
      if (!e.is_number()) throw ConfigError(field(key) + ": expected an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  std::vector<int> int_array(const char* key, std::vector<int> fallback) {
    if (!has(key)) return fallback;
    const json& v = mark(key);
    if (!v.is_array()) throw ConfigError(field(key) + ": expected an array of integers");
    std::vector<int> out;
    for (const json& e : v) {
      if (!e.is_number_integer() && !e.is_number_unsigned()) {
        throw ConfigError(field(key) + ": expected an array of integers");
      }
      out.push_back(e.get<int>());
    }
    return out;
  }

  const json* child(const char* key) {
    if (!has(key)) return nullptr;
    const json& v = mark(key);
    if (!v.is_object()) throw ConfigError(field(key) + ": expected an object");
    return &v;
  }

  const json* child_array(const char* key) {
    if (!has(key)) return nullptr;
    const json& v = mark(key);
    if (!v.is_array()) throw ConfigError(field(key) + ": expected an array");
    return &v;
  }

  std::string field(const char* key) const { return path_ + "." + key; }

  void finish() const {
    for (const auto& item : j_->items()) {
      if (!consumed_.contains(item.key())) {
        throw ConfigError(path_ + "." + item.key() + ": unknown field");
      }
    }
  }

 private:
  const json& mark(const char* key) {
    consumed_.insert(key);
    return j_->at(key);
  }

  const json* j_;
  std::string path_;
  std::set<std::string> consumed_;
};

AcceptancePolicy policy_from_string(const std::string& name, const std::string& where) {
  if (name == "first-improvement") return AcceptancePolicy::kFirstImprovement;
  if (name == "best-of-batch") return AcceptancePolicy::kBestOfBatch;
  throw ConfigError(where + ": unknown policy '" + name + "'");
}

InnerSolver inner_from_string(const std::string& name, const std::string& where) {
  if (name == "sampled") return InnerSolver::kSampled;
  if (name == "exhaustive") return InnerSolver::kExhaustive;
  throw ConfigError(where + ": unknown inner solver '" + name + "'");
}

const char* to_string(AcceptancePolicy policy) {
  return policy == AcceptancePolicy::kFirstImprovement ? "first-improvement" : "best-of-batch";
}

const char* to_string(InnerSolver inner) {
  return inner == InnerSolver::kExhaustive ? "exhaustive" : "sampled";
}

SystemConfig parse_system(const json& j) {
  Obj obj(j, "system");
  SystemConfig sys;
  sys.type = obj.str("type", sys.type);
  if (sys.type != "cartpole" && sys.type != "double_integrator" && sys.type != "table") {
    throw ConfigError("system.type: must be cartpole, double_integrator or table");
  }
  sys.horizon = static_cast<int>(obj.integer("horizon", sys.horizon));
  sys.dt = obj.number("dt", sys.dt);
  sys.mode_count = static_cast<int>(obj.integer("mode_count", sys.mode_count));
  sys.u_min = obj.number("u_min", sys.u_min);
  sys.u_max = obj.number("u_max", sys.u_max);
  sys.initial_state = obj.number_array("initial_state", sys.initial_state);
  sys.cart_mass = obj.number("cart_mass", sys.cart_mass);
  sys.pole_mass = obj.number("pole_mass", sys.pole_mass);
  sys.pole_half_length = obj.number("pole_half_length", sys.pole_half_length);
  sys.gravity = obj.number("gravity", sys.gravity);
  sys.rk4_substeps = static_cast<int>(obj.integer("rk4_substeps", sys.rk4_substeps));
  sys.table_file = obj.str("table_file", sys.table_file);
  obj.finish();

  if (sys.horizon < 1) throw ConfigError("system.horizon: must be >= 1");
  if (!(sys.dt > 0.0)) throw ConfigError("system.dt: dt must be positive");
  if (sys.type != "table") {
    if (sys.mode_count < 2) throw ConfigError("system.mode_count: must be >= 2");
    if (!(sys.u_min < sys.u_max)) throw ConfigError("system.u_min: must be < u_max");
  }
  if (sys.type == "cartpole") {
    if (!(sys.cart_mass > 0.0)) throw ConfigError("system.cart_mass: must be positive");
    if (!(sys.pole_mass > 0.0)) throw ConfigError("system.pole_mass: must be positive");
    if (!(sys.pole_half_length > 0.0)) throw ConfigError("system.pole_half_length: must be positive");
    if (sys.rk4_substeps < 1) throw ConfigError("system.rk4_substeps: must be >= 1");
    if (!sys.initial_state.empty() && sys.initial_state.size() != 4) {
      throw ConfigError("system.initial_state: cartpole state has 4 entries");
    }
  }
  if (sys.type == "double_integrator" && !sys.initial_state.empty() &&
      sys.initial_state.size() != 2) {
    throw ConfigError("system.initial_state: double integrator state has 2 entries");
  }
  if (sys.type == "table") {
    if (sys.table_file.empty()) throw ConfigError("system.table_file: required for table systems");
    if (sys.initial_state.size() > 1) {
      throw ConfigError("system.initial_state: table state is a single id");
    }
  }
  return sys;
}

// Canonicalize: an omitted initial state becomes the type default, so
// configs that spell the default out hash identically to ones that omit it.
void fill_default_initial_state(SystemConfig& sys) {
  if (!sys.initial_state.empty()) return;
  if (sys.type == "cartpole") {
    sys.initial_state = {1.5707963267948966, 0.0, 0.0, 0.0};
  } else if (sys.type == "double_integrator") {
    sys.initial_state = {0.0, 0.0};
  } else {
    sys.initial_state = {0.0};
  }
}

SolverBlock parse_solver(const json& j) {
  Obj obj(j, "solver");
  SolverBlock block;
  block.solver.batch_size = static_cast<int>(obj.integer("batch_size", block.solver.batch_size));
  block.solver.max_iterations =
      static_cast<int>(obj.integer("max_iterations", block.solver.max_iterations));
  block.solver.tolerance = obj.number("tolerance", block.solver.tolerance);
  block.solver.policy = policy_from_string(
      obj.str("policy", to_string(block.solver.policy)), "solver.policy");
  block.solver.max_evaluations = obj.integer("max_evaluations", block.solver.max_evaluations);
  block.inner = inner_from_string(obj.str("inner", to_string(block.inner)), "solver.inner");
  block.initial_mode = static_cast<ModeId>(obj.integer("initial_mode", block.initial_mode));
  obj.finish();

  if (block.solver.batch_size < 1) throw ConfigError("solver.batch_size: must be >= 1");
  if (block.solver.max_iterations < 1) throw ConfigError("solver.max_iterations: must be >= 1");
  if (!(block.solver.tolerance >= 0.0)) throw ConfigError("solver.tolerance: must be >= 0");
  if (block.solver.max_evaluations < 0) throw ConfigError("solver.max_evaluations: must be >= 0");
  if (block.initial_mode < -1) throw ConfigError("solver.initial_mode: must be >= -1");
  return block;
}

BaselineConfig parse_baseline(const json& j, const std::string& path) {
  Obj obj(j, path);
  BaselineConfig cfg;
  const std::string method = obj.str("method", "");
  if (method.empty()) throw ConfigError(path + ".method: required");
  try {
    cfg.method = baseline_method_from_string(method);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path + ".method: " + e.what());
  }
  cfg.samples = static_cast<int>(obj.integer("samples", cfg.samples));
  cfg.iterations = static_cast<int>(obj.integer("iterations", cfg.iterations));
  cfg.elite_fraction = obj.number("elite_fraction", cfg.elite_fraction);
  cfg.smoothing = obj.number("smoothing", cfg.smoothing);
  cfg.temperature = obj.number("temperature", cfg.temperature);
  cfg.noise_sigma = obj.number("noise_sigma", cfg.noise_sigma);
  cfg.mutation_rate = obj.number("mutation_rate", cfg.mutation_rate);
  obj.finish();
  try {
    validate(cfg);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return cfg;
}

MpcBlock parse_mpc(const json& j) {
  Obj obj(j, "mpc");
  MpcBlock block;
  block.planning_horizon =
      static_cast<int>(obj.integer("planning_horizon", block.planning_horizon));
  block.episode_length = static_cast<int>(obj.integer("episode_length", block.episode_length));
  block.max_rollouts_per_step = obj.integer("max_rollouts_per_step", block.max_rollouts_per_step);
  block.horizons = obj.int_array("horizons", block.horizons);
  obj.finish();

  if (block.planning_horizon < 1) throw ConfigError("mpc.planning_horizon: must be >= 1");
  if (block.episode_length < 1) throw ConfigError("mpc.episode_length: must be >= 1");
  if (block.max_rollouts_per_step < 1) throw ConfigError("mpc.max_rollouts_per_step: must be >= 1");
  if (block.horizons.empty()) throw ConfigError("mpc.horizons: must not be empty");
  for (int h : block.horizons) {
    if (h < 1) throw ConfigError("mpc.horizons: entries must be >= 1");
  }
  return block;
}

OracleBlock parse_oracle(const json& j) {
  Obj obj(j, "oracle");
  OracleBlock block;
  block.enabled = obj.boolean("enabled", block.enabled);
  block.ilqr.max_iterations =
      static_cast<int>(obj.integer("max_iterations", block.ilqr.max_iterations));
  block.ilqr.tolerance = obj.number("tolerance", block.ilqr.tolerance);
  block.ilqr.clamp_controls = obj.boolean("clamp_controls", block.ilqr.clamp_controls);
  block.ilqr.restarts = static_cast<int>(obj.integer("restarts", block.ilqr.restarts));
  obj.finish();
  if (block.ilqr.max_iterations < 1) throw ConfigError("oracle.max_iterations: must be >= 1");
  if (!(block.ilqr.tolerance > 0.0)) throw ConfigError("oracle.tolerance: must be > 0");
  if (block.ilqr.restarts < 1) throw ConfigError("oracle.restarts: must be >= 1");
  return block;
}

}  // namespace

const char* to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kSolve:
      return "solve";
    case ExperimentKind::kCompare:
      return "compare";
    case ExperimentKind::kSweepHorizon:
      return "sweep-horizon";
    case ExperimentKind::kMpc:
      return "mpc";
  }
  return "unknown";
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
  if (name == "solve") return ExperimentKind::kSolve;
  if (name == "compare") return ExperimentKind::kCompare;
  if (name == "sweep-horizon") return ExperimentKind::kSweepHorizon;
  if (name == "mpc") return ExperimentKind::kMpc;
  throw ConfigError("experiment: unknown kind '" + name + "'");
}

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin,
                                   std::optional<ExperimentKind> kind_override) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ": " + e.what());
  }

  Obj root(j, "config");
  ExperimentConfig cfg;

  if (root.has("experiment")) {
    cfg.kind = experiment_kind_from_string(root.str("experiment", ""));
    if (kind_override && *kind_override != cfg.kind) {
      throw ConfigError(std::string("experiment: config declares '") + to_string(cfg.kind) +
                        "' but the subcommand is '" + to_string(*kind_override) + "'");
    }
  } else if (kind_override) {
    cfg.kind = *kind_override;
  } else {
    throw ConfigError("experiment: missing field");
  }

  cfg.seed = root.uinteger("seed", cfg.seed);
  cfg.repetitions = static_cast<int>(root.integer("repetitions", cfg.repetitions));
  cfg.budget = root.integer("budget", cfg.budget);
  cfg.output_dir = root.str("output_dir", cfg.output_dir);
  cfg.compare_horizons = root.int_array("compare_horizons", cfg.compare_horizons);

  if (const json* system = root.child("system")) cfg.system = parse_system(*system);
  fill_default_initial_state(cfg.system);
  if (const json* solver = root.child("solver")) cfg.solver = parse_solver(*solver);
  if (const json* baselines = root.child_array("baselines")) {
    int index = 0;
    for (const json& b : *baselines) {
      cfg.baselines.push_back(parse_baseline(b, "baselines[" + std::to_string(index) + "]"));
      ++index;
    }
  }
  if (const json* mpc = root.child("mpc")) cfg.mpc = parse_mpc(*mpc);
  if (const json* oracle = root.child("oracle")) cfg.oracle = parse_oracle(*oracle);
  root.finish();

  if (cfg.repetitions < 1) throw ConfigError("repetitions: must be >= 1");
  if (cfg.budget < 1) throw ConfigError("budget: must be >= 1");
  for (int h : cfg.compare_horizons) {
    if (h < 1) throw ConfigError("compare_horizons: entries must be >= 1");
  }
  if (cfg.kind == ExperimentKind::kCompare && cfg.baselines.empty()) {
    throw ConfigError("baselines: compare runs need at least one baseline");
  }
  if (cfg.system.type != "table") {
    if (cfg.solver.initial_mode >= cfg.system.mode_count) {
      throw ConfigError("solver.initial_mode: outside the mode set");
    }
  }
  for (std::size_t i = 0; i < cfg.baselines.size(); ++i) {
    if (cfg.baselines[i].method == BaselineMethod::kMppi && cfg.system.type == "table") {
      throw ConfigError("baselines[" + std::to_string(i) +
                        "]: mppi needs a system with a continuous relaxation");
    }
  }
  return cfg;
}

ExperimentConfig parse_config(const std::string& path,
                              std::optional<ExperimentKind> kind_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  ExperimentConfig cfg = parse_config_text(buffer.str(), path, kind_override);
  if (!cfg.system.table_file.empty()) {
    const std::filesystem::path table(cfg.system.table_file);
    if (table.is_relative()) {
      cfg.system.table_file = (std::filesystem::path(path).parent_path() / table)
                                  .lexically_normal()
                                  .string();
    }
  }
  return cfg;
}

std::string canonical_json(const ExperimentConfig& cfg) {
  json j;
  j["experiment"] = to_string(cfg.kind);
  j["seed"] = cfg.seed;
  j["repetitions"] = cfg.repetitions;
  j["budget"] = cfg.budget;
  j["compare_horizons"] = cfg.compare_horizons;
  j["system"] = {
      {"type", cfg.system.type},
      {"horizon", cfg.system.horizon},
      {"dt", cfg.system.dt},
      {"mode_count", cfg.system.mode_count},
      {"u_min", cfg.system.u_min},
      {"u_max", cfg.system.u_max},
      {"initial_state", cfg.system.initial_state},
      {"cart_mass", cfg.system.cart_mass},
      {"pole_mass", cfg.system.pole_mass},
      {"pole_half_length", cfg.system.pole_half_length},
      {"gravity", cfg.system.gravity},
      {"rk4_substeps", cfg.system.rk4_substeps},
      {"table_file", cfg.system.table_file},
  };
  j["solver"] = {
      {"batch_size", cfg.solver.solver.batch_size},
      {"max_iterations", cfg.solver.solver.max_iterations},
      {"tolerance", cfg.solver.solver.tolerance},
      {"policy", to_string(cfg.solver.solver.policy)},
      {"max_evaluations", cfg.solver.solver.max_evaluations},
      {"inner", to_string(cfg.solver.inner)},
      {"initial_mode", cfg.solver.initial_mode},
  };
  j["baselines"] = json::array();
  for (const BaselineConfig& b : cfg.baselines) {
    j["baselines"].push_back({
        {"method", to_string(b.method)},
        {"samples", b.samples},
        {"iterations", b.iterations},
        {"elite_fraction", b.elite_fraction},
        {"smoothing", b.smoothing},
        {"temperature", b.temperature},
        {"noise_sigma", b.noise_sigma},
        {"mutation_rate", b.mutation_rate},
    });
  }
  j["mpc"] = {
      {"planning_horizon", cfg.mpc.planning_horizon},
      {"episode_length", cfg.mpc.episode_length},
      {"max_rollouts_per_step", cfg.mpc.max_rollouts_per_step},
      {"horizons", cfg.mpc.horizons},
  };
  j["oracle"] = {
      {"enabled", cfg.oracle.enabled},
      {"max_iterations", cfg.oracle.ilqr.max_iterations},
      {"tolerance", cfg.oracle.ilqr.tolerance},
      {"clamp_controls", cfg.oracle.ilqr.clamp_controls},
      {"restarts", cfg.oracle.ilqr.restarts},
  };
  return j.dump();
}

std::string config_hash(const ExperimentConfig& cfg) {
  const std::string text = canonical_json(cfg);
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buffer[17];
  static const char* digits = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buffer[i] = digits[hash & 0xF];
    hash >>= 4;
  }
  buffer[16] = '\0';
  return std::string(buffer);
}

std::unique_ptr<SystemModel> build_system(const SystemConfig& cfg) {
  if (cfg.type == "cartpole") {
    CartpoleParams params;
    params.horizon = cfg.horizon;
    params.dt = cfg.dt;
    params.mode_count = cfg.mode_count;
    params.u_min = cfg.u_min;
    params.u_max = cfg.u_max;
    params.cart_mass = cfg.cart_mass;
    params.pole_mass = cfg.pole_mass;
    params.pole_half_length = cfg.pole_half_length;
    params.gravity = cfg.gravity;
    params.rk4_substeps = cfg.rk4_substeps;
    if (!cfg.initial_state.empty()) {
      for (int i = 0; i < 4; ++i) params.initial_state[i] = cfg.initial_state[static_cast<std::size_t>(i)];
    }
    return build_cartpole(params);
  }
  if (cfg.type == "double_integrator") {
    DoubleIntegratorParams params;
    params.horizon = cfg.horizon;
    params.dt = cfg.dt;
    params.mode_count = cfg.mode_count;
    params.a_min = cfg.u_min;
    params.a_max = cfg.u_max;
    if (!cfg.initial_state.empty()) {
      for (int i = 0; i < 2; ++i) params.initial_state[i] = cfg.initial_state[static_cast<std::size_t>(i)];
    }
    return build_double_integrator(params);
  }
  if (cfg.type == "table") {
    const int initial_id =
        cfg.initial_state.empty() ? 0 : static_cast<int>(cfg.initial_state[0]);
    return TableSystem::load(cfg.table_file, cfg.horizon, initial_id, cfg.dt);
  }
  throw ConfigError("system.type: must be cartpole, double_integrator or table");
}

std::unique_ptr<ContinuousSystem> build_continuous_system(const SystemConfig& cfg) {
  if (cfg.type == "cartpole") {
    CartpoleParams params;
    params.horizon = cfg.horizon;
    params.dt = cfg.dt;
    params.mode_count = cfg.mode_count;
    params.u_min = cfg.u_min;
    params.u_max = cfg.u_max;
    params.cart_mass = cfg.cart_mass;
    params.pole_mass = cfg.pole_mass;
    params.pole_half_length = cfg.pole_half_length;
    params.gravity = cfg.gravity;
    params.rk4_substeps = cfg.rk4_substeps;
    if (!cfg.initial_state.empty()) {
      for (int i = 0; i < 4; ++i) params.initial_state[i] = cfg.initial_state[static_cast<std::size_t>(i)];
    }
    return std::make_unique<CartpoleContinuous>(params);
  }
  throw ConfigError("system.type: no continuous relaxation for '" + cfg.type + "'");
}

}  // namespace modesched
