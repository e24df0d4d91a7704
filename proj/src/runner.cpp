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

#include "modesched/runner.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <limits>

#include "modesched/cartpole.hpp"
#include "modesched/csv.hpp"
#include "modesched/mpc.hpp"
#include "modesched/rng.hpp"

namespace modesched {

namespace {

constexpr const char* kVersion = "modesched 0.1.0";

// Per-run seed streams: (horizon index, method index, repetition) flattened
// into one counter fed to derive_seed. Documented in the README.
std::uint64_t seed_stream(int horizon_index, int method_index, int rep) {
  return (static_cast<std::uint64_t>(horizon_index) * 1000 +
          static_cast<std::uint64_t>(method_index)) *
             1000 +
         static_cast<std::uint64_t>(rep);
}

struct RunContext {
  RunResult result;
  std::vector<std::uint64_t> seeds;

  std::filesystem::path path(const std::string& name) const {
    return result.run_dir / name;
  }

  void add_artifact(const std::string& name, std::int64_t rows) {
    result.artifacts.push_back(Artifact{name, rows});
  }

  std::uint64_t use_seed(std::uint64_t master, std::uint64_t stream) {
    const std::uint64_t seed = derive_seed(master, stream);
    seeds.push_back(seed);
    return seed;
  }
};

RunContext open_run(const ExperimentConfig& cfg) {
  RunContext ctx;
  ctx.result.run_id = config_hash(cfg).substr(0, 12);
  ctx.result.run_dir =
      std::filesystem::path(cfg.output_dir) / to_string(cfg.kind) / ctx.result.run_id;
  std::error_code ec;
  std::filesystem::create_directories(ctx.result.run_dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory '" + ctx.result.run_dir.string() +
                             "': " + ec.message());
  }
  return ctx;
}

void write_text_artifact(RunContext& ctx, const std::string& name, const std::string& body) {
  std::ofstream out(ctx.path(name), std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + ctx.path(name).string() + "'");
  out << body;
  out.close();
  if (out.fail()) throw std::runtime_error("write failed for '" + name + "'");
  std::int64_t lines = 0;
  for (char c : body) {
    if (c == '\n') ++lines;
  }
  ctx.add_artifact(name, lines);
}

void write_manifest(RunContext& ctx, const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["config_hash"] = config_hash(cfg);
  j["version"] = kVersion;
  j["seeds"] = ctx.seeds;
  j["files"] = nlohmann::json::array();
  for (const Artifact& a : ctx.result.artifacts) {
    j["files"].push_back({{"path", a.name}, {"rows", a.rows}});
  }
  std::ofstream out(ctx.path("manifest.json"), std::ios::binary);
  out << j.dump(2) << '\n';
  out.close();
  if (out.fail()) throw std::runtime_error("write failed for manifest.json");
  ctx.result.seeds = ctx.seeds;
}

ModeId pick_initial_mode(const ExperimentConfig& cfg, const SystemModel& system) {
  const ModeId mode = cfg.solver.initial_mode;
  if (mode >= system.mode_count()) {
    throw ConfigError("solver.initial_mode: outside the mode set");
  }
  return mode >= 0 ? mode : system.neutral_mode();
}

void write_solve_report_csv(RunContext& ctx, const std::string& name,
                            const SolveReport& report) {
  CsvWriter csv(ctx.path(name), {"iter", "accepted_mode", "mu", "nu", "cost", "evaluations"});
  csv.write_row({"0", "", "", "", format_double(report.cost_history[0]),
                 format_int(report.evaluation_history[0])});
  for (std::size_t i = 0; i < report.accepted_switches.size(); ++i) {
    const SwitchTuple& sw = report.accepted_switches[i];
    csv.write_row({format_int(static_cast<std::int64_t>(i + 1)), format_int(sw.mode),
                   format_int(sw.start), format_int(sw.duration),
                   format_double(report.cost_history[i + 1]),
                   format_int(report.evaluation_history[i + 1])});
  }
  csv.close();
  ctx.add_artifact(name, csv.rows());
}

void write_trajectory_csv(RunContext& ctx, const std::string& name, const SystemModel& system,
                          const Schedule& schedule, const TrajectoryRecord& record) {
  std::vector<std::string> header{"k"};
  for (int d = 0; d < system.state_dim(); ++d) header.push_back("x" + std::to_string(d));
  header.push_back("mode");
  header.push_back("stage_cost");
  CsvWriter csv(ctx.path(name), header);
  for (std::size_t k = 0; k < record.states.size(); ++k) {
    std::vector<std::string> row{format_int(static_cast<std::int64_t>(k))};
    for (int d = 0; d < system.state_dim(); ++d) {
      row.push_back(format_double(record.states[k][d]));
    }
    row.push_back(k < static_cast<std::size_t>(schedule.horizon())
                      ? format_int(schedule[static_cast<int>(k)])
                      : "");
    row.push_back(format_double(record.stage_costs[k]));
    csv.write_row(row);
  }
  csv.close();
  ctx.add_artifact(name, csv.rows());
}

std::string controls_line(const std::vector<Eigen::VectorXd>& controls) {
  std::string out;
  for (std::size_t k = 0; k < controls.size(); ++k) {
    if (k > 0) out.push_back(',');
    out += format_double(controls[k][0]);
  }
  out.push_back('\n');
  return out;
}

SystemConfig with_horizon(SystemConfig sys, int horizon) {
  sys.horizon = horizon;
  return sys;
}

double sample_mean(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double sample_stddev(const std::vector<double>& values) {
  if (values.size() < 2) return 0.0;
  const double mean = sample_mean(values);
  double accum = 0.0;
  for (double v : values) accum += (v - mean) * (v - mean);
  return std::sqrt(accum / static_cast<double>(values.size() - 1));
}

struct MethodRun {
  double cost = 0.0;
};

RecedingHorizonController::Planner make_baseline_planner(const BaselineConfig& base,
                                                         std::int64_t per_step_budget,
                                                         int threads) {
  BaselineConfig cfg = base;
  cfg.threads = threads;
  if (cfg.method == BaselineMethod::kRandomShooting) {
    cfg.iterations = static_cast<int>(std::max<std::int64_t>(1, (per_step_budget - 1) / cfg.samples));
    return [cfg](const SystemModel& system, const Schedule& warm, std::uint64_t seed) {
      BaselineConfig local = cfg;
      local.seed = seed;
      const RandomShootingResult r = random_shooting(system, warm, local);
      return PlanOutcome{r.schedule, r.cost, r.evaluations};
    };
  }
  if (cfg.method == BaselineMethod::kCem) {
    cfg.iterations = static_cast<int>(std::max<std::int64_t>(1, per_step_budget / cfg.samples));
    return [cfg](const SystemModel& system, const Schedule& warm, std::uint64_t seed) {
      BaselineConfig local = cfg;
      local.seed = seed;
      const CemResult r = cem_categorical(system, local);
      // Never plan worse than the warm start.
      const double warm_cost = evaluate_cost(system, warm);
      if (warm_cost <= r.cost) {
        return PlanOutcome{warm, warm_cost, r.evaluations + 1};
      }
      return PlanOutcome{r.schedule, r.cost, r.evaluations + 1};
    };
  }
  throw ConfigError("sweep-horizon supports the hybrid scheduler, random-shooting and cem");
}

}  // namespace

RunResult run_solve(const ExperimentConfig& cfg, const RunOptions& options) {
  RunContext ctx = open_run(cfg);
  const auto system = build_system(cfg.system);
  const ModeId initial_mode = pick_initial_mode(cfg, *system);

  for (int rep = 0; rep < cfg.repetitions; ++rep) {
    const std::string suffix = cfg.repetitions > 1 ? "_r" + std::to_string(rep) : "";
    SolverConfig solver = cfg.solver.solver;
    solver.seed = ctx.use_seed(cfg.seed, seed_stream(0, 0, rep));
    solver.threads = options.threads;

    const Schedule initial = Schedule::uniform(system->horizon(), initial_mode);
    const SolveReport report = solve_iterative(*system, initial, solver, cfg.solver.inner);

    write_solve_report_csv(ctx, "report" + suffix + ".csv", report);
    write_text_artifact(ctx, "schedule" + suffix + ".txt",
                        to_csv_line(report.final_schedule) + "\n");
    write_text_artifact(ctx, "schedule_rle" + suffix + ".txt",
                        to_text(to_run_length(report.final_schedule)));
    const TrajectoryRecord record = evaluate(*system, report.final_schedule);
    write_trajectory_csv(ctx, "trajectory" + suffix + ".csv", *system, report.final_schedule,
                         record);
  }
  write_manifest(ctx, cfg);
  return ctx.result;
}

RunResult run_compare(const ExperimentConfig& cfg, const RunOptions& options) {
  RunContext ctx = open_run(cfg);
  std::vector<int> horizons = cfg.compare_horizons;
  if (horizons.empty()) horizons.push_back(cfg.system.horizon);

  const bool has_relaxation = cfg.system.type != "table";
  const bool use_oracle = cfg.oracle.enabled && has_relaxation;

  std::vector<std::string> methods{"hybrid"};
  for (const BaselineConfig& b : cfg.baselines) methods.push_back(to_string(b.method));

  CsvWriter csv(ctx.path("comparison.csv"),
                {"method", "horizon", "budget", "seed", "final_cost", "oracle_cost",
                 "normalized_gap"});

  for (std::size_t hi = 0; hi < horizons.size(); ++hi) {
    const int horizon = horizons[hi];
    const SystemConfig sys_cfg = with_horizon(cfg.system, horizon);
    const auto system = build_system(sys_cfg);
    const ModeId initial_mode = pick_initial_mode(cfg, *system);
    const Schedule initial = Schedule::uniform(horizon, initial_mode);

    double oracle_cost = std::numeric_limits<double>::quiet_NaN();
    if (use_oracle) {
      const auto continuous = build_continuous_system(sys_cfg);
      const IlqrResult oracle = ilqr_oracle(*continuous, cfg.oracle.ilqr);
      oracle_cost = oracle.cost;
      write_text_artifact(ctx, "controls_ilqr_h" + std::to_string(horizon) + ".txt",
                          controls_line(oracle.controls));
    }

    double best_hybrid_cost = std::numeric_limits<double>::infinity();
    Schedule best_hybrid_schedule;

    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      std::vector<double> costs;
      std::vector<double> gaps;
      for (int rep = 0; rep < cfg.repetitions; ++rep) {
        const std::uint64_t seed =
            ctx.use_seed(cfg.seed, seed_stream(static_cast<int>(hi), static_cast<int>(mi), rep));
        double cost = 0.0;
        if (mi == 0) {
          SolverConfig solver = cfg.solver.solver;
          solver.seed = seed;
          solver.threads = options.threads;
          solver.max_evaluations = cfg.budget;
          const SolveReport report = solve_iterative(*system, initial, solver, cfg.solver.inner);
          cost = report.cost_history.back();
          if (cost < best_hybrid_cost) {
            best_hybrid_cost = cost;
            best_hybrid_schedule = report.final_schedule;
          }
        } else {
          BaselineConfig base = cfg.baselines[mi - 1];
          base.seed = seed;
          base.threads = options.threads;
          switch (base.method) {
            case BaselineMethod::kRandomShooting: {
              base.iterations = static_cast<int>(
                  std::max<std::int64_t>(1, (cfg.budget - 1) / base.samples));
              cost = random_shooting(*system, initial, base).cost;
              break;
            }
            case BaselineMethod::kCem: {
              base.iterations =
                  static_cast<int>(std::max<std::int64_t>(1, cfg.budget / base.samples));
              cost = cem_categorical(*system, base).cost;
              break;
            }
            case BaselineMethod::kMppi: {
              base.iterations = static_cast<int>(
                  std::max<std::int64_t>(1, (cfg.budget - 1) / (base.samples + 1)));
              const auto continuous = build_continuous_system(sys_cfg);
              cost = mppi_continuous(*continuous, base).cost;
              break;
            }
            case BaselineMethod::kIlqr: {
              const auto continuous = build_continuous_system(sys_cfg);
              cost = ilqr_oracle(*continuous, cfg.oracle.ilqr).cost;
              break;
            }
          }
        }
        costs.push_back(cost);
        std::string oracle_cell;
        std::string gap_cell;
        if (use_oracle) {
          const GapReport gap =
              measure_gap(methods[mi], horizon, cost, horizon, oracle_cost);
          gaps.push_back(gap.normalized_gap);
          oracle_cell = format_double(oracle_cost);
          gap_cell = format_double(gap.normalized_gap);
        }
        csv.write_row({methods[mi], format_int(horizon), format_int(cfg.budget),
                       format_uint(seed), format_double(cost),
                       oracle_cell, gap_cell});
      }
      csv.write_row({methods[mi], format_int(horizon), format_int(cfg.budget), "mean",
                     format_double(sample_mean(costs)),
                     use_oracle ? format_double(oracle_cost) : "",
                     use_oracle ? format_double(sample_mean(gaps)) : ""});
      csv.write_row({methods[mi], format_int(horizon), format_int(cfg.budget), "stddev",
                     format_double(sample_stddev(costs)), use_oracle ? "0" : "",
                     use_oracle ? format_double(sample_stddev(gaps)) : ""});
    }

    if (has_relaxation && best_hybrid_schedule.horizon() == horizon) {
      if (const auto* cartpole = dynamic_cast<const CartpoleModel*>(system.get())) {
        std::string line;
        for (int k = 0; k < horizon; ++k) {
          if (k > 0) line.push_back(',');
          line += format_double(cartpole->force_level(best_hybrid_schedule[k]));
        }
        line.push_back('\n');
        write_text_artifact(ctx, "forces_hybrid_h" + std::to_string(horizon) + ".txt", line);
      }
    }
  }
  csv.close();
  ctx.result.artifacts.insert(ctx.result.artifacts.begin(),
                              Artifact{"comparison.csv", csv.rows()});
  write_manifest(ctx, cfg);
  return ctx.result;
}

RunResult run_sweep_horizon(const ExperimentConfig& cfg, const RunOptions& options) {
  RunContext ctx = open_run(cfg);
  const auto system = build_system(cfg.system);

  std::vector<std::string> methods{"hybrid"};
  for (const BaselineConfig& b : cfg.baselines) {
    if (b.method == BaselineMethod::kRandomShooting || b.method == BaselineMethod::kCem) {
      methods.push_back(to_string(b.method));
    }
  }

  CsvWriter csv(ctx.path("sweep.csv"), {"method", "H", "seed", "cumulative_cost"});
  // means[method][horizon index]
  std::vector<std::vector<double>> means(methods.size());
  std::vector<std::vector<double>> stds(methods.size());

  for (std::size_t hi = 0; hi < cfg.mpc.horizons.size(); ++hi) {
    const int horizon = cfg.mpc.horizons[static_cast<std::size_t>(hi)];
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      std::vector<double> costs;
      for (int rep = 0; rep < cfg.repetitions; ++rep) {
        const std::uint64_t seed =
            ctx.use_seed(cfg.seed, seed_stream(static_cast<int>(hi), static_cast<int>(mi), rep));
        MpcConfig mpc;
        mpc.planning_horizon = horizon;
        mpc.inner = cfg.solver.inner;
        mpc.solver = cfg.solver.solver;
        mpc.solver.seed = seed;
        mpc.solver.threads = options.threads;
        mpc.max_rollouts_per_step = cfg.mpc.max_rollouts_per_step;
        mpc.default_mode = cfg.solver.initial_mode;

        MpcEpisodeReport report;
        if (mi == 0) {
          report = run_mpc_episode(*system, mpc, cfg.mpc.episode_length);
        } else {
          BaselineConfig base = cfg.baselines[0];
          for (const BaselineConfig& b : cfg.baselines) {
            if (to_string(b.method) == methods[mi]) {
              base = b;
              break;
            }
          }
          report = run_mpc_episode(
              *system, mpc, cfg.mpc.episode_length,
              make_baseline_planner(base, cfg.mpc.max_rollouts_per_step, options.threads));
        }
        costs.push_back(report.cumulative_cost);
        csv.write_row({methods[mi], format_int(horizon),
                       format_uint(seed),
                       format_double(report.cumulative_cost)});
      }
      means[mi].push_back(sample_mean(costs));
      stds[mi].push_back(sample_stddev(costs));
    }
  }
  csv.close();
  ctx.add_artifact("sweep.csv", csv.rows());

  CsvWriter summary(ctx.path("sweep_summary.csv"),
                    {"method", "H", "cumulative_cost_mean", "cumulative_cost_std"});
  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    for (std::size_t hi = 0; hi < cfg.mpc.horizons.size(); ++hi) {
      summary.write_row({methods[mi], format_int(cfg.mpc.horizons[hi]),
                         format_double(means[mi][hi]), format_double(stds[mi][hi])});
    }
  }
  summary.close();
  ctx.add_artifact("sweep_summary.csv", summary.rows());

  CsvWriter trend(ctx.path("trend.csv"),
                  {"method", "h_first", "h_last", "mean_first", "mean_last", "flag"});
  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    const double first = means[mi].front();
    const double last = means[mi].back();
    trend.write_row({methods[mi], format_int(cfg.mpc.horizons.front()),
                     format_int(cfg.mpc.horizons.back()), format_double(first),
                     format_double(last), last <= first ? "improving" : "deteriorating"});
  }
  trend.close();
  ctx.add_artifact("trend.csv", trend.rows());

  write_manifest(ctx, cfg);
  return ctx.result;
}

RunResult run_mpc(const ExperimentConfig& cfg, const RunOptions& options) {
  RunContext ctx = open_run(cfg);
  const auto system = build_system(cfg.system);

  CsvWriter summary(ctx.path("mpc_summary.csv"),
                    {"seed", "H", "episode_length", "cumulative_cost", "evaluations",
                     "fallback_steps"});
  for (int rep = 0; rep < cfg.repetitions; ++rep) {
    const std::string suffix = cfg.repetitions > 1 ? "_r" + std::to_string(rep) : "";
    const std::uint64_t seed = ctx.use_seed(cfg.seed, seed_stream(0, 0, rep));
    MpcConfig mpc;
    mpc.planning_horizon = cfg.mpc.planning_horizon;
    mpc.inner = cfg.solver.inner;
    mpc.solver = cfg.solver.solver;
    mpc.solver.seed = seed;
    mpc.solver.threads = options.threads;
    mpc.max_rollouts_per_step = cfg.mpc.max_rollouts_per_step;
    mpc.default_mode = cfg.solver.initial_mode;

    const MpcEpisodeReport report = run_mpc_episode(*system, mpc, cfg.mpc.episode_length);

    std::vector<std::string> header{"k"};
    for (int d = 0; d < system->state_dim(); ++d) header.push_back("x" + std::to_string(d));
    header.push_back("mode");
    header.push_back("stage_cost");
    CsvWriter traj(ctx.path("mpc_trajectory" + suffix + ".csv"), header);
    for (std::size_t k = 0; k < report.states.size(); ++k) {
      std::vector<std::string> row{format_int(static_cast<std::int64_t>(k))};
      for (int d = 0; d < system->state_dim(); ++d) {
        row.push_back(format_double(report.states[k][d]));
      }
      row.push_back(k < report.executed_modes.size() ? format_int(report.executed_modes[k]) : "");
      row.push_back(k < report.stage_costs.size() ? format_double(report.stage_costs[k]) : "");
      traj.write_row(row);
    }
    traj.close();
    ctx.add_artifact("mpc_trajectory" + suffix + ".csv", traj.rows());

    summary.write_row({format_uint(seed),
                       format_int(cfg.mpc.planning_horizon), format_int(cfg.mpc.episode_length),
                       format_double(report.cumulative_cost), format_int(report.evaluations),
                       format_int(report.fallback_steps)});
  }
  summary.close();
  ctx.add_artifact("mpc_summary.csv", summary.rows());
  write_manifest(ctx, cfg);
  return ctx.result;
}

RunResult run_experiment(const ExperimentConfig& cfg, const RunOptions& options) {
  switch (cfg.kind) {
    case ExperimentKind::kSolve:
      return run_solve(cfg, options);
    case ExperimentKind::kCompare:
      return run_compare(cfg, options);
    case ExperimentKind::kSweepHorizon:
      return run_sweep_horizon(cfg, options);
    case ExperimentKind::kMpc:
      return run_mpc(cfg, options);
  }
  throw std::logic_error("run_experiment: unhandled experiment kind");
}

}  // namespace modesched
