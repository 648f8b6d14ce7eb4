// auvplan command-line front end.
//
//   auvplan <subcommand> [--seed N] [--config file.json] [--out dir] ...
//
// Exit codes: 0 success, 1 mission or planning failure, 2 configuration error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "auvplan/errors.hpp"
#include "auvplan/graph_io.hpp"
#include "auvplan/harness.hpp"
#include "auvplan/text_format.hpp"

namespace fs = std::filesystem;
using namespace auvplan;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kConfigError = 2;

struct Options {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> config;
  std::optional<std::string> out;
  std::optional<std::string> graph;
  std::optional<int> scenario;
  std::optional<int> repetitions;
  bool dump_config = false;
};

ExperimentConfig resolve(Mode mode, const Options& o) {
  ExperimentConfig cfg = o.config ? load_config(*o.config) : ExperimentConfig{};
  cfg.mode = mode;
  if (o.seed) cfg.seed = *o.seed;
  if (o.out) cfg.output_dir = *o.out;
  if (o.graph) cfg.graph_path = *o.graph;
  if (o.scenario) cfg.mission.scenario = *o.scenario;
  if (o.repetitions) cfg.repetitions = *o.repetitions;
  cfg.validate();
  return cfg;
}

MissionGraph mission_graph(const ExperimentConfig& cfg) {
  if (cfg.graph_path) return load_graph(*cfg.graph_path);
  return generate_random_network(cfg.network, derive_seed(cfg.seed, {30}));
}

void write_config(const ExperimentConfig& cfg) {
  const fs::path p = fs::path(cfg.output_dir) / "config.json";
  std::ofstream out(p, std::ios::binary);
  if (!out) throw IoError("cannot write '" + p.string() + "'");
  out << serialize_config(cfg);
}

int gen_network(const ExperimentConfig& cfg) {
  const MissionGraph g = mission_graph(cfg);
  fs::create_directories(cfg.output_dir);
  save_graph(fs::path(cfg.output_dir) / "network.txt", g);
  std::printf("network: %zu waypoints, %zu edges (%zu adjacency entries), start %d, dest %d\n", g.node_count(),
              g.edge_count(), g.adjacency_entries(), g.start(), g.dest());
  return kOk;
}

int plan_route_cmd(const ExperimentConfig& cfg) {
  const MissionGraph g = mission_graph(cfg);
  const auto& m = cfg.mission;
  const RoutePlan plan = plan_route(g, m.t_available, m.vehicle_speed, m.ga, derive_seed(cfg.seed, {31}));
  export_artifacts(plan, m.t_available, cfg.seed, cfg.output_dir);
  if (!plan.ok()) {
    std::printf("route planner: infeasible: %s\n", plan.diagnostic.c_str());
    return kFailure;
  }
  std::printf("route %s\ncost %s, route time %s s of %s s, %zu tasks, weight %s\n", to_string(plan.route).c_str(),
              fmt6(plan.stats.best).c_str(), fmt6(plan.stats.route_time).c_str(), fmt6(m.t_available).c_str(),
              plan.stats.tasks, fmt6(plan.stats.total_weight).c_str());
  return kOk;
}

int plan_path_cmd(const ExperimentConfig& cfg) {
  const auto& m = cfg.mission;
  Rng rng(derive_seed(cfg.seed, {32}));
  const int count = static_cast<int>(rng.uniform_int(m.min_obstacles, m.max_obstacles));
  const std::uint64_t base = derive_seed(cfg.seed, {33});
  const ObstacleField field = scenario_field(cfg.path_start, cfg.path_target, m.scenario, count, m, base);
  const PathPlan plan = plan_path(cfg.path_start, cfg.path_target, field, m.spline, m.pso, derive_seed(base, {1}));
  export_artifacts(plan, field, cfg.output_dir);
  std::printf("path: scenario %d, %d obstacles, length %s m, flight %s s, violation %s\n", m.scenario, count,
              fmt6(plan.path.length).c_str(), fmt6(plan.path.flight_time).c_str(), fmt6(plan.path.violation).c_str());
  return kOk;
}

int run_mission_cmd(const ExperimentConfig& cfg) {
  const MissionGraph g = mission_graph(cfg);
  const MissionLog log = run_mission(g, cfg.mission, derive_seed(cfg.seed, {34}));
  export_artifacts(log, cfg.output_dir);
  std::printf("mission %s: %zu route planner calls, %zu legs, remaining %s s of %s s\n", to_string(log.outcome),
              log.grp_calls.size(), log.legs.size(), fmt6(log.remaining).c_str(),
              fmt6(log.t_available_initial).c_str());
  if (!log.diagnostic.empty()) std::printf("%s\n", log.diagnostic.c_str());
  return log.outcome == MissionOutcome::Success ? kOk : kFailure;
}

int monte_carlo_cmd(const ExperimentConfig& cfg) {
  const auto seeds = seed_range(cfg.seed, cfg.repetitions);
  const MonteCarloResult res = run_monte_carlo(cfg, seeds);
  export_artifacts(res, cfg.output_dir);
  std::printf("monte carlo: %zu runs, %zu budget violations, median route time %s s, median weight %s\n",
              res.rows.size(), res.violations, fmt6(res.route_time.median).c_str(),
              fmt6(res.total_weight.median).c_str());
  return res.violations == 0 ? kOk : kFailure;
}

int scenario_suite_cmd(const ExperimentConfig& cfg) {
  const auto& m = cfg.mission;
  const auto seeds = seed_range(cfg.seed, cfg.repetitions);
  const SuiteResult res = run_scenario_suite(cfg, m.scenario, m.min_obstacles, m.max_obstacles, seeds);
  export_artifacts(res, cfg.output_dir);
  for (int n = m.min_obstacles; n <= m.max_obstacles; ++n)
    std::printf("scenario %d, %d obstacles: %s of runs collision-free\n", m.scenario, n,
                fmt6(res.zero_violation_fraction(n)).c_str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AUV mission planner: route planning, path planning, mission simulation and benchmarks"};
  app.require_subcommand(1);
  Options opt;

  struct Sub {
    Mode mode;
    const char* help;
  };
  const Sub subs[] = {
      {Mode::GenNetwork, "Generate a random mission network"},
      {Mode::PlanRoute, "Plan a global route on a network"},
      {Mode::PlanPath, "Plan one local path through an obstacle scenario"},
      {Mode::RunMission, "Simulate a full mission with replanning"},
      {Mode::MonteCarlo, "Route-planner Monte Carlo campaign over random topologies"},
      {Mode::ScenarioSuite, "Local-planner runs over obstacle counts and seeds for one scenario"},
  };
  std::optional<Mode> chosen;
  for (const auto& s : subs) {
    CLI::App* sc = app.add_subcommand(to_string(s.mode), s.help);
    sc->add_option("--seed", opt.seed, "Master seed");
    sc->add_option("--config", opt.config, "JSON experiment config")->check(CLI::ExistingFile);
    sc->add_option("--out", opt.out, "Output directory");
    sc->add_flag("--dump-config", opt.dump_config, "Also write the resolved config.json to the output directory");
    if (s.mode == Mode::PlanRoute || s.mode == Mode::RunMission)
      sc->add_option("--graph", opt.graph, "Network file instead of a generated network")->check(CLI::ExistingFile);
    if (s.mode == Mode::PlanPath || s.mode == Mode::RunMission || s.mode == Mode::ScenarioSuite)
      sc->add_option("--scenario", opt.scenario, "Obstacle scenario 1..4")->check(CLI::Range(1, 4));
    if (s.mode == Mode::MonteCarlo || s.mode == Mode::ScenarioSuite)
      sc->add_option("--repetitions", opt.repetitions, "Number of seeds")->check(CLI::PositiveNumber);
    const Mode mode = s.mode;
    sc->callback([&chosen, mode] { chosen = mode; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  ExperimentConfig cfg;
  try {
    cfg = resolve(*chosen, opt);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kConfigError;
  }

  try {
    fs::create_directories(cfg.output_dir);
    if (opt.dump_config) write_config(cfg);
    switch (cfg.mode) {
      case Mode::GenNetwork: return gen_network(cfg);
      case Mode::PlanRoute: return plan_route_cmd(cfg);
      case Mode::PlanPath: return plan_path_cmd(cfg);
      case Mode::RunMission: return run_mission_cmd(cfg);
      case Mode::MonteCarlo: return monte_carlo_cmd(cfg);
      case Mode::ScenarioSuite: return scenario_suite_cmd(cfg);
    }
  } catch (const InvalidParameter& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kConfigError;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kConfigError;
  } catch (const fs::filesystem_error& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kConfigError;
  } catch (const IoError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kFailure;
  }
  return kOk;
}
