#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "auvplan/grp_ga.hpp"
#include "auvplan/lpp_pso.hpp"
#include "auvplan/mission_model.hpp"
#include "auvplan/synchro.hpp"

namespace auvplan {

enum class Mode { GenNetwork, PlanRoute, PlanPath, RunMission, MonteCarlo, ScenarioSuite };

const char* to_string(Mode m);
Mode mode_from_string(const std::string& s);  // throws ParseError

struct ExperimentConfig {
  Mode mode = Mode::RunMission;
  std::uint64_t seed = 1;
  NetworkSpec network;
  std::optional<std::string> graph_path;  // read instead of generating
  MissionConfig mission;                  // budget, speed, GA, PSO, spline, obstacles
  int repetitions = 1;
  std::string output_dir = "out";

  // Monte Carlo campaign: topology regenerated per seed.
  NetworkSpec campaign_network{20, 114, {}, 10000.0, 100.0};
  double campaign_t_available = 25200.0;

  // Single-leg runs (plan-path, scenario-suite).
  Vec3 path_start{0.0, 0.0, 50.0};
  Vec3 path_target{2000.0, 0.0, 50.0};

  // Throws InvalidParameter; checks referenced files exist.
  void validate() const;
  bool operator==(const ExperimentConfig&) const = default;
};

// JSON. Missing keys keep their defaults; unknown keys are rejected.
std::string serialize_config(const ExperimentConfig& cfg);
ExperimentConfig parse_config(const std::string& text);  // throws ParseError
ExperimentConfig load_config(const std::filesystem::path& path);

struct MetricsRow {
  std::uint64_t seed = 0;
  double cpu_seconds = 0.0;
  double best_cost = 0.0;
  double t_available = 0.0;
  double route_time = 0.0;
  double total_distance = 0.0;
  double total_weight = 0.0;
  std::size_t tasks = 0;
  double violation = 0.0;
  bool feasible = false;
};

// violation == 0 and route_time < t_available.
bool feasibility_verdict(double violation, double route_time, double t_available);

MetricsRow metrics_row(const RoutePlan& plan, double t_available, std::uint64_t seed);

struct Summary {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

// Quartiles by linear interpolation between order statistics. Throws
// InvalidParameter for an empty sample.
Summary summarize(std::span<const double> values);

struct MonteCarloResult {
  std::vector<MetricsRow> rows;  // seed order
  Summary route_time;
  Summary cpu_seconds;
  Summary total_weight;
  Summary total_distance;
  std::size_t violations = 0;  // rows with feasible == false
};

// One GRP run per seed on a freshly generated campaign_network topology with
// budget campaign_t_available. Throws CampaignError naming the failing seed.
MonteCarloResult run_monte_carlo(const ExperimentConfig& cfg, std::span<const std::uint64_t> seeds);

struct ScenarioRun {
  int scenario = 0;
  int obstacles = 0;
  std::uint64_t seed = 0;
  ObstacleField field;
  PathPlan plan;
};

struct SuiteResult {
  std::vector<ScenarioRun> runs;  // by obstacle count, then seed

  // Share of runs at the given count whose returned path has zero violation.
  double zero_violation_fraction(int obstacles) const;
};

// Obstacle field for one leg: scenario mix of `obstacles` bodies in the
// default window around the pair.
ObstacleField scenario_field(const Vec3& from, const Vec3& to, int scenario, int obstacles, const MissionConfig& mc,
                             std::uint64_t seed);

// plan_path on path_start -> path_target for every count in
// [min_count, max_count] and every seed.
SuiteResult run_scenario_suite(const ExperimentConfig& cfg, int scenario, int min_count, int max_count,
                               std::span<const std::uint64_t> seeds);

// Seeds base, base + 1, ..., base + count - 1.
std::vector<std::uint64_t> seed_range(std::uint64_t base, int count);

// Tab-separated exports with a header row and 6 significant digits. Wall
// clock goes to timing.tsv only, so every other file is reproducible.
//   mission:     mission_grp.tsv, mission_lpp.tsv, ga_trace.tsv, pso_trace.tsv,
//                trajectory.tsv, obstacles.tsv, summary.tsv, timing.tsv
//   route:       metrics.tsv, route.tsv, ga_trace.tsv, timing.tsv
//   path:        path.tsv, pso_trace.tsv, trajectory.tsv, obstacles.tsv, timing.tsv
//   monte carlo: metrics.tsv, summary.tsv, timing.tsv
//   suite:       suite.tsv, pso_trace.tsv, trajectory.tsv, obstacles.tsv, timing.tsv
// Throws IoError naming the path that could not be written.
void export_artifacts(const MissionLog& log, const std::filesystem::path& dir);
void export_artifacts(const RoutePlan& plan, double t_available, std::uint64_t seed, const std::filesystem::path& dir);
void export_artifacts(const PathPlan& plan, const ObstacleField& field, const std::filesystem::path& dir);
void export_artifacts(const MonteCarloResult& result, const std::filesystem::path& dir);
void export_artifacts(const SuiteResult& result, const std::filesystem::path& dir);

}  // namespace auvplan
