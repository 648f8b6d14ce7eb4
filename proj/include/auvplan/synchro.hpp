#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "auvplan/grp_ga.hpp"
#include "auvplan/lpp_pso.hpp"
#include "auvplan/mission_model.hpp"
#include "auvplan/obstacle_field.hpp"

namespace auvplan {

// Nominal leg time the route planner charged for edge a-b: d / v + delta.
// Throws InvalidRoute when the edge is absent.
double expected_time(WaypointId a, WaypointId b, const MissionGraph& g, double vehicle_speed);

enum class ReplanDecision { Continue, Replan };

// Continue iff t_path_flight <= t_expected.
ReplanDecision replan_check(double t_path_flight, double t_expected);

// One row of the route-planner call table.
struct GrpRecord {
  int call = 0;
  WaypointId start = 0;
  WaypointId dest = 0;
  std::size_t tasks = 0;
  double weight = 0.0;
  double cost = 0.0;
  double cpu_seconds = 0.0;  // compute charged against the budget
  double t_available = 0.0;
  double t_route = 0.0;
  bool valid = false;
  Route route;
  double measured_seconds = 0.0;  // wall clock, never exported to golden files
};

// One row of the path-planner call table.
struct LegRecord {
  int route_id = 0;
  int pp_call = 0;
  WaypointId from = 0;
  WaypointId to = 0;
  double violation = 0.0;
  double path_cost = 0.0;
  double cpu_seconds = 0.0;  // compute charged against the budget
  double t_path_flight = 0.0;  // flight + task time + charged compute
  double t_expected = 0.0;
  double t_available = 0.0;  // remaining after this leg
  bool replan = false;
  bool lpp = false;  // the current route continues with another path-planner call
  double measured_seconds = 0.0;
};

enum class MissionOutcome { InProgress, Success, BudgetExhausted, Infeasible };

const char* to_string(MissionOutcome o);

struct MissionState {
  explicit MissionState(MissionGraph g, double t_available);

  MissionGraph graph;  // working copy; traversed edges removed
  WaypointId current;
  double t_available;
  Route active_route;
  std::vector<WaypointId> travelled;  // waypoints visited so far, in order
  std::vector<GrpRecord> grp_calls;
  std::vector<LegRecord> legs;
  int replans = 0;
  double compute_total = 0.0;
  MissionOutcome outcome = MissionOutcome::InProgress;
  std::string diagnostic;
};

// Charges the leg against the budget, prunes the traversed edge, advances the
// current waypoint and appends the record. A negative remaining budget marks
// the mission BudgetExhausted. Throws InvalidRoute when the leg does not start
// at the current waypoint or its edge is not in the working graph.
MissionState apply_leg(const MissionState& state, const LegRecord& leg);

using FieldGenerator = std::function<ObstacleField(const Vec3& from, const Vec3& to, double expected_seconds,
                                                   std::uint64_t seed)>;

struct MissionConfig {
  double t_available = 10800.0;
  double vehicle_speed = kDefaultVehicleSpeed;
  GaConfig ga;
  PsoConfig pso;
  BSplineConfig spline;
  SpawnConfig spawn;
  int scenario = 4;
  int min_obstacles = 3;
  int max_obstacles = 6;
  double window_inflation = 0.25;
  // Wall-clock compute is charged when set; otherwise compute_charge per
  // planner call (deterministic).
  bool measure_compute = false;
  double compute_charge = 0.0;
  int max_grp_calls = 200;
  // Share of the remaining budget held back from each route-planner call to
  // absorb path-planner overruns.
  double route_margin = 0.02;

  void validate() const;
  bool operator==(const MissionConfig&) const = default;
};

// Fresh obstacles per leg: scenario mix of min..max obstacles in the window
// around the pair, radii capped at a quarter of the leg, one obstacle step per
// PSO iteration.
FieldGenerator scenario_field_generator(const MissionConfig& cfg);

struct MissionLog {
  MissionOutcome outcome = MissionOutcome::InProgress;
  std::string diagnostic;
  std::vector<GrpRecord> grp_calls;
  std::vector<LegRecord> legs;
  std::vector<WaypointId> travelled;
  double t_available_initial = 0.0;
  double remaining = 0.0;
  int replans = 0;
  double compute_total = 0.0;
  std::vector<GaRunStats> grp_stats;  // one per GRP call
  std::vector<PathPlan> paths;        // one per leg
  std::vector<ObstacleField> fields;  // field each leg was planned in
};

MissionLog run_mission(const MissionGraph& g, const MissionConfig& cfg, std::uint64_t seed);
MissionLog run_mission(const MissionGraph& g, const FieldGenerator& fields, const MissionConfig& cfg,
                       std::uint64_t seed);

}  // namespace auvplan
