#include "auvplan/synchro.hpp"

#include <algorithm>
#include <cmath>

#include "auvplan/errors.hpp"
#include "auvplan/text_format.hpp"

namespace auvplan {

double expected_time(WaypointId a, WaypointId b, const MissionGraph& g, double vehicle_speed) {
  return edge_traverse_time(g.edge(a, b), vehicle_speed);
}

ReplanDecision replan_check(double t_path_flight, double t_expected) {
  return t_path_flight <= t_expected ? ReplanDecision::Continue : ReplanDecision::Replan;
}

const char* to_string(MissionOutcome o) {
  switch (o) {
    case MissionOutcome::InProgress: return "in-progress";
    case MissionOutcome::Success: return "success";
    case MissionOutcome::BudgetExhausted: return "budget-exhausted";
    case MissionOutcome::Infeasible: return "infeasible";
  }
  return "unknown";
}

MissionState::MissionState(MissionGraph g, double t_avail)
    : graph(std::move(g)), current(graph.start()), t_available(t_avail), travelled{graph.start()} {
  if (!(t_avail > 0.0)) throw InvalidParameter("available time must be > 0");
}

MissionState apply_leg(const MissionState& state, const LegRecord& leg) {
  if (leg.from != state.current)
    throw InvalidRoute("leg starts at " + std::to_string(leg.from) + " but the vehicle is at " +
                       std::to_string(state.current));
  if (!state.graph.adjacent(leg.from, leg.to))
    throw InvalidRoute("edge " + std::to_string(leg.from) + "-" + std::to_string(leg.to) + " is not in the working graph");
  if (leg.t_path_flight < 0.0) throw InvalidParameter("leg duration must be >= 0");

  MissionState next = state;
  next.t_available = state.t_available - leg.t_path_flight;
  next.graph = state.graph.without_edge(leg.from, leg.to);
  next.current = leg.to;
  next.travelled.push_back(leg.to);
  next.compute_total += leg.cpu_seconds;
  LegRecord logged = leg;
  logged.t_available = next.t_available;
  next.legs.push_back(logged);
  if (next.t_available < 0.0) {
    next.outcome = MissionOutcome::BudgetExhausted;
    next.diagnostic = "budget exhausted on leg " + std::to_string(leg.from) + "-" + std::to_string(leg.to) + ": " +
                      fmt6(next.t_available) + " s remaining";
  }
  return next;
}

void MissionConfig::validate() const {
  if (!(t_available > 0.0)) throw InvalidParameter("available time must be > 0");
  if (!(vehicle_speed > 0.0)) throw InvalidParameter("vehicle speed must be > 0");
  ga.validate();
  pso.validate();
  spline.validate();
  if (scenario < 1 || scenario > 4) throw InvalidParameter("scenario must be 1..4");
  if (min_obstacles < 0 || max_obstacles < min_obstacles) throw InvalidParameter("bad obstacle count range");
  if (window_inflation < 0.0) throw InvalidParameter("window inflation must be >= 0");
  if (compute_charge < 0.0) throw InvalidParameter("compute charge must be >= 0");
  if (route_margin < 0.0 || route_margin >= 1.0) throw InvalidParameter("route margin must lie in [0, 1)");
  if (max_grp_calls < 1) throw InvalidParameter("max GRP calls must be >= 1");
}

FieldGenerator scenario_field_generator(const MissionConfig& cfg) {
  return [cfg](const Vec3& from, const Vec3& to, double, std::uint64_t seed) {
    Rng rng(derive_seed(seed, {0x636f756e74}));
    const auto window = OperationWindow::around(from, to, cfg.window_inflation);
    const double leg = window.leg_length();
    SpawnConfig spawn = cfg.spawn;
    spawn.radius_max = std::min(spawn.radius_max, 0.25 * leg);
    spawn.radius_min = std::min(spawn.radius_min, spawn.radius_max);
    const int total = static_cast<int>(rng.uniform_int(cfg.min_obstacles, cfg.max_obstacles));
    ObstacleCounts counts = compose_scenario(cfg.scenario, total, rng);
    if (!(spawn.radius_max > 0.0)) counts = {};
    return spawn_obstacles(window, counts, spawn, seed);
  };
}

MissionLog run_mission(const MissionGraph& g, const MissionConfig& cfg, std::uint64_t seed) {
  return run_mission(g, scenario_field_generator(cfg), cfg, seed);
}

MissionLog run_mission(const MissionGraph& g, const FieldGenerator& fields, const MissionConfig& cfg,
                       std::uint64_t seed) {
  cfg.validate();
  MissionLog log;
  log.t_available_initial = cfg.t_available;
  MissionState state(g, cfg.t_available);
  std::uint64_t leg_counter = 0;
  PsoConfig pso = cfg.pso;
  pso.vehicle_speed = cfg.vehicle_speed;

  while (state.outcome == MissionOutcome::InProgress) {
    if (static_cast<int>(state.grp_calls.size()) >= cfg.max_grp_calls) {
      state.outcome = MissionOutcome::Infeasible;
      state.diagnostic = "route planner call limit reached";
      break;
    }
    const int call = static_cast<int>(state.grp_calls.size()) + 1;
    const MissionGraph rooted = state.graph.with_start(state.current);
    const RoutePlan plan =
        plan_route(rooted, state.t_available * (1.0 - cfg.route_margin), cfg.vehicle_speed, cfg.ga, derive_seed(seed, {1, static_cast<std::uint64_t>(call)}));
    GrpRecord grp;
    grp.call = call;
    grp.start = state.current;
    grp.dest = g.dest();
    grp.tasks = plan.stats.tasks;
    grp.weight = plan.stats.total_weight;
    grp.cost = plan.stats.best;
    grp.measured_seconds = plan.stats.cpu_seconds;
    grp.cpu_seconds = cfg.measure_compute ? plan.stats.cpu_seconds : cfg.compute_charge;
    grp.t_available = state.t_available;
    grp.t_route = plan.stats.route_time;
    grp.valid = plan.ok();
    grp.route = plan.route;
    state.grp_calls.push_back(grp);
    log.grp_stats.push_back(plan.stats);
    if (call > 1) ++state.replans;
    if (!plan.ok()) {
      // Reachable but too far for what is left of the budget counts as running
      // out of budget; a pruned graph that cuts off the destination does not.
      const bool cut_off = !reachable(rooted, state.current, g.dest());
      state.outcome = cut_off ? MissionOutcome::Infeasible : MissionOutcome::BudgetExhausted;
      state.diagnostic = std::string(cut_off ? "destination cut off" : "budget exhausted") + ": route planner call " +
                         std::to_string(call) + " from " + std::to_string(state.current) + ": " + plan.diagnostic;
      break;
    }
    state.active_route = plan.route;

    const auto& seq = plan.route.sequence;
    for (std::size_t k = 1; k < seq.size(); ++k) {
      const WaypointId a = seq[k - 1];
      const WaypointId b = seq[k];
      const Edge& edge = state.graph.edge(a, b);
      const double expected = expected_time(a, b, state.graph, cfg.vehicle_speed);
      const Vec3 pa = g.waypoint(a).position;
      const Vec3 pb = g.waypoint(b).position;
      const std::uint64_t leg_seed = derive_seed(seed, {2, leg_counter++});
      ObstacleField field = fields(pa, pb, expected, leg_seed);
      PathPlan pp = plan_path(pa, pb, field, cfg.spline, pso, derive_seed(leg_seed, {3}));

      LegRecord leg;
      leg.route_id = call;
      leg.pp_call = static_cast<int>(k);
      leg.from = a;
      leg.to = b;
      leg.violation = pp.path.violation;
      leg.path_cost = pp.path.cost;
      leg.measured_seconds = pp.stats.cpu_seconds;
      double compute = cfg.measure_compute ? pp.stats.cpu_seconds : cfg.compute_charge;
      if (k == 1) compute += grp.cpu_seconds;  // the route planner call is charged on the first leg it produced
      leg.cpu_seconds = compute;
      leg.t_path_flight = pp.path.flight_time + edge.task.completion_time + compute;
      leg.t_expected = expected;
      leg.replan = replan_check(leg.t_path_flight, leg.t_expected) == ReplanDecision::Replan;
      leg.lpp = !leg.replan && b != g.dest();
      state = apply_leg(state, leg);
      log.paths.push_back(std::move(pp));
      log.fields.push_back(std::move(field));
      if (state.outcome != MissionOutcome::InProgress) break;
      if (b == g.dest()) {
        state.outcome = MissionOutcome::Success;
        break;
      }
      if (leg.replan) break;
    }
  }

  log.outcome = state.outcome;
  log.diagnostic = state.diagnostic;
  log.grp_calls = std::move(state.grp_calls);
  log.legs = std::move(state.legs);
  log.travelled = std::move(state.travelled);
  log.remaining = state.t_available;
  log.replans = state.replans;
  log.compute_total = state.compute_total;
  return log;
}

}  // namespace auvplan
