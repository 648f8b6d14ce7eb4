#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "auvplan/vec3.hpp"

namespace auvplan {

using WaypointId = int;

// Default vehicle water-referenced speed, m/s.
inline constexpr double kDefaultVehicleSpeed = 3.0;

struct Waypoint {
  WaypointId id = 0;
  Vec3 position;
};

// Task carried by an edge: priority rho (> 0), risk zeta in percent
// (0, 100], completion time delta in seconds (>= 0).
struct Task {
  double priority = 1.0;
  double risk = 1.0;
  double completion_time = 0.0;

  void validate() const;
  bool operator==(const Task&) const = default;
};

struct Edge {
  WaypointId from = 0;
  WaypointId to = 0;
  double distance = 0.0;
  Task task;

  // Routing prize w = rho / zeta.
  double weight() const { return task.priority / task.risk; }
  WaypointId other(WaypointId end) const { return end == from ? to : from; }
};

// Undirected, task-annotated waypoint graph. Immutable after construction;
// pruning and re-rooting return new graphs.
class MissionGraph {
 public:
  struct EdgeSpec {
    WaypointId from;
    WaypointId to;
    Task task;
  };

  // Waypoint ids must be 0..n-1 in order. Edge distances are computed from
  // the endpoint coordinates. Throws InvalidParameter on any broken invariant.
  MissionGraph(std::vector<Waypoint> waypoints, const std::vector<EdgeSpec>& edges, WaypointId start,
               WaypointId dest);

  std::size_t node_count() const { return waypoints_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  // Nonzero entries of the symmetric adjacency matrix (2 per undirected edge).
  std::size_t adjacency_entries() const { return 2 * edges_.size(); }

  const std::vector<Waypoint>& waypoints() const { return waypoints_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Waypoint& waypoint(WaypointId id) const { return waypoints_.at(static_cast<std::size_t>(id)); }
  WaypointId start() const { return start_; }
  WaypointId dest() const { return dest_; }

  bool contains(WaypointId id) const { return id >= 0 && static_cast<std::size_t>(id) < waypoints_.size(); }
  bool adjacent(WaypointId a, WaypointId b) const { return edge_index(a, b).has_value(); }
  std::optional<std::size_t> edge_index(WaypointId a, WaypointId b) const;
  // Throws InvalidRoute when a and b are not joined by an edge.
  const Edge& edge(WaypointId a, WaypointId b) const;
  // Ascending neighbour ids.
  const std::vector<WaypointId>& neighbors(WaypointId id) const { return neighbors_.at(static_cast<std::size_t>(id)); }

  MissionGraph with_start(WaypointId start) const;
  MissionGraph without_edge(WaypointId a, WaypointId b) const;

  // Largest zeta/rho over all edges; normalizer for the task cost term.
  double max_risk_ratio() const { return max_risk_ratio_; }

  std::vector<EdgeSpec> edge_specs() const;

 private:
  std::vector<Waypoint> waypoints_;
  std::vector<Edge> edges_;
  std::vector<std::int32_t> index_;  // n*n, -1 when absent
  std::vector<std::vector<WaypointId>> neighbors_;
  WaypointId start_;
  WaypointId dest_;
  double max_risk_ratio_ = 0.0;
};

struct Route {
  std::vector<WaypointId> sequence;

  std::size_t size() const { return sequence.size(); }
  bool operator==(const Route&) const = default;
  auto operator<=>(const Route&) const = default;
};

std::string to_string(const Route& route);

double edge_distance(const Vec3& a, const Vec3& b);

// d / v + delta. Throws InvalidParameter for v <= 0.
double edge_traverse_time(const Edge& e, double vehicle_speed);

// Sum of edge traverse times over consecutive pairs; 0 for a single waypoint.
// Throws InvalidRoute on a missing edge.
double route_time(const Route& r, const MissionGraph& g, double vehicle_speed);

// Sum of rho/zeta over the route's edges.
double route_weight(const Route& r, const MissionGraph& g);

struct RouteMetrics {
  double time = 0.0;
  double weight = 0.0;
  double distance = 0.0;
  std::size_t tasks = 0;
};

RouteMetrics evaluate_route(const Route& r, const MissionGraph& g, double vehicle_speed);

enum class RouteDefect {
  Empty,
  WrongStart,
  WrongEnd,
  MissingEdge,
  RepeatedNode,
  RepeatedEdge,
  OverBudget,
};

const char* to_string(RouteDefect d);

struct FeasibilityReport {
  std::vector<RouteDefect> defects;  // each kind listed at most once
  std::optional<double> route_time;  // set when every edge exists

  bool valid() const { return defects.empty(); }
  bool has(RouteDefect d) const;
  // Valid ignoring the time budget.
  bool structurally_valid() const;
};

FeasibilityReport validate_route(const Route& r, const MissionGraph& g, double t_available, double vehicle_speed);

// Structural checks only (endpoints, edges, repeats).
bool is_structurally_valid(const Route& r, const MissionGraph& g);

// Minimum-time start->dest route (Dijkstra on traverse time), or nullopt when
// dest is unreachable.
std::optional<Route> fastest_route(const MissionGraph& g, double vehicle_speed);

bool reachable(const MissionGraph& g, WaypointId from, WaypointId to);

struct TaskRanges {
  int priority_min = 1;  // integer, inclusive
  int priority_max = 10;
  double risk_min = 1.0;  // percent
  double risk_max = 100.0;
  double completion_min = 60.0;  // seconds
  double completion_max = 600.0;
  bool operator==(const TaskRanges&) const = default;
};

struct NetworkSpec {
  int waypoints = 50;
  int edges = 735;
  TaskRanges tasks;
  double area_xy = 10000.0;  // x, y ~ U(0, area_xy)
  double depth = 100.0;      // z ~ U(0, depth)
  bool operator==(const NetworkSpec&) const = default;
};

// Random spanning tree plus uniformly sampled extra edges. Start is waypoint
// 0, destination is waypoint n-1. Throws InvalidParameter when the edge count
// is outside [n-1, n(n-1)/2].
MissionGraph generate_random_network(const NetworkSpec& spec, std::uint64_t seed);

}  // namespace auvplan
