#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "auvplan/bspline.hpp"
#include "auvplan/obstacle_field.hpp"

namespace auvplan {

struct ControlBox {
  Vec3 lo;
  Vec3 hi;
  bool contains(const Vec3& p) const {
    for (int k = 0; k < 3; ++k)
      if (p[k] < lo[k] || p[k] > hi[k]) return false;
    return true;
  }
};

// Search box per control point. Division points p_0..p_{n-1} split the
// start->target segment evenly; interior point i lies between p_{i-1} and
// p_i on every axis, widened on each axis by half_width times that axis'
// share of the direction perpendicular to the leg. The first and last boxes
// collapse onto start and target. Throws InvalidParameter for n < 2 or
// start == target.
std::vector<ControlBox> control_point_bounds(const Vec3& start, const Vec3& target, int n, double half_width);

struct PsoConfig {
  int swarm_size = 150;
  int iterations = 100;
  double inertia = 0.72;
  bool inertia_decay = true;  // linear inertia_start -> inertia_end; fixed `inertia` otherwise
  double inertia_start = 0.9;
  double inertia_end = 0.4;
  double c1 = 2.0;
  double c2 = 2.0;
  double violation_penalty = 100.0;
  double velocity_clamp = 0.2;     // per-axis |v| <= velocity_clamp * box width
  double corridor_fraction = 0.5;  // lateral half-width / leg length
  double vehicle_speed = 3.0;

  void validate() const;
  bool operator==(const PsoConfig&) const = default;
};

struct BSplinePath {
  std::vector<Vec3> control_points;
  std::vector<Vec3> samples;
  double length = 0.0;
  double flight_time = 0.0;
  double violation = 0.0;
  double cost = 0.0;
};

struct PathCost {
  double cost = 0.0;
  double violation = 0.0;
};

// Obstacle state indexed by time step: element k is the field k steps into
// the leg (see predict_states).
using FieldTimeline = std::vector<ObstacleField>;

// Time step at which the vehicle reaches sample j of an S-sample path over a
// horizon of H steps: ceil(j * H / S).
std::size_t timeline_index(std::size_t sample, std::size_t samples, std::size_t horizon);

// Penetration of the sampled curve into the time-indexed obstacles. Each
// polyline segment is tested by its closest approach, with the obstacle radius
// padded by the local chord-to-arc deviation (a quarter of the larger second
// difference at the segment ends), so a zero result also holds between samples.
double path_violation(std::span<const Vec3> samples, const FieldTimeline& timeline);

// cost = flight_time / reference_time + penalty * violation. reference_time is
// the straight-line time of the leg.
PathCost path_cost(std::span<const Vec3> samples, const FieldTimeline& timeline, double reference_time,
                   const PsoConfig& cfg);
// Convenience overload predicting the field over cfg.iterations steps.
PathCost path_cost(std::span<const Vec3> samples, const ObstacleField& field, const PsoConfig& cfg);

struct PathRunStats {
  std::vector<double> best_cost;  // global best per iteration, non-increasing
  std::vector<double> mean_cost;
  std::vector<double> mean_violation;
  int iterations = 0;
  double cpu_seconds = 0.0;
  // Violation of the returned path against a stochastic rollout of the field
  // (step_obstacles) instead of the mean prediction.
  double realized_violation = 0.0;
  ObstacleField final_field;  // end of that rollout
};

struct PathPlan {
  BSplinePath path;
  PathRunStats stats;
};

// PSO over the interior control points. Always returns a path; callers
// inspect path.violation.
PathPlan plan_path(const Vec3& start, const Vec3& target, const ObstacleField& field, const BSplineConfig& spline,
                   const PsoConfig& pso, std::uint64_t seed);

}  // namespace auvplan
