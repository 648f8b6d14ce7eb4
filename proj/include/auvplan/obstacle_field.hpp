#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "auvplan/rng.hpp"
#include "auvplan/vec3.hpp"

namespace auvplan {

enum class ObstacleKind { StaticKnown, StaticUncertain, SelfMotivated, CurrentDriven };

const char* to_string(ObstacleKind k);
ObstacleKind obstacle_kind_from_string(const std::string& s);

struct Obstacle {
  ObstacleKind kind = ObstacleKind::StaticKnown;
  Vec3 center;
  double radius = 1.0;          // current body radius
  double nominal_radius = 1.0;  // centre of the resampling band (StaticUncertain)
  double radius_spread = 0.0;   // half-width of the resampling band
  double halo = 0.0;            // propagated uncertainty margin, grows for CurrentDriven
  double gaussian_state = 0.0;  // per-obstacle noise state X(t-1)
  std::uint64_t stream = 0;     // per-obstacle seed

  double effective_radius() const { return radius + halo; }
  bool operator==(const Obstacle&) const = default;
};

// Axis-aligned box around the active waypoint pair.
struct OperationWindow {
  Vec3 from;
  Vec3 to;
  Vec3 lo;
  Vec3 hi;

  // Bounding box of the pair padded on every axis by inflation * leg length.
  static OperationWindow around(const Vec3& from, const Vec3& to, double inflation = 0.25);

  double leg_length() const { return distance(from, to); }
  bool contains(const Vec3& p) const;
  Vec3 clamp(const Vec3& p) const;
  bool operator==(const OperationWindow&) const = default;
};

struct ObstacleDynamics {
  double motion_sigma = 5.0;            // per-axis random-walk step, metres
  double state_sigma = 1.0;             // sigma_0 of the Gaussian state X
  double step_seconds = 1.0;            // scales halo growth per step
  double radius_spread_fraction = 0.2;  // StaticUncertain band half-width / nominal radius
  bool operator==(const ObstacleDynamics&) const = default;
};

struct ObstacleField {
  OperationWindow window;
  std::vector<Obstacle> obstacles;
  double current_magnitude = 0.0;  // |V_C|, m/s
  ObstacleDynamics dynamics;
  std::uint64_t step = 0;

  // Halo growth rate per step, E[|V_C| * dt * |X|].
  double mean_halo_rate() const;
  bool operator==(const ObstacleField&) const = default;
};

struct ObstacleCounts {
  int static_known = 0;
  int static_uncertain = 0;
  int self_motivated = 0;
  int current_driven = 0;

  int total() const { return static_known + static_uncertain + self_motivated + current_driven; }
  bool operator==(const ObstacleCounts&) const = default;
};

struct SpawnConfig {
  double radius_sigma = 100.0;  // radius ~ |N(0, radius_sigma)| clamped below
  double radius_min = 10.0;
  double radius_max = 300.0;
  double current_sigma = 0.3;   // |V_C| ~ |N(0, current_sigma)|
  std::optional<double> current_magnitude;  // fixes |V_C| when set
  ObstacleDynamics dynamics;
  bool operator==(const SpawnConfig&) const = default;
};

// Obstacle mix for the benchmark scenarios: 1 static kinds, 2 self-motivated
// movers, 3 current-driven movers, 4 random composite of all four kinds (each
// kind present when total >= 4). Throws InvalidParameter for other ids.
ObstacleCounts compose_scenario(int scenario, int total, Rng& rng);

// Places obstacles along the leg: along-track offset from a normal centred
// mid-leg, truncated to (r, L - r) with r the largest radius the body can
// take (nominal plus the StaticUncertain band); lateral offset normal with sigma = r,
// truncated to the window. Throws SpawnFailure when the leg cannot hold the
// drawn radius.
ObstacleField spawn_obstacles(const OperationWindow& window, const ObstacleCounts& counts, const SpawnConfig& cfg,
                              std::uint64_t seed);

// One stochastic step. Each obstacle draws from its own stream keyed by the
// field's step counter, so (seed, step count) fixes the result.
ObstacleField step_obstacles(const ObstacleField& field);

// Sum over samples and obstacles of max(0, (R_eff - d) / R_eff).
double collision_violation(std::span<const Vec3> samples, const ObstacleField& field);

// Mean forward rollout: element k is the predicted field k steps ahead
// (k = 0..horizon). Motion noise sits at its mean, halos grow at the mean
// rate and StaticUncertain radii take their upper bound.
std::vector<ObstacleField> predict_states(const ObstacleField& field, int horizon);

// Tab-separated snapshot: kind, centre, radius, halo per obstacle.
void write_obstacles(std::ostream& os, const ObstacleField& field, const std::string& label);
void write_obstacles_header(std::ostream& os);

}  // namespace auvplan
