#include "auvplan/lpp_pso.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "auvplan/errors.hpp"
#include "auvplan/rng.hpp"

namespace auvplan {

std::vector<ControlBox> control_point_bounds(const Vec3& start, const Vec3& target, int n, double half_width) {
  if (n < 2) throw InvalidParameter("need at least 2 control points");
  if (start == target) throw InvalidParameter("start and target must differ");
  if (half_width < 0.0) throw InvalidParameter("corridor half-width must be >= 0");
  const Vec3 delta = target - start;
  const Vec3 dir = delta * (1.0 / delta.norm());
  Vec3 widen;
  for (int k = 0; k < 3; ++k) widen[k] = half_width * std::sqrt(std::max(0.0, 1.0 - dir[k] * dir[k]));

  auto division = [&](int j) { return start + delta * (static_cast<double>(j) / (n - 1)); };
  std::vector<ControlBox> boxes(static_cast<std::size_t>(n));
  boxes.front() = {start, start};
  boxes.back() = {target, target};
  for (int i = 1; i + 1 < n; ++i) {
    const Vec3 a = division(i - 1);
    const Vec3 b = division(i);
    ControlBox box;
    for (int k = 0; k < 3; ++k) {
      box.lo[k] = std::min(a[k], b[k]) - widen[k];
      box.hi[k] = std::max(a[k], b[k]) + widen[k];
    }
    boxes[static_cast<std::size_t>(i)] = box;
  }
  return boxes;
}

void PsoConfig::validate() const {
  if (swarm_size < 2) throw InvalidParameter("swarm size must be >= 2");
  if (iterations < 1) throw InvalidParameter("PSO iterations must be >= 1");
  auto in_unit = [](double w) { return w > 0.0 && w <= 1.0; };
  if (!in_unit(inertia) || (inertia_decay && (!in_unit(inertia_start) || !in_unit(inertia_end))))
    throw InvalidParameter("inertia must lie in (0, 1]");
  if (!(c1 > 0.0) || !(c2 > 0.0)) throw InvalidParameter("acceleration coefficients must be > 0");
  if (violation_penalty < 0.0) throw InvalidParameter("violation penalty must be >= 0");
  if (!(velocity_clamp > 0.0)) throw InvalidParameter("velocity clamp must be > 0");
  if (corridor_fraction < 0.0) throw InvalidParameter("corridor fraction must be >= 0");
  if (!(vehicle_speed > 0.0)) throw InvalidParameter("vehicle speed must be > 0");
}

std::size_t timeline_index(std::size_t sample, std::size_t samples, std::size_t horizon) {
  return (sample * horizon + samples - 1) / samples;
}

double path_violation(std::span<const Vec3> samples, const FieldTimeline& timeline) {
  if (samples.size() < 2 || timeline.empty()) return 0.0;
  const std::size_t S = samples.size();
  const std::size_t H = timeline.size() - 1;
  auto bend = [&](std::size_t j) {
    if (j == 0 || j + 1 >= S) return 0.0;
    return (samples[j - 1] - samples[j] * 2.0 + samples[j + 1]).norm();
  };
  double v = 0.0;
  double prev_bend = bend(0);
  for (std::size_t j = 0; j + 1 < S; ++j) {
    const double next_bend = bend(j + 1);
    const double pad = 0.25 * std::max(prev_bend, next_bend);
    prev_bend = next_bend;
    const auto& field = timeline[std::min(H, timeline_index(j + 1, S, H))];
    for (const auto& ob : field.obstacles) {
      const double r = ob.effective_radius() + pad;
      const double d = point_segment_distance(ob.center, samples[j], samples[j + 1]);
      if (d < r) v += (r - d) / r;
    }
  }
  return v;
}

PathCost path_cost(std::span<const Vec3> samples, const FieldTimeline& timeline, double reference_time,
                   const PsoConfig& cfg) {
  PathCost c;
  c.violation = path_violation(samples, timeline);
  c.cost = path_flight_time(samples, cfg.vehicle_speed) / reference_time + cfg.violation_penalty * c.violation;
  return c;
}

PathCost path_cost(std::span<const Vec3> samples, const ObstacleField& field, const PsoConfig& cfg) {
  const double ref = distance(samples.front(), samples.back()) / cfg.vehicle_speed;
  return path_cost(samples, predict_states(field, cfg.iterations), ref > 0.0 ? ref : 1.0, cfg);
}

namespace {

// Stochastic rollout of the field over the horizon, aligned with the timeline.
FieldTimeline realized_timeline(const ObstacleField& field, int horizon) {
  FieldTimeline tl;
  tl.reserve(static_cast<std::size_t>(horizon) + 1);
  tl.push_back(field);
  for (int k = 0; k < horizon; ++k) tl.push_back(step_obstacles(tl.back()));
  return tl;
}

}  // namespace

PathPlan plan_path(const Vec3& start, const Vec3& target, const ObstacleField& field, const BSplineConfig& spline,
                   const PsoConfig& pso, std::uint64_t seed) {
  spline.validate();
  pso.validate();
  const auto t0 = std::chrono::steady_clock::now();

  const double leg = distance(start, target);
  const auto boxes = control_point_bounds(start, target, spline.control_points, pso.corridor_fraction * leg);
  const BSplineBasis basis(spline.control_points, spline.order, spline.samples);
  const FieldTimeline timeline = predict_states(field, pso.iterations);
  const double reference_time = leg / pso.vehicle_speed;

  // Flattened interior coordinates: dimension 3 * (i - 1) + axis.
  const std::size_t interior = static_cast<std::size_t>(spline.control_points - 2);
  const std::size_t dims = 3 * interior;
  std::vector<double> lo(dims), hi(dims), vmax(dims);
  for (std::size_t i = 0; i < interior; ++i)
    for (int k = 0; k < 3; ++k) {
      const std::size_t d = 3 * i + static_cast<std::size_t>(k);
      lo[d] = boxes[i + 1].lo[k];
      hi[d] = boxes[i + 1].hi[k];
      vmax[d] = pso.velocity_clamp * (hi[d] - lo[d]);
    }

  std::vector<Vec3> control(static_cast<std::size_t>(spline.control_points));
  control.front() = start;
  control.back() = target;
  std::vector<Vec3> curve;
  auto evaluate = [&](const std::vector<double>& x) {
    for (std::size_t i = 0; i < interior; ++i) control[i + 1] = {x[3 * i], x[3 * i + 1], x[3 * i + 2]};
    basis.evaluate(control, curve);
    return path_cost(curve, timeline, reference_time, pso);
  };

  // Nothing to avoid: the straight leg is the optimum, no search needed.
  if (field.obstacles.empty()) {
    PathPlan plan;
    const auto n = control.size();
    for (std::size_t i = 1; i + 1 < n; ++i)
      control[i] = start + (target - start) * (static_cast<double>(i) / static_cast<double>(n - 1));
    basis.evaluate(control, curve);
    plan.path.control_points = control;
    plan.path.samples = curve;
    plan.path.length = leg;
    plan.path.flight_time = leg / pso.vehicle_speed;
    plan.path.cost = 1.0;
    auto& st = plan.stats;
    st.iterations = pso.iterations;
    st.best_cost.assign(static_cast<std::size_t>(pso.iterations), 1.0);
    st.mean_cost = st.best_cost;
    st.mean_violation.assign(static_cast<std::size_t>(pso.iterations), 0.0);
    st.final_field = realized_timeline(field, pso.iterations).back();
    st.cpu_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return plan;
  }

  const auto swarm = static_cast<std::size_t>(pso.swarm_size);
  std::vector<Rng> streams;
  streams.reserve(swarm);
  for (std::size_t p = 0; p < swarm; ++p) streams.emplace_back(derive_seed(seed, {p}));
  std::vector<std::vector<double>> x(swarm, std::vector<double>(dims)), v(swarm, std::vector<double>(dims));
  for (std::size_t p = 0; p < swarm; ++p)
    for (std::size_t d = 0; d < dims; ++d) {
      x[p][d] = lo[d] + streams[p].uniform() * (hi[d] - lo[d]);
      v[p][d] = streams[p].uniform(-vmax[d], vmax[d]);
    }
  std::vector<std::vector<double>> pbest = x;
  std::vector<PathCost> pbest_cost(swarm, PathCost{INFINITY, INFINITY});
  std::size_t gbest = 0;

  PathPlan plan;
  auto& st = plan.stats;
  for (int it = 0; it < pso.iterations; ++it) {
    if (it > 0) {
      const double w = pso.inertia_decay
                           ? pso.inertia_start + (pso.inertia_end - pso.inertia_start) * it / std::max(1, pso.iterations - 1)
                           : pso.inertia;
      const std::vector<double> g = pbest[gbest];
      for (std::size_t p = 0; p < swarm; ++p) {
        auto& rng = streams[p];
        for (std::size_t d = 0; d < dims; ++d) {
          const double r1 = rng.uniform();
          const double r2 = rng.uniform();
          double vel = w * v[p][d] + pso.c1 * r1 * (pbest[p][d] - x[p][d]) + pso.c2 * r2 * (g[d] - x[p][d]);
          vel = std::clamp(vel, -vmax[d], vmax[d]);
          double pos = x[p][d] + vel;
          if (pos < lo[d] || pos > hi[d]) {
            pos = std::clamp(pos, lo[d], hi[d]);
            vel = 0.0;
          }
          v[p][d] = vel;
          x[p][d] = pos;
        }
      }
    }
    double cost_sum = 0.0, viol_sum = 0.0;
    for (std::size_t p = 0; p < swarm; ++p) {
      const PathCost c = evaluate(x[p]);
      cost_sum += c.cost;
      viol_sum += c.violation;
      if (c.cost < pbest_cost[p].cost) {
        pbest_cost[p] = c;
        pbest[p] = x[p];
      }
    }
    for (std::size_t p = 0; p < swarm; ++p)
      if (pbest_cost[p].cost < pbest_cost[gbest].cost) gbest = p;
    st.best_cost.push_back(pbest_cost[gbest].cost);
    st.mean_cost.push_back(cost_sum / static_cast<double>(swarm));
    st.mean_violation.push_back(viol_sum / static_cast<double>(swarm));
  }
  st.iterations = pso.iterations;

  auto& path = plan.path;
  const PathCost best = evaluate(pbest[gbest]);
  path.control_points = control;
  path.samples = curve;
  path.length = path_length(curve);
  path.flight_time = path.length / pso.vehicle_speed;
  path.violation = best.violation;
  path.cost = best.cost;

  const FieldTimeline realized = realized_timeline(field, pso.iterations);
  st.realized_violation = path_violation(path.samples, realized);
  st.final_field = realized.back();
  st.cpu_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return plan;
}

}  // namespace auvplan
