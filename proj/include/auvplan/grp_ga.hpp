#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "auvplan/mission_model.hpp"
#include "auvplan/rng.hpp"

namespace auvplan {

// Per-node guidance scores in [-100, 100] decoded into a route by
// build_feasible_route.
struct PriorityVector {
  std::vector<double> values;
};

inline constexpr double kPriorityBound = 100.0;
// Assigned to visited nodes during decoding; below every legal priority.
inline constexpr double kVisitedPriority = -1e4;

PriorityVector random_priority_vector(std::size_t nodes, Rng& rng);

struct GaConfig {
  int population_size = 100;
  int max_iterations = 150;
  double crossover_mix = 0.5;          // per-gene swap probability
  double mutation_probability = 0.3;   // per offspring
  // Relative odds of insertion, swap, inversion.
  std::array<double, 3> mutation_kind_weights{1.0, 1.0, 1.0};
  int stall_generations = 30;
  double penalty_factor = 1e3;
  double task_cost_weight = 0.5;   // phi_1
  double route_cost_weight = 0.5;  // phi_2
  // Place the minimum-time route in the initial population.
  bool seed_fastest_route = true;

  void validate() const;
  bool operator==(const GaConfig&) const = default;
};

struct RouteCostTerms {
  double task = 0.0;   // mean zeta/rho over the route, normalized by the graph maximum
  double route = 0.0;  // |T_route - T_available| / T_available
  double total = 0.0;
  bool over_budget = false;
};

// phi_1 * task + phi_2 * route; over-budget routes score
// penalty_factor * (1 + mixed), above every in-budget route. Lower is better.
// Throws InvalidRoute for a structurally invalid route.
RouteCostTerms route_cost_terms(const Route& r, const MissionGraph& g, double t_available, double vehicle_speed,
                                const GaConfig& cfg);
double route_cost(const Route& r, const MissionGraph& g, double t_available, double vehicle_speed,
                  const GaConfig& cfg);

// Greedy priority walk over the adjacency structure with dead-end repair.
// Always returns a structurally valid route when dest is reachable from start.
Route build_feasible_route(const PriorityVector& pv, const MissionGraph& g);

// Roulette wheel on fitness = max_cost - cost + 1e-9.
std::size_t roulette_select(std::span<const double> costs, Rng& rng);

// Swaps genes at every position i with mask[i] set, over positions
// 1 .. min(len1, len2) - 2. No validation.
std::pair<Route, Route> crossover_with_mask(const Route& p1, const Route& p2, std::span<const char> mask);

struct CrossoverResult {
  bool skipped = false;  // a parent was shorter than four genes
  std::optional<Route> first;
  std::optional<Route> second;
};

// Uniform crossover; offspring that fail the structural checks are dropped.
CrossoverResult uniform_crossover(const Route& p1, const Route& p2, const MissionGraph& g, Rng& rng,
                                  double mix = 0.5);

enum class MutationKind { Insertion, Swap, Inversion };

const char* to_string(MutationKind k);

// Raw operators, no validation. Positions index the gene sequence.
Route insert_gene(const Route& r, std::size_t position, WaypointId node);
Route swap_genes(const Route& r, std::size_t i, std::size_t j);
Route invert_segment(const Route& r, std::size_t first, std::size_t last);  // inclusive

// Random mutation of the interior genes; nullopt when the result is not
// structurally valid or the route is too short for the operator.
std::optional<Route> mutate(const Route& r, MutationKind kind, const MissionGraph& g, Rng& rng);

struct GaRunStats {
  std::vector<double> best_cost;  // per iteration, non-increasing
  std::vector<double> mean_cost;
  std::vector<double> best_violation;
  int iterations = 0;
  double cpu_seconds = 0.0;
  double best = 0.0;
  double violation = 0.0;  // max(0, T_route - T_available) / T_available of the best
  double route_time = 0.0;
  double total_weight = 0.0;
  double total_distance = 0.0;
  std::size_t tasks = 0;
};

enum class PlanStatus { Success, Infeasible };

struct RoutePlan {
  PlanStatus status = PlanStatus::Success;
  Route route;
  GaRunStats stats;
  std::string diagnostic;

  bool ok() const { return status == PlanStatus::Success; }
};

// Full GA. Returns Infeasible when no start->dest route fits the budget.
RoutePlan plan_route(const MissionGraph& g, double t_available, double vehicle_speed, const GaConfig& cfg,
                     std::uint64_t seed);

}  // namespace auvplan
