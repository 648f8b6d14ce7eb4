#include "auvplan/grp_ga.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include "auvplan/errors.hpp"
#include "auvplan/text_format.hpp"

namespace auvplan {

PriorityVector random_priority_vector(std::size_t nodes, Rng& rng) {
  PriorityVector pv;
  pv.values.resize(nodes);
  for (auto& v : pv.values) v = rng.uniform(-kPriorityBound, kPriorityBound);
  return pv;
}

void GaConfig::validate() const {
  if (population_size < 2) throw InvalidParameter("GA population must be >= 2");
  if (max_iterations < 1) throw InvalidParameter("GA iterations must be >= 1");
  if (crossover_mix < 0.0 || crossover_mix > 1.0) throw InvalidParameter("crossover mix must lie in [0,1]");
  if (mutation_probability < 0.0 || mutation_probability > 1.0)
    throw InvalidParameter("mutation probability must lie in [0,1]");
  double kind_sum = 0.0;
  for (double w : mutation_kind_weights) {
    if (w < 0.0) throw InvalidParameter("mutation kind weights must be >= 0");
    kind_sum += w;
  }
  if (mutation_probability > 0.0 && kind_sum <= 0.0) throw InvalidParameter("all mutation kinds disabled");
  if (stall_generations < 1) throw InvalidParameter("stall generations must be >= 1");
  if (penalty_factor < 1.0) throw InvalidParameter("penalty factor must be >= 1");
  if (task_cost_weight < 0.0 || route_cost_weight < 0.0) throw InvalidParameter("cost weights must be >= 0");
}

RouteCostTerms route_cost_terms(const Route& r, const MissionGraph& g, double t_available, double vehicle_speed,
                                const GaConfig& cfg) {
  if (!(t_available > 0.0)) throw InvalidParameter("available time must be > 0");
  if (!is_structurally_valid(r, g)) throw InvalidRoute("route_cost needs a structurally valid route: " + to_string(r));
  RouteCostTerms c;
  double ratio_sum = 0.0;
  double time = 0.0;
  for (std::size_t i = 1; i < r.sequence.size(); ++i) {
    const Edge& e = g.edge(r.sequence[i - 1], r.sequence[i]);
    ratio_sum += e.task.risk / e.task.priority;
    time += edge_traverse_time(e, vehicle_speed);
  }
  const double edges = static_cast<double>(r.sequence.size() - 1);
  c.task = ratio_sum / edges / g.max_risk_ratio();
  c.route = std::abs(time - t_available) / t_available;
  const double mixed = cfg.task_cost_weight * c.task + cfg.route_cost_weight * c.route;
  c.over_budget = time > t_available;
  c.total = c.over_budget ? cfg.penalty_factor * (1.0 + mixed) : mixed;
  return c;
}

double route_cost(const Route& r, const MissionGraph& g, double t_available, double vehicle_speed,
                  const GaConfig& cfg) {
  return route_cost_terms(r, g, t_available, vehicle_speed, cfg).total;
}

namespace {

// Shortest-hop path from `from` to dest avoiding blocked nodes.
std::optional<std::vector<WaypointId>> bfs_path(const MissionGraph& g, WaypointId from, const std::vector<char>& blocked) {
  const std::size_t n = g.node_count();
  std::vector<WaypointId> prev(n, -2);
  std::queue<WaypointId> open;
  prev[static_cast<std::size_t>(from)] = -1;
  open.push(from);
  while (!open.empty()) {
    const WaypointId u = open.front();
    open.pop();
    if (u == g.dest()) {
      std::vector<WaypointId> path;
      for (WaypointId v = u; v != -1; v = prev[static_cast<std::size_t>(v)]) path.push_back(v);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (WaypointId v : g.neighbors(u)) {
      const auto vi = static_cast<std::size_t>(v);
      if (prev[vi] != -2 || blocked[vi]) continue;
      prev[vi] = u;
      open.push(v);
    }
  }
  return std::nullopt;
}

// Termination repair: end the sequence at dest. First try the plain rule
// (replace the last gene by dest), backing off one gene at a time; if no kept
// prefix touches dest, finish with a shortest-hop detour over unvisited nodes.
void terminate_at_dest(std::vector<WaypointId>& seq, const MissionGraph& g) {
  for (std::size_t keep = seq.size(); keep-- > 0;) {
    if (g.adjacent(seq[keep], g.dest())) {
      seq.resize(keep + 1);
      seq.push_back(g.dest());
      return;
    }
  }
  std::vector<char> blocked(g.node_count(), 0);
  for (std::size_t keep = seq.size(); keep-- > 0;) {
    std::fill(blocked.begin(), blocked.end(), 0);
    for (std::size_t i = 0; i < keep; ++i) blocked[static_cast<std::size_t>(seq[i])] = 1;
    if (auto tail = bfs_path(g, seq[keep], blocked)) {
      seq.resize(keep);
      seq.insert(seq.end(), tail->begin(), tail->end());
      return;
    }
  }
}

}  // namespace

Route build_feasible_route(const PriorityVector& pv, const MissionGraph& g) {
  const std::size_t n = g.node_count();
  if (pv.values.size() != n) throw InvalidParameter("priority vector length must equal node count");
  std::vector<double> prio = pv.values;
  std::vector<char> edge_removed(g.edge_count(), 0);

  Route r;
  WaypointId cur = g.start();
  r.sequence.push_back(cur);
  prio[static_cast<std::size_t>(cur)] = kVisitedPriority;
  while (cur != g.dest()) {
    WaypointId next = -1;
    double best = kVisitedPriority;
    for (WaypointId v : g.neighbors(cur)) {
      if (edge_removed[*g.edge_index(cur, v)]) continue;
      const double p = prio[static_cast<std::size_t>(v)];
      if (p > best) {
        best = p;
        next = v;
      }
    }
    if (next < 0) {  // dead end before the destination
      terminate_at_dest(r.sequence, g);
      break;
    }
    edge_removed[*g.edge_index(cur, next)] = 1;
    prio[static_cast<std::size_t>(next)] = kVisitedPriority;
    r.sequence.push_back(next);
    cur = next;
    if (r.sequence.size() > n) {
      terminate_at_dest(r.sequence, g);
      break;
    }
  }
  return r;
}

std::size_t roulette_select(std::span<const double> costs, Rng& rng) {
  if (costs.empty()) throw InvalidParameter("roulette over an empty population");
  const double worst = *std::max_element(costs.begin(), costs.end());
  double total = 0.0;
  for (double c : costs) total += worst - c + 1e-9;
  double pick = rng.uniform() * total;
  for (std::size_t i = 0; i < costs.size(); ++i) {
    pick -= worst - costs[i] + 1e-9;
    if (pick < 0.0) return i;
  }
  return costs.size() - 1;
}

std::pair<Route, Route> crossover_with_mask(const Route& p1, const Route& p2, std::span<const char> mask) {
  Route a = p1, b = p2;
  const std::size_t shortest = std::min(a.size(), b.size());
  for (std::size_t i = 1; i + 1 < shortest && i < mask.size(); ++i)
    if (mask[i]) std::swap(a.sequence[i], b.sequence[i]);
  return {std::move(a), std::move(b)};
}

CrossoverResult uniform_crossover(const Route& p1, const Route& p2, const MissionGraph& g, Rng& rng, double mix) {
  CrossoverResult out;
  if (p1.size() < 4 || p2.size() < 4) {
    out.skipped = true;
    return out;
  }
  const std::size_t shortest = std::min(p1.size(), p2.size());
  std::vector<char> mask(shortest, 0);
  for (std::size_t i = 1; i + 1 < shortest; ++i) mask[i] = rng.bernoulli(mix) ? 1 : 0;
  auto [a, b] = crossover_with_mask(p1, p2, mask);
  if (is_structurally_valid(a, g)) out.first = std::move(a);
  if (is_structurally_valid(b, g)) out.second = std::move(b);
  return out;
}

const char* to_string(MutationKind k) {
  switch (k) {
    case MutationKind::Insertion: return "insertion";
    case MutationKind::Swap: return "swap";
    case MutationKind::Inversion: return "inversion";
  }
  return "unknown";
}

Route insert_gene(const Route& r, std::size_t position, WaypointId node) {
  Route out = r;
  out.sequence.insert(out.sequence.begin() + static_cast<std::ptrdiff_t>(position), node);
  return out;
}

Route swap_genes(const Route& r, std::size_t i, std::size_t j) {
  Route out = r;
  std::swap(out.sequence.at(i), out.sequence.at(j));
  return out;
}

Route invert_segment(const Route& r, std::size_t first, std::size_t last) {
  Route out = r;
  std::reverse(out.sequence.begin() + static_cast<std::ptrdiff_t>(first),
               out.sequence.begin() + static_cast<std::ptrdiff_t>(last) + 1);
  return out;
}

std::optional<Route> mutate(const Route& r, MutationKind kind, const MissionGraph& g, Rng& rng) {
  const std::size_t len = r.size();
  std::optional<Route> out;
  switch (kind) {
    case MutationKind::Insertion: {
      if (len < 2) return std::nullopt;
      const std::size_t pos = 1 + rng.index(len - 1);  // insert before gene pos
      const WaypointId before = r.sequence[pos - 1];
      const WaypointId after = r.sequence[pos];
      std::vector<char> in_route(g.node_count(), 0);
      for (WaypointId v : r.sequence) in_route[static_cast<std::size_t>(v)] = 1;
      std::vector<WaypointId> candidates;
      for (WaypointId v : g.neighbors(before))
        if (!in_route[static_cast<std::size_t>(v)] && g.adjacent(v, after)) candidates.push_back(v);
      if (candidates.empty()) return std::nullopt;
      out = insert_gene(r, pos, candidates[rng.index(candidates.size())]);
      break;
    }
    case MutationKind::Swap: {
      if (len < 4) return std::nullopt;
      const std::size_t i = 1 + rng.index(len - 2);
      const std::size_t j = 1 + rng.index(len - 2);
      out = swap_genes(r, i, j);
      break;
    }
    case MutationKind::Inversion: {
      if (len < 4) return std::nullopt;
      std::size_t i = 1 + rng.index(len - 2);
      std::size_t j = 1 + rng.index(len - 3);
      if (j >= i) ++j;
      if (i > j) std::swap(i, j);
      out = invert_segment(r, i, j);
      break;
    }
  }
  if (!out || !is_structurally_valid(*out, g)) return std::nullopt;
  return out;
}

namespace {

MutationKind pick_kind(const std::array<double, 3>& weights, Rng& rng) {
  const double total = weights[0] + weights[1] + weights[2];
  double u = rng.uniform() * total;
  if ((u -= weights[0]) < 0.0) return MutationKind::Insertion;
  if ((u -= weights[1]) < 0.0) return MutationKind::Swap;
  return MutationKind::Inversion;
}

}  // namespace

RoutePlan plan_route(const MissionGraph& g, double t_available, double vehicle_speed, const GaConfig& cfg,
                     std::uint64_t seed) {
  cfg.validate();
  if (!(t_available > 0.0)) throw InvalidParameter("available time must be > 0");
  if (!(vehicle_speed > 0.0)) throw InvalidParameter("vehicle speed must be > 0");
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&t0] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };

  RoutePlan plan;
  const auto fastest = fastest_route(g, vehicle_speed);
  if (!fastest) {
    plan.status = PlanStatus::Infeasible;
    plan.diagnostic = "destination " + std::to_string(g.dest()) + " unreachable from " + std::to_string(g.start());
    plan.stats.route_time = INFINITY;
    plan.stats.violation = INFINITY;
    plan.stats.best = INFINITY;
    plan.stats.cpu_seconds = elapsed();
    return plan;
  }
  const double fastest_time = route_time(*fastest, g, vehicle_speed);
  if (!(fastest_time < t_available)) {
    plan.status = PlanStatus::Infeasible;
    plan.route = *fastest;
    const RouteMetrics m = evaluate_route(*fastest, g, vehicle_speed);
    plan.stats.route_time = m.time;
    plan.stats.total_weight = m.weight;
    plan.stats.total_distance = m.distance;
    plan.stats.tasks = m.tasks;
    plan.stats.violation = (m.time - t_available) / t_available;
    plan.stats.best = route_cost(*fastest, g, t_available, vehicle_speed, cfg);
    plan.diagnostic = "fastest route needs " + fmt6(fastest_time) + " s, budget is " + fmt6(t_available) + " s";
    plan.stats.cpu_seconds = elapsed();
    return plan;
  }

  const auto pop_size = static_cast<std::size_t>(cfg.population_size);
  std::vector<Route> pop;
  pop.reserve(pop_size);
  if (cfg.seed_fastest_route) pop.push_back(*fastest);
  for (std::size_t i = pop.size(); i < pop_size; ++i) {
    Rng rng(derive_seed(seed, {0, i}));
    pop.push_back(build_feasible_route(random_priority_vector(g.node_count(), rng), g));
  }
  std::vector<double> costs(pop_size);
  auto evaluate = [&] {
    for (std::size_t i = 0; i < pop_size; ++i) costs[i] = route_cost(pop[i], g, t_available, vehicle_speed, cfg);
  };
  auto best_index = [&] { return static_cast<std::size_t>(std::min_element(costs.begin(), costs.end()) - costs.begin()); };
  auto record = [&](std::size_t b) {
    const double t = route_time(pop[b], g, vehicle_speed);
    plan.stats.best_cost.push_back(costs[b]);
    plan.stats.mean_cost.push_back(std::accumulate(costs.begin(), costs.end(), 0.0) / static_cast<double>(pop_size));
    plan.stats.best_violation.push_back(std::max(0.0, t - t_available) / t_available);
  };

  evaluate();
  std::size_t best = best_index();
  record(best);
  int stall = 0;
  int iteration = 1;
  for (; iteration < cfg.max_iterations && stall < cfg.stall_generations; ++iteration) {
    std::vector<Route> next;
    next.reserve(pop_size);
    next.push_back(pop[best]);
    for (std::uint64_t k = 0; next.size() < pop_size; ++k) {
      Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(iteration), k}));
      const std::size_t i = roulette_select(costs, rng);
      const std::size_t j = roulette_select(costs, rng);
      Route children[2] = {pop[i], pop[j]};
      auto cx = uniform_crossover(pop[i], pop[j], g, rng, cfg.crossover_mix);
      if (cx.first) children[0] = std::move(*cx.first);
      if (cx.second) children[1] = std::move(*cx.second);
      for (auto& child : children) {
        if (rng.bernoulli(cfg.mutation_probability)) {
          if (auto m = mutate(child, pick_kind(cfg.mutation_kind_weights, rng), g, rng)) child = std::move(*m);
        }
        if (next.size() < pop_size) next.push_back(std::move(child));
      }
    }
    pop = std::move(next);
    const double previous = plan.stats.best_cost.back();
    evaluate();
    best = best_index();
    record(best);
    stall = costs[best] < previous ? 0 : stall + 1;
  }

  plan.route = pop[best];
  const auto metrics = evaluate_route(plan.route, g, vehicle_speed);
  auto& st = plan.stats;
  st.iterations = iteration;
  st.best = costs[best];
  st.route_time = metrics.time;
  st.total_weight = metrics.weight;
  st.total_distance = metrics.distance;
  st.tasks = metrics.tasks;
  st.violation = std::max(0.0, metrics.time - t_available) / t_available;
  if (!(metrics.time < t_available)) {
    plan.status = PlanStatus::Infeasible;
    plan.diagnostic = "best route needs " + fmt6(metrics.time) + " s, budget is " + fmt6(t_available) + " s";
  }
  st.cpu_seconds = elapsed();
  return plan;
}

}  // namespace auvplan
