#include "auvplan/mission_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <sstream>
#include <utility>

#include "auvplan/errors.hpp"
#include "auvplan/rng.hpp"

namespace auvplan {

void Task::validate() const {
  if (!std::isfinite(priority) || priority <= 0.0) throw InvalidParameter("task priority must be > 0");
  if (!std::isfinite(risk) || risk <= 0.0 || risk > 100.0) throw InvalidParameter("task risk must lie in (0, 100]");
  if (!std::isfinite(completion_time) || completion_time < 0.0)
    throw InvalidParameter("task completion time must be >= 0");
}

MissionGraph::MissionGraph(std::vector<Waypoint> waypoints, const std::vector<EdgeSpec>& edges, WaypointId start,
                           WaypointId dest)
    : waypoints_(std::move(waypoints)), start_(start), dest_(dest) {
  const std::size_t n = waypoints_.size();
  if (n < 2) throw InvalidParameter("a mission graph needs at least two waypoints");
  for (std::size_t i = 0; i < n; ++i) {
    if (waypoints_[i].id != static_cast<WaypointId>(i))
      throw InvalidParameter("waypoint ids must be 0..n-1 in order");
    if (!waypoints_[i].position.finite()) throw InvalidParameter("waypoint coordinates must be finite");
  }
  if (!contains(start_) || !contains(dest_)) throw InvalidParameter("start/dest must reference existing waypoints");
  if (start_ == dest_) throw InvalidParameter("start and destination must differ");

  index_.assign(n * n, -1);
  neighbors_.assign(n, {});
  edges_.reserve(edges.size());
  for (const auto& spec : edges) {
    if (!contains(spec.from) || !contains(spec.to))
      throw InvalidParameter("edge references a missing waypoint");
    if (spec.from == spec.to) throw InvalidParameter("self-loop edges are not allowed");
    spec.task.validate();
    const auto a = static_cast<std::size_t>(spec.from);
    const auto b = static_cast<std::size_t>(spec.to);
    if (index_[a * n + b] >= 0) throw InvalidParameter("duplicate edge");
    const auto idx = static_cast<std::int32_t>(edges_.size());
    index_[a * n + b] = idx;
    index_[b * n + a] = idx;
    neighbors_[a].push_back(spec.to);
    neighbors_[b].push_back(spec.from);
    edges_.push_back(Edge{spec.from, spec.to, edge_distance(waypoints_[a].position, waypoints_[b].position), spec.task});
    max_risk_ratio_ = std::max(max_risk_ratio_, spec.task.risk / spec.task.priority);
  }
  for (auto& nb : neighbors_) std::sort(nb.begin(), nb.end());
}

std::optional<std::size_t> MissionGraph::edge_index(WaypointId a, WaypointId b) const {
  if (!contains(a) || !contains(b)) return std::nullopt;
  const auto idx = index_[static_cast<std::size_t>(a) * node_count() + static_cast<std::size_t>(b)];
  if (idx < 0) return std::nullopt;
  return static_cast<std::size_t>(idx);
}

const Edge& MissionGraph::edge(WaypointId a, WaypointId b) const {
  const auto idx = edge_index(a, b);
  if (!idx) throw InvalidRoute("no edge " + std::to_string(a) + "-" + std::to_string(b));
  return edges_[*idx];
}

std::vector<MissionGraph::EdgeSpec> MissionGraph::edge_specs() const {
  std::vector<EdgeSpec> specs;
  specs.reserve(edges_.size());
  for (const auto& e : edges_) specs.push_back({e.from, e.to, e.task});
  return specs;
}

MissionGraph MissionGraph::with_start(WaypointId start) const {
  return MissionGraph(waypoints_, edge_specs(), start, dest_);
}

MissionGraph MissionGraph::without_edge(WaypointId a, WaypointId b) const {
  const auto idx = edge_index(a, b);
  if (!idx) throw InvalidRoute("cannot prune missing edge " + std::to_string(a) + "-" + std::to_string(b));
  auto specs = edge_specs();
  specs.erase(specs.begin() + static_cast<std::ptrdiff_t>(*idx));
  return MissionGraph(waypoints_, specs, start_, dest_);
}

std::string to_string(const Route& route) {
  std::ostringstream os;
  for (std::size_t i = 0; i < route.sequence.size(); ++i) {
    if (i) os << '-';
    os << route.sequence[i];
  }
  return os.str();
}

double edge_distance(const Vec3& a, const Vec3& b) { return distance(a, b); }

double edge_traverse_time(const Edge& e, double vehicle_speed) {
  if (!(vehicle_speed > 0.0)) throw InvalidParameter("vehicle speed must be > 0");
  return e.distance / vehicle_speed + e.task.completion_time;
}

double route_time(const Route& r, const MissionGraph& g, double vehicle_speed) {
  if (!(vehicle_speed > 0.0)) throw InvalidParameter("vehicle speed must be > 0");
  double t = 0.0;
  for (std::size_t i = 1; i < r.sequence.size(); ++i)
    t += edge_traverse_time(g.edge(r.sequence[i - 1], r.sequence[i]), vehicle_speed);
  return t;
}

double route_weight(const Route& r, const MissionGraph& g) {
  double w = 0.0;
  for (std::size_t i = 1; i < r.sequence.size(); ++i) w += g.edge(r.sequence[i - 1], r.sequence[i]).weight();
  return w;
}

RouteMetrics evaluate_route(const Route& r, const MissionGraph& g, double vehicle_speed) {
  RouteMetrics m;
  m.time = route_time(r, g, vehicle_speed);
  for (std::size_t i = 1; i < r.sequence.size(); ++i) {
    const Edge& e = g.edge(r.sequence[i - 1], r.sequence[i]);
    m.weight += e.weight();
    m.distance += e.distance;
  }
  m.tasks = r.sequence.empty() ? 0 : r.sequence.size() - 1;
  return m;
}

const char* to_string(RouteDefect d) {
  switch (d) {
    case RouteDefect::Empty: return "empty";
    case RouteDefect::WrongStart: return "wrong-start";
    case RouteDefect::WrongEnd: return "wrong-end";
    case RouteDefect::MissingEdge: return "missing-edge";
    case RouteDefect::RepeatedNode: return "repeated-node";
    case RouteDefect::RepeatedEdge: return "repeated-edge";
    case RouteDefect::OverBudget: return "over-budget";
  }
  return "unknown";
}

bool FeasibilityReport::has(RouteDefect d) const {
  return std::find(defects.begin(), defects.end(), d) != defects.end();
}

bool FeasibilityReport::structurally_valid() const {
  return std::all_of(defects.begin(), defects.end(), [](RouteDefect d) { return d == RouteDefect::OverBudget; });
}

FeasibilityReport validate_route(const Route& r, const MissionGraph& g, double t_available, double vehicle_speed) {
  FeasibilityReport rep;
  auto flag = [&rep](RouteDefect d) {
    if (!rep.has(d)) rep.defects.push_back(d);
  };
  const auto& s = r.sequence;
  if (s.empty()) {
    flag(RouteDefect::Empty);
    return rep;
  }
  if (s.front() != g.start()) flag(RouteDefect::WrongStart);
  if (s.back() != g.dest()) flag(RouteDefect::WrongEnd);

  std::set<WaypointId> seen;
  std::set<std::pair<WaypointId, WaypointId>> used;
  bool edges_ok = true;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!g.contains(s[i])) {
      flag(RouteDefect::MissingEdge);
      edges_ok = false;
    }
    if (!seen.insert(s[i]).second) flag(RouteDefect::RepeatedNode);
    if (i == 0) continue;
    if (!g.adjacent(s[i - 1], s[i])) {
      flag(RouteDefect::MissingEdge);
      edges_ok = false;
    }
    if (!used.insert(std::minmax(s[i - 1], s[i])).second) flag(RouteDefect::RepeatedEdge);
  }
  if (edges_ok) {
    rep.route_time = route_time(r, g, vehicle_speed);
    if (*rep.route_time > t_available) flag(RouteDefect::OverBudget);
  }
  return rep;
}

bool is_structurally_valid(const Route& r, const MissionGraph& g) {
  const auto& s = r.sequence;
  if (s.size() < 2 || s.front() != g.start() || s.back() != g.dest()) return false;
  std::vector<char> seen(g.node_count(), 0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!g.contains(s[i])) return false;
    auto& mark = seen[static_cast<std::size_t>(s[i])];
    if (mark) return false;
    mark = 1;
    if (i > 0 && !g.adjacent(s[i - 1], s[i])) return false;
  }
  // Without repeated nodes an edge cannot repeat either.
  return true;
}

std::optional<Route> fastest_route(const MissionGraph& g, double vehicle_speed) {
  const std::size_t n = g.node_count();
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<WaypointId> prev(n, -1);
  using Item = std::pair<double, WaypointId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  best[static_cast<std::size_t>(g.start())] = 0.0;
  open.push({0.0, g.start()});
  while (!open.empty()) {
    const auto [t, u] = open.top();
    open.pop();
    if (t > best[static_cast<std::size_t>(u)]) continue;
    if (u == g.dest()) break;
    for (WaypointId v : g.neighbors(u)) {
      const double cand = t + edge_traverse_time(g.edge(u, v), vehicle_speed);
      if (cand < best[static_cast<std::size_t>(v)]) {
        best[static_cast<std::size_t>(v)] = cand;
        prev[static_cast<std::size_t>(v)] = u;
        open.push({cand, v});
      }
    }
  }
  if (!std::isfinite(best[static_cast<std::size_t>(g.dest())])) return std::nullopt;
  Route r;
  for (WaypointId v = g.dest(); v != -1; v = prev[static_cast<std::size_t>(v)]) r.sequence.push_back(v);
  std::reverse(r.sequence.begin(), r.sequence.end());
  return r;
}

bool reachable(const MissionGraph& g, WaypointId from, WaypointId to) {
  std::vector<char> seen(g.node_count(), 0);
  std::vector<WaypointId> stack{from};
  seen[static_cast<std::size_t>(from)] = 1;
  while (!stack.empty()) {
    const WaypointId u = stack.back();
    stack.pop_back();
    if (u == to) return true;
    for (WaypointId v : g.neighbors(u)) {
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        stack.push_back(v);
      }
    }
  }
  return false;
}

MissionGraph generate_random_network(const NetworkSpec& spec, std::uint64_t seed) {
  const int n = spec.waypoints;
  if (n < 2) throw InvalidParameter("network needs at least 2 waypoints");
  const long long max_edges = static_cast<long long>(n) * (n - 1) / 2;
  if (spec.edges < n - 1 || spec.edges > max_edges)
    throw InvalidParameter("edge count " + std::to_string(spec.edges) + " infeasible for " + std::to_string(n) +
                           " waypoints (need " + std::to_string(n - 1) + ".." + std::to_string(max_edges) + ")");
  const auto& tr = spec.tasks;
  if (tr.priority_min < 1 || tr.priority_max < tr.priority_min) throw InvalidParameter("bad priority range");
  if (!(tr.risk_min > 0.0) || tr.risk_max > 100.0 || tr.risk_max < tr.risk_min) throw InvalidParameter("bad risk range");
  if (tr.completion_min < 0.0 || tr.completion_max < tr.completion_min) throw InvalidParameter("bad completion range");

  Rng rng(derive_seed(seed, {0x6e6574}));
  std::vector<Waypoint> wps;
  wps.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double x = rng.uniform(0.0, spec.area_xy);
    const double y = rng.uniform(0.0, spec.area_xy);
    const double z = rng.uniform(0.0, spec.depth);
    wps.push_back({i, {x, y, z}});
  }

  // Random spanning tree: attach each node of a random order to an earlier one.
  std::vector<WaypointId> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  rng.shuffle(order.begin(), order.end());
  std::vector<char> present(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
  std::vector<std::pair<WaypointId, WaypointId>> pairs;
  auto add = [&](WaypointId a, WaypointId b) {
    present[static_cast<std::size_t>(a) * static_cast<std::size_t>(n) + static_cast<std::size_t>(b)] = 1;
    present[static_cast<std::size_t>(b) * static_cast<std::size_t>(n) + static_cast<std::size_t>(a)] = 1;
    pairs.emplace_back(std::min(a, b), std::max(a, b));
  };
  for (std::size_t i = 1; i < order.size(); ++i) add(order[i], order[rng.index(i)]);

  std::vector<std::pair<WaypointId, WaypointId>> rest;
  for (WaypointId a = 0; a < n; ++a)
    for (WaypointId b = a + 1; b < n; ++b)
      if (!present[static_cast<std::size_t>(a) * static_cast<std::size_t>(n) + static_cast<std::size_t>(b)])
        rest.emplace_back(a, b);
  rng.shuffle(rest.begin(), rest.end());
  const auto extra = static_cast<std::size_t>(spec.edges - (n - 1));
  for (std::size_t i = 0; i < extra; ++i) add(rest[i].first, rest[i].second);
  std::sort(pairs.begin(), pairs.end());

  std::vector<MissionGraph::EdgeSpec> edges;
  edges.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    Task t;
    t.priority = static_cast<double>(rng.uniform_int(tr.priority_min, tr.priority_max));
    t.risk = rng.uniform(tr.risk_min, tr.risk_max);
    if (t.risk <= 0.0) t.risk = tr.risk_max;
    t.completion_time = rng.uniform(tr.completion_min, tr.completion_max);
    edges.push_back({a, b, t});
  }
  return MissionGraph(std::move(wps), edges, 0, n - 1);
}

}  // namespace auvplan
