#include "auvplan/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "auvplan/errors.hpp"
#include "auvplan/text_format.hpp"
#include "json.hpp"

namespace auvplan {

using nlohmann::json;

const char* to_string(Mode m) {
  switch (m) {
    case Mode::GenNetwork: return "gen-network";
    case Mode::PlanRoute: return "plan-route";
    case Mode::PlanPath: return "plan-path";
    case Mode::RunMission: return "run-mission";
    case Mode::MonteCarlo: return "monte-carlo";
    case Mode::ScenarioSuite: return "scenario-suite";
  }
  return "unknown";
}

Mode mode_from_string(const std::string& s) {
  for (auto m : {Mode::GenNetwork, Mode::PlanRoute, Mode::PlanPath, Mode::RunMission, Mode::MonteCarlo,
                 Mode::ScenarioSuite})
    if (s == to_string(m)) return m;
  throw ParseError("unknown mode '" + s + "'");
}

void ExperimentConfig::validate() const {
  if (repetitions < 1) throw InvalidParameter("repetitions must be >= 1");
  mission.validate();
  if (!(campaign_t_available > 0.0)) throw InvalidParameter("campaign budget must be > 0");
  if (path_start == path_target) throw InvalidParameter("path start and target must differ");
  if (!path_start.finite() || !path_target.finite()) throw InvalidParameter("path endpoints must be finite");
  if (graph_path && !std::filesystem::exists(*graph_path))
    throw InvalidParameter("graph file '" + *graph_path + "' does not exist");
  if (output_dir.empty()) throw InvalidParameter("output directory must not be empty");
}

// ---------------------------------------------------------------- config I/O

namespace {

// Reads named members of one JSON object and rejects the ones never asked for.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw ParseError(where_ + " must be an object");
  }

  template <class T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) return;
    try {
      out = it->template get<T>();
    } catch (const json::exception& e) {
      throw ParseError(where_ + "." + key + ": " + e.what());
    }
  }

  const json* child(const char* key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  std::string path(const char* key) const { return where_ + "." + key; }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) throw ParseError("unknown key " + where_ + "." + it.key());
  }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

json vec_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Vec3 vec_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw ParseError(where + " must be an array of 3 numbers");
  try {
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
  } catch (const json::exception& e) {
    throw ParseError(where + ": " + e.what());
  }
}

json network_json(const NetworkSpec& n) {
  return {{"waypoints", n.waypoints},
          {"edges", n.edges},
          {"area_xy", n.area_xy},
          {"depth", n.depth},
          {"tasks",
           {{"priority_min", n.tasks.priority_min},
            {"priority_max", n.tasks.priority_max},
            {"risk_min", n.tasks.risk_min},
            {"risk_max", n.tasks.risk_max},
            {"completion_min", n.tasks.completion_min},
            {"completion_max", n.tasks.completion_max}}}};
}

void read_network(const json& j, const std::string& where, NetworkSpec& n) {
  ObjectReader r(j, where);
  r.get("waypoints", n.waypoints);
  r.get("edges", n.edges);
  r.get("area_xy", n.area_xy);
  r.get("depth", n.depth);
  if (const json* t = r.child("tasks")) {
    ObjectReader tr(*t, r.path("tasks"));
    tr.get("priority_min", n.tasks.priority_min);
    tr.get("priority_max", n.tasks.priority_max);
    tr.get("risk_min", n.tasks.risk_min);
    tr.get("risk_max", n.tasks.risk_max);
    tr.get("completion_min", n.tasks.completion_min);
    tr.get("completion_max", n.tasks.completion_max);
    tr.finish();
  }
  r.finish();
}

json ga_json(const GaConfig& g) {
  return {{"population_size", g.population_size},
          {"max_iterations", g.max_iterations},
          {"crossover_mix", g.crossover_mix},
          {"mutation_probability", g.mutation_probability},
          {"mutation_kind_weights", g.mutation_kind_weights},
          {"stall_generations", g.stall_generations},
          {"penalty_factor", g.penalty_factor},
          {"task_cost_weight", g.task_cost_weight},
          {"route_cost_weight", g.route_cost_weight},
          {"seed_fastest_route", g.seed_fastest_route}};
}

void read_ga(const json& j, const std::string& where, GaConfig& g) {
  ObjectReader r(j, where);
  r.get("population_size", g.population_size);
  r.get("max_iterations", g.max_iterations);
  r.get("crossover_mix", g.crossover_mix);
  r.get("mutation_probability", g.mutation_probability);
  r.get("mutation_kind_weights", g.mutation_kind_weights);
  r.get("stall_generations", g.stall_generations);
  r.get("penalty_factor", g.penalty_factor);
  r.get("task_cost_weight", g.task_cost_weight);
  r.get("route_cost_weight", g.route_cost_weight);
  r.get("seed_fastest_route", g.seed_fastest_route);
  r.finish();
}

json pso_json(const PsoConfig& p) {
  return {{"swarm_size", p.swarm_size},
          {"iterations", p.iterations},
          {"inertia", p.inertia},
          {"inertia_decay", p.inertia_decay},
          {"inertia_start", p.inertia_start},
          {"inertia_end", p.inertia_end},
          {"c1", p.c1},
          {"c2", p.c2},
          {"violation_penalty", p.violation_penalty},
          {"velocity_clamp", p.velocity_clamp},
          {"corridor_fraction", p.corridor_fraction},
          {"vehicle_speed", p.vehicle_speed}};
}

void read_pso(const json& j, const std::string& where, PsoConfig& p) {
  ObjectReader r(j, where);
  r.get("swarm_size", p.swarm_size);
  r.get("iterations", p.iterations);
  r.get("inertia", p.inertia);
  r.get("inertia_decay", p.inertia_decay);
  r.get("inertia_start", p.inertia_start);
  r.get("inertia_end", p.inertia_end);
  r.get("c1", p.c1);
  r.get("c2", p.c2);
  r.get("violation_penalty", p.violation_penalty);
  r.get("velocity_clamp", p.velocity_clamp);
  r.get("corridor_fraction", p.corridor_fraction);
  r.get("vehicle_speed", p.vehicle_speed);
  r.finish();
}

json spawn_json(const SpawnConfig& s) {
  return {{"radius_sigma", s.radius_sigma},
          {"radius_min", s.radius_min},
          {"radius_max", s.radius_max},
          {"current_sigma", s.current_sigma},
          {"current_magnitude", s.current_magnitude ? json(*s.current_magnitude) : json(nullptr)},
          {"motion_sigma", s.dynamics.motion_sigma},
          {"state_sigma", s.dynamics.state_sigma},
          {"step_seconds", s.dynamics.step_seconds},
          {"radius_spread_fraction", s.dynamics.radius_spread_fraction}};
}

void read_spawn(const json& j, const std::string& where, SpawnConfig& s) {
  ObjectReader r(j, where);
  r.get("radius_sigma", s.radius_sigma);
  r.get("radius_min", s.radius_min);
  r.get("radius_max", s.radius_max);
  r.get("current_sigma", s.current_sigma);
  if (const json* c = r.child("current_magnitude")) {
    if (c->is_null())
      s.current_magnitude.reset();
    else if (c->is_number())
      s.current_magnitude = c->get<double>();
    else
      throw ParseError(r.path("current_magnitude") + " must be a number or null");
  }
  r.get("motion_sigma", s.dynamics.motion_sigma);
  r.get("state_sigma", s.dynamics.state_sigma);
  r.get("step_seconds", s.dynamics.step_seconds);
  r.get("radius_spread_fraction", s.dynamics.radius_spread_fraction);
  r.finish();
}

}  // namespace

std::string serialize_config(const ExperimentConfig& cfg) {
  const MissionConfig& m = cfg.mission;
  json j;
  j["mode"] = to_string(cfg.mode);
  j["seed"] = cfg.seed;
  j["network"] = network_json(cfg.network);
  j["graph_path"] = cfg.graph_path ? json(*cfg.graph_path) : json(nullptr);
  j["mission"] = {{"t_available", m.t_available},
                  {"vehicle_speed", m.vehicle_speed},
                  {"scenario", m.scenario},
                  {"min_obstacles", m.min_obstacles},
                  {"max_obstacles", m.max_obstacles},
                  {"window_inflation", m.window_inflation},
                  {"measure_compute", m.measure_compute},
                  {"compute_charge", m.compute_charge},
                  {"max_grp_calls", m.max_grp_calls},
                  {"route_margin", m.route_margin}};
  j["ga"] = ga_json(m.ga);
  j["pso"] = pso_json(m.pso);
  j["spline"] = {{"control_points", m.spline.control_points}, {"order", m.spline.order}, {"samples", m.spline.samples}};
  j["spawn"] = spawn_json(m.spawn);
  j["repetitions"] = cfg.repetitions;
  j["output_dir"] = cfg.output_dir;
  j["campaign"] = {{"network", network_json(cfg.campaign_network)}, {"t_available", cfg.campaign_t_available}};
  j["path"] = {{"start", vec_json(cfg.path_start)}, {"target", vec_json(cfg.path_target)}};
  return j.dump(2) + "\n";
}

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  ExperimentConfig cfg;
  MissionConfig& m = cfg.mission;
  ObjectReader r(j, "config");
  if (const json* mode = r.child("mode")) {
    if (!mode->is_string()) throw ParseError("config.mode must be a string");
    cfg.mode = mode_from_string(mode->get<std::string>());
  }
  r.get("seed", cfg.seed);
  if (const json* n = r.child("network")) read_network(*n, "config.network", cfg.network);
  if (const json* g = r.child("graph_path")) {
    if (g->is_null())
      cfg.graph_path.reset();
    else if (g->is_string())
      cfg.graph_path = g->get<std::string>();
    else
      throw ParseError("config.graph_path must be a string or null");
  }
  if (const json* mj = r.child("mission")) {
    ObjectReader mr(*mj, "config.mission");
    mr.get("t_available", m.t_available);
    mr.get("vehicle_speed", m.vehicle_speed);
    mr.get("scenario", m.scenario);
    mr.get("min_obstacles", m.min_obstacles);
    mr.get("max_obstacles", m.max_obstacles);
    mr.get("window_inflation", m.window_inflation);
    mr.get("measure_compute", m.measure_compute);
    mr.get("compute_charge", m.compute_charge);
    mr.get("max_grp_calls", m.max_grp_calls);
    mr.get("route_margin", m.route_margin);
    mr.finish();
  }
  if (const json* g = r.child("ga")) read_ga(*g, "config.ga", m.ga);
  if (const json* p = r.child("pso")) read_pso(*p, "config.pso", m.pso);
  if (const json* s = r.child("spline")) {
    ObjectReader sr(*s, "config.spline");
    sr.get("control_points", m.spline.control_points);
    sr.get("order", m.spline.order);
    sr.get("samples", m.spline.samples);
    sr.finish();
  }
  if (const json* s = r.child("spawn")) read_spawn(*s, "config.spawn", m.spawn);
  r.get("repetitions", cfg.repetitions);
  r.get("output_dir", cfg.output_dir);
  if (const json* c = r.child("campaign")) {
    ObjectReader cr(*c, "config.campaign");
    if (const json* n = cr.child("network")) read_network(*n, "config.campaign.network", cfg.campaign_network);
    cr.get("t_available", cfg.campaign_t_available);
    cr.finish();
  }
  if (const json* p = r.child("path")) {
    ObjectReader pr(*p, "config.path");
    if (const json* s = pr.child("start")) cfg.path_start = vec_from(*s, "config.path.start");
    if (const json* t = pr.child("target")) cfg.path_target = vec_from(*t, "config.path.target");
    pr.finish();
  }
  r.finish();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

// ---------------------------------------------------------------- metrics

bool feasibility_verdict(double violation, double route_time, double t_available) {
  return violation == 0.0 && route_time < t_available;
}

MetricsRow metrics_row(const RoutePlan& plan, double t_available, std::uint64_t seed) {
  MetricsRow row;
  row.seed = seed;
  row.cpu_seconds = plan.stats.cpu_seconds;
  row.best_cost = plan.stats.best;
  row.t_available = t_available;
  row.route_time = plan.stats.route_time;
  row.total_distance = plan.stats.total_distance;
  row.total_weight = plan.stats.total_weight;
  row.tasks = plan.stats.tasks;
  row.violation = plan.stats.violation;
  row.feasible = feasibility_verdict(row.violation, row.route_time, row.t_available);
  return row;
}

Summary summarize(std::span<const double> values) {
  if (values.empty()) throw InvalidParameter("cannot summarize an empty sample");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
  };
  return {v.front(), quantile(0.25), quantile(0.5), quantile(0.75), v.back()};
}

std::vector<std::uint64_t> seed_range(std::uint64_t base, int count) {
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < count; ++i) seeds.push_back(base + static_cast<std::uint64_t>(i));
  return seeds;
}

MonteCarloResult run_monte_carlo(const ExperimentConfig& cfg, std::span<const std::uint64_t> seeds) {
  if (seeds.empty()) throw InvalidParameter("Monte Carlo campaign needs at least one seed");
  cfg.mission.validate();
  MonteCarloResult res;
  for (const std::uint64_t seed : seeds) {
    try {
      const MissionGraph g = generate_random_network(cfg.campaign_network, derive_seed(seed, {10}));
      const RoutePlan plan = plan_route(g, cfg.campaign_t_available, cfg.mission.vehicle_speed, cfg.mission.ga,
                                        derive_seed(seed, {11}));
      res.rows.push_back(metrics_row(plan, cfg.campaign_t_available, seed));
    } catch (const std::exception& e) {
      throw CampaignError(seed, e.what());
    }
  }
  std::vector<double> t, cpu, w, d;
  for (const auto& row : res.rows) {
    t.push_back(row.route_time);
    cpu.push_back(row.cpu_seconds);
    w.push_back(row.total_weight);
    d.push_back(row.total_distance);
    if (!row.feasible) ++res.violations;
  }
  res.route_time = summarize(t);
  res.cpu_seconds = summarize(cpu);
  res.total_weight = summarize(w);
  res.total_distance = summarize(d);
  return res;
}

// ---------------------------------------------------------------- scenarios

ObstacleField scenario_field(const Vec3& from, const Vec3& to, int scenario, int obstacles, const MissionConfig& mc,
                             std::uint64_t seed) {
  Rng rng(derive_seed(seed, {0x6d6978}));
  const ObstacleCounts counts = compose_scenario(scenario, obstacles, rng);
  return spawn_obstacles(OperationWindow::around(from, to, mc.window_inflation), counts, mc.spawn, seed);
}

double SuiteResult::zero_violation_fraction(int obstacles) const {
  int total = 0, clean = 0;
  for (const auto& r : runs) {
    if (r.obstacles != obstacles) continue;
    ++total;
    if (r.plan.path.violation == 0.0) ++clean;
  }
  return total == 0 ? 0.0 : static_cast<double>(clean) / total;
}

SuiteResult run_scenario_suite(const ExperimentConfig& cfg, int scenario, int min_count, int max_count,
                               std::span<const std::uint64_t> seeds) {
  if (scenario < 1 || scenario > 4) throw InvalidParameter("scenario must be 1..4");
  if (min_count < 0 || max_count < min_count) throw InvalidParameter("bad obstacle count range");
  const MissionConfig& mc = cfg.mission;
  SuiteResult res;
  for (int count = min_count; count <= max_count; ++count) {
    for (const std::uint64_t seed : seeds) {
      ScenarioRun run;
      run.scenario = scenario;
      run.obstacles = count;
      run.seed = seed;
      const std::uint64_t base = derive_seed(seed, {20, static_cast<std::uint64_t>(scenario),
                                                    static_cast<std::uint64_t>(count)});
      run.field = scenario_field(cfg.path_start, cfg.path_target, scenario, count, mc, base);
      run.plan = plan_path(cfg.path_start, cfg.path_target, run.field, mc.spline, mc.pso, derive_seed(base, {1}));
      res.runs.push_back(std::move(run));
    }
  }
  return res;
}

// ---------------------------------------------------------------- export

namespace {

class TsvFile {
 public:
  TsvFile(const std::filesystem::path& dir, const char* name, std::initializer_list<const char*> header)
      : path_(dir / name), out_(path_, std::ios::binary | std::ios::trunc) {
    if (!out_) throw IoError("cannot write '" + path_.string() + "'");
    bool first = true;
    for (const char* h : header) {
      if (!first) out_ << '\t';
      out_ << h;
      first = false;
    }
    out_ << '\n';
  }
  ~TsvFile() noexcept(false) {
    out_.flush();
    if (!out_ && std::uncaught_exceptions() == 0) throw IoError("write to '" + path_.string() + "' failed");
  }

  template <class... Ts>
  void row(const Ts&... cells) {
    bool first = true;
    ((out_ << (first ? "" : "\t") << cell(cells), first = false), ...);
    out_ << '\n';
  }

  std::ostream& stream() { return out_; }

 private:
  static std::string cell(double v) { return fmt6(v); }
  static std::string cell(bool v) { return v ? "1" : "0"; }
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }
  template <class T>
    requires std::is_integral_v<T>
  static std::string cell(T v) {
    return std::to_string(v);
  }

  std::filesystem::path path_;
  std::ofstream out_;
};

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw IoError("cannot create directory '" + dir.string() + "'" + (ec ? ": " + ec.message() : ""));
}

std::string join_route(const Route& r) {
  std::string s;
  for (std::size_t i = 0; i < r.sequence.size(); ++i) s += (i ? "-" : "") + std::to_string(r.sequence[i]);
  return s;
}

const std::initializer_list<const char*> kPsoTraceHeader{"run", "iteration", "best_cost", "mean_cost",
                                                         "mean_violation"};
const std::initializer_list<const char*> kTrajectoryHeader{"run", "sample", "x", "y", "z"};

void pso_trace_rows(TsvFile& f, std::size_t run, const PathRunStats& st) {
  for (std::size_t i = 0; i < st.best_cost.size(); ++i)
    f.row(run, i + 1, st.best_cost[i], st.mean_cost[i], st.mean_violation[i]);
}

void trajectory_rows(TsvFile& f, std::size_t run, const BSplinePath& p) {
  for (std::size_t i = 0; i < p.samples.size(); ++i) f.row(run, i, p.samples[i].x, p.samples[i].y, p.samples[i].z);
}

void ga_trace_rows(TsvFile& f, std::size_t call, const GaRunStats& st) {
  for (std::size_t i = 0; i < st.best_cost.size(); ++i) f.row(call, i + 1, st.best_cost[i], st.mean_cost[i]);
}

}  // namespace

void export_artifacts(const MissionLog& log, const std::filesystem::path& dir) {
  ensure_dir(dir);
  {
    TsvFile f(dir, "mission_grp.tsv",
              {"call", "start", "dest", "tasks", "weight", "cost", "cpu", "t_available", "t_route", "valid", "route"});
    for (const auto& g : log.grp_calls)
      f.row(g.call, g.start, g.dest, g.tasks, g.weight, g.cost, g.cpu_seconds, g.t_available, g.t_route, g.valid,
            join_route(g.route));
  }
  {
    TsvFile f(dir, "mission_lpp.tsv",
              {"route_id", "pp_call", "from", "to", "violation", "path_cost", "cpu", "t_path_flight", "t_expected",
               "t_available", "replan", "lpp"});
    for (const auto& l : log.legs)
      f.row(l.route_id, l.pp_call, l.from, l.to, l.violation, l.path_cost, l.cpu_seconds, l.t_path_flight,
            l.t_expected, l.t_available, l.replan, l.lpp);
  }
  {
    TsvFile f(dir, "ga_trace.tsv", {"call", "iteration", "best_cost", "mean_cost"});
    for (std::size_t c = 0; c < log.grp_stats.size(); ++c) ga_trace_rows(f, c + 1, log.grp_stats[c]);
  }
  {
    TsvFile f(dir, "pso_trace.tsv", kPsoTraceHeader);
    for (std::size_t k = 0; k < log.paths.size(); ++k) pso_trace_rows(f, k + 1, log.paths[k].stats);
  }
  {
    TsvFile f(dir, "trajectory.tsv", kTrajectoryHeader);
    for (std::size_t k = 0; k < log.paths.size(); ++k) trajectory_rows(f, k + 1, log.paths[k].path);
  }
  {
    TsvFile f(dir, "obstacles.tsv", {"label", "kind", "cx", "cy", "cz", "radius", "halo"});
    for (std::size_t k = 0; k < log.fields.size(); ++k) write_obstacles(f.stream(), log.fields[k], std::to_string(k + 1));
  }
  {
    TsvFile f(dir, "summary.tsv", {"key", "value"});
    if (!log.grp_calls.empty() || !log.legs.empty()) {
      std::string travelled;
      for (std::size_t i = 0; i < log.travelled.size(); ++i)
        travelled += (i ? "-" : "") + std::to_string(log.travelled[i]);
      f.row("outcome", to_string(log.outcome));
      f.row("t_available_initial", log.t_available_initial);
      f.row("remaining", log.remaining);
      f.row("grp_calls", log.grp_calls.size());
      f.row("lpp_calls", log.legs.size());
      f.row("replans", log.replans);
      f.row("compute_charged", log.compute_total);
      f.row("travelled", travelled);
      f.row("diagnostic", log.diagnostic.empty() ? std::string("-") : log.diagnostic);
    }
  }
  {
    TsvFile f(dir, "timing.tsv", {"kind", "index", "seconds"});
    for (const auto& g : log.grp_calls) f.row("grp", g.call, g.measured_seconds);
    for (std::size_t k = 0; k < log.legs.size(); ++k) f.row("lpp", k + 1, log.legs[k].measured_seconds);
  }
}

void export_artifacts(const RoutePlan& plan, double t_available, std::uint64_t seed, const std::filesystem::path& dir) {
  ensure_dir(dir);
  const MetricsRow row = metrics_row(plan, t_available, seed);
  {
    TsvFile f(dir, "metrics.tsv",
              {"seed", "best_cost", "t_available", "t_route", "distance", "weight", "tasks", "violation", "feasible"});
    f.row(row.seed, row.best_cost, row.t_available, row.route_time, row.total_distance, row.total_weight, row.tasks,
          row.violation, row.feasible);
  }
  {
    TsvFile f(dir, "route.tsv", {"position", "waypoint"});
    for (std::size_t i = 0; i < plan.route.sequence.size(); ++i) f.row(i, plan.route.sequence[i]);
  }
  {
    TsvFile f(dir, "ga_trace.tsv", {"call", "iteration", "best_cost", "mean_cost"});
    ga_trace_rows(f, 1, plan.stats);
  }
  {
    TsvFile f(dir, "timing.tsv", {"kind", "index", "seconds"});
    f.row("grp", 1, plan.stats.cpu_seconds);
  }
}

void export_artifacts(const PathPlan& plan, const ObstacleField& field, const std::filesystem::path& dir) {
  ensure_dir(dir);
  const auto& p = plan.path;
  {
    TsvFile f(dir, "path.tsv", {"length", "flight_time", "violation", "cost", "realized_violation"});
    f.row(p.length, p.flight_time, p.violation, p.cost, plan.stats.realized_violation);
  }
  {
    TsvFile f(dir, "pso_trace.tsv", kPsoTraceHeader);
    pso_trace_rows(f, 1, plan.stats);
  }
  {
    TsvFile f(dir, "trajectory.tsv", kTrajectoryHeader);
    trajectory_rows(f, 1, p);
  }
  {
    TsvFile f(dir, "obstacles.tsv", {"label", "kind", "cx", "cy", "cz", "radius", "halo"});
    write_obstacles(f.stream(), field, "initial");
    write_obstacles(f.stream(), plan.stats.final_field, "final");
  }
  {
    TsvFile f(dir, "timing.tsv", {"kind", "index", "seconds"});
    f.row("lpp", 1, plan.stats.cpu_seconds);
  }
}

void export_artifacts(const MonteCarloResult& result, const std::filesystem::path& dir) {
  ensure_dir(dir);
  {
    TsvFile f(dir, "metrics.tsv",
              {"seed", "best_cost", "t_available", "t_route", "distance", "weight", "tasks", "violation", "feasible"});
    for (const auto& r : result.rows)
      f.row(r.seed, r.best_cost, r.t_available, r.route_time, r.total_distance, r.total_weight, r.tasks, r.violation,
            r.feasible);
  }
  {
    TsvFile f(dir, "summary.tsv", {"metric", "min", "q1", "median", "q3", "max"});
    if (!result.rows.empty()) {
      auto put = [&](const char* name, const Summary& s) { f.row(name, s.min, s.q1, s.median, s.q3, s.max); };
      put("route_time", result.route_time);
      put("total_weight", result.total_weight);
      put("total_distance", result.total_distance);
      f.row("violations", result.violations, "", "", "", "");
    }
  }
  {
    TsvFile f(dir, "timing.tsv", {"kind", "index", "seconds"});
    for (const auto& r : result.rows) f.row("grp", r.seed, r.cpu_seconds);
    if (!result.rows.empty()) {
      const Summary& s = result.cpu_seconds;
      f.row("cpu_min", 0, s.min);
      f.row("cpu_median", 0, s.median);
      f.row("cpu_max", 0, s.max);
    }
  }
}

void export_artifacts(const SuiteResult& result, const std::filesystem::path& dir) {
  ensure_dir(dir);
  {
    TsvFile f(dir, "suite.tsv",
              {"run", "scenario", "obstacles", "seed", "violation", "realized_violation", "cost", "flight_time",
               "length"});
    for (std::size_t k = 0; k < result.runs.size(); ++k) {
      const auto& r = result.runs[k];
      f.row(k + 1, r.scenario, r.obstacles, r.seed, r.plan.path.violation, r.plan.stats.realized_violation,
            r.plan.path.cost, r.plan.path.flight_time, r.plan.path.length);
    }
  }
  {
    TsvFile f(dir, "pso_trace.tsv", kPsoTraceHeader);
    for (std::size_t k = 0; k < result.runs.size(); ++k) pso_trace_rows(f, k + 1, result.runs[k].plan.stats);
  }
  {
    TsvFile f(dir, "trajectory.tsv", kTrajectoryHeader);
    for (std::size_t k = 0; k < result.runs.size(); ++k) trajectory_rows(f, k + 1, result.runs[k].plan.path);
  }
  {
    TsvFile f(dir, "obstacles.tsv", {"label", "kind", "cx", "cy", "cz", "radius", "halo"});
    for (std::size_t k = 0; k < result.runs.size(); ++k) write_obstacles(f.stream(), result.runs[k].field, std::to_string(k + 1));
  }
  {
    TsvFile f(dir, "timing.tsv", {"kind", "index", "seconds"});
    for (std::size_t k = 0; k < result.runs.size(); ++k) f.row("lpp", k + 1, result.runs[k].plan.stats.cpu_seconds);
  }
}

}  // namespace auvplan
