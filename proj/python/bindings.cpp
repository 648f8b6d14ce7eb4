#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "auvplan/errors.hpp"
#include "auvplan/graph_io.hpp"
#include "auvplan/harness.hpp"

namespace py = pybind11;
using namespace auvplan;

namespace {

ExperimentConfig config_from(const std::optional<std::string>& json) {
  ExperimentConfig c = json ? parse_config(*json) : ExperimentConfig{};
  c.validate();
  return c;
}

py::tuple xyz(const Vec3& v) { return py::make_tuple(v.x, v.y, v.z); }

py::list points(const std::vector<Vec3>& pts) {
  py::list out;
  for (const auto& p : pts) out.append(xyz(p));
  return out;
}

py::dict route_dict(const RoutePlan& plan, double t_available) {
  py::dict d;
  d["ok"] = plan.ok();
  d["route"] = plan.route.sequence;
  d["best_cost"] = plan.stats.best;
  d["route_time"] = plan.stats.route_time;
  d["t_available"] = t_available;
  d["total_weight"] = plan.stats.total_weight;
  d["total_distance"] = plan.stats.total_distance;
  d["tasks"] = plan.stats.tasks;
  d["violation"] = plan.stats.violation;
  d["best_cost_trace"] = plan.stats.best_cost;
  d["diagnostic"] = plan.diagnostic;
  return d;
}

py::dict path_dict(const PathPlan& plan, const ObstacleField& field) {
  py::dict d;
  d["control_points"] = points(plan.path.control_points);
  d["samples"] = points(plan.path.samples);
  d["length"] = plan.path.length;
  d["flight_time"] = plan.path.flight_time;
  d["violation"] = plan.path.violation;
  d["cost"] = plan.path.cost;
  d["realized_violation"] = plan.stats.realized_violation;
  d["best_cost_trace"] = plan.stats.best_cost;
  d["mean_cost_trace"] = plan.stats.mean_cost;
  d["mean_violation_trace"] = plan.stats.mean_violation;
  py::list obs;
  for (const auto& o : field.obstacles) {
    py::dict od;
    od["kind"] = to_string(o.kind);
    od["center"] = xyz(o.center);
    od["radius"] = o.radius;
    od["halo"] = o.halo;
    obs.append(od);
  }
  d["obstacles"] = obs;
  return d;
}

py::dict mission_dict(const MissionLog& log) {
  py::dict d;
  d["outcome"] = to_string(log.outcome);
  d["diagnostic"] = log.diagnostic;
  d["remaining"] = log.remaining;
  d["t_available"] = log.t_available_initial;
  d["replans"] = log.replans;
  d["travelled"] = log.travelled;
  py::list legs;
  for (const auto& l : log.legs) {
    py::dict ld;
    ld["route_id"] = l.route_id;
    ld["from"] = l.from;
    ld["to"] = l.to;
    ld["violation"] = l.violation;
    ld["t_path_flight"] = l.t_path_flight;
    ld["t_expected"] = l.t_expected;
    ld["t_available"] = l.t_available;
    ld["replan"] = l.replan;
    ld["lpp"] = l.lpp;
    legs.append(ld);
  }
  d["legs"] = legs;
  py::list routes;
  for (const auto& g : log.grp_calls) routes.append(g.route.sequence);
  d["routes"] = routes;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "AUV route and path planning core";

  py::register_exception<ParseError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<SpawnFailure>(m, "SpawnFailure", PyExc_RuntimeError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<MissionGraph>(m, "Graph")
      .def_property_readonly("node_count", &MissionGraph::node_count)
      .def_property_readonly("edge_count", &MissionGraph::edge_count)
      .def_property_readonly("adjacency_entries", &MissionGraph::adjacency_entries)
      .def_property_readonly("start", &MissionGraph::start)
      .def_property_readonly("dest", &MissionGraph::dest)
      .def("position", [](const MissionGraph& g, WaypointId id) { return xyz(g.waypoint(id).position); })
      .def("neighbors", &MissionGraph::neighbors)
      .def("edges", [](const MissionGraph& g) {
        py::list out;
        for (const auto& e : g.edges())
          out.append(py::make_tuple(e.from, e.to, e.distance, e.task.priority, e.task.risk, e.task.completion_time));
        return out;
      })
      .def("save", [](const MissionGraph& g, const std::filesystem::path& p) { save_graph(p, g); });

  m.def("generate_network", [](int waypoints, int edges, std::uint64_t seed) {
    NetworkSpec spec;
    spec.waypoints = waypoints;
    spec.edges = edges;
    return generate_random_network(spec, seed);
  }, py::arg("waypoints") = 50, py::arg("edges") = 735, py::arg("seed") = 1);
  m.def("load_graph", &load_graph, py::arg("path"));

  m.def("default_config", [] { return serialize_config(ExperimentConfig{}); },
        "Default experiment configuration as JSON text");

  m.def("replan_check", [](double t_path_flight, double t_expected) {
    return replan_check(t_path_flight, t_expected) == ReplanDecision::Replan;
  }, py::arg("t_path_flight"), py::arg("t_expected"), "True when the leg overran and the route must be replanned");

  m.def("plan_route", [](const MissionGraph& g, double t_available, std::uint64_t seed,
                          const std::optional<std::string>& config) {
    const auto c = config_from(config);
    RoutePlan plan;
    {
      py::gil_scoped_release nogil;
      plan = plan_route(g, t_available, c.mission.vehicle_speed, c.mission.ga, seed);
    }
    return route_dict(plan, t_available);
  }, py::arg("graph"), py::arg("t_available"), py::arg("seed") = 1, py::arg("config") = py::none());

  m.def("plan_path", [](int scenario, int obstacles, std::uint64_t seed, const std::optional<std::string>& config) {
    const auto c = config_from(config);
    ObstacleField field;
    PathPlan plan;
    {
      py::gil_scoped_release nogil;
      field = scenario_field(c.path_start, c.path_target, scenario, obstacles, c.mission, seed);
      plan = plan_path(c.path_start, c.path_target, field, c.mission.spline, c.mission.pso, seed);
    }
    return path_dict(plan, field);
  }, py::arg("scenario") = 1, py::arg("obstacles") = 3, py::arg("seed") = 1, py::arg("config") = py::none());

  m.def("run_mission", [](const MissionGraph& g, std::uint64_t seed, const std::optional<std::string>& config) {
    const auto c = config_from(config);
    MissionLog log;
    {
      py::gil_scoped_release nogil;
      log = run_mission(g, c.mission, seed);
    }
    return mission_dict(log);
  }, py::arg("graph"), py::arg("seed") = 1, py::arg("config") = py::none());
}
