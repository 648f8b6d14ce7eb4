"""AUV mission planning: GA route planner, PSO B-spline path planner, replanning loop."""

from ._core import (
    ConfigError,
    Graph,
    IoError,
    SpawnFailure,
    default_config,
    generate_network,
    load_graph,
    plan_path,
    plan_route,
    replan_check,
    run_mission,
)

__all__ = [
    "ConfigError",
    "Graph",
    "IoError",
    "SpawnFailure",
    "default_config",
    "generate_network",
    "load_graph",
    "plan_path",
    "plan_route",
    "replan_check",
    "run_mission",
]
