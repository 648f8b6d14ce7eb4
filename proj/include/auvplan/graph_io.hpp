#pragma once

#include <filesystem>
#include <iosfwd>

#include "auvplan/mission_model.hpp"

namespace auvplan {

// Line-oriented graph document:
//
//   # auvplan mission-graph v1
//   start <id>
//   dest <id>
//   waypoint <id> <x> <y> <z>
//   edge <from> <to> <priority> <risk> <completion_time>
//
// Reals are written with 17 significant digits so load(save(g)) == g.
void write_graph(std::ostream& os, const MissionGraph& g);
MissionGraph read_graph(std::istream& is);

void save_graph(const std::filesystem::path& path, const MissionGraph& g);
MissionGraph load_graph(const std::filesystem::path& path);

}  // namespace auvplan
