#include "auvplan/graph_io.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "auvplan/errors.hpp"
#include "auvplan/text_format.hpp"

namespace auvplan {

void write_graph(std::ostream& os, const MissionGraph& g) {
  os << "# auvplan mission-graph v1\n";
  os << "start " << g.start() << "\n";
  os << "dest " << g.dest() << "\n";
  for (const auto& w : g.waypoints()) {
    os << "waypoint " << w.id << ' ' << fmt_exact(w.position.x) << ' ' << fmt_exact(w.position.y) << ' '
       << fmt_exact(w.position.z) << "\n";
  }
  for (const auto& e : g.edges()) {
    os << "edge " << e.from << ' ' << e.to << ' ' << fmt_exact(e.task.priority) << ' ' << fmt_exact(e.task.risk)
       << ' ' << fmt_exact(e.task.completion_time) << "\n";
  }
}

MissionGraph read_graph(std::istream& is) {
  std::optional<WaypointId> start;
  std::optional<WaypointId> dest;
  std::vector<Waypoint> wps;
  std::vector<MissionGraph::EdgeSpec> edges;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    auto fail = [&](const std::string& why) {
      return ParseError("graph line " + std::to_string(lineno) + ": " + why);
    };
    if (tag == "start") {
      WaypointId v;
      if (!(ls >> v)) throw fail("bad start record");
      start = v;
    } else if (tag == "dest") {
      WaypointId v;
      if (!(ls >> v)) throw fail("bad dest record");
      dest = v;
    } else if (tag == "waypoint") {
      Waypoint w;
      if (!(ls >> w.id >> w.position.x >> w.position.y >> w.position.z)) throw fail("bad waypoint record");
      wps.push_back(w);
    } else if (tag == "edge") {
      MissionGraph::EdgeSpec e{};
      if (!(ls >> e.from >> e.to >> e.task.priority >> e.task.risk >> e.task.completion_time))
        throw fail("bad edge record");
      edges.push_back(e);
    } else {
      throw fail("unknown record '" + tag + "'");
    }
  }
  if (!start || !dest) throw ParseError("graph document lacks start/dest records");
  try {
    return MissionGraph(std::move(wps), edges, *start, *dest);
  } catch (const InvalidParameter& e) {
    throw ParseError(std::string("graph document is inconsistent: ") + e.what());
  }
}

void save_graph(const std::filesystem::path& path, const MissionGraph& g) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write " + path.string());
  write_graph(os, g);
  if (!os) throw IoError("write failed for " + path.string());
}

MissionGraph load_graph(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot read " + path.string());
  return read_graph(is);
}

}  // namespace auvplan
