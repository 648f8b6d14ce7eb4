#include "auvplan/obstacle_field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "auvplan/errors.hpp"
#include "auvplan/rng.hpp"
#include "auvplan/text_format.hpp"

namespace auvplan {

const char* to_string(ObstacleKind k) {
  switch (k) {
    case ObstacleKind::StaticKnown: return "static-known";
    case ObstacleKind::StaticUncertain: return "static-uncertain";
    case ObstacleKind::SelfMotivated: return "self-motivated";
    case ObstacleKind::CurrentDriven: return "current-driven";
  }
  return "unknown";
}

ObstacleKind obstacle_kind_from_string(const std::string& s) {
  for (auto k : {ObstacleKind::StaticKnown, ObstacleKind::StaticUncertain, ObstacleKind::SelfMotivated,
                 ObstacleKind::CurrentDriven})
    if (s == to_string(k)) return k;
  throw ParseError("unknown obstacle kind '" + s + "'");
}

OperationWindow OperationWindow::around(const Vec3& from, const Vec3& to, double inflation) {
  const double pad = inflation * distance(from, to);
  OperationWindow w{from, to, {}, {}};
  for (int k = 0; k < 3; ++k) {
    w.lo[k] = std::min(from[k], to[k]) - pad;
    w.hi[k] = std::max(from[k], to[k]) + pad;
  }
  return w;
}

bool OperationWindow::contains(const Vec3& p) const {
  for (int k = 0; k < 3; ++k)
    if (p[k] < lo[k] || p[k] > hi[k]) return false;
  return true;
}

Vec3 OperationWindow::clamp(const Vec3& p) const {
  Vec3 q = p;
  for (int k = 0; k < 3; ++k) q[k] = std::clamp(q[k], lo[k], hi[k]);
  return q;
}

double ObstacleField::mean_halo_rate() const {
  // E|X| for X ~ N(0, s) is s * sqrt(2 / pi).
  return current_magnitude * dynamics.step_seconds * dynamics.state_sigma * std::sqrt(2.0 / std::numbers::pi);
}

namespace {

// Two unit vectors completing u to an orthonormal frame.
void perpendicular_frame(const Vec3& u, Vec3& e1, Vec3& e2) {
  const double ax = std::abs(u.x), ay = std::abs(u.y), az = std::abs(u.z);
  Vec3 helper = (ax <= ay && ax <= az) ? Vec3{1, 0, 0} : (ay <= az ? Vec3{0, 1, 0} : Vec3{0, 0, 1});
  Vec3 v = helper - u * helper.dot(u);
  e1 = v * (1.0 / v.norm());
  e2 = {u.y * e1.z - u.z * e1.y, u.z * e1.x - u.x * e1.z, u.x * e1.y - u.y * e1.x};
}

// Rejection sample of N(mean, sigma) restricted to the open interval (lo, hi).
double truncated_normal(Rng& rng, double mean, double sigma, double lo, double hi) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const double v = rng.normal(mean, sigma);
    if (v > lo && v < hi) return v;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

ObstacleCounts compose_scenario(int scenario, int total, Rng& rng) {
  if (scenario < 1 || scenario > 4) throw InvalidParameter("scenario must be 1..4");
  if (total < 0) throw InvalidParameter("obstacle total must be >= 0");
  ObstacleCounts c;
  int* slots[4] = {&c.static_known, &c.static_uncertain, &c.self_motivated, &c.current_driven};
  switch (scenario) {
    case 1:
      for (int i = 0; i < total; ++i) ++*slots[rng.index(2)];
      break;
    case 2:
      c.self_motivated = total;
      break;
    case 3:
      c.current_driven = total;
      break;
    case 4: {
      int left = total;
      if (total >= 4) {
        for (int* s : slots) ++*s;
        left -= 4;
      }
      for (int i = 0; i < left; ++i) ++*slots[rng.index(4)];
      break;
    }
  }
  return c;
}

ObstacleField spawn_obstacles(const OperationWindow& window, const ObstacleCounts& counts, const SpawnConfig& cfg,
                              std::uint64_t seed) {
  if (counts.static_known < 0 || counts.static_uncertain < 0 || counts.self_motivated < 0 || counts.current_driven < 0)
    throw InvalidParameter("obstacle counts must be >= 0");
  if (!(cfg.radius_min > 0.0) || cfg.radius_max < cfg.radius_min) throw InvalidParameter("bad radius range");
  for (int k = 0; k < 3; ++k)
    if (!(window.hi[k] > window.lo[k])) throw InvalidParameter("operation window must have positive extent");

  Rng rng(derive_seed(seed, {0x6f6273}));
  ObstacleField field;
  field.window = window;
  field.dynamics = cfg.dynamics;
  field.current_magnitude = cfg.current_magnitude ? std::abs(*cfg.current_magnitude) : std::abs(rng.normal(0.0, cfg.current_sigma));

  const double leg = window.leg_length();
  const Vec3 dir = leg > 0.0 ? (window.to - window.from) * (1.0 / leg) : Vec3{1, 0, 0};
  Vec3 e1, e2;
  perpendicular_frame(dir, e1, e2);

  auto place = [&](ObstacleKind kind) {
    Obstacle ob;
    ob.kind = kind;
    ob.stream = rng.next_u64();
    ob.radius = std::clamp(std::abs(rng.normal(0.0, cfg.radius_sigma)), cfg.radius_min, cfg.radius_max);
    ob.radius_spread = kind == ObstacleKind::StaticUncertain ? cfg.dynamics.radius_spread_fraction * ob.radius : 0.0;
    // Inset by the largest radius the body can take, so neither waypoint starts inside it.
    const double inset = ob.radius + ob.radius_spread;
    if (!(leg > 2.0 * inset))
      throw SpawnFailure("leg of " + fmt6(leg) + " m cannot hold an obstacle of radius " + fmt6(inset) + " m");
    const double along = truncated_normal(rng, 0.5 * leg, 0.25 * leg, inset, leg - inset);
    const Vec3 base = window.from + dir * along;
    Vec3 c = base;
    for (int attempt = 0; attempt < 1000; ++attempt) {
      const Vec3 cand = base + e1 * rng.normal(0.0, ob.radius) + e2 * rng.normal(0.0, ob.radius);
      if (window.contains(cand)) {
        c = cand;
        break;
      }
    }
    ob.center = c;
    ob.nominal_radius = ob.radius;
    ob.gaussian_state = kind == ObstacleKind::StaticKnown ? 0.0 : rng.normal(0.0, cfg.dynamics.state_sigma);
    field.obstacles.push_back(ob);
  };
  for (int i = 0; i < counts.static_known; ++i) place(ObstacleKind::StaticKnown);
  for (int i = 0; i < counts.static_uncertain; ++i) place(ObstacleKind::StaticUncertain);
  for (int i = 0; i < counts.self_motivated; ++i) place(ObstacleKind::SelfMotivated);
  for (int i = 0; i < counts.current_driven; ++i) place(ObstacleKind::CurrentDriven);
  return field;
}

ObstacleField step_obstacles(const ObstacleField& field) {
  ObstacleField next = field;
  const auto& dyn = field.dynamics;
  for (auto& ob : next.obstacles) {
    Rng rng(derive_seed(ob.stream, {field.step}));
    switch (ob.kind) {
      case ObstacleKind::StaticKnown:
        break;
      case ObstacleKind::StaticUncertain:
        // Independent redraw each step inside the band.
        ob.radius = std::clamp(rng.normal(ob.nominal_radius, 0.5 * ob.radius_spread), ob.nominal_radius - ob.radius_spread,
                               ob.nominal_radius + ob.radius_spread);
        break;
      case ObstacleKind::CurrentDriven:
        ob.halo += field.current_magnitude * dyn.step_seconds * std::abs(ob.gaussian_state);
        [[fallthrough]];
      case ObstacleKind::SelfMotivated: {
        const Vec3 shift{rng.normal(0.0, dyn.motion_sigma), rng.normal(0.0, dyn.motion_sigma),
                         rng.normal(0.0, dyn.motion_sigma)};
        ob.center = field.window.clamp(ob.center + shift);
        ob.gaussian_state = rng.normal(0.0, dyn.state_sigma);
        break;
      }
    }
  }
  ++next.step;
  return next;
}

double collision_violation(std::span<const Vec3> samples, const ObstacleField& field) {
  double v = 0.0;
  for (const auto& p : samples) {
    for (const auto& ob : field.obstacles) {
      const double r = ob.effective_radius();
      const double d = distance(p, ob.center);
      if (d < r) v += (r - d) / r;
    }
  }
  return v;
}

std::vector<ObstacleField> predict_states(const ObstacleField& field, int horizon) {
  if (horizon < 1) throw InvalidParameter("prediction horizon must be >= 1");
  ObstacleField envelope = field;
  for (auto& ob : envelope.obstacles)
    if (ob.kind == ObstacleKind::StaticUncertain) ob.radius = ob.nominal_radius + ob.radius_spread;

  const double rate = field.mean_halo_rate();
  std::vector<ObstacleField> out;
  out.reserve(static_cast<std::size_t>(horizon) + 1);
  out.push_back(envelope);
  for (int k = 1; k <= horizon; ++k) {
    ObstacleField f = envelope;
    for (auto& ob : f.obstacles)
      if (ob.kind == ObstacleKind::CurrentDriven) ob.halo += static_cast<double>(k) * rate;
    f.step = field.step + static_cast<std::uint64_t>(k);
    out.push_back(std::move(f));
  }
  return out;
}

void write_obstacles_header(std::ostream& os) { os << "label\tkind\tcx\tcy\tcz\tradius\thalo\n"; }

void write_obstacles(std::ostream& os, const ObstacleField& field, const std::string& label) {
  for (const auto& ob : field.obstacles) {
    os << label << '\t' << to_string(ob.kind) << '\t' << fmt6(ob.center.x) << '\t' << fmt6(ob.center.y) << '\t'
       << fmt6(ob.center.z) << '\t' << fmt6(ob.radius) << '\t' << fmt6(ob.halo) << '\n';
  }
}

}  // namespace auvplan
