#include <cmath>
#include <numbers>
#include <sstream>

#include "auvplan/errors.hpp"
#include "auvplan/obstacle_field.hpp"
#include "doctest.h"

using namespace auvplan;

namespace {

const Vec3 kFrom{0, 0, 50};
const Vec3 kTo{2000, 0, 50};

ObstacleField field_of(ObstacleCounts c, std::uint64_t seed, SpawnConfig cfg = {}) {
  return spawn_obstacles(OperationWindow::around(kFrom, kTo), c, cfg, seed);
}

Obstacle lone(ObstacleKind kind, Vec3 c, double r) {
  Obstacle o;
  o.kind = kind;
  o.center = c;
  o.radius = o.nominal_radius = r;
  return o;
}

}  // namespace

TEST_CASE("operation window pads the pair on every axis") {
  const auto w = OperationWindow::around({0, 0, 0}, {1000, 0, 0});
  CHECK(w.lo == Vec3{-250, -250, -250});
  CHECK(w.hi == Vec3{1250, 250, 250});
  CHECK(w.leg_length() == 1000.0);
  CHECK(w.contains({500, 0, 0}));
  CHECK_FALSE(w.contains({500, 300, 0}));
  CHECK(w.clamp({2000, -400, 0}) == Vec3{1250, -250, 0});
}

TEST_CASE("spawn_obstacles basics") {
  SUBCASE("empty counts give an empty field") {
    const auto f = field_of({}, 1);
    CHECK(f.obstacles.empty());
    const std::vector<Vec3> pts{{0, 0, 0}, {100, 5, 3}};
    CHECK(collision_violation(pts, f) == 0.0);
  }
  SUBCASE("counts per kind and radius range") {
    const auto f = field_of({2, 3, 1, 4}, 5);
    REQUIRE(f.obstacles.size() == 10);
    int kinds[4] = {};
    for (const auto& o : f.obstacles) {
      ++kinds[static_cast<int>(o.kind)];
      CHECK(o.radius >= 10.0);
      CHECK(o.radius <= 300.0);
      CHECK(o.halo == 0.0);
    }
    CHECK(kinds[0] == 2);
    CHECK(kinds[1] == 3);
    CHECK(kinds[2] == 1);
    CHECK(kinds[3] == 4);
    CHECK(f.current_magnitude >= 0.0);
  }
  SUBCASE("deterministic under seed") {
    CHECK(field_of({1, 1, 1, 1}, 9) == field_of({1, 1, 1, 1}, 9));
    CHECK_FALSE(field_of({1, 1, 1, 1}, 9) == field_of({1, 1, 1, 1}, 10));
  }
  SUBCASE("fixed current magnitude") {
    SpawnConfig cfg;
    cfg.current_magnitude = 0.25;
    CHECK(field_of({0, 0, 0, 1}, 3, cfg).current_magnitude == 0.25);
  }
  SUBCASE("leg too short for the radius") {
    SpawnConfig cfg;
    cfg.radius_min = 200.0;
    cfg.radius_max = 300.0;
    CHECK_THROWS_AS(spawn_obstacles(OperationWindow::around({0, 0, 0}, {300, 0, 0}), {1, 0, 0, 0}, cfg, 1),
                    SpawnFailure);
  }
  SUBCASE("bad arguments") {
    CHECK_THROWS_AS(field_of({-1, 0, 0, 0}, 1), InvalidParameter);
    OperationWindow flat{kFrom, kFrom, kFrom, kFrom};
    CHECK_THROWS_AS(spawn_obstacles(flat, {1, 0, 0, 0}, {}, 1), InvalidParameter);
  }
}

TEST_CASE("truncated placement holds for 10^4 obstacles") {
  const auto w = OperationWindow::around(kFrom, kTo);
  const Vec3 dir = (kTo - kFrom) * (1.0 / w.leg_length());
  int placed = 0;
  for (std::uint64_t s = 0; s < 500; ++s) {
    const auto f = spawn_obstacles(w, {5, 5, 5, 5}, {}, s);
    for (const auto& o : f.obstacles) {
      const double along = (o.center - kFrom).dot(dir);
      CHECK(along > o.radius + o.radius_spread);
      CHECK(along < w.leg_length() - o.radius - o.radius_spread);
      CHECK(w.contains(o.center));
      ++placed;
    }
  }
  CHECK(placed == 10000);
}

TEST_CASE("compose_scenario") {
  Rng rng(4);
  for (int total = 3; total <= 6; ++total) {
    const auto c1 = compose_scenario(1, total, rng);
    CHECK(c1.total() == total);
    CHECK(c1.self_motivated + c1.current_driven == 0);
    const auto c2 = compose_scenario(2, total, rng);
    CHECK(c2.self_motivated == total);
    const auto c3 = compose_scenario(3, total, rng);
    CHECK(c3.current_driven == total);
    const auto c4 = compose_scenario(4, total, rng);
    CHECK(c4.total() == total);
    if (total >= 4) {
      CHECK(c4.static_known >= 1);
      CHECK(c4.static_uncertain >= 1);
      CHECK(c4.self_motivated >= 1);
      CHECK(c4.current_driven >= 1);
    }
  }
  CHECK_THROWS_AS(compose_scenario(5, 3, rng), InvalidParameter);
  CHECK_THROWS_AS(compose_scenario(0, 3, rng), InvalidParameter);
}

TEST_CASE("step_obstacles per kind") {
  SUBCASE("StaticKnown is bit-identical after 100 steps") {
    auto f = field_of({3, 0, 0, 0}, 2);
    const auto before = f.obstacles;
    for (int k = 0; k < 100; ++k) f = step_obstacles(f);
    CHECK(f.obstacles == before);
    CHECK(f.step == 100);
  }
  SUBCASE("StaticUncertain stays in its band and stays put") {
    auto f = field_of({0, 4, 0, 0}, 3);
    const auto before = f.obstacles;
    bool changed = false;
    for (int k = 0; k < 200; ++k) {
      f = step_obstacles(f);
      for (std::size_t i = 0; i < f.obstacles.size(); ++i) {
        const auto& o = f.obstacles[i];
        CHECK(o.center == before[i].center);
        CHECK(o.radius >= o.nominal_radius - o.radius_spread);
        CHECK(o.radius <= o.nominal_radius + o.radius_spread);
        changed |= o.radius != before[i].radius;
      }
    }
    CHECK(changed);
  }
  SUBCASE("CurrentDriven with zero current has no halo growth") {
    SpawnConfig cfg;
    cfg.current_magnitude = 0.0;
    auto f = field_of({0, 0, 0, 3}, 4, cfg);
    for (int k = 0; k < 50; ++k) f = step_obstacles(f);
    for (const auto& o : f.obstacles) CHECK(o.halo == 0.0);
  }
  SUBCASE("CurrentDriven effective radius is non-decreasing") {
    SpawnConfig cfg;
    cfg.current_magnitude = 0.3;
    auto f = field_of({0, 0, 0, 4}, 5, cfg);
    for (int k = 0; k < 100; ++k) {
      const auto next = step_obstacles(f);
      for (std::size_t i = 0; i < f.obstacles.size(); ++i)
        CHECK(next.obstacles[i].effective_radius() >= f.obstacles[i].effective_radius());
      f = next;
    }
    for (const auto& o : f.obstacles) CHECK(o.halo > 0.0);
  }
  SUBCASE("movers stay inside the window") {
    auto f = field_of({0, 0, 4, 4}, 6);
    for (int k = 0; k < 300; ++k) {
      f = step_obstacles(f);
      for (const auto& o : f.obstacles) CHECK(f.window.contains(o.center));
    }
  }
  SUBCASE("same seed and step count give identical fields") {
    auto a = field_of({1, 1, 1, 1}, 8);
    auto b = field_of({1, 1, 1, 1}, 8);
    for (int k = 0; k < 25; ++k) {
      a = step_obstacles(a);
      b = step_obstacles(b);
    }
    CHECK(a == b);
  }
}

TEST_CASE("self-motivated RMS displacement grows like sqrt(k)") {
  // Random-walk oracle: per-axis N(0, s) steps give E|d_k|^2 = 3 k s^2.
  // The window is made large enough that clamping never bites.
  ObstacleField f;
  f.window = OperationWindow{{0, 0, 0}, {1, 0, 0}, {-1e6, -1e6, -1e6}, {1e6, 1e6, 1e6}};
  f.dynamics.motion_sigma = 5.0;
  const int trials = 1000;
  for (int i = 0; i < trials; ++i) {
    Obstacle o = lone(ObstacleKind::SelfMotivated, {0, 0, 0}, 10);
    o.stream = derive_seed(1234, {static_cast<std::uint64_t>(i)});
    f.obstacles.push_back(o);
  }
  const int checkpoints[] = {4, 16, 64};
  int k = 0;
  for (int target : checkpoints) {
    while (k < target) {
      f = step_obstacles(f);
      ++k;
    }
    double sq = 0.0;
    for (const auto& o : f.obstacles) sq += o.center.dot(o.center);
    const double rms = std::sqrt(sq / trials);
    const double expected = 5.0 * std::sqrt(3.0 * k);
    CHECK(rms == doctest::Approx(expected).epsilon(0.06));
  }
}

TEST_CASE("collision_violation") {
  ObstacleField f;
  f.obstacles.push_back(lone(ObstacleKind::StaticKnown, {0, 0, 0}, 10));
  const std::vector<Vec3> at_center{{0, 0, 0}};
  CHECK(collision_violation(at_center, f) >= 1.0);
  const std::vector<Vec3> far{{20, 0, 0}, {0, 11, 0}, {0, 0, -10}};
  CHECK(collision_violation(far, f) == 0.0);
  const std::vector<Vec3> half{{5, 0, 0}};
  CHECK(collision_violation(half, f) == doctest::Approx(0.5));
  f.obstacles[0].halo = 10.0;  // effective radius 20
  CHECK(collision_violation(half, f) == doctest::Approx(0.75));
}

TEST_CASE("collision_violation matches a brute-force oracle on 100 random fields") {
  Rng rng(31);
  for (int t = 0; t < 100; ++t) {
    ObstacleField f;
    const int n = 1 + static_cast<int>(rng.index(6));
    for (int i = 0; i < n; ++i) {
      Obstacle o = lone(ObstacleKind::StaticKnown, {rng.uniform(0, 100), rng.uniform(0, 100), rng.uniform(0, 100)},
                        rng.uniform(5, 40));
      o.halo = rng.uniform(0, 5);
      f.obstacles.push_back(o);
    }
    std::vector<Vec3> pts;
    for (int j = 0; j < 50; ++j) pts.push_back({rng.uniform(0, 100), rng.uniform(0, 100), rng.uniform(0, 100)});
    double oracle = 0.0;
    for (const auto& p : pts)
      for (const auto& o : f.obstacles) {
        const double R = o.radius + o.halo;
        const double d = std::sqrt((p.x - o.center.x) * (p.x - o.center.x) + (p.y - o.center.y) * (p.y - o.center.y) +
                                   (p.z - o.center.z) * (p.z - o.center.z));
        oracle += std::max(0.0, (R - d) / R);
      }
    CHECK(collision_violation(pts, f) == doctest::Approx(oracle).epsilon(1e-12));
  }
}

TEST_CASE("predict_states") {
  SUBCASE("horizon 1 on a static-known field is the field itself") {
    const auto f = field_of({3, 0, 0, 0}, 1);
    const auto p = predict_states(f, 1);
    REQUIRE(p.size() == 2);
    CHECK(p[0].obstacles == f.obstacles);
    CHECK(p[1].obstacles == f.obstacles);
  }
  SUBCASE("StaticUncertain uses the upper radius bound") {
    const auto f = field_of({0, 2, 0, 0}, 2);
    const auto p = predict_states(f, 5);
    for (const auto& step : p)
      for (const auto& o : step.obstacles) CHECK(o.radius == doctest::Approx(o.nominal_radius * 1.2));
  }
  SUBCASE("CurrentDriven mean halo grows linearly at the mean rate") {
    SpawnConfig cfg;
    cfg.current_magnitude = 0.3;
    cfg.dynamics.step_seconds = 4.0;
    const auto f = field_of({0, 0, 0, 2}, 3, cfg);
    const double rate = 0.3 * 4.0 * 1.0 * std::sqrt(2.0 / std::numbers::pi);
    CHECK(f.mean_halo_rate() == doctest::Approx(rate));
    const auto p = predict_states(f, 10);
    for (int k = 0; k <= 10; ++k)
      for (const auto& o : p[static_cast<std::size_t>(k)].obstacles) CHECK(o.halo == doctest::Approx(k * rate));
  }
  SUBCASE("mean rate matches the simulated halo growth") {
    // Monte Carlo: average halo after k stochastic steps vs k * rate.
    SpawnConfig cfg;
    cfg.current_magnitude = 0.3;
    const int k = 20;
    double sum = 0.0;
    int n = 0;
    for (std::uint64_t s = 0; s < 200; ++s) {
      auto f = field_of({0, 0, 0, 5}, s, cfg);
      for (int i = 0; i < k; ++i) f = step_obstacles(f);
      for (const auto& o : f.obstacles) {
        sum += o.halo;
        ++n;
      }
    }
    CHECK(sum / n == doctest::Approx(k * field_of({0, 0, 0, 1}, 0, cfg).mean_halo_rate()).epsilon(0.05));
  }
  CHECK_THROWS_AS(predict_states(field_of({}, 1), 0), InvalidParameter);
}

TEST_CASE("obstacle export") {
  const auto f = field_of({1, 0, 0, 1}, 4);
  std::ostringstream a, b;
  write_obstacles_header(a);
  write_obstacles(a, f, "x");
  write_obstacles_header(b);
  write_obstacles(b, f, "x");
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("label\tkind\tcx\tcy\tcz\tradius\thalo\n", 0) == 0);
  CHECK(a.str().find("static-known") != std::string::npos);
  CHECK(obstacle_kind_from_string("current-driven") == ObstacleKind::CurrentDriven);
  CHECK_THROWS_AS(obstacle_kind_from_string("rock"), ParseError);
}
