#pragma once

#include <span>
#include <vector>

#include "auvplan/vec3.hpp"

namespace auvplan {

struct BSplineConfig {
  int control_points = 8;
  int order = 4;  // K; degree K-1
  int samples = 64;

  void validate() const;
  bool operator==(const BSplineConfig&) const = default;
};

// Clamped uniform B-spline of the given order. Samples are uniform in the
// curve parameter; the first and last samples coincide with the first and
// last control points.
class BSplineBasis {
 public:
  // Throws InvalidParameter when control_points < order or samples < 2.
  BSplineBasis(int control_points, int order, int samples);

  int control_points() const { return n_; }
  int order() const { return order_; }
  int samples() const { return samples_; }

  std::vector<Vec3> evaluate(std::span<const Vec3> control) const;
  void evaluate(std::span<const Vec3> control, std::vector<Vec3>& out) const;

  // Blending function B_{i,K}(u) on the clamped uniform knot vector.
  double blend(int i, double u) const;

 private:
  int n_;
  int order_;
  int samples_;
  std::vector<double> knots_;
  std::vector<double> weights_;  // samples x n, row-major
};

std::vector<Vec3> bspline_curve(std::span<const Vec3> control, int order, int samples);

double path_length(std::span<const Vec3> samples);
// Throws InvalidParameter for speed <= 0.
double path_flight_time(std::span<const Vec3> samples, double vehicle_speed);

}  // namespace auvplan
