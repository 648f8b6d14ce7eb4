#include "auvplan/bspline.hpp"

#include <string>

#include "auvplan/errors.hpp"

namespace auvplan {

void BSplineConfig::validate() const {
  if (control_points < 2) throw InvalidParameter("need at least 2 control points");
  if (order < 2) throw InvalidParameter("spline order must be >= 2");
  if (samples < 2 * control_points) throw InvalidParameter("samples must be >= 2 * control points");
}

BSplineBasis::BSplineBasis(int control_points, int order, int samples)
    : n_(control_points), order_(order), samples_(samples) {
  if (order < 2) throw InvalidParameter("spline order must be >= 2");
  if (control_points < order)
    throw InvalidParameter("spline of order " + std::to_string(order) + " needs at least " + std::to_string(order) +
                           " control points, got " + std::to_string(control_points));
  if (samples < 2) throw InvalidParameter("need at least 2 curve samples");

  // Clamped uniform knots: K zeros, n - K interior, K ones.
  const int m = n_ + order_;
  knots_.resize(static_cast<std::size_t>(m));
  const int interior_spans = n_ - order_ + 1;
  for (int j = 0; j < m; ++j) {
    if (j < order_) knots_[static_cast<std::size_t>(j)] = 0.0;
    else if (j >= n_) knots_[static_cast<std::size_t>(j)] = 1.0;
    else knots_[static_cast<std::size_t>(j)] = static_cast<double>(j - order_ + 1) / interior_spans;
  }

  weights_.assign(static_cast<std::size_t>(samples_) * static_cast<std::size_t>(n_), 0.0);
  for (int s = 0; s < samples_; ++s) {
    const double u = static_cast<double>(s) / (samples_ - 1);
    double sum = 0.0;
    for (int i = 0; i < n_; ++i) {
      const double b = blend(i, u);
      weights_[static_cast<std::size_t>(s) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i)] = b;
      sum += b;
    }
    // Partition of unity; renormalize away rounding so collinear inputs stay on the line.
    for (int i = 0; i < n_; ++i)
      weights_[static_cast<std::size_t>(s) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i)] /= sum;
  }
}

double BSplineBasis::blend(int i, double u) const {
  // Cox-de Boor, iterative over the degree. The right end u = 1 belongs to the
  // last non-empty span.
  const auto& t = knots_;
  const int p = order_ - 1;
  std::vector<double> N(static_cast<std::size_t>(order_), 0.0);
  for (int j = 0; j <= p; ++j) {
    const double a = t[static_cast<std::size_t>(i + j)];
    const double b = t[static_cast<std::size_t>(i + j + 1)];
    const bool last_span = (u == 1.0) && b == 1.0 && a < 1.0;
    N[static_cast<std::size_t>(j)] = ((u >= a && u < b) || last_span) ? 1.0 : 0.0;
  }
  for (int k = 1; k <= p; ++k) {
    for (int j = 0; j + k <= p; ++j) {
      double v = 0.0;
      const double l0 = t[static_cast<std::size_t>(i + j)];
      const double l1 = t[static_cast<std::size_t>(i + j + k)];
      if (l1 > l0) v += (u - l0) / (l1 - l0) * N[static_cast<std::size_t>(j)];
      const double r0 = t[static_cast<std::size_t>(i + j + 1)];
      const double r1 = t[static_cast<std::size_t>(i + j + k + 1)];
      if (r1 > r0) v += (r1 - u) / (r1 - r0) * N[static_cast<std::size_t>(j + 1)];
      N[static_cast<std::size_t>(j)] = v;
    }
  }
  return N[0];
}

void BSplineBasis::evaluate(std::span<const Vec3> control, std::vector<Vec3>& out) const {
  if (static_cast<int>(control.size()) != n_) throw InvalidParameter("control point count does not match basis");
  out.assign(static_cast<std::size_t>(samples_), Vec3{});
  for (int s = 0; s < samples_; ++s) {
    const double* w = &weights_[static_cast<std::size_t>(s) * static_cast<std::size_t>(n_)];
    Vec3 p;
    for (int i = 0; i < n_; ++i) p += control[static_cast<std::size_t>(i)] * w[i];
    out[static_cast<std::size_t>(s)] = p;
  }
  // Clamped ends interpolate exactly.
  out.front() = control.front();
  out.back() = control.back();
}

std::vector<Vec3> BSplineBasis::evaluate(std::span<const Vec3> control) const {
  std::vector<Vec3> out;
  evaluate(control, out);
  return out;
}

std::vector<Vec3> bspline_curve(std::span<const Vec3> control, int order, int samples) {
  return BSplineBasis(static_cast<int>(control.size()), order, samples).evaluate(control);
}

double path_length(std::span<const Vec3> samples) {
  double len = 0.0;
  for (std::size_t i = 1; i < samples.size(); ++i) len += distance(samples[i - 1], samples[i]);
  return len;
}

double path_flight_time(std::span<const Vec3> samples, double vehicle_speed) {
  if (!(vehicle_speed > 0.0)) throw InvalidParameter("vehicle speed must be > 0");
  return path_length(samples) / vehicle_speed;
}

}  // namespace auvplan
