#pragma once

#include <cstddef>
#include <vector>

namespace trelax {

// Natural cubic spline through strictly increasing knots.  Twice continuously
// differentiable on the knot span; extends linearly (with the end slope)
// outside it, so callers sampling slightly past the table stay finite.
class CubicSpline {
public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<double> y);

  double value(double x) const;
  double deriv(double x) const;
  double deriv2(double x) const;

  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }
  bool empty() const { return x_.empty(); }

private:
  std::size_t segment(double x) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> m2_; // second derivatives at the knots
};

} // namespace trelax
