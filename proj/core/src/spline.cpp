#include "trelax/spline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace trelax {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 3 || y_.size() != n)
    throw std::invalid_argument("spline: need at least 3 knots and matching values");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(x_[i] < x_[i + 1]))
      throw std::invalid_argument("spline: knots must be strictly increasing");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(x_[i]) || !std::isfinite(y_[i]))
      throw std::invalid_argument("spline: non-finite knot data");
  }

  // Tridiagonal solve for interior second derivatives, natural ends.
  m2_.assign(n, 0.0);
  std::vector<double> diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
  diag[0] = 1.0;
  diag[n - 1] = 1.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hl = x_[i] - x_[i - 1];
    const double hr = x_[i + 1] - x_[i];
    diag[i] = 2.0 * (hl + hr);
    upper[i] = hr;
    rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / hr - (y_[i] - y_[i - 1]) / hl);
  }
  // forward sweep (lower entry of row i is hl, zero in rows 0 and n-1)
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hl = x_[i] - x_[i - 1];
    const double w = (i == 1) ? 0.0 : hl / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  for (std::size_t k = n - 1; k-- > 1;) {
    m2_[k] = (rhs[k] - upper[k] * m2_[k + 1]) / diag[k];
  }
}

std::size_t CubicSpline::segment(double x) const {
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - x_.begin());
  if (i == 0) return 0;
  if (i >= x_.size()) return x_.size() - 2;
  return i - 1;
}

double CubicSpline::value(double x) const {
  if (x < x_.front()) return y_.front() + deriv(x_.front()) * (x - x_.front());
  if (x > x_.back()) return y_.back() + deriv(x_.back()) * (x - x_.back());
  const std::size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  const double t = x - x_[i];
  const double u = x_[i + 1] - x;
  return (m2_[i] * u * u * u + m2_[i + 1] * t * t * t) / (6.0 * h) +
         (y_[i] / h - m2_[i] * h / 6.0) * u + (y_[i + 1] / h - m2_[i + 1] * h / 6.0) * t;
}

double CubicSpline::deriv(double x) const {
  const double xc = std::clamp(x, x_.front(), x_.back());
  const std::size_t i = segment(xc);
  const double h = x_[i + 1] - x_[i];
  const double t = xc - x_[i];
  const double u = x_[i + 1] - xc;
  return (-m2_[i] * u * u + m2_[i + 1] * t * t) / (2.0 * h) +
         (y_[i + 1] - y_[i]) / h - (m2_[i + 1] - m2_[i]) * h / 6.0;
}

double CubicSpline::deriv2(double x) const {
  if (x < x_.front() || x > x_.back()) return 0.0;
  const std::size_t i = segment(x);
  const double h = x_[i + 1] - x_[i];
  return (m2_[i] * (x_[i + 1] - x) + m2_[i + 1] * (x - x_[i])) / h;
}

} // namespace trelax
