#pragma once

#include <stdexcept>
#include <string>

namespace trelax {

enum class Bc { periodic, outflow };

std::string to_string(Bc bc);
Bc bc_from_string(const std::string& s);

// Uniform cell-centered grid on [x_left, x_right].
struct Grid {
  int n = 400;
  double x_left = -1.0;
  double x_right = 1.0;
  Bc bc = Bc::periodic;

  double dx() const { return (x_right - x_left) / n; }
  double center(int i) const { return x_left + (i + 0.5) * dx(); }

  void validate() const {
    if (n < 4) throw std::invalid_argument("grid: need at least 4 cells");
    if (!(x_right > x_left)) throw std::invalid_argument("grid: empty domain");
  }
};

} // namespace trelax
