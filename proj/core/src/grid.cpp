#include "trelax/grid.hpp"

namespace trelax {

std::string to_string(Bc bc) {
  return bc == Bc::periodic ? "periodic" : "outflow";
}

Bc bc_from_string(const std::string& s) {
  if (s == "periodic") return Bc::periodic;
  if (s == "outflow") return Bc::outflow;
  throw std::invalid_argument("unknown boundary condition '" + s + "'");
}

} // namespace trelax
