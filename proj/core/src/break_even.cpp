#include "lsvc/break_even.hpp"

#include <cmath>

#include "lsvc/error.hpp"

namespace lsvc {

double break_even(const BreakEvenInput& input) {
  const double g = 1.0 + input.machine_bd;
  const double h = 1.0 + input.human_bd;
  if (!std::isfinite(g) || !std::isfinite(h) || g <= 0.0 || h <= 0.0) {
    throw DataError("break-even rate factors must be positive");
  }
  if (h <= 1.0) return 1.0;
  if (g >= 1.0) return 0.0;
  return (1.0 - g) / (h - g);
}

}  // namespace lsvc
