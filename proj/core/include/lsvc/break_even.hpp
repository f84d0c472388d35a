#pragma once

namespace lsvc {

/// Relative rates against a single-stream anchor, e.g. -0.1345 for a
/// 13.45% saving.
struct BreakEvenInput {
  double machine_bd = 0.0;
  double human_bd = 0.0;
};

/// Largest share of time t_h for which (1 - t_h) g + t_h h <= 1, with
/// g = 1 + machine_bd and h = 1 + human_bd, clipped to [0, 1].
double break_even(const BreakEvenInput& input);

}  // namespace lsvc
