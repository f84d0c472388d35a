#pragma once

#include <vector>

#include "lsvc/frame.hpp"

namespace lsvc {

inline constexpr int kSearchRange = 16;

struct MotionVector {
  int dx = 0;
  int dy = 0;

  friend bool operator==(const MotionVector&, const MotionVector&) = default;
};

/// Bidirectional block-matching interpolation of the frame half-way between
/// f1 and f2. For every 16x16 output block the motion mv (full-pel, +-16) is
/// searched bilaterally: f1 sampled at p - mv/2 against f2 at p + mv/2,
/// minimum SAD, ties to the smallest |dx|+|dy| then raster order. The block
/// is the rounded average of the two half-pel bilinear samples. Samples
/// outside the picture replicate the border.
Frame interpolate_frame(const Frame& f1, const Frame& f2, int poc);

/// Motion field chosen by interpolate_frame, one vector per block in raster order.
std::vector<MotionVector> interpolation_motion(const Frame& f1, const Frame& f2);

}  // namespace lsvc
