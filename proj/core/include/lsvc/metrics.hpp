#pragma once

#include <limits>

#include "lsvc/frame.hpp"

namespace lsvc {

inline constexpr double kPsnrInfinite = std::numeric_limits<double>::infinity();

double mse(const Frame& a, const Frame& b);

/// 10 log10(255^2 / MSE); identical frames give kPsnrInfinite.
double psnr(const Frame& reference, const Frame& distorted);

/// Five-scale MS-SSIM with an 11x11 Gaussian window (sigma 1.5). Both
/// dimensions must be at least 176. Negative contrast-structure terms are
/// clamped to zero, so the result lies in [0, 1].
double ms_ssim(const Frame& reference, const Frame& distorted);

inline constexpr int kMsSsimMinDimension = 176;

}  // namespace lsvc
