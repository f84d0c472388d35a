#include "lsvc/machine_task.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "lsvc/error.hpp"

namespace lsvc {
namespace {

constexpr int kRadius = 2;

const std::array<double, 2 * kRadius + 1>& gaussian_taps() {
  static const std::array<double, 2 * kRadius + 1> taps = [] {
    std::array<double, 2 * kRadius + 1> t{};
    double sum = 0.0;
    for (int d = -kRadius; d <= kRadius; ++d) {
      t[static_cast<std::size_t>(d + kRadius)] = std::exp(-0.5 * d * d);
      sum += t[static_cast<std::size_t>(d + kRadius)];
    }
    for (auto& v : t) v /= sum;
    return t;
  }();
  return taps;
}

// Mirror without repeating the edge sample: -1 -> 1, n -> n-2.
int reflect(int i, int n) {
  if (i < 0) return -i;
  if (i >= n) return 2 * (n - 1) - i;
  return i;
}

}  // namespace

TaskFeature feature_from_frame(const Frame& frame, FeatureSource source) {
  const int w = frame.width();
  const int h = frame.height();
  const auto& taps = gaussian_taps();

  // Only rows/columns that survive decimation are filtered.
  TaskFeature f;
  f.width = w / kFeatureDecimation;
  f.height = h / kFeatureDecimation;
  f.poc = frame.poc();
  f.source = source;
  f.plane.assign(static_cast<std::size_t>(f.width) * f.height, 0.0);

  constexpr int kPhase = kFeatureDecimation / 2;
  std::vector<double> rows(static_cast<std::size_t>(h) * f.width);
  for (int y = 0; y < h; ++y) {
    const std::uint8_t* src = frame.row(y);
    for (int j = 0; j < f.width; ++j) {
      const int x = j * kFeatureDecimation + kPhase;
      double acc = 0.0;
      for (int d = -kRadius; d <= kRadius; ++d) acc += taps[static_cast<std::size_t>(d + kRadius)] * src[reflect(x + d, w)];
      rows[static_cast<std::size_t>(y) * f.width + j] = acc;
    }
  }
  for (int i = 0; i < f.height; ++i) {
    const int y = i * kFeatureDecimation + kPhase;
    for (int j = 0; j < f.width; ++j) {
      double acc = 0.0;
      for (int d = -kRadius; d <= kRadius; ++d) {
        acc += taps[static_cast<std::size_t>(d + kRadius)] * rows[static_cast<std::size_t>(reflect(y + d, h)) * f.width + j];
      }
      f.plane[static_cast<std::size_t>(i) * f.width + j] = acc;
    }
  }
  return f;
}

TaskFeature lst(const ChannelGroup& base, int channels, const QuantizationTable& steps, int poc) {
  const Frame picture = synthesis(zero_fill_enhancement(base, channels, steps));
  TaskFeature f = feature_from_frame(picture, FeatureSource::kBaseLatent);
  f.poc = poc;
  return f;
}

TaskFeature lst(const ChannelGroup& base, const StreamHeader& header, int poc) {
  if (base.channel_count != header.base_split || base.grid_w * kBlockSize != header.width ||
      base.grid_h * kBlockSize != header.height) {
    throw DataError("base latent does not match the stream geometry");
  }
  return lst(base, header.channels, header.step_table(), poc);
}

TaskFeature task_feature_reference(const Frame& frame) { return feature_from_frame(frame, FeatureSource::kInput); }

std::vector<Detection> detect(const TaskFeature& feature, const DetectParams& params) {
  std::vector<Detection> out;
  if (feature.plane.empty()) return out;

  std::vector<double> sorted = feature.plane;
  const std::size_t mid = sorted.size() / 2;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid), sorted.end());
  double median = sorted[mid];
  if (sorted.size() % 2 == 0) {
    const double lower = *std::max_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid));
    median = 0.5 * (median + lower);
  }

  const int w = feature.width;
  const int h = feature.height;
  std::vector<std::uint8_t> fg(feature.plane.size(), 0);
  for (std::size_t i = 0; i < fg.size(); ++i) fg[i] = std::abs(feature.plane[i] - median) > params.threshold;

  std::vector<std::uint8_t> seen(fg.size(), 0);
  std::vector<int> stack;
  for (int y0 = 0; y0 < h; ++y0) {
    for (int x0 = 0; x0 < w; ++x0) {
      const auto start = static_cast<std::size_t>(y0) * w + x0;
      if (!fg[start] || seen[start]) continue;
      int min_x = x0, max_x = x0, min_y = y0, max_y = y0, area = 0;
      double contrast = 0.0;
      seen[start] = 1;
      stack.assign(1, static_cast<int>(start));
      while (!stack.empty()) {
        const int idx = stack.back();
        stack.pop_back();
        const int x = idx % w;
        const int y = idx / w;
        ++area;
        contrast += std::abs(feature.plane[static_cast<std::size_t>(idx)] - median);
        min_x = std::min(min_x, x);
        max_x = std::max(max_x, x);
        min_y = std::min(min_y, y);
        max_y = std::max(max_y, y);
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = x + dx;
            const int ny = y + dy;
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            const auto n = static_cast<std::size_t>(ny) * w + nx;
            if (fg[n] && !seen[n]) {
              seen[n] = 1;
              stack.push_back(static_cast<int>(n));
            }
          }
        }
      }
      if (area < params.min_area) continue;
      Detection d;
      d.poc = feature.poc;
      d.class_id = 0;
      d.x = min_x * kFeatureDecimation;
      d.y = min_y * kFeatureDecimation;
      d.w = (max_x - min_x + 1) * kFeatureDecimation;
      d.h = (max_y - min_y + 1) * kFeatureDecimation;
      d.score = std::min(1.0, contrast / area / (2.0 * params.threshold));
      out.push_back(d);
    }
  }
  return out;
}

}  // namespace lsvc
