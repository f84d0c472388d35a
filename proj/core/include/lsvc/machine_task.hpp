#pragma once

#include <map>
#include <vector>

#include "lsvc/bitstream.hpp"
#include "lsvc/frame.hpp"
#include "lsvc/transform.hpp"

namespace lsvc {

inline constexpr int kFeatureDecimation = 4;

enum class FeatureSource { kInput, kBaseLatent };

/// Smoothed, 4x decimated luma plane on which the proxy detector runs.
struct TaskFeature {
  int width = 0;   // frame width / 4
  int height = 0;  // frame height / 4
  int poc = 0;
  FeatureSource source = FeatureSource::kInput;
  std::vector<double> plane;

  double at(int x, int y) const { return plane[static_cast<std::size_t>(y) * width + x]; }
};

struct Detection {
  int poc = 0;
  int class_id = 0;
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;
  double score = 0.0;
};

struct DetectParams {
  // Contrast threshold against the plane median, in luma units.
  double threshold = 12.0;
  // Minimum component area in feature samples.
  int min_area = 2;
};

struct APResult {
  std::map<int, double> per_class;
  double mean_ap = 0.0;
  double iou_threshold = 0.5;
};

/// Gaussian (5x5, sigma 1, mirrored borders) followed by 4x decimation.
TaskFeature feature_from_frame(const Frame& frame, FeatureSource source);

/// Machine path: base channels only, enhancement zero-filled.
TaskFeature lst(const ChannelGroup& base, int channels, const QuantizationTable& steps, int poc = 0);
TaskFeature lst(const ChannelGroup& base, const StreamHeader& header, int poc = 0);

/// The same operator applied to the uncompressed frame.
TaskFeature task_feature_reference(const Frame& frame);

std::vector<Detection> detect(const TaskFeature& feature, const DetectParams& params = {});

double iou(const Detection& det, const GroundTruthBox& gt);
double iou(const GroundTruthBox& a, const GroundTruthBox& b);

/// All-points interpolated AP per class at a single IoU threshold; mAP is
/// the mean over classes that have ground truth. Throws DataError when the
/// ground truth is empty.
APResult evaluate_map(const std::vector<Detection>& detections, const std::vector<GroundTruthBox>& ground_truth,
                      double iou_threshold = 0.5);

}  // namespace lsvc
