#include <algorithm>
#include <numeric>
#include <set>

#include "lsvc/error.hpp"
#include "lsvc/machine_task.hpp"

namespace lsvc {
namespace {

double box_iou(double ax, double ay, double aw, double ah, double bx, double by, double bw, double bh) {
  const double ix = std::max(0.0, std::min(ax + aw, bx + bw) - std::max(ax, bx));
  const double iy = std::max(0.0, std::min(ay + ah, by + bh) - std::max(ay, by));
  const double inter = ix * iy;
  const double uni = aw * ah + bw * bh - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

// All-points interpolation: precision envelope integrated over recall steps.
double average_precision(const std::vector<bool>& tp, std::size_t positives) {
  std::vector<double> recall(tp.size());
  std::vector<double> precision(tp.size());
  std::size_t hits = 0;
  for (std::size_t i = 0; i < tp.size(); ++i) {
    hits += tp[i] ? 1 : 0;
    recall[i] = static_cast<double>(hits) / static_cast<double>(positives);
    precision[i] = static_cast<double>(hits) / static_cast<double>(i + 1);
  }
  for (std::size_t i = precision.size(); i-- > 1;) precision[i - 1] = std::max(precision[i - 1], precision[i]);
  double ap = 0.0;
  double prev_recall = 0.0;
  for (std::size_t i = 0; i < tp.size(); ++i) {
    ap += (recall[i] - prev_recall) * precision[i];
    prev_recall = recall[i];
  }
  return ap;
}

}  // namespace

double iou(const Detection& d, const GroundTruthBox& g) { return box_iou(d.x, d.y, d.w, d.h, g.x, g.y, g.w, g.h); }

double iou(const GroundTruthBox& a, const GroundTruthBox& b) { return box_iou(a.x, a.y, a.w, a.h, b.x, b.y, b.w, b.h); }

APResult evaluate_map(const std::vector<Detection>& detections, const std::vector<GroundTruthBox>& ground_truth,
                      double iou_threshold) {
  if (ground_truth.empty()) throw DataError("mAP is undefined without ground truth");
  APResult result;
  result.iou_threshold = iou_threshold;

  std::set<int> classes;
  for (const auto& g : ground_truth) classes.insert(g.class_id);

  for (const int cls : classes) {
    std::vector<std::size_t> gt_idx;
    for (std::size_t i = 0; i < ground_truth.size(); ++i) {
      if (ground_truth[i].class_id == cls) gt_idx.push_back(i);
    }
    std::vector<std::size_t> det_idx;
    for (std::size_t i = 0; i < detections.size(); ++i) {
      if (detections[i].class_id == cls) det_idx.push_back(i);
    }
    std::stable_sort(det_idx.begin(), det_idx.end(),
                     [&](std::size_t a, std::size_t b) { return detections[a].score > detections[b].score; });

    std::vector<bool> matched(ground_truth.size(), false);
    std::vector<bool> tp;
    tp.reserve(det_idx.size());
    for (const auto di : det_idx) {
      const Detection& d = detections[di];
      double best = iou_threshold;
      std::size_t best_gt = ground_truth.size();
      for (const auto gi : gt_idx) {
        if (matched[gi] || ground_truth[gi].poc != d.poc) continue;
        const double v = iou(d, ground_truth[gi]);
        if (v >= best) {
          if (best_gt == ground_truth.size() || v > best) {
            best = v;
            best_gt = gi;
          }
        }
      }
      if (best_gt != ground_truth.size()) matched[best_gt] = true;
      tp.push_back(best_gt != ground_truth.size());
    }
    result.per_class[cls] = tp.empty() ? 0.0 : average_precision(tp, gt_idx.size());
  }

  double sum = 0.0;
  for (const auto& [cls, ap] : result.per_class) sum += ap;
  result.mean_ap = sum / static_cast<double>(result.per_class.size());
  return result;
}

}  // namespace lsvc
