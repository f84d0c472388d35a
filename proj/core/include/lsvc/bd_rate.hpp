#pragma once

#include <string>
#include <vector>

namespace lsvc {

enum class MetricKind { kPsnr, kMsSsim, kMap };

std::string to_string(MetricKind kind);
MetricKind metric_kind_from_string(const std::string& name);

struct RDPoint {
  double rate = 0.0;  // bits per pixel
  double quality = 0.0;
};

struct RDCurve {
  MetricKind metric = MetricKind::kPsnr;
  std::vector<RDPoint> points;
};

inline constexpr std::size_t kMinCurvePoints = 4;

struct QualityInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty() const { return !(lo < hi); }
};

struct CurveDiagnosis {
  bool monotonic = false;
  bool concave_in_log_rate = false;
};

struct BDResult {
  double percent = 0.0;
};

/// Points sorted by rate with non-finite qualities dropped. Throws
/// DataError on fewer than four points, non-positive or duplicate rates.
RDCurve normalized(const RDCurve& curve);

CurveDiagnosis validate_curve(const RDCurve& curve);
QualityInterval overlap(const RDCurve& a, const RDCurve& b);

/// Average rate difference of `test` against `anchor` over the common
/// quality range, from monotone cubic fits of log10(rate) over quality.
/// Throws DataError for non-monotonic curves or an empty overlap.
BDResult bd_rate(const RDCurve& anchor, const RDCurve& test);

/// Fritsch-Carlson monotone cubic through (x, y); x strictly increasing.
class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;
  /// Exact integral over [a, b], both inside the knot range.
  double integrate(double a, double b) const;
  const std::vector<double>& slopes() const { return d_; }

 private:
  std::size_t segment(double x) const;
  double segment_integral(std::size_t k, double t0, double t1) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> d_;
};

}  // namespace lsvc
