#include "lsvc/bd_rate.hpp"

#include <algorithm>
#include <cmath>

#include "lsvc/error.hpp"

namespace lsvc {
namespace {

constexpr double kConcavityTolerance = 1e-9;

double sign(double v) { return (v > 0) - (v < 0); }

}  // namespace

std::string to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::kPsnr:
      return "psnr";
    case MetricKind::kMsSsim:
      return "ms_ssim";
    case MetricKind::kMap:
      return "map";
  }
  return "?";
}

MetricKind metric_kind_from_string(const std::string& name) {
  if (name == "psnr") return MetricKind::kPsnr;
  if (name == "ms_ssim") return MetricKind::kMsSsim;
  if (name == "map") return MetricKind::kMap;
  throw DataError("unknown metric: " + name);
}

RDCurve normalized(const RDCurve& curve) {
  RDCurve out{curve.metric, {}};
  for (const auto& p : curve.points) {
    if (std::isfinite(p.quality)) out.points.push_back(p);
  }
  std::sort(out.points.begin(), out.points.end(), [](const RDPoint& a, const RDPoint& b) { return a.rate < b.rate; });
  if (out.points.size() < kMinCurvePoints) throw DataError("RD curve needs at least 4 finite points");
  for (std::size_t i = 0; i < out.points.size(); ++i) {
    if (!(out.points[i].rate > 0.0) || !std::isfinite(out.points[i].rate)) throw DataError("RD rates must be positive");
    if (i > 0 && out.points[i].rate == out.points[i - 1].rate) throw DataError("duplicate rate in RD curve");
  }
  return out;
}

CurveDiagnosis validate_curve(const RDCurve& curve) {
  const RDCurve c = normalized(curve);
  CurveDiagnosis d;
  d.monotonic = true;
  for (std::size_t i = 1; i < c.points.size(); ++i) {
    if (!(c.points[i].quality > c.points[i - 1].quality)) d.monotonic = false;
  }
  d.concave_in_log_rate = true;
  for (std::size_t i = 2; i < c.points.size(); ++i) {
    const auto& a = c.points[i - 2];
    const auto& b = c.points[i - 1];
    const auto& e = c.points[i];
    const double s1 = (b.quality - a.quality) / (std::log10(b.rate) - std::log10(a.rate));
    const double s2 = (e.quality - b.quality) / (std::log10(e.rate) - std::log10(b.rate));
    if (s2 - s1 > kConcavityTolerance) d.concave_in_log_rate = false;
  }
  return d;
}

QualityInterval overlap(const RDCurve& a, const RDCurve& b) {
  auto range = [](const RDCurve& c) {
    auto [lo, hi] = std::minmax_element(c.points.begin(), c.points.end(),
                                        [](const RDPoint& p, const RDPoint& q) { return p.quality < q.quality; });
    return std::pair{lo->quality, hi->quality};
  };
  const RDCurve na = normalized(a);
  const RDCurve nb = normalized(b);
  const auto [alo, ahi] = range(na);
  const auto [blo, bhi] = range(nb);
  return {std::max(alo, blo), std::min(ahi, bhi)};
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw DataError("monotone cubic needs matching knots");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(x_[i] > x_[i - 1])) throw DataError("monotone cubic knots must increase");
  }
  std::vector<double> h(n - 1);
  std::vector<double> delta(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = x_[k + 1] - x_[k];
    delta[k] = (y_[k + 1] - y_[k]) / h[k];
  }
  d_.assign(n, 0.0);
  if (n == 2) {
    d_[0] = d_[1] = delta[0];
    return;
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (delta[k - 1] * delta[k] > 0.0) {
      const double w1 = 2 * h[k] + h[k - 1];
      const double w2 = h[k] + 2 * h[k - 1];
      d_[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
    }
  }
  // Three-point end slopes, limited to keep the fit shape-preserving.
  auto edge = [](double h0, double h1, double m0, double m1) {
    double d = ((2 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
    if (sign(d) != sign(m0)) {
      d = 0.0;
    } else if (sign(m0) != sign(m1) && std::abs(d) > 3 * std::abs(m0)) {
      d = 3 * m0;
    }
    return d;
  };
  d_[0] = edge(h[0], h[1], delta[0], delta[1]);
  d_[n - 1] = edge(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
}

std::size_t MonotoneCubic::segment(double x) const {
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  const auto idx = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - x_.begin() - 1, 0));
  return std::min(idx, x_.size() - 2);
}

double MonotoneCubic::operator()(double x) const {
  const std::size_t k = segment(x);
  const double h = x_[k + 1] - x_[k];
  const double t = (x - x_[k]) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y_[k] + (t3 - 2 * t2 + t) * h * d_[k] + (-2 * t3 + 3 * t2) * y_[k + 1] +
         (t3 - t2) * h * d_[k + 1];
}

double MonotoneCubic::segment_integral(std::size_t k, double t0, double t1) const {
  const double h = x_[k + 1] - x_[k];
  auto anti = [&](double t) {
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double t4 = t3 * t;
    return (t4 / 2 - t3 + t) * y_[k] + (t4 / 4 - 2 * t3 / 3 + t2 / 2) * h * d_[k] + (-t4 / 2 + t3) * y_[k + 1] +
           (t4 / 4 - t3 / 3) * h * d_[k + 1];
  };
  return h * (anti(t1) - anti(t0));
}

double MonotoneCubic::integrate(double a, double b) const {
  if (a > b) return -integrate(b, a);
  if (a < x_.front() - 1e-12 || b > x_.back() + 1e-12) throw DataError("integration bounds outside the fit");
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < x_.size(); ++k) {
    const double lo = std::max(a, x_[k]);
    const double hi = std::min(b, x_[k + 1]);
    if (hi <= lo) continue;
    const double h = x_[k + 1] - x_[k];
    total += segment_integral(k, (lo - x_[k]) / h, (hi - x_[k]) / h);
  }
  return total;
}

BDResult bd_rate(const RDCurve& anchor, const RDCurve& test) {
  if (anchor.metric != test.metric) throw DataError("BD-rate needs curves of the same metric");
  const RDCurve a = normalized(anchor);
  const RDCurve t = normalized(test);
  if (!validate_curve(a).monotonic || !validate_curve(t).monotonic) {
    throw DataError("BD-rate is undefined for non-monotonic curves");
  }
  const QualityInterval range = overlap(a, t);
  if (range.empty()) throw DataError("RD curves do not overlap in quality");

  auto fit = [](const RDCurve& c) {
    std::vector<double> q;
    std::vector<double> lr;
    for (const auto& p : c.points) {
      q.push_back(p.quality);
      lr.push_back(std::log10(p.rate));
    }
    return MonotoneCubic(std::move(q), std::move(lr));
  };
  const MonotoneCubic fa = fit(a);
  const MonotoneCubic ft = fit(t);
  const double mean_diff = (ft.integrate(range.lo, range.hi) - fa.integrate(range.lo, range.hi)) / (range.hi - range.lo);
  return {(std::pow(10.0, mean_diff) - 1.0) * 100.0};
}

}  // namespace lsvc
