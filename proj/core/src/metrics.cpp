#include "lsvc/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "lsvc/error.hpp"

namespace lsvc {
namespace {

constexpr int kScales = 5;
constexpr std::array<double, kScales> kScaleWeights = {0.0448, 0.2856, 0.3001, 0.2363, 0.1333};
constexpr int kWindow = 11;
constexpr double kWindowSigma = 1.5;
constexpr double kC1 = (0.01 * 255.0) * (0.01 * 255.0);
constexpr double kC2 = (0.03 * 255.0) * (0.03 * 255.0);

struct Plane {
  int width = 0;
  int height = 0;
  std::vector<double> v;

  double at(int x, int y) const { return v[static_cast<std::size_t>(y) * width + x]; }
};

Plane to_plane(const Frame& f) {
  Plane p{f.width(), f.height(), {}};
  p.v.assign(f.samples().begin(), f.samples().end());
  return p;
}

Plane downsample(const Plane& p) {
  Plane out{p.width / 2, p.height / 2, {}};
  out.v.resize(static_cast<std::size_t>(out.width) * out.height);
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      out.v[static_cast<std::size_t>(y) * out.width + x] =
          0.25 * (p.at(2 * x, 2 * y) + p.at(2 * x + 1, 2 * y) + p.at(2 * x, 2 * y + 1) + p.at(2 * x + 1, 2 * y + 1));
    }
  }
  return out;
}

const std::array<double, kWindow>& window_taps() {
  static const std::array<double, kWindow> taps = [] {
    std::array<double, kWindow> t{};
    double sum = 0.0;
    for (int i = 0; i < kWindow; ++i) {
      const double d = i - kWindow / 2;
      t[static_cast<std::size_t>(i)] = std::exp(-d * d / (2.0 * kWindowSigma * kWindowSigma));
      sum += t[static_cast<std::size_t>(i)];
    }
    for (auto& v : t) v /= sum;
    return t;
  }();
  return taps;
}

// Separable Gaussian filter, 'valid' region only.
Plane filter_valid(const Plane& p) {
  const auto& taps = window_taps();
  const int ow = p.width - kWindow + 1;
  const int oh = p.height - kWindow + 1;
  std::vector<double> rows(static_cast<std::size_t>(p.height) * ow);
  for (int y = 0; y < p.height; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int k = 0; k < kWindow; ++k) acc += taps[static_cast<std::size_t>(k)] * p.at(x + k, y);
      rows[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  Plane out{ow, oh, {}};
  out.v.resize(static_cast<std::size_t>(ow) * oh);
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int k = 0; k < kWindow; ++k) acc += taps[static_cast<std::size_t>(k)] * rows[static_cast<std::size_t>(y + k) * ow + x];
      out.v[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  return out;
}

Plane product(const Plane& a, const Plane& b) {
  Plane out{a.width, a.height, std::vector<double>(a.v.size())};
  for (std::size_t i = 0; i < a.v.size(); ++i) out.v[i] = a.v[i] * b.v[i];
  return out;
}

struct ScaleStats {
  double ssim;
  double cs;
};

ScaleStats scale_stats(const Plane& a, const Plane& b) {
  const Plane mu_a = filter_valid(a);
  const Plane mu_b = filter_valid(b);
  const Plane aa = filter_valid(product(a, a));
  const Plane bb = filter_valid(product(b, b));
  const Plane ab = filter_valid(product(a, b));
  double ssim_sum = 0.0;
  double cs_sum = 0.0;
  for (std::size_t i = 0; i < mu_a.v.size(); ++i) {
    const double ma = mu_a.v[i];
    const double mb = mu_b.v[i];
    const double var_a = aa.v[i] - ma * ma;
    const double var_b = bb.v[i] - mb * mb;
    const double cov = ab.v[i] - ma * mb;
    const double cs = (2.0 * cov + kC2) / (var_a + var_b + kC2);
    const double l = (2.0 * ma * mb + kC1) / (ma * ma + mb * mb + kC1);
    cs_sum += cs;
    ssim_sum += l * cs;
  }
  const auto n = static_cast<double>(mu_a.v.size());
  return {ssim_sum / n, cs_sum / n};
}

}  // namespace

double mse(const Frame& a, const Frame& b) {
  if (!a.same_geometry(b)) throw DataError("frames differ in dimensions");
  const auto sa = a.samples();
  const auto sb = b.samples();
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    const int d = int{sa[i]} - int{sb[i]};
    acc += static_cast<std::uint64_t>(d * d);
  }
  return static_cast<double>(acc) / static_cast<double>(sa.size());
}

double psnr(const Frame& reference, const Frame& distorted) {
  const double e = mse(reference, distorted);
  if (e == 0.0) return kPsnrInfinite;
  return 10.0 * std::log10(255.0 * 255.0 / e);
}

double ms_ssim(const Frame& reference, const Frame& distorted) {
  if (!reference.same_geometry(distorted)) throw DataError("frames differ in dimensions");
  if (std::min(reference.width(), reference.height()) < kMsSsimMinDimension) {
    throw DataError("MS-SSIM needs both dimensions >= 176");
  }
  Plane a = to_plane(reference);
  Plane b = to_plane(distorted);
  double result = 1.0;
  for (int s = 0; s < kScales; ++s) {
    const ScaleStats st = scale_stats(a, b);
    const double w = kScaleWeights[static_cast<std::size_t>(s)];
    if (s + 1 < kScales) {
      result *= std::pow(std::max(st.cs, 0.0), w);
      a = downsample(a);
      b = downsample(b);
    } else {
      result *= std::pow(std::max(st.ssim, 0.0), w);
    }
  }
  return result;
}

}  // namespace lsvc
