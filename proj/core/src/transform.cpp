#include "lsvc/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "lsvc/error.hpp"

namespace lsvc {
namespace {

constexpr std::array<double, kQualityLevels> kLambdas = {0.0018, 0.0035, 0.0067, 0.013, 0.025, 0.0483};
// Uniform-quantizer balance: D ~ step^2 and dD/dR ~ lambda give step ~ 1/sqrt(lambda).
constexpr double kStepScale = 1.5;

using BasisMatrix = std::array<double, kBlockArea>;

// basis[k * 16 + n] = c_k * cos(pi * (2n + 1) * k / 32)
const BasisMatrix& dct_basis() {
  static const BasisMatrix basis = [] {
    BasisMatrix m{};
    for (int k = 0; k < kBlockSize; ++k) {
      const double scale = k == 0 ? std::sqrt(1.0 / kBlockSize) : std::sqrt(2.0 / kBlockSize);
      for (int n = 0; n < kBlockSize; ++n) {
        m[static_cast<std::size_t>(k * kBlockSize + n)] =
            scale * std::cos(std::numbers::pi * (2.0 * n + 1.0) * k / (2.0 * kBlockSize));
      }
    }
    return m;
  }();
  return basis;
}

}  // namespace

void LatentGeometry::validate() const {
  if (channels <= 0 || channels > kBlockArea) {
    throw DataError("latent channel count must be in 1.." + std::to_string(kBlockArea));
  }
  if (base_split <= 0 || base_split >= channels) {
    throw DataError("base split must satisfy 0 < split < channels");
  }
  if (grid_h <= 0 || grid_w <= 0) throw DataError("latent grid must be non-empty");
}

LatentGeometry LatentGeometry::for_frame(int width, int height, int channels, int base_split) {
  require_block_aligned(width, height);
  LatentGeometry g{channels, base_split, height / kBlockSize, width / kBlockSize};
  g.validate();
  return g;
}

QualityProfile quality_profile(int index) {
  if (index < 1 || index > kQualityLevels) {
    throw DataError("quality index must be in 1..6, got " + std::to_string(index));
  }
  const auto i = static_cast<std::size_t>(index - 1);
  return {index, kLambdas[i], kStepScale / std::sqrt(kLambdas[i])};
}

QuantizationTable::QuantizationTable(double base_step, int slope_denominator, int channels)
    : base_step_(base_step), slope_denominator_(slope_denominator) {
  if (!(base_step > 0.0) || !std::isfinite(base_step)) throw DataError("quantizer step must be positive");
  if (slope_denominator < 0) throw DataError("step slope denominator must be non-negative");
  if (channels <= 0 || channels > kBlockArea) throw DataError("bad channel count for step table");
  steps_.resize(static_cast<std::size_t>(channels));
  for (int c = 0; c < channels; ++c) {
    const double ramp = slope_denominator == 0 ? 1.0 : 1.0 + static_cast<double>(c) / slope_denominator;
    steps_[static_cast<std::size_t>(c)] = base_step * ramp;
  }
}

QuantizationTable QuantizationTable::for_profile(const QualityProfile& profile, int channels) {
  return {profile.base_step, kStepSlopeDenominator, channels};
}

Block forward_dct(const Block& pixels) {
  const auto& m = dct_basis();
  Block tmp{};
  // rows: tmp[y][k] = sum_x pixels[y][x] * m[k][x]
  for (int y = 0; y < kBlockSize; ++y) {
    for (int k = 0; k < kBlockSize; ++k) {
      double acc = 0.0;
      for (int x = 0; x < kBlockSize; ++x) acc += pixels[y * kBlockSize + x] * m[k * kBlockSize + x];
      tmp[y * kBlockSize + k] = acc;
    }
  }
  Block out{};
  for (int u = 0; u < kBlockSize; ++u) {
    for (int k = 0; k < kBlockSize; ++k) {
      double acc = 0.0;
      for (int y = 0; y < kBlockSize; ++y) acc += m[u * kBlockSize + y] * tmp[y * kBlockSize + k];
      out[u * kBlockSize + k] = acc;
    }
  }
  return out;
}

Block inverse_dct(const Block& coeffs) {
  const auto& m = dct_basis();
  Block tmp{};
  // columns: tmp[y][k] = sum_u m[u][y] * coeffs[u][k]
  for (int y = 0; y < kBlockSize; ++y) {
    for (int k = 0; k < kBlockSize; ++k) {
      double acc = 0.0;
      for (int u = 0; u < kBlockSize; ++u) acc += m[u * kBlockSize + y] * coeffs[u * kBlockSize + k];
      tmp[y * kBlockSize + k] = acc;
    }
  }
  Block out{};
  for (int y = 0; y < kBlockSize; ++y) {
    for (int x = 0; x < kBlockSize; ++x) {
      double acc = 0.0;
      for (int k = 0; k < kBlockSize; ++k) acc += tmp[y * kBlockSize + k] * m[k * kBlockSize + x];
      out[y * kBlockSize + x] = acc;
    }
  }
  return out;
}

const std::array<int, kBlockArea>& zigzag_order() {
  static const std::array<int, kBlockArea> order = [] {
    std::array<int, kBlockArea> z{};
    int k = 0;
    for (int s = 0; s < 2 * kBlockSize - 1; ++s) {
      const int lo = std::max(0, s - (kBlockSize - 1));
      const int hi = std::min(s, kBlockSize - 1);
      if (s % 2 == 0) {
        for (int row = hi; row >= lo; --row) z[static_cast<std::size_t>(k++)] = row * kBlockSize + (s - row);
      } else {
        for (int row = lo; row <= hi; ++row) z[static_cast<std::size_t>(k++)] = row * kBlockSize + (s - row);
      }
    }
    return z;
  }();
  return order;
}

double round_half_away(double v) { return std::round(v); }

Latent analysis(const Frame& frame, int channels, int base_split) {
  Latent lat;
  lat.geometry = LatentGeometry::for_frame(frame.width(), frame.height(), channels, base_split);
  const auto& g = lat.geometry;
  lat.coeffs.assign(g.size(), 0.0);
  const auto& zz = zigzag_order();
  const std::size_t plane = g.plane_size();

  Block block{};
  for (int i = 0; i < g.grid_h; ++i) {
    for (int j = 0; j < g.grid_w; ++j) {
      for (int y = 0; y < kBlockSize; ++y) {
        const std::uint8_t* src = frame.row(i * kBlockSize + y) + j * kBlockSize;
        for (int x = 0; x < kBlockSize; ++x) block[y * kBlockSize + x] = src[x];
      }
      const Block coeffs = forward_dct(block);
      const std::size_t cell = static_cast<std::size_t>(i) * g.grid_w + j;
      for (int k = 0; k < g.channels; ++k) {
        lat.coeffs[static_cast<std::size_t>(k) * plane + cell] = coeffs[static_cast<std::size_t>(zz[k])];
      }
    }
  }
  return lat;
}

QuantizedLatent quantize(const Latent& latent, const QualityProfile& profile) {
  return quantize(latent, QuantizationTable::for_profile(profile, latent.geometry.channels), profile.index);
}

QuantizedLatent quantize(const Latent& latent, const QuantizationTable& steps, int quality_index) {
  latent.geometry.validate();
  if (steps.channels() != latent.geometry.channels) throw DataError("step table does not match channel count");
  QuantizedLatent q;
  q.geometry = latent.geometry;
  q.steps = steps;
  q.quality_index = quality_index;
  q.values.resize(latent.coeffs.size());
  const std::size_t plane = latent.geometry.plane_size();
  for (int c = 0; c < latent.geometry.channels; ++c) {
    const double step = steps.step(c);
    for (std::size_t p = 0; p < plane; ++p) {
      const std::size_t idx = static_cast<std::size_t>(c) * plane + p;
      q.values[idx] = static_cast<std::int64_t>(round_half_away(latent.coeffs[idx] / step));
    }
  }
  return q;
}

Frame synthesis(const QuantizedLatent& q) {
  const auto& g = q.geometry;
  g.validate();
  if (q.values.size() != g.size()) throw DataError("quantized latent size does not match its geometry");
  if (q.steps.channels() != g.channels) throw DataError("step table does not match channel count");

  Frame frame(g.frame_width(), g.frame_height());
  const auto& zz = zigzag_order();
  const std::size_t plane = g.plane_size();
  for (int i = 0; i < g.grid_h; ++i) {
    for (int j = 0; j < g.grid_w; ++j) {
      Block coeffs{};
      const std::size_t cell = static_cast<std::size_t>(i) * g.grid_w + j;
      for (int k = 0; k < g.channels; ++k) {
        coeffs[static_cast<std::size_t>(zz[k])] =
            static_cast<double>(q.values[static_cast<std::size_t>(k) * plane + cell]) * q.steps.step(k);
      }
      const Block pixels = inverse_dct(coeffs);
      for (int y = 0; y < kBlockSize; ++y) {
        for (int x = 0; x < kBlockSize; ++x) {
          const double v = std::clamp(round_half_away(pixels[y * kBlockSize + x]), 0.0, 255.0);
          frame.at(j * kBlockSize + x, i * kBlockSize + y) = static_cast<std::uint8_t>(v);
        }
      }
    }
  }
  return frame;
}

LayerSplit split(const QuantizedLatent& q) {
  const auto& g = q.geometry;
  g.validate();
  if (q.values.size() != g.size()) throw DataError("quantized latent size does not match its geometry");
  const auto cut = q.values.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(g.base_split) * g.plane_size());
  LayerSplit out;
  out.base = {0, g.base_split, g.grid_h, g.grid_w, std::vector<std::int64_t>(q.values.begin(), cut)};
  out.enhancement = {g.base_split, g.channels - g.base_split, g.grid_h, g.grid_w,
                     std::vector<std::int64_t>(cut, q.values.end())};
  return out;
}

QuantizedLatent merge(const ChannelGroup& base, const ChannelGroup& enhancement, const QuantizationTable& steps,
                      int quality_index) {
  if (base.first_channel != 0) throw DataError("base group must start at channel 0");
  if (enhancement.first_channel != base.channel_count) throw DataError("enhancement group does not follow base split");
  if (base.grid_h != enhancement.grid_h || base.grid_w != enhancement.grid_w) {
    throw DataError("base and enhancement grids differ");
  }
  if (base.values.size() != base.plane_size() * static_cast<std::size_t>(base.channel_count) ||
      enhancement.values.size() != enhancement.plane_size() * static_cast<std::size_t>(enhancement.channel_count)) {
    throw DataError("channel group size does not match its geometry");
  }
  QuantizedLatent q;
  q.geometry = {base.channel_count + enhancement.channel_count, base.channel_count, base.grid_h, base.grid_w};
  q.geometry.validate();
  if (steps.channels() != q.geometry.channels) throw DataError("step table does not match channel count");
  q.steps = steps;
  q.quality_index = quality_index;
  q.values.reserve(q.geometry.size());
  q.values.insert(q.values.end(), base.values.begin(), base.values.end());
  q.values.insert(q.values.end(), enhancement.values.begin(), enhancement.values.end());
  return q;
}

QuantizedLatent zero_fill_enhancement(const ChannelGroup& base, int channels, const QuantizationTable& steps,
                                      int quality_index) {
  ChannelGroup enh{base.channel_count, channels - base.channel_count, base.grid_h, base.grid_w, {}};
  if (enh.channel_count <= 0) throw DataError("zero fill needs at least one enhancement channel");
  enh.values.assign(enh.plane_size() * static_cast<std::size_t>(enh.channel_count), 0);
  return merge(base, enh, steps, quality_index);
}

}  // namespace lsvc
