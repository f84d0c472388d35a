#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "lsvc/frame.hpp"

namespace lsvc {

inline constexpr int kBlockArea = kBlockSize * kBlockSize;
inline constexpr int kDefaultChannels = 192;
inline constexpr int kDefaultBaseSplit = 128;
inline constexpr int kQualityLevels = 6;
// Step grows by base_step / kStepSlopeDenominator per zigzag index.
inline constexpr int kStepSlopeDenominator = 64;

/// Shape of a latent tensor: `channels` zigzag coefficients per 16x16 block
/// on a grid_h x grid_w block grid, split into base [0, base_split) and
/// enhancement [base_split, channels).
struct LatentGeometry {
  int channels = kDefaultChannels;
  int base_split = kDefaultBaseSplit;
  int grid_h = 0;
  int grid_w = 0;

  std::size_t plane_size() const { return static_cast<std::size_t>(grid_h) * grid_w; }
  std::size_t size() const { return plane_size() * static_cast<std::size_t>(channels); }
  int frame_width() const { return grid_w * kBlockSize; }
  int frame_height() const { return grid_h * kBlockSize; }
  void validate() const;

  static LatentGeometry for_frame(int width, int height, int channels = kDefaultChannels,
                                  int base_split = kDefaultBaseSplit);

  friend bool operator==(const LatentGeometry&, const LatentGeometry&) = default;
};

/// Rate-distortion operating point of the intra codec.
struct QualityProfile {
  int index = 1;
  double lambda = 0.0;
  double base_step = 1.0;
};

/// Profiles 1..6. Throws DataError outside that range.
QualityProfile quality_profile(int index);

/// Per-channel quantizer step sizes.
class QuantizationTable {
 public:
  QuantizationTable() = default;

  /// step_c = base_step * (1 + c / slope_denominator); a zero denominator
  /// gives a uniform table.
  QuantizationTable(double base_step, int slope_denominator, int channels);

  static QuantizationTable for_profile(const QualityProfile& profile, int channels);
  static QuantizationTable uniform(double step, int channels) { return {step, 0, channels}; }

  double step(int channel) const { return steps_[static_cast<std::size_t>(channel)]; }
  std::span<const double> steps() const { return steps_; }
  double base_step() const { return base_step_; }
  int slope_denominator() const { return slope_denominator_; }
  int channels() const { return static_cast<int>(steps_.size()); }

  friend bool operator==(const QuantizationTable&, const QuantizationTable&) = default;

 private:
  double base_step_ = 1.0;
  int slope_denominator_ = 0;
  std::vector<double> steps_;
};

/// Real-valued coefficients, laid out [channel][row][col].
struct Latent {
  LatentGeometry geometry;
  std::vector<double> coeffs;

  double at(int c, int i, int j) const {
    return coeffs[(static_cast<std::size_t>(c) * geometry.grid_h + i) * geometry.grid_w + j];
  }
};

struct QuantizedLatent {
  LatentGeometry geometry;
  QuantizationTable steps;
  int quality_index = 0;
  std::vector<std::int64_t> values;

  std::int64_t at(int c, int i, int j) const {
    return values[(static_cast<std::size_t>(c) * geometry.grid_h + i) * geometry.grid_w + j];
  }

  friend bool operator==(const QuantizedLatent&, const QuantizedLatent&) = default;
};

/// A contiguous run of channels [first_channel, first_channel + channel_count).
struct ChannelGroup {
  int first_channel = 0;
  int channel_count = 0;
  int grid_h = 0;
  int grid_w = 0;
  std::vector<std::int64_t> values;

  std::size_t plane_size() const { return static_cast<std::size_t>(grid_h) * grid_w; }
  std::span<const std::int64_t> plane(int local_channel) const {
    return std::span<const std::int64_t>(values).subspan(static_cast<std::size_t>(local_channel) * plane_size(),
                                                          plane_size());
  }

  friend bool operator==(const ChannelGroup&, const ChannelGroup&) = default;
};

struct LayerSplit {
  ChannelGroup base;
  ChannelGroup enhancement;
};

// --- 16x16 block transform primitives -------------------------------------

using Block = std::array<double, kBlockArea>;

/// Orthonormal 2-D type-II DCT of a row-major 16x16 block.
Block forward_dct(const Block& pixels);
Block inverse_dct(const Block& coeffs);

/// zigzag_order()[k] = row-major position of the k-th zigzag coefficient.
const std::array<int, kBlockArea>& zigzag_order();

double round_half_away(double v);

// --- latent pipeline --------------------------------------------------------

Latent analysis(const Frame& frame, int channels = kDefaultChannels, int base_split = kDefaultBaseSplit);

QuantizedLatent quantize(const Latent& latent, const QualityProfile& profile);
QuantizedLatent quantize(const Latent& latent, const QuantizationTable& steps, int quality_index = 0);

/// Dequantize, zero the truncated zigzag tail, invert per block, round and clamp.
Frame synthesis(const QuantizedLatent& q);

LayerSplit split(const QuantizedLatent& q);
QuantizedLatent merge(const ChannelGroup& base, const ChannelGroup& enhancement, const QuantizationTable& steps,
                      int quality_index = 0);
QuantizedLatent zero_fill_enhancement(const ChannelGroup& base, int channels, const QuantizationTable& steps,
                                      int quality_index = 0);

}  // namespace lsvc
