#pragma once

#include "lsvc/bitstream.hpp"
#include "lsvc/frame.hpp"
#include "lsvc/transform.hpp"

namespace lsvc {

inline constexpr double kFeatureWeight = 0.006;

struct IntraEncodeResult {
  NalUnit base_unit;
  NalUnit enh_unit;
  double base_bits = 0.0;
  double enh_bits = 0.0;
  ChannelGroup base;
  ChannelGroup enhancement;
  Frame reconstruction;

  double total_bits() const { return base_bits + enh_bits; }
};

/// Two-layer intra encode with the geometry and step table of `header`.
IntraEncodeResult encode_intra(const Frame& frame, const StreamHeader& header, int temporal_id_plus1 = 1);
/// Single-picture convenience: builds a one-frame header for `profile`.
IntraEncodeResult encode_intra(const Frame& frame, const QualityProfile& profile);

/// Machine path. Never looks at enhancement data.
ChannelGroup decode_intra_base(const NalUnit& base_unit, const StreamHeader& header);
ChannelGroup decode_intra_enhancement(const NalUnit& enh_unit, const StreamHeader& header);
Frame decode_intra_full(const NalUnit& base_unit, const NalUnit& enh_unit, const StreamHeader& header);

struct LossReport {
  double rate_bits = 0.0;
  double mse_pixel = 0.0;
  double mse_feature = 0.0;
  double lambda = 0.0;
  double gamma = kFeatureWeight;
  double total = 0.0;
};

/// R + lambda * MSE(X, X^) + lambda * gamma * MSE(F, F~), with R the achieved bits.
LossReport evaluate_loss(const Frame& frame, const QualityProfile& profile, double gamma = kFeatureWeight);

}  // namespace lsvc
