#include "lsvc/intra_codec.hpp"

#include "lsvc/entropy.hpp"
#include "lsvc/error.hpp"
#include "lsvc/machine_task.hpp"
#include "lsvc/metrics.hpp"

namespace lsvc {

IntraEncodeResult encode_intra(const Frame& frame, const StreamHeader& header, int temporal_id_plus1) {
  if (frame.width() != header.width || frame.height() != header.height) {
    throw DataError("frame does not match stream dimensions");
  }
  const Latent latent = analysis(frame, header.channels, header.base_split);
  const QuantizedLatent q = quantize(latent, header.step_table(), header.quality_index);
  LayerSplit parts = split(q);

  IntraEncodeResult r;
  r.base_unit = {NalUnitType::kIntraBase, kBaseLayer, static_cast<std::uint8_t>(temporal_id_plus1),
                 encode_channel_group(parts.base)};
  r.enh_unit = {NalUnitType::kIntraEnhancement, kEnhancementLayer, static_cast<std::uint8_t>(temporal_id_plus1),
                encode_channel_group(parts.enhancement)};
  r.base_bits = 8.0 * static_cast<double>(r.base_unit.payload.size());
  r.enh_bits = 8.0 * static_cast<double>(r.enh_unit.payload.size());
  r.reconstruction = synthesis(q);
  r.reconstruction.set_poc(frame.poc());
  r.base = std::move(parts.base);
  r.enhancement = std::move(parts.enhancement);
  return r;
}

IntraEncodeResult encode_intra(const Frame& frame, const QualityProfile& profile) {
  return encode_intra(frame, StreamHeader::make(frame.width(), frame.height(), 1, 1, profile));
}

ChannelGroup decode_intra_base(const NalUnit& base_unit, const StreamHeader& header) {
  if (base_unit.type != NalUnitType::kIntraBase) throw StreamError("expected an INTRA_BASE unit");
  const auto g = header.geometry();
  return decode_channel_group(base_unit.payload, 0, g.base_split, g.grid_h, g.grid_w);
}

ChannelGroup decode_intra_enhancement(const NalUnit& enh_unit, const StreamHeader& header) {
  if (enh_unit.type != NalUnitType::kIntraEnhancement) throw StreamError("expected an INTRA_ENH unit");
  const auto g = header.geometry();
  return decode_channel_group(enh_unit.payload, g.base_split, g.channels - g.base_split, g.grid_h, g.grid_w);
}

Frame decode_intra_full(const NalUnit& base_unit, const NalUnit& enh_unit, const StreamHeader& header) {
  const ChannelGroup base = decode_intra_base(base_unit, header);
  const ChannelGroup enh = decode_intra_enhancement(enh_unit, header);
  return synthesis(merge(base, enh, header.step_table(), header.quality_index));
}

LossReport evaluate_loss(const Frame& frame, const QualityProfile& profile, double gamma) {
  const StreamHeader header = StreamHeader::make(frame.width(), frame.height(), 1, 1, profile);
  const IntraEncodeResult enc = encode_intra(frame, header);
  const Frame decoded = decode_intra_full(enc.base_unit, enc.enh_unit, header);
  const TaskFeature reference = task_feature_reference(frame);
  const TaskFeature machine = lst(decode_intra_base(enc.base_unit, header), header, frame.poc());

  double feature_err = 0.0;
  for (std::size_t i = 0; i < reference.plane.size(); ++i) {
    const double d = reference.plane[i] - machine.plane[i];
    feature_err += d * d;
  }

  LossReport r;
  r.rate_bits = enc.total_bits();
  r.mse_pixel = mse(frame, decoded);
  r.mse_feature = feature_err / static_cast<double>(reference.plane.size());
  r.lambda = profile.lambda;
  r.gamma = gamma;
  r.total = r.rate_bits + r.lambda * r.mse_pixel + r.lambda * r.gamma * r.mse_feature;
  return r;
}

}  // namespace lsvc
