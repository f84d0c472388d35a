#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "lsvc/bitstream.hpp"
#include "lsvc/dpb.hpp"
#include "lsvc/frame.hpp"
#include "lsvc/inter_codec.hpp"
#include "lsvc/transform.hpp"

namespace lsvc {

struct GopConfig {
  int intra_period = 8;                    // 1 = all-intra
  std::array<int, 4> qp_offsets{0, 1, 2, 3};  // by hierarchy depth
  InterpolationModes modes;                // used only when interpolation is on
  std::size_t dpb_capacity = kDefaultDpbCapacity;

  void validate() const;
  int qp_for_depth(int base_qp, int depth) const;
};

enum class PictureKind { kIntra, kBidirectional, kTail };

/// One picture in coding order.
struct PlanEntry {
  int poc = 0;
  PictureKind kind = PictureKind::kIntra;
  int depth = 0;              // 0 for intra; hierarchy depth otherwise
  int past_anchor = -1;       // B pictures: the anchors; tail: t-1
  int future_anchor = -1;     // B pictures only
  int second_past = -1;       // tail only: t-2 when inside the GoP
  bool stored = true;         // registered in the DPB after decoding
};

/// Coding order for `frame_count` pictures: intra pictures at multiples of
/// the period, each closed GoP interior coded depth-first dyadically
/// (8, 4, 2, 1, 3, 6, 5, 7), and pictures after the last intra picture
/// with no later anchor coded forward in display order.
std::vector<PlanEntry> coding_plan(int frame_count, int intra_period);

struct SequenceStats {
  double total_bits = 0.0;
  double base_bits = 0.0;        // INTRA_BASE payloads plus their NAL overhead
  double enhancement_bits = 0.0;
  double inter_bits = 0.0;       // subset of enhancement_bits
  int intra_pictures = 0;
  int inter_pictures = 0;
  ModeCounts modes;
  std::vector<double> picture_bits;  // display order
};

struct SequenceEncodeResult {
  LayeredBitstream bitstream;
  std::vector<Frame> reconstructions;  // display order
  SequenceStats stats;
};

SequenceEncodeResult encode_sequence(const Sequence& seq, int quality_index, int qp, const GopConfig& cfg = {},
                                     bool use_interp = true);

struct BaseLatentPicture {
  int poc = 0;
  ChannelGroup base;
};

struct SequenceDecodeResult {
  std::vector<Frame> frames;                  // display order; empty for base-only decodes
  std::vector<BaseLatentPicture> base_latents;  // one per intra picture
  ModeCounts modes;
};

/// max_layer 0 decodes the base latents only and ignores every other unit;
/// max_layer >= 1 also reconstructs all pictures.
SequenceDecodeResult decode_sequence(const LayeredBitstream& bs, int max_layer = 1,
                                     std::size_t dpb_capacity = kDefaultDpbCapacity);

}  // namespace lsvc
