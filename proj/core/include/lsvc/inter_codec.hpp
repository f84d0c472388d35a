#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "lsvc/bitstream.hpp"
#include "lsvc/dpb.hpp"
#include "lsvc/frame.hpp"
#include "lsvc/interpolation.hpp"

namespace lsvc {

enum class BlockModeKind : std::uint8_t { kSkip = 0, kInter = 1, kDirectInterp = 2, kIntraDc = 3 };

inline constexpr int kBlockModeKinds = 4;

struct BlockMode {
  BlockModeKind kind = BlockModeKind::kSkip;
  int ref_index = 0;
  MotionVector mv;
  bool coded_residual = false;

  friend bool operator==(const BlockMode&, const BlockMode&) = default;
};

/// Which of the two ways of using the interpolated picture are enabled.
struct InterpolationModes {
  bool direct = true;             // DIRECT_INTERP block mode
  bool replace_reference = true;  // interpolated picture replaces a list entry

  bool any() const { return direct || replace_reference; }
};

/// Syntax elements spent on one block, in coded bins/symbols.
struct BlockSyntaxTrace {
  BlockModeKind kind = BlockModeKind::kSkip;
  int mode_bins = 0;
  int ref_bins = 0;
  int mv_bins = 0;
  int residual_flag_bins = 0;
  int residual_symbols = 0;
};

struct ModeCounts {
  std::array<int, kBlockModeKinds> blocks{};

  int total() const { return blocks[0] + blocks[1] + blocks[2] + blocks[3]; }
  int count(BlockModeKind k) const { return blocks[static_cast<std::size_t>(k)]; }
  double fraction(BlockModeKind k) const { return total() ? static_cast<double>(count(k)) / total() : 0.0; }
  ModeCounts& operator+=(const ModeCounts& o) {
    for (std::size_t i = 0; i < blocks.size(); ++i) blocks[i] += o.blocks[i];
    return *this;
  }
};

struct InterCodingConfig {
  InterpolationModes modes;
  int temporal_id_plus1 = 2;
};

struct InterEncodeResult {
  NalUnit unit;
  Frame reconstruction;
  std::vector<BlockMode> modes;
  std::vector<BlockSyntaxTrace> trace;
  ModeCounts counts;
};

struct InterDecodeResult {
  Frame frame;
  std::vector<BlockMode> modes;
  std::vector<BlockSyntaxTrace> trace;
  ModeCounts counts;
};

inline constexpr int kMinQp = 0;
inline constexpr int kMaxQp = 51;

/// 0.85 * 2^((qp - 12) / 3)
double mode_lambda(int qp);
/// 2^((qp - 4) / 6)
double residual_step(int qp);

/// Reference list for `poc`: nearest past and nearest future real pictures
/// (two nearest past ones when nothing lies ahead). With replacement
/// enabled the interpolated picture takes the slot of the entry farthest
/// from `poc`.
DecodedPictureBuffer reference_list(const DecodedPictureBuffer& dpb, int poc, const Frame* interp,
                                    const InterpolationModes& modes);

/// Codes one picture against the DPB. `interp` is the interpolated
/// picture for this POC, or null when no bidirectional anchors exist.
/// INTER payload: u16 POC, u8 qp, u8 flags (bit 7 use_interp, bit 6
/// direct, bit 5 replace), then the range-coded block syntax.
InterEncodeResult encode_inter(const Frame& frame, const DecodedPictureBuffer& dpb, const Frame* interp, int qp,
                               const InterCodingConfig& cfg = {});

InterDecodeResult decode_inter(const NalUnit& unit, const DecodedPictureBuffer& dpb, const Frame* interp,
                               const StreamHeader& header);

struct InterUnitInfo {
  int poc = 0;
  int qp = 0;
  bool use_interp = false;
  InterpolationModes modes;
};

/// Reads the fixed fields at the start of an INTER payload.
InterUnitInfo peek_inter_unit(const NalUnit& unit);

}  // namespace lsvc
