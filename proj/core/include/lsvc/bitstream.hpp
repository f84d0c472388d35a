#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lsvc/transform.hpp"

namespace lsvc {

enum class NalUnitType : std::uint8_t {
  kStreamHeader = 0,
  kIntraBase = 1,
  kIntraEnhancement = 2,
  kInter = 3,
};

inline constexpr std::uint8_t kBaseLayer = 0;
inline constexpr std::uint8_t kEnhancementLayer = 1;

/// Wire layout: u32 big-endian payload length, then a 2-byte header
/// [forbidden:1][unit_type:6][layer_id:6][temporal_id_plus1:3], then payload.
struct NalUnit {
  NalUnitType type = NalUnitType::kStreamHeader;
  std::uint8_t layer_id = 0;
  std::uint8_t temporal_id_plus1 = 1;
  std::vector<std::uint8_t> payload;

  friend bool operator==(const NalUnit&, const NalUnit&) = default;
};

inline constexpr std::size_t kNalPrefixBytes = 6;

/// Layer id implied by the unit type.
std::uint8_t layer_for(NalUnitType type);

/// Throws StreamError if the unit breaks a header invariant.
void validate_nal(const NalUnit& unit);

std::vector<std::uint8_t> write_nal(const NalUnit& unit);
void append_nal(std::vector<std::uint8_t>& out, const NalUnit& unit);
std::pair<NalUnit, std::size_t> parse_nal(std::span<const std::uint8_t> bytes);

/// Sequence-level parameters carried by the STREAM_HEADER unit. Serialized
/// as big-endian fixed-width integers in declaration order (21 bytes).
struct StreamHeader {
  std::uint16_t width = 0;
  std::uint16_t height = 0;
  std::uint16_t gop_size = 8;  // intra period; 1 means all-intra
  std::uint16_t channels = kDefaultChannels;
  std::uint16_t base_split = kDefaultBaseSplit;
  std::uint8_t quality_index = 1;  // 0 = custom step table
  std::uint32_t frame_count = 0;
  std::uint32_t base_step_micros = 0;
  std::uint16_t step_slope_denominator = kStepSlopeDenominator;

  static constexpr std::size_t kSerializedSize = 21;
  static constexpr int kMaxDimension = 4096;

  static StreamHeader make(int width, int height, int gop_size, int frame_count, const QualityProfile& profile,
                           int channels = kDefaultChannels, int base_split = kDefaultBaseSplit);

  LatentGeometry geometry() const;
  QuantizationTable step_table() const;
  void validate() const;

  std::vector<std::uint8_t> serialize() const;
  static StreamHeader parse(std::span<const std::uint8_t> payload);

  friend bool operator==(const StreamHeader&, const StreamHeader&) = default;
};

/// Header plus the coded units that follow the STREAM_HEADER unit.
struct LayeredBitstream {
  StreamHeader header;
  std::vector<NalUnit> units;

  std::size_t byte_size() const;
  std::size_t layer_bytes(std::uint8_t layer_id) const;

  friend bool operator==(const LayeredBitstream&, const LayeredBitstream&) = default;
};

/// Keeps the header and every unit whose layer_id <= max_layer_id, in order.
LayeredBitstream extract_layers(const LayeredBitstream& bs, std::uint8_t max_layer_id);

/// Checks unit ordering: no stray STREAM_HEADER, and for every intra
/// picture the base unit precedes its enhancement unit.
void validate_order(const std::vector<NalUnit>& units);

std::vector<std::uint8_t> mux(const StreamHeader& header, const std::vector<NalUnit>& units);
inline std::vector<std::uint8_t> mux(const LayeredBitstream& bs) { return mux(bs.header, bs.units); }
LayeredBitstream demux(std::span<const std::uint8_t> bytes);

LayeredBitstream read_bitstream_file(const std::string& path);
void write_bitstream_file(const LayeredBitstream& bs, const std::string& path);

}  // namespace lsvc
