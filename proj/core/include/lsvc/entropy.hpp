#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "lsvc/transform.hpp"

namespace lsvc {

// Carryless 32-bit range coder (Subbotin style). Frequency totals must not
// exceed kMaxTotal. Streams end with the two sentinel bytes 0xCA 0xFE.
inline constexpr std::uint32_t kMaxTotal = 1u << 16;
inline constexpr std::uint8_t kSentinelHi = 0xCA;
inline constexpr std::uint8_t kSentinelLo = 0xFE;

class RangeEncoder {
 public:
  void encode(std::uint32_t cum, std::uint32_t freq, std::uint32_t total);
  /// Equiprobable raw bits, nbits in 1..16.
  void encode_bits(std::uint32_t value, int nbits);
  /// Flushes the coder state and appends the sentinel. The encoder is spent afterwards.
  std::vector<std::uint8_t> finish();

 private:
  void normalize();

  std::uint32_t low_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFu;
  std::vector<std::uint8_t> out_;
  bool finished_ = false;
};

class RangeDecoder {
 public:
  explicit RangeDecoder(std::span<const std::uint8_t> bytes);

  /// Cumulative-frequency target for the next symbol; follow with consume().
  std::uint32_t peek(std::uint32_t total);
  void consume(std::uint32_t cum, std::uint32_t freq);
  std::uint32_t decode_bits(int nbits);
  /// Checks the sentinel and that every byte was consumed.
  void finish();

  std::size_t position() const { return pos_; }

 private:
  std::uint8_t next_byte();
  void normalize();

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
  std::uint32_t low_ = 0;
  std::uint32_t range_ = 0xFFFFFFFFu;
  std::uint32_t code_ = 0;
};

/// Adaptive frequency model over {-64..64} plus an escape symbol. Escaped
/// values are sent as 32 raw bits (two's complement).
class AdaptiveModel {
 public:
  static constexpr int kMaxMagnitude = 64;
  static constexpr int kEscape = 2 * kMaxMagnitude + 1;
  static constexpr int kSymbols = kEscape + 1;
  static constexpr std::uint32_t kIncrement = 32;

  AdaptiveModel();

  void encode(RangeEncoder& enc, std::int64_t value);
  std::int64_t decode(RangeDecoder& dec);
  /// Ideal code length in bits under the current state, without adapting.
  double cost(std::int64_t value) const;

  std::uint32_t total() const { return total_; }
  std::uint32_t frequency(int symbol) const { return freq_[static_cast<std::size_t>(symbol)]; }

  static int symbol_of(std::int64_t value);

 private:
  void update(int symbol);

  std::array<std::uint32_t, kSymbols> freq_{};
  std::uint32_t total_ = 0;
};

/// Adaptive binary model for syntax flags.
class BinaryModel {
 public:
  void encode(RangeEncoder& enc, bool bit);
  bool decode(RangeDecoder& dec);
  double cost(bool bit) const;

 private:
  static constexpr std::uint32_t kIncrement = 16;
  static constexpr std::uint32_t kLimit = 1024;
  void update(bool bit);

  std::uint32_t zeros_ = 1;
  std::uint32_t ones_ = 1;
};

/// One coded stream with any number of adaptive contexts addressed by id.
class SymbolWriter {
 public:
  void put(int context_id, std::int64_t value);
  double cost(int context_id, std::int64_t value);
  std::vector<std::uint8_t> finish() { return enc_.finish(); }

 private:
  AdaptiveModel& model(int context_id);

  RangeEncoder enc_;
  std::vector<AdaptiveModel> models_;
};

class SymbolReader {
 public:
  explicit SymbolReader(std::span<const std::uint8_t> bytes) : dec_(bytes) {}
  std::int64_t get(int context_id);
  void finish() { dec_.finish(); }

 private:
  RangeDecoder dec_;
  std::vector<AdaptiveModel> models_;
};

std::vector<std::uint8_t> encode_plane(std::span<const std::int64_t> values, int context_id);
std::vector<std::int64_t> decode_plane(std::span<const std::uint8_t> bytes, std::size_t length, int context_id);

/// Channel-major coding of a latent channel group, one context per absolute channel index.
std::vector<std::uint8_t> encode_channel_group(const ChannelGroup& group);
ChannelGroup decode_channel_group(std::span<const std::uint8_t> bytes, int first_channel, int channel_count,
                                  int grid_h, int grid_w);

struct RateEstimate {
  double bits = 0.0;
};

/// Achieved size of the base and enhancement payloads, in bits.
RateEstimate estimate_rate(const QuantizedLatent& q);

}  // namespace lsvc
