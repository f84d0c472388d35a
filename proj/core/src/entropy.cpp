#include "lsvc/entropy.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "lsvc/error.hpp"

namespace lsvc {
namespace {

constexpr std::uint32_t kTop = 1u << 24;
constexpr std::uint32_t kBottom = 1u << 16;
constexpr int kMaxContexts = 4096;

}  // namespace

// --- RangeEncoder -----------------------------------------------------------

void RangeEncoder::normalize() {
  for (;;) {
    if ((low_ ^ (low_ + range_)) >= kTop) {
      if (range_ >= kBottom) break;
      range_ = (0u - low_) & (kBottom - 1);
    }
    out_.push_back(static_cast<std::uint8_t>(low_ >> 24));
    low_ <<= 8;
    range_ <<= 8;
  }
}

void RangeEncoder::encode(std::uint32_t cum, std::uint32_t freq, std::uint32_t total) {
  if (finished_) throw InvariantError("range encoder used after finish()");
  if (total == 0 || total > kMaxTotal || freq == 0 || cum + freq > total) {
    throw InvariantError("range encoder called with an invalid frequency triple");
  }
  range_ /= total;
  low_ += cum * range_;
  range_ *= freq;
  normalize();
}

void RangeEncoder::encode_bits(std::uint32_t value, int nbits) {
  if (nbits < 1 || nbits > 16) throw InvariantError("raw bit count must be in 1..16");
  encode(value & ((1u << nbits) - 1), 1, 1u << nbits);
}

std::vector<std::uint8_t> RangeEncoder::finish() {
  if (finished_) throw InvariantError("range encoder finished twice");
  for (int i = 0; i < 4; ++i) {
    out_.push_back(static_cast<std::uint8_t>(low_ >> 24));
    low_ <<= 8;
  }
  out_.push_back(kSentinelHi);
  out_.push_back(kSentinelLo);
  finished_ = true;
  return std::move(out_);
}

// --- RangeDecoder -----------------------------------------------------------

RangeDecoder::RangeDecoder(std::span<const std::uint8_t> bytes) : in_(bytes) {
  for (int i = 0; i < 4; ++i) code_ = (code_ << 8) | next_byte();
}

std::uint8_t RangeDecoder::next_byte() {
  if (pos_ >= in_.size()) throw StreamError("entropy payload truncated");
  return in_[pos_++];
}

void RangeDecoder::normalize() {
  for (;;) {
    if ((low_ ^ (low_ + range_)) >= kTop) {
      if (range_ >= kBottom) break;
      range_ = (0u - low_) & (kBottom - 1);
    }
    code_ = (code_ << 8) | next_byte();
    low_ <<= 8;
    range_ <<= 8;
  }
}

std::uint32_t RangeDecoder::peek(std::uint32_t total) {
  range_ /= total;
  const std::uint32_t target = (code_ - low_) / range_;
  if (target >= total) throw StreamError("entropy payload corrupt");
  return target;
}

void RangeDecoder::consume(std::uint32_t cum, std::uint32_t freq) {
  low_ += cum * range_;
  range_ *= freq;
  normalize();
}

std::uint32_t RangeDecoder::decode_bits(int nbits) {
  const std::uint32_t v = peek(1u << nbits);
  consume(v, 1);
  return v;
}

void RangeDecoder::finish() {
  // The encoder's 4-byte flush is already inside code_ after the final
  // normalization, so only the sentinel should remain.
  if (in_.size() - pos_ != 2 || in_[pos_] != kSentinelHi || in_[pos_ + 1] != kSentinelLo) {
    throw StreamError("entropy payload sentinel mismatch");
  }
  pos_ += 2;
}

// --- AdaptiveModel ----------------------------------------------------------

AdaptiveModel::AdaptiveModel() {
  freq_.fill(1);
  total_ = kSymbols;
}

int AdaptiveModel::symbol_of(std::int64_t value) {
  if (value > kMaxMagnitude || value < -kMaxMagnitude) return kEscape;
  // 0, 1, -1, 2, -2, ... keeps the likely symbols at the front of the table.
  return value > 0 ? static_cast<int>(2 * value - 1) : static_cast<int>(-2 * value);
}

namespace {

std::int64_t value_of(int symbol) { return symbol % 2 == 1 ? (symbol + 1) / 2 : -(symbol / 2); }

}  // namespace

void AdaptiveModel::update(int symbol) {
  freq_[static_cast<std::size_t>(symbol)] += kIncrement;
  total_ += kIncrement;
  if (total_ > kMaxTotal) {
    total_ = 0;
    for (auto& f : freq_) {
      f = (f + 1) / 2;
      total_ += f;
    }
  }
}

void AdaptiveModel::encode(RangeEncoder& enc, std::int64_t value) {
  const int sym = symbol_of(value);
  std::uint32_t cum = 0;
  for (int s = 0; s < sym; ++s) cum += freq_[static_cast<std::size_t>(s)];
  enc.encode(cum, freq_[static_cast<std::size_t>(sym)], total_);
  update(sym);
  if (sym == kEscape) {
    if (value < std::numeric_limits<std::int32_t>::min() || value > std::numeric_limits<std::int32_t>::max()) {
      throw DataError("value " + std::to_string(value) + " exceeds the 32-bit escape range");
    }
    const auto raw = static_cast<std::uint32_t>(static_cast<std::int32_t>(value));
    enc.encode_bits(raw >> 16, 16);
    enc.encode_bits(raw & 0xFFFFu, 16);
  }
}

std::int64_t AdaptiveModel::decode(RangeDecoder& dec) {
  const std::uint32_t target = dec.peek(total_);
  std::uint32_t cum = 0;
  int sym = 0;
  while (cum + freq_[static_cast<std::size_t>(sym)] <= target) {
    cum += freq_[static_cast<std::size_t>(sym)];
    ++sym;
  }
  dec.consume(cum, freq_[static_cast<std::size_t>(sym)]);
  update(sym);
  if (sym != kEscape) return value_of(sym);
  const std::uint32_t hi = dec.decode_bits(16);
  const std::uint32_t lo = dec.decode_bits(16);
  return static_cast<std::int32_t>((hi << 16) | lo);
}

double AdaptiveModel::cost(std::int64_t value) const {
  const int sym = symbol_of(value);
  const double bits = std::log2(static_cast<double>(total_) / freq_[static_cast<std::size_t>(sym)]);
  return sym == kEscape ? bits + 32.0 : bits;
}

// --- BinaryModel ------------------------------------------------------------

void BinaryModel::update(bool bit) {
  (bit ? ones_ : zeros_) += kIncrement;
  if (zeros_ + ones_ > kLimit) {
    zeros_ = (zeros_ + 1) / 2;
    ones_ = (ones_ + 1) / 2;
  }
}

void BinaryModel::encode(RangeEncoder& enc, bool bit) {
  const std::uint32_t total = zeros_ + ones_;
  if (bit) {
    enc.encode(zeros_, ones_, total);
  } else {
    enc.encode(0, zeros_, total);
  }
  update(bit);
}

bool BinaryModel::decode(RangeDecoder& dec) {
  const std::uint32_t target = dec.peek(zeros_ + ones_);
  const bool bit = target >= zeros_;
  if (bit) {
    dec.consume(zeros_, ones_);
  } else {
    dec.consume(0, zeros_);
  }
  update(bit);
  return bit;
}

double BinaryModel::cost(bool bit) const {
  return std::log2(static_cast<double>(zeros_ + ones_) / (bit ? ones_ : zeros_));
}

// --- Symbol streams ---------------------------------------------------------

namespace {

AdaptiveModel& context(std::vector<AdaptiveModel>& models, int id) {
  if (id < 0 || id >= kMaxContexts) throw InvariantError("context id out of range");
  if (static_cast<std::size_t>(id) >= models.size()) models.resize(static_cast<std::size_t>(id) + 1);
  return models[static_cast<std::size_t>(id)];
}

}  // namespace

AdaptiveModel& SymbolWriter::model(int context_id) { return context(models_, context_id); }

void SymbolWriter::put(int context_id, std::int64_t value) { model(context_id).encode(enc_, value); }

double SymbolWriter::cost(int context_id, std::int64_t value) { return model(context_id).cost(value); }

std::int64_t SymbolReader::get(int context_id) { return context(models_, context_id).decode(dec_); }

std::vector<std::uint8_t> encode_plane(std::span<const std::int64_t> values, int context_id) {
  SymbolWriter w;
  for (auto v : values) w.put(context_id, v);
  return w.finish();
}

std::vector<std::int64_t> decode_plane(std::span<const std::uint8_t> bytes, std::size_t length, int context_id) {
  SymbolReader r(bytes);
  std::vector<std::int64_t> out(length);
  for (auto& v : out) v = r.get(context_id);
  r.finish();
  return out;
}

std::vector<std::uint8_t> encode_channel_group(const ChannelGroup& group) {
  if (group.values.size() != group.plane_size() * static_cast<std::size_t>(group.channel_count)) {
    throw DataError("channel group size does not match its geometry");
  }
  SymbolWriter w;
  for (int c = 0; c < group.channel_count; ++c) {
    for (auto v : group.plane(c)) w.put(group.first_channel + c, v);
  }
  return w.finish();
}

ChannelGroup decode_channel_group(std::span<const std::uint8_t> bytes, int first_channel, int channel_count,
                                  int grid_h, int grid_w) {
  if (first_channel < 0 || channel_count <= 0 || first_channel + channel_count > kBlockArea || grid_h <= 0 ||
      grid_w <= 0) {
    throw DataError("invalid channel group geometry");
  }
  ChannelGroup group{first_channel, channel_count, grid_h, grid_w, {}};
  group.values.resize(group.plane_size() * static_cast<std::size_t>(channel_count));
  SymbolReader r(bytes);
  std::size_t idx = 0;
  for (int c = 0; c < channel_count; ++c) {
    for (std::size_t p = 0; p < group.plane_size(); ++p) group.values[idx++] = r.get(first_channel + c);
  }
  r.finish();
  return group;
}

RateEstimate estimate_rate(const QuantizedLatent& q) {
  const LayerSplit parts = split(q);
  const std::size_t bytes = encode_channel_group(parts.base).size() + encode_channel_group(parts.enhancement).size();
  return {8.0 * static_cast<double>(bytes)};
}

}  // namespace lsvc
