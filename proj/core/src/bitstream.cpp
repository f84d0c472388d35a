#include "lsvc/bitstream.hpp"

#include <cmath>
#include <fstream>
#include <iterator>
#include <string>

#include "lsvc/error.hpp"

namespace lsvc {
namespace {

void put_u8(std::vector<std::uint8_t>& out, std::uint8_t v) { out.push_back(v); }

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint8_t u8() {
    need(1);
    return bytes_[pos_++];
  }
  std::uint16_t u16() {
    need(2);
    const auto v = static_cast<std::uint16_t>((bytes_[pos_] << 8) | bytes_[pos_ + 1]);
    pos_ += 2;
    return v;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | bytes_[pos_++];
    return v;
  }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw StreamError("stream header truncated");
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

bool is_power_of_two(unsigned v) { return v != 0 && (v & (v - 1)) == 0; }

}  // namespace

std::uint8_t layer_for(NalUnitType type) {
  return type == NalUnitType::kIntraEnhancement || type == NalUnitType::kInter ? kEnhancementLayer : kBaseLayer;
}

void validate_nal(const NalUnit& unit) {
  if (static_cast<unsigned>(unit.type) > static_cast<unsigned>(NalUnitType::kInter)) {
    throw StreamError("unknown NAL unit type " + std::to_string(static_cast<unsigned>(unit.type)));
  }
  if (unit.layer_id != layer_for(unit.type)) {
    throw StreamError("NAL unit type " + std::to_string(static_cast<unsigned>(unit.type)) +
                      " carried on layer " + std::to_string(unit.layer_id));
  }
  if (unit.temporal_id_plus1 < 1 || unit.temporal_id_plus1 > 7) {
    throw StreamError("temporal_id_plus1 must be in 1..7");
  }
  if (unit.payload.size() > 0xFFFFFFFFull) throw StreamError("NAL payload too large");
}

void append_nal(std::vector<std::uint8_t>& out, const NalUnit& unit) {
  validate_nal(unit);
  put_u32(out, static_cast<std::uint32_t>(unit.payload.size()));
  const auto header = static_cast<std::uint16_t>((static_cast<unsigned>(unit.type) << 9) |
                                                 (static_cast<unsigned>(unit.layer_id) << 3) |
                                                 unit.temporal_id_plus1);
  put_u16(out, header);
  out.insert(out.end(), unit.payload.begin(), unit.payload.end());
}

std::vector<std::uint8_t> write_nal(const NalUnit& unit) {
  std::vector<std::uint8_t> out;
  out.reserve(kNalPrefixBytes + unit.payload.size());
  append_nal(out, unit);
  return out;
}

std::pair<NalUnit, std::size_t> parse_nal(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kNalPrefixBytes) throw StreamError("NAL unit truncated");
  const std::uint32_t length = (std::uint32_t{bytes[0]} << 24) | (std::uint32_t{bytes[1]} << 16) |
                               (std::uint32_t{bytes[2]} << 8) | std::uint32_t{bytes[3]};
  const auto header = static_cast<std::uint16_t>((bytes[4] << 8) | bytes[5]);
  if (header & 0x8000u) throw StreamError("NAL forbidden bit set");
  const unsigned type = (header >> 9) & 0x3Fu;
  if (type > static_cast<unsigned>(NalUnitType::kInter)) {
    throw StreamError("unknown NAL unit type " + std::to_string(type));
  }
  if (bytes.size() - kNalPrefixBytes < length) throw StreamError("NAL payload truncated");

  NalUnit unit;
  unit.type = static_cast<NalUnitType>(type);
  unit.layer_id = static_cast<std::uint8_t>((header >> 3) & 0x3Fu);
  unit.temporal_id_plus1 = static_cast<std::uint8_t>(header & 0x7u);
  validate_nal(unit);
  const auto first = bytes.begin() + static_cast<std::ptrdiff_t>(kNalPrefixBytes);
  unit.payload.assign(first, first + static_cast<std::ptrdiff_t>(length));
  return {std::move(unit), kNalPrefixBytes + length};
}

// --- StreamHeader -----------------------------------------------------------

StreamHeader StreamHeader::make(int width, int height, int gop_size, int frame_count, const QualityProfile& profile,
                                int channels, int base_split) {
  StreamHeader h;
  h.width = static_cast<std::uint16_t>(width);
  h.height = static_cast<std::uint16_t>(height);
  h.gop_size = static_cast<std::uint16_t>(gop_size);
  h.channels = static_cast<std::uint16_t>(channels);
  h.base_split = static_cast<std::uint16_t>(base_split);
  h.quality_index = static_cast<std::uint8_t>(profile.index);
  h.frame_count = static_cast<std::uint32_t>(frame_count);
  h.base_step_micros = static_cast<std::uint32_t>(std::llround(profile.base_step * 1e6));
  h.step_slope_denominator = kStepSlopeDenominator;
  if (width <= 0 || width > 0xFFFF || height <= 0 || height > 0xFFFF || gop_size <= 0 || gop_size > 0xFFFF ||
      frame_count < 0) {
    throw DataError("stream parameters out of range");
  }
  h.validate();
  return h;
}

LatentGeometry StreamHeader::geometry() const {
  return LatentGeometry::for_frame(width, height, channels, base_split);
}

QuantizationTable StreamHeader::step_table() const {
  return {static_cast<double>(base_step_micros) / 1e6, step_slope_denominator, channels};
}

void StreamHeader::validate() const {
  try {
    geometry();
  } catch (const DataError& e) {
    throw StreamError(std::string("stream header: ") + e.what());
  }
  if (width > kMaxDimension || height > kMaxDimension) {
    throw StreamError("stream header: picture dimension above " + std::to_string(kMaxDimension));
  }
  if (!is_power_of_two(gop_size)) throw StreamError("stream header: gop size must be a power of two");
  if (quality_index > kQualityLevels) throw StreamError("stream header: quality index out of range");
  if (base_step_micros == 0) throw StreamError("stream header: zero quantizer step");
}

std::vector<std::uint8_t> StreamHeader::serialize() const {
  std::vector<std::uint8_t> out;
  out.reserve(kSerializedSize);
  put_u16(out, width);
  put_u16(out, height);
  put_u16(out, gop_size);
  put_u16(out, channels);
  put_u16(out, base_split);
  put_u8(out, quality_index);
  put_u32(out, frame_count);
  put_u32(out, base_step_micros);
  put_u16(out, step_slope_denominator);
  return out;
}

StreamHeader StreamHeader::parse(std::span<const std::uint8_t> payload) {
  if (payload.size() != kSerializedSize) throw StreamError("stream header has wrong size");
  ByteReader r(payload);
  StreamHeader h;
  h.width = r.u16();
  h.height = r.u16();
  h.gop_size = r.u16();
  h.channels = r.u16();
  h.base_split = r.u16();
  h.quality_index = r.u8();
  h.frame_count = r.u32();
  h.base_step_micros = r.u32();
  h.step_slope_denominator = r.u16();
  h.validate();
  return h;
}

// --- LayeredBitstream -------------------------------------------------------

std::size_t LayeredBitstream::byte_size() const {
  std::size_t n = kNalPrefixBytes + StreamHeader::kSerializedSize;
  for (const auto& u : units) n += kNalPrefixBytes + u.payload.size();
  return n;
}

std::size_t LayeredBitstream::layer_bytes(std::uint8_t layer_id) const {
  std::size_t n = 0;
  for (const auto& u : units) {
    if (u.layer_id == layer_id) n += kNalPrefixBytes + u.payload.size();
  }
  return n;
}

LayeredBitstream extract_layers(const LayeredBitstream& bs, std::uint8_t max_layer_id) {
  LayeredBitstream out;
  out.header = bs.header;
  for (const auto& u : bs.units) {
    if (u.layer_id <= max_layer_id) out.units.push_back(u);
  }
  return out;
}

void validate_order(const std::vector<NalUnit>& units) {
  std::size_t bases = 0;
  std::size_t enhancements = 0;
  for (const auto& u : units) {
    switch (u.type) {
      case NalUnitType::kStreamHeader:
        throw StreamError("unexpected STREAM_HEADER after the first unit");
      case NalUnitType::kIntraBase:
        ++bases;
        break;
      case NalUnitType::kIntraEnhancement:
        if (++enhancements > bases) throw StreamError("INTRA_ENH precedes its INTRA_BASE");
        break;
      case NalUnitType::kInter:
        break;
    }
  }
}

std::vector<std::uint8_t> mux(const StreamHeader& header, const std::vector<NalUnit>& units) {
  header.validate();
  validate_order(units);
  std::vector<std::uint8_t> out;
  append_nal(out, NalUnit{NalUnitType::kStreamHeader, kBaseLayer, 1, header.serialize()});
  for (const auto& u : units) append_nal(out, u);
  return out;
}

LayeredBitstream demux(std::span<const std::uint8_t> bytes) {
  if (bytes.empty()) throw StreamError("empty bitstream");
  auto [first, used] = parse_nal(bytes);
  if (first.type != NalUnitType::kStreamHeader) throw StreamError("bitstream does not start with STREAM_HEADER");
  LayeredBitstream bs;
  bs.header = StreamHeader::parse(first.payload);
  std::size_t pos = used;
  while (pos < bytes.size()) {
    auto [unit, n] = parse_nal(bytes.subspan(pos));
    bs.units.push_back(std::move(unit));
    pos += n;
  }
  validate_order(bs.units);
  return bs;
}

LayeredBitstream read_bitstream_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return demux(bytes);
}

void write_bitstream_file(const LayeredBitstream& bs, const std::string& path) {
  const auto bytes = mux(bs);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("write failed for " + path);
}

}  // namespace lsvc
