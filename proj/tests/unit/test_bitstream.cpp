#include <gtest/gtest.h>

#include <random>

#include "lsvc/bitstream.hpp"
#include "lsvc/error.hpp"
#include "lsvc/sequence_codec.hpp"

namespace lsvc {
namespace {

// Independent packing of [forbidden:1][type:6][layer:6][tid+1:3].
std::array<std::uint8_t, 2> header_oracle(unsigned type, unsigned layer, unsigned tid1) {
  unsigned word = 0;
  unsigned pos = 16;
  auto put = [&](unsigned value, unsigned width) {
    pos -= width;
    word |= (value & ((1u << width) - 1)) << pos;
  };
  put(0, 1);
  put(type, 6);
  put(layer, 6);
  put(tid1, 3);
  return {static_cast<std::uint8_t>(word / 256), static_cast<std::uint8_t>(word % 256)};
}

TEST(NalHeader, ExampleBytes) {
  const NalUnit u{NalUnitType::kIntraBase, kBaseLayer, 1, {}};
  const auto bytes = write_nal(u);
  ASSERT_EQ(bytes.size(), kNalPrefixBytes);
  EXPECT_EQ(bytes[4], 0x02);
  EXPECT_EQ(bytes[5], 0x01);
  EXPECT_EQ((header_oracle(1, 0, 1)), (std::array<std::uint8_t, 2>{0x02, 0x01}));
}

TEST(NalHeader, AllFieldCombinationsMatchOracle) {
  for (auto type : {NalUnitType::kStreamHeader, NalUnitType::kIntraBase, NalUnitType::kIntraEnhancement,
                    NalUnitType::kInter}) {
    for (std::uint8_t tid1 = 1; tid1 <= 7; ++tid1) {
      const NalUnit u{type, layer_for(type), tid1, {1, 2, 3}};
      const auto bytes = write_nal(u);
      const auto want = header_oracle(static_cast<unsigned>(type), layer_for(type), tid1);
      EXPECT_EQ(bytes[4], want[0]);
      EXPECT_EQ(bytes[5], want[1]);
      EXPECT_EQ(bytes[3], 3);  // big-endian length
      const auto [parsed, used] = parse_nal(bytes);
      EXPECT_EQ(parsed, u);
      EXPECT_EQ(used, bytes.size());
    }
  }
}

TEST(NalHeader, RejectsInvalidFields) {
  std::vector<std::uint8_t> bytes{0, 0, 0, 0, 0x82, 0x01};  // forbidden bit set
  EXPECT_THROW(parse_nal(bytes), StreamError);
  bytes = {0, 0, 0, 0, 0x02, 0x00};  // temporal_id_plus1 = 0
  EXPECT_THROW(parse_nal(bytes), StreamError);
  bytes = {0, 0, 0, 0, 0x02, 0x09};  // INTRA_BASE in layer 1
  EXPECT_THROW(parse_nal(bytes), StreamError);
  bytes = {0, 0, 0, 9, 0x02, 0x01, 1};  // payload shorter than declared
  EXPECT_THROW(parse_nal(bytes), StreamError);
  EXPECT_THROW(write_nal({NalUnitType::kInter, kBaseLayer, 1, {}}), StreamError);
}

TEST(StreamHeader, SerializesTo21Bytes) {
  const auto h = StreamHeader::make(192, 176, 8, 64, quality_profile(3));
  const auto bytes = h.serialize();
  ASSERT_EQ(bytes.size(), StreamHeader::kSerializedSize);
  EXPECT_EQ(bytes[0], 0);
  EXPECT_EQ(bytes[1], 192);
  EXPECT_EQ(bytes[2], 0);
  EXPECT_EQ(bytes[3], 176);
  EXPECT_EQ(StreamHeader::parse(bytes), h);
  EXPECT_NEAR(h.step_table().step(0), quality_profile(3).base_step, 1e-6);
  auto bad = bytes;
  bad[5] = 3;  // gop size 3 is not a power of two
  EXPECT_THROW(StreamHeader::parse(bad), StreamError);
  EXPECT_THROW(StreamHeader::parse(std::span(bytes).first(20)), StreamError);
}

TEST(LayeredBitstream, MuxDemuxAndExtraction) {
  LayeredBitstream bs;
  bs.header = StreamHeader::make(32, 32, 2, 3, quality_profile(2));
  bs.units = {{NalUnitType::kIntraBase, 0, 1, {1, 2}},
              {NalUnitType::kIntraEnhancement, 1, 1, {3}},
              {NalUnitType::kIntraBase, 0, 1, {4}},
              {NalUnitType::kIntraEnhancement, 1, 1, {}},
              {NalUnitType::kInter, 1, 2, {5, 6, 7}}};
  const auto bytes = mux(bs);
  EXPECT_EQ(bytes.size(), bs.byte_size());
  EXPECT_EQ(demux(bytes), bs);
  const auto base = extract_layers(bs, kBaseLayer);
  ASSERT_EQ(base.units.size(), 2u);
  for (const auto& u : base.units) EXPECT_EQ(u.type, NalUnitType::kIntraBase);
  EXPECT_EQ(bs.layer_bytes(0) + bs.layer_bytes(1), bs.byte_size() - StreamHeader::kSerializedSize - kNalPrefixBytes);
}

TEST(LayeredBitstream, OrderChecks) {
  EXPECT_THROW(validate_order({{NalUnitType::kIntraEnhancement, 1, 1, {}}}), StreamError);
  EXPECT_THROW(validate_order({{NalUnitType::kStreamHeader, 0, 1, {}}}), StreamError);
  auto h = StreamHeader::make(16, 16, 1, 1, quality_profile(1));
  auto bytes = write_nal({NalUnitType::kIntraBase, 0, 1, {}});
  EXPECT_THROW(demux(bytes), StreamError);  // no header first
}

TEST(LayeredBitstream, FuzzNeverCrashes) {
  std::mt19937_64 rng(1234);
  LayeredBitstream valid;
  valid.header = StreamHeader::make(32, 32, 2, 3, quality_profile(2));
  valid.units = {{NalUnitType::kIntraBase, 0, 1, {1, 2}}, {NalUnitType::kIntraEnhancement, 1, 1, {3}}};
  const auto seed_bytes = mux(valid);
  int rejected = 0;
  for (int i = 0; i < 5000; ++i) {
    std::vector<std::uint8_t> bytes;
    if (i % 2 == 0) {
      bytes.resize(rng() % 64);
      for (auto& b : bytes) b = static_cast<std::uint8_t>(rng());
    } else {
      bytes = seed_bytes;
      for (int k = 0; k < 3; ++k) bytes[rng() % bytes.size()] ^= static_cast<std::uint8_t>(1u << (rng() % 8));
    }
    try {
      const auto bs = demux(bytes);
      (void)decode_sequence(bs, 1);
    } catch (const DataError&) {
      ++rejected;
    }
  }
  EXPECT_GT(rejected, 0);
}

}  // namespace
}  // namespace lsvc
