#include <gtest/gtest.h>

#include <random>

#include "lsvc/error.hpp"
#include "lsvc/inter_codec.hpp"
#include "lsvc/metrics.hpp"
#include "lsvc/synthetic.hpp"
#include "test_util.hpp"

namespace lsvc {
namespace {

StreamHeader header_for(const Frame& f) { return StreamHeader::make(f.width(), f.height(), 8, 9, quality_profile(5)); }

std::vector<Frame> noisy_pan(int frames, std::uint64_t seed = 3) {
  SceneSpec s;
  s.width = 96;
  s.height = 80;
  s.frame_count = frames;
  s.texture_amplitude = 30;
  s.pan_x = 1.5;
  s.pan_y = 0.5;
  s.noise_sigma = 3;
  s.seed = seed;
  s.objects.push_back({ObjectShape::kEllipse, 20, 16, 220, 10, 20, 2, 1, 0});
  return generate_synthetic(s).first.frames;
}

DecodedPictureBuffer anchors(const Frame& a, const Frame& b) {
  DecodedPictureBuffer d;
  d.insert(a);
  d.insert(b);
  return d;
}

TEST(InterLaws, LambdaAndStep) {
  EXPECT_NEAR(mode_lambda(12), 0.85, 1e-12);
  EXPECT_NEAR(mode_lambda(15), 1.7, 1e-12);
  EXPECT_NEAR(residual_step(4), 1.0, 1e-12);
  EXPECT_NEAR(residual_step(10), 2.0, 1e-12);
}

TEST(ReferenceList, NearestPastAndFuture) {
  DecodedPictureBuffer d;
  for (int p : {0, 8, 4, 2}) d.insert(Frame(16, 16, p));
  const Frame interp(16, 16, 3, 77);
  const auto plain = reference_list(d, 3, nullptr, {});
  ASSERT_EQ(plain.size(), 2u);
  EXPECT_EQ(plain.entries()[0].poc, 2);
  EXPECT_EQ(plain.entries()[1].poc, 4);
  // Equal distances: the past entry gives way to the interpolated picture.
  const auto replaced = reference_list(d, 3, &interp, {true, true});
  EXPECT_TRUE(replaced.entries()[0].is_synthetic);
  EXPECT_EQ(replaced.entries()[1].poc, 4);
  const auto past_only = reference_list(d, 9, nullptr, {});
  EXPECT_EQ(past_only.entries()[0].poc, 8);
  EXPECT_EQ(past_only.entries()[1].poc, 4);
}

TEST(InterCodec, StaticContentIsAllSkip) {
  const Frame f = testing::make_frame(192, 176, testing::texture, 0);
  Frame g = f;
  g.set_poc(2);
  Frame cur = f;
  cur.set_poc(1);
  for (int qp : {10, 22, 37, 51}) {
    const auto r = encode_inter(cur, anchors(f, g), nullptr, qp);
    EXPECT_EQ(r.counts.count(BlockModeKind::kSkip), r.counts.total());
    EXPECT_LT(r.unit.payload.size(), 64u);
    EXPECT_EQ(r.reconstruction, cur);
  }
}

TEST(InterCodec, DecoderMirrorsEncoder) {
  const auto frames = noisy_pan(3);
  const auto header = header_for(frames[0]);
  const auto dpb = anchors(frames[0], frames[2]);
  const Frame interp = interpolate_frame(frames[0], frames[2], 1);
  for (auto modes : {InterpolationModes{true, true}, InterpolationModes{true, false}, InterpolationModes{false, true}}) {
    for (int qp : {18, 30, 44}) {
      const auto enc = encode_inter(frames[1], dpb, &interp, qp, {modes, 3});
      EXPECT_EQ(enc.unit.temporal_id_plus1, 3);
      EXPECT_EQ(enc.unit.layer_id, kEnhancementLayer);
      const auto dec = decode_inter(enc.unit, dpb, &interp, header);
      EXPECT_EQ(dec.frame, enc.reconstruction);
      EXPECT_EQ(dec.modes, enc.modes);
      EXPECT_EQ(dec.frame.poc(), 1);
    }
  }
  const auto enc = encode_inter(frames[1], dpb, nullptr, 30);
  EXPECT_EQ(decode_inter(enc.unit, dpb, nullptr, header).frame, enc.reconstruction);
}

TEST(InterCodec, HigherQpSpendsFewerBits) {
  double bits18 = 0, bits38 = 0, psnr18 = 0, psnr38 = 0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto frames = noisy_pan(3, seed);
    const auto dpb = anchors(frames[0], frames[2]);
    const auto a = encode_inter(frames[1], dpb, nullptr, 18);
    const auto b = encode_inter(frames[1], dpb, nullptr, 38);
    bits18 += static_cast<double>(a.unit.payload.size());
    bits38 += static_cast<double>(b.unit.payload.size());
    psnr18 += psnr(frames[1], a.reconstruction);
    psnr38 += psnr(frames[1], b.reconstruction);
  }
  EXPECT_LT(bits38, bits18);
  EXPECT_LT(psnr38, psnr18);
}

TEST(InterCodec, DirectBlocksCarryNoMotion) {
  const auto frames = noisy_pan(3);
  const auto dpb = anchors(frames[0], frames[2]);
  const Frame interp = interpolate_frame(frames[0], frames[2], 1);
  const auto r = encode_inter(frames[1], dpb, &interp, 34, {{true, false}, 2});
  int direct = 0;
  for (const auto& t : r.trace) {
    if (t.kind != BlockModeKind::kDirectInterp) continue;
    ++direct;
    EXPECT_EQ(t.mode_bins, 3);
    EXPECT_EQ(t.ref_bins, 0);
    EXPECT_EQ(t.mv_bins, 0);
    EXPECT_EQ(t.residual_flag_bins, 1);
  }
  EXPECT_GT(direct, 0);
  for (std::size_t i = 0; i < r.modes.size(); ++i) {
    if (r.modes[i].kind == BlockModeKind::kDirectInterp) EXPECT_EQ(r.modes[i].mv, (MotionVector{}));
    if (r.modes[i].kind == BlockModeKind::kSkip) EXPECT_EQ(r.trace[i].mode_bins, 1);
  }
}

TEST(InterCodec, PayloadFields) {
  const auto frames = noisy_pan(3);
  const auto dpb = anchors(frames[0], frames[2]);
  const Frame interp = interpolate_frame(frames[0], frames[2], 1);
  const auto r = encode_inter(frames[1], dpb, &interp, 27, {{true, false}, 2});
  const auto info = peek_inter_unit(r.unit);
  EXPECT_EQ(info.poc, 1);
  EXPECT_EQ(info.qp, 27);
  EXPECT_TRUE(info.use_interp);
  EXPECT_TRUE(info.modes.direct);
  EXPECT_FALSE(info.modes.replace_reference);
  EXPECT_EQ(r.unit.payload[3], 0xC0);
}

TEST(InterCodec, RejectsMissingInputsAndCorruption) {
  const auto frames = noisy_pan(3);
  const auto header = header_for(frames[0]);
  const auto dpb = anchors(frames[0], frames[2]);
  const Frame interp = interpolate_frame(frames[0], frames[2], 1);
  const auto r = encode_inter(frames[1], dpb, &interp, 30);
  EXPECT_THROW(decode_inter(r.unit, dpb, nullptr, header), StreamError);
  EXPECT_THROW(decode_inter(r.unit, DecodedPictureBuffer(), &interp, header), DataError);
  EXPECT_THROW(encode_inter(frames[1], dpb, nullptr, 52), DataError);

  auto cut = r.unit;
  cut.payload.resize(cut.payload.size() / 2);
  EXPECT_THROW(decode_inter(cut, dpb, &interp, header), StreamError);

  std::mt19937_64 rng(8);
  for (int i = 0; i < 300; ++i) {
    auto bad = r.unit;
    bad.payload[4 + rng() % (bad.payload.size() - 4)] ^= static_cast<std::uint8_t>(1 + rng() % 255);
    try {
      (void)decode_inter(bad, dpb, &interp, header);
    } catch (const DataError&) {
    }
  }
}

}  // namespace
}  // namespace lsvc
