#include "lsvc/inter_codec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <string>

#include "lsvc/entropy.hpp"
#include "lsvc/error.hpp"
#include "lsvc/transform.hpp"

namespace lsvc {
namespace {

constexpr std::size_t kPayloadHeaderBytes = 4;
constexpr std::uint8_t kFlagUseInterp = 0x80;
constexpr std::uint8_t kFlagDirect = 0x40;
constexpr std::uint8_t kFlagReplace = 0x20;

constexpr int kPrefixContexts = 8;
constexpr int kResidualBands = 4;

using PixelBlock = std::array<std::uint8_t, kBlockArea>;

int residual_band(int zigzag_index) {
  if (zigzag_index == 0) return 0;
  if (zigzag_index < 6) return 1;
  if (zigzag_index < 28) return 2;
  return 3;
}

std::uint32_t signed_to_code(int v) { return v > 0 ? static_cast<std::uint32_t>(2 * v - 1) : static_cast<std::uint32_t>(-2 * v); }

int code_to_signed(std::uint32_t k) {
  return k % 2 == 1 ? static_cast<int>((k + 1) / 2) : -static_cast<int>(k / 2);
}

// Adaptive models for the block syntax, shared by encoder and decoder.
class SyntaxModels {
 public:
  // --- mode: SKIP = 1, INTER = 01, DIRECT_INTERP = 001, INTRA_DC = 000 in bins
  double mode_cost(BlockModeKind k) const {
    switch (k) {
      case BlockModeKind::kSkip:
        return skip_.cost(true);
      case BlockModeKind::kInter:
        return skip_.cost(false) + inter_.cost(true);
      case BlockModeKind::kDirectInterp:
        return skip_.cost(false) + inter_.cost(false) + direct_.cost(true);
      case BlockModeKind::kIntraDc:
        return skip_.cost(false) + inter_.cost(false) + direct_.cost(false);
    }
    return 0.0;
  }

  void write_mode(RangeEncoder& enc, BlockModeKind k, BlockSyntaxTrace& t) {
    t.kind = k;
    skip_.encode(enc, k == BlockModeKind::kSkip);
    t.mode_bins = 1;
    if (k == BlockModeKind::kSkip) return;
    inter_.encode(enc, k == BlockModeKind::kInter);
    t.mode_bins = 2;
    if (k == BlockModeKind::kInter) return;
    direct_.encode(enc, k == BlockModeKind::kDirectInterp);
    t.mode_bins = 3;
  }

  BlockModeKind read_mode(RangeDecoder& dec, BlockSyntaxTrace& t) {
    t.mode_bins = 1;
    if (skip_.decode(dec)) return t.kind = BlockModeKind::kSkip;
    t.mode_bins = 2;
    if (inter_.decode(dec)) return t.kind = BlockModeKind::kInter;
    t.mode_bins = 3;
    return t.kind = direct_.decode(dec) ? BlockModeKind::kDirectInterp : BlockModeKind::kIntraDc;
  }

  double ref_cost(int ref) const { return ref_.cost(ref == 1); }
  void write_ref(RangeEncoder& enc, int ref, BlockSyntaxTrace& t) {
    ref_.encode(enc, ref == 1);
    t.ref_bins = 1;
  }
  int read_ref(RangeDecoder& dec, BlockSyntaxTrace& t) {
    t.ref_bins = 1;
    return ref_.decode(dec) ? 1 : 0;
  }

  // Motion vector difference: per component signed exp-Golomb, prefix bins adaptive.
  double mvd_cost(const MotionVector& d) const {
    return ueg_cost(mv_prefix_, signed_to_code(d.dx)) + ueg_cost(mv_prefix_, signed_to_code(d.dy));
  }
  void write_mvd(RangeEncoder& enc, const MotionVector& d, BlockSyntaxTrace& t) {
    t.mv_bins = write_ueg(enc, mv_prefix_, signed_to_code(d.dx)) + write_ueg(enc, mv_prefix_, signed_to_code(d.dy));
  }
  MotionVector read_mvd(RangeDecoder& dec, BlockSyntaxTrace& t) {
    int bins = 0;
    const int dx = code_to_signed(read_ueg(dec, mv_prefix_, bins));
    const int dy = code_to_signed(read_ueg(dec, mv_prefix_, bins));
    t.mv_bins = bins;
    return {dx, dy};
  }

  double residual_flag_cost(bool intra, bool coded) const { return residual_flag_[intra].cost(coded); }
  void write_residual_flag(RangeEncoder& enc, bool intra, bool coded, BlockSyntaxTrace& t) {
    residual_flag_[intra].encode(enc, coded);
    t.residual_flag_bins = 1;
  }
  bool read_residual_flag(RangeDecoder& dec, bool intra, BlockSyntaxTrace& t) {
    t.residual_flag_bins = 1;
    return residual_flag_[intra].decode(dec);
  }

  // Residual: last significant zigzag index (exp-Golomb), then levels 0..last.
  double residual_cost(bool intra, const std::array<std::int64_t, kBlockArea>& levels, int last) const {
    double bits = ueg_cost(last_prefix_, static_cast<std::uint32_t>(last));
    for (int k = 0; k <= last; ++k) bits += level_model(intra, k).cost(levels[static_cast<std::size_t>(k)]);
    return bits;
  }
  void write_residual(RangeEncoder& enc, bool intra, const std::array<std::int64_t, kBlockArea>& levels, int last,
                      BlockSyntaxTrace& t) {
    write_ueg(enc, last_prefix_, static_cast<std::uint32_t>(last));
    for (int k = 0; k <= last; ++k) level_model(intra, k).encode(enc, levels[static_cast<std::size_t>(k)]);
    t.residual_symbols = last + 2;
  }
  std::array<std::int64_t, kBlockArea> read_residual(RangeDecoder& dec, bool intra, BlockSyntaxTrace& t) {
    int bins = 0;
    const std::uint32_t last = read_ueg(dec, last_prefix_, bins);
    if (last >= kBlockArea) throw StreamError("residual last index out of range");
    std::array<std::int64_t, kBlockArea> levels{};
    for (int k = 0; k <= static_cast<int>(last); ++k) levels[static_cast<std::size_t>(k)] = level_model(intra, k).decode(dec);
    t.residual_symbols = static_cast<int>(last) + 2;
    return levels;
  }

 private:
  using Prefix = std::array<BinaryModel, kPrefixContexts>;

  static double ueg_cost(const Prefix& prefix, std::uint32_t k) {
    const int n = std::bit_width(k + 1) - 1;
    double bits = n;  // suffix
    for (int i = 0; i < n; ++i) bits += prefix[static_cast<std::size_t>(std::min(i, kPrefixContexts - 1))].cost(true);
    bits += prefix[static_cast<std::size_t>(std::min(n, kPrefixContexts - 1))].cost(false);
    return bits;
  }

  static int write_ueg(RangeEncoder& enc, Prefix& prefix, std::uint32_t k) {
    const std::uint32_t m = k + 1;
    const int n = std::bit_width(m) - 1;
    for (int i = 0; i < n; ++i) prefix[static_cast<std::size_t>(std::min(i, kPrefixContexts - 1))].encode(enc, true);
    prefix[static_cast<std::size_t>(std::min(n, kPrefixContexts - 1))].encode(enc, false);
    for (int i = n - 1; i >= 0; --i) enc.encode_bits((m >> i) & 1u, 1);
    return 2 * n + 1;
  }

  static std::uint32_t read_ueg(RangeDecoder& dec, Prefix& prefix, int& bins) {
    int n = 0;
    while (prefix[static_cast<std::size_t>(std::min(n, kPrefixContexts - 1))].decode(dec)) {
      if (++n > 24) throw StreamError("exp-Golomb prefix too long");
    }
    std::uint32_t m = 1;
    for (int i = 0; i < n; ++i) m = (m << 1) | dec.decode_bits(1);
    bins += 2 * n + 1;
    return m - 1;
  }

  AdaptiveModel& level_model(bool intra, int k) {
    return levels_[static_cast<std::size_t>((intra ? kResidualBands : 0) + residual_band(k))];
  }
  const AdaptiveModel& level_model(bool intra, int k) const {
    return levels_[static_cast<std::size_t>((intra ? kResidualBands : 0) + residual_band(k))];
  }

  BinaryModel skip_;
  BinaryModel inter_;
  BinaryModel direct_;
  BinaryModel ref_;
  std::array<BinaryModel, 2> residual_flag_;
  Prefix mv_prefix_;
  Prefix last_prefix_;
  std::array<AdaptiveModel, 2 * kResidualBands> levels_;
};

struct ResidualCoding {
  std::array<std::int64_t, kBlockArea> levels{};  // zigzag order
  int last = -1;
};

ResidualCoding quantize_residual(const PixelBlock& orig, const PixelBlock& pred, double step) {
  Block diff{};
  for (int i = 0; i < kBlockArea; ++i) diff[static_cast<std::size_t>(i)] = int{orig[static_cast<std::size_t>(i)]} - int{pred[static_cast<std::size_t>(i)]};
  const Block coeffs = forward_dct(diff);
  const auto& zz = zigzag_order();
  ResidualCoding r;
  for (int k = 0; k < kBlockArea; ++k) {
    const auto level = static_cast<std::int64_t>(round_half_away(coeffs[static_cast<std::size_t>(zz[static_cast<std::size_t>(k)])] / step));
    r.levels[static_cast<std::size_t>(k)] = level;
    if (level != 0) r.last = k;
  }
  return r;
}

PixelBlock reconstruct(const PixelBlock& pred, const ResidualCoding* residual, double step) {
  if (residual == nullptr) return pred;
  Block coeffs{};
  const auto& zz = zigzag_order();
  for (int k = 0; k <= residual->last; ++k) {
    coeffs[static_cast<std::size_t>(zz[static_cast<std::size_t>(k)])] =
        static_cast<double>(residual->levels[static_cast<std::size_t>(k)]) * step;
  }
  const Block delta = inverse_dct(coeffs);
  PixelBlock out{};
  for (int i = 0; i < kBlockArea; ++i) {
    const double v = round_half_away(pred[static_cast<std::size_t>(i)] + delta[static_cast<std::size_t>(i)]);
    out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
  }
  return out;
}

PixelBlock load_block(const Frame& f, int x0, int y0) {
  PixelBlock b{};
  for (int y = 0; y < kBlockSize; ++y) {
    const std::uint8_t* src = f.row(y0 + y) + x0;
    std::copy(src, src + kBlockSize, b.begin() + y * kBlockSize);
  }
  return b;
}

void store_block(Frame& f, int x0, int y0, const PixelBlock& b) {
  for (int y = 0; y < kBlockSize; ++y) {
    for (int x = 0; x < kBlockSize; ++x) f.at(x0 + x, y0 + y) = b[static_cast<std::size_t>(y * kBlockSize + x)];
  }
}

long block_ssd(const PixelBlock& a, const PixelBlock& b) {
  long acc = 0;
  for (int i = 0; i < kBlockArea; ++i) {
    const int d = int{a[static_cast<std::size_t>(i)]} - int{b[static_cast<std::size_t>(i)]};
    acc += d * d;
  }
  return acc;
}

// DC predictor from the reconstructed row above and column to the left.
PixelBlock intra_dc_prediction(const Frame& recon, int x0, int y0) {
  int sum = 0;
  int count = 0;
  if (y0 > 0) {
    for (int x = 0; x < kBlockSize; ++x) sum += recon.at(x0 + x, y0 - 1);
    count += kBlockSize;
  }
  if (x0 > 0) {
    for (int y = 0; y < kBlockSize; ++y) sum += recon.at(x0 - 1, y0 + y);
    count += kBlockSize;
  }
  const int dc = count ? (sum + count / 2) / count : 128;
  PixelBlock b;
  b.fill(static_cast<std::uint8_t>(dc));
  return b;
}

bool mv_in_frame(const Frame& f, int x0, int y0, const MotionVector& mv) {
  return std::abs(mv.dx) <= kSearchRange && std::abs(mv.dy) <= kSearchRange && x0 + mv.dx >= 0 && y0 + mv.dy >= 0 &&
         x0 + mv.dx + kBlockSize <= f.width() && y0 + mv.dy + kBlockSize <= f.height();
}

int ueg_length(std::uint32_t k) { return 2 * (std::bit_width(k + 1) - 1) + 1; }

// Full search, SAD + sqrt(lambda) * approximate mv bits; ties to the
// shorter vector, then raster order.
MotionVector motion_search(const Frame& ref, const PixelBlock& orig, int x0, int y0, const MotionVector& pred,
                           double motion_lambda) {
  MotionVector best;
  double best_cost = std::numeric_limits<double>::max();
  int best_len = std::numeric_limits<int>::max();
  for (int dy = -kSearchRange; dy <= kSearchRange; ++dy) {
    if (y0 + dy < 0 || y0 + dy + kBlockSize > ref.height()) continue;
    for (int dx = -kSearchRange; dx <= kSearchRange; ++dx) {
      if (x0 + dx < 0 || x0 + dx + kBlockSize > ref.width()) continue;
      int sad = 0;
      for (int y = 0; y < kBlockSize; ++y) {
        const std::uint8_t* r = ref.row(y0 + dy + y) + x0 + dx;
        const std::uint8_t* o = orig.data() + y * kBlockSize;
        for (int x = 0; x < kBlockSize; ++x) sad += std::abs(int{o[x]} - int{r[x]});
      }
      const int bits = ueg_length(signed_to_code(dx - pred.dx)) + ueg_length(signed_to_code(dy - pred.dy));
      const double cost = sad + motion_lambda * bits;
      const int len = std::abs(dx) + std::abs(dy);
      if (cost < best_cost || (cost == best_cost && len < best_len)) {
        best_cost = cost;
        best_len = len;
        best = {dx, dy};
      }
    }
  }
  return best;
}

std::uint8_t pack_flags(bool use_interp, const InterpolationModes& m) {
  std::uint8_t f = 0;
  if (use_interp) f |= kFlagUseInterp;
  if (m.direct) f |= kFlagDirect;
  if (m.replace_reference) f |= kFlagReplace;
  return f;
}

struct PictureContext {
  DecodedPictureBuffer refs;
  bool direct_available = false;
};

PictureContext make_context(const DecodedPictureBuffer& dpb, int poc, const Frame* interp,
                            const InterpolationModes& modes, int width, int height) {
  PictureContext ctx{reference_list(dpb, poc, interp, modes), interp != nullptr && modes.direct};
  if (ctx.refs.empty()) throw DataError("no reference pictures for POC " + std::to_string(poc));
  for (const auto& e : ctx.refs.entries()) {
    if (e.frame.width() != width || e.frame.height() != height) throw DataError("reference picture size mismatch");
  }
  if (interp != nullptr && (interp->width() != width || interp->height() != height)) {
    throw DataError("interpolated picture size mismatch");
  }
  return ctx;
}

// Left neighbour's vector when it was an INTER block, else zero.
MotionVector mv_predictor(const std::vector<BlockMode>& modes, int bx, int by, int blocks_x) {
  if (bx == 0) return {};
  const BlockMode& left = modes[static_cast<std::size_t>(by * blocks_x + bx - 1)];
  return left.kind == BlockModeKind::kInter ? left.mv : MotionVector{};
}

void count_mode(ModeCounts& c, BlockModeKind k) { ++c.blocks[static_cast<std::size_t>(k)]; }

}  // namespace

double mode_lambda(int qp) { return 0.85 * std::pow(2.0, (qp - 12) / 3.0); }

double residual_step(int qp) { return std::pow(2.0, (qp - 4) / 6.0); }

DecodedPictureBuffer reference_list(const DecodedPictureBuffer& dpb, int poc, const Frame* interp,
                                    const InterpolationModes& modes) {
  std::vector<const DpbEntry*> past;
  std::vector<const DpbEntry*> future;
  for (const auto& e : dpb.entries()) {
    if (e.is_synthetic) continue;
    (e.poc < poc ? past : future).push_back(&e);
  }
  std::sort(past.begin(), past.end(), [](auto* a, auto* b) { return a->poc > b->poc; });
  std::sort(future.begin(), future.end(), [](auto* a, auto* b) { return a->poc < b->poc; });

  std::vector<const DpbEntry*> chosen;
  if (!past.empty() && !future.empty()) {
    chosen = {past.front(), future.front()};
  } else {
    const auto& side = past.empty() ? future : past;
    for (std::size_t i = 0; i < side.size() && i < 2; ++i) chosen.push_back(side[i]);
  }

  DecodedPictureBuffer list(2);
  for (const auto* e : chosen) list.push(*e);
  if (interp != nullptr && modes.replace_reference && !list.empty()) {
    list = replace_reference(std::move(list), *interp, poc);
  }
  return list;
}

InterUnitInfo peek_inter_unit(const NalUnit& unit) {
  if (unit.type != NalUnitType::kInter) throw StreamError("expected an INTER unit");
  if (unit.payload.size() < kPayloadHeaderBytes) throw StreamError("INTER payload truncated");
  InterUnitInfo info;
  info.poc = (unit.payload[0] << 8) | unit.payload[1];
  info.qp = unit.payload[2];
  const std::uint8_t flags = unit.payload[3];
  if (flags & 0x1F) throw StreamError("reserved INTER flag bits set");
  if (info.qp > kMaxQp) throw StreamError("INTER qp out of range");
  info.use_interp = flags & kFlagUseInterp;
  info.modes.direct = flags & kFlagDirect;
  info.modes.replace_reference = flags & kFlagReplace;
  return info;
}

InterEncodeResult encode_inter(const Frame& frame, const DecodedPictureBuffer& dpb, const Frame* interp, int qp,
                               const InterCodingConfig& cfg) {
  if (qp < kMinQp || qp > kMaxQp) throw DataError("qp must be in 0..51");
  if (frame.poc() > 0xFFFF) throw DataError("POC does not fit the INTER payload");
  const bool use_interp = interp != nullptr && cfg.modes.any();
  const Frame* interp_used = use_interp ? interp : nullptr;
  const PictureContext ctx = make_context(dpb, frame.poc(), interp_used, cfg.modes, frame.width(), frame.height());

  const double lambda = mode_lambda(qp);
  const double motion_lambda = std::sqrt(lambda);
  const double step = residual_step(qp);
  const auto& refs = ctx.refs.entries();
  const int blocks_x = frame.width() / kBlockSize;
  const int blocks_y = frame.height() / kBlockSize;

  SyntaxModels models;
  RangeEncoder enc;
  InterEncodeResult out;
  out.reconstruction = Frame(frame.width(), frame.height(), frame.poc());
  out.modes.resize(static_cast<std::size_t>(blocks_x * blocks_y));

  for (int by = 0; by < blocks_y; ++by) {
    for (int bx = 0; bx < blocks_x; ++bx) {
      const int x0 = bx * kBlockSize;
      const int y0 = by * kBlockSize;
      const PixelBlock orig = load_block(frame, x0, y0);
      const MotionVector mvp = mv_predictor(out.modes, bx, by, blocks_x);

      struct Choice {
        BlockMode mode;
        PixelBlock pred{};
        std::optional<ResidualCoding> residual;
        double cost = std::numeric_limits<double>::max();
      } best;

      auto consider = [&](const BlockMode& mode, const PixelBlock& pred, double side_bits) {
        const bool intra = mode.kind == BlockModeKind::kIntraDc;
        if (mode.kind == BlockModeKind::kSkip) {
          const double j = block_ssd(orig, pred) + lambda * side_bits;
          if (j < best.cost) best = {mode, pred, std::nullopt, j};
          return;
        }
        const double j0 = block_ssd(orig, pred) + lambda * (side_bits + models.residual_flag_cost(intra, false));
        if (j0 < best.cost) best = {mode, pred, std::nullopt, j0};
        ResidualCoding res = quantize_residual(orig, pred, step);
        if (res.last < 0) return;
        const PixelBlock rec = reconstruct(pred, &res, step);
        const double bits =
            side_bits + models.residual_flag_cost(intra, true) + models.residual_cost(intra, res.levels, res.last);
        const double j1 = block_ssd(orig, rec) + lambda * bits;
        if (j1 < best.cost) {
          BlockMode m = mode;
          m.coded_residual = true;
          best = {m, pred, std::move(res), j1};
        }
      };

      // SKIP: co-located block of list entry 0, no residual.
      consider({BlockModeKind::kSkip, 0, {}, false}, load_block(refs[0].frame, x0, y0),
               models.mode_cost(BlockModeKind::kSkip));

      for (std::size_t r = 0; r < refs.size(); ++r) {
        const MotionVector mv = motion_search(refs[r].frame, orig, x0, y0, mvp, motion_lambda);
        const double side = models.mode_cost(BlockModeKind::kInter) +
                            (refs.size() > 1 ? models.ref_cost(static_cast<int>(r)) : 0.0) +
                            models.mvd_cost({mv.dx - mvp.dx, mv.dy - mvp.dy});
        consider({BlockModeKind::kInter, static_cast<int>(r), mv, false},
                 load_block(refs[r].frame, x0 + mv.dx, y0 + mv.dy), side);
      }

      if (ctx.direct_available) {
        consider({BlockModeKind::kDirectInterp, 0, {}, false}, load_block(*interp_used, x0, y0),
                 models.mode_cost(BlockModeKind::kDirectInterp));
      }

      consider({BlockModeKind::kIntraDc, 0, {}, false}, intra_dc_prediction(out.reconstruction, x0, y0),
               models.mode_cost(BlockModeKind::kIntraDc));

      // Emit the winner; this is the only place the models adapt.
      BlockSyntaxTrace t;
      const BlockMode& m = best.mode;
      const bool intra = m.kind == BlockModeKind::kIntraDc;
      models.write_mode(enc, m.kind, t);
      if (m.kind == BlockModeKind::kInter) {
        if (refs.size() > 1) models.write_ref(enc, m.ref_index, t);
        models.write_mvd(enc, {m.mv.dx - mvp.dx, m.mv.dy - mvp.dy}, t);
      }
      if (m.kind != BlockModeKind::kSkip) {
        models.write_residual_flag(enc, intra, m.coded_residual, t);
        if (m.coded_residual) models.write_residual(enc, intra, best.residual->levels, best.residual->last, t);
      }
      store_block(out.reconstruction, x0, y0,
                  reconstruct(best.pred, best.residual ? &*best.residual : nullptr, step));
      out.modes[static_cast<std::size_t>(by * blocks_x + bx)] = m;
      out.trace.push_back(t);
      count_mode(out.counts, m.kind);
    }
  }

  std::vector<std::uint8_t> payload;
  payload.push_back(static_cast<std::uint8_t>(frame.poc() >> 8));
  payload.push_back(static_cast<std::uint8_t>(frame.poc()));
  payload.push_back(static_cast<std::uint8_t>(qp));
  payload.push_back(pack_flags(use_interp, use_interp ? cfg.modes : InterpolationModes{false, false}));
  const auto coded = enc.finish();
  payload.insert(payload.end(), coded.begin(), coded.end());
  out.unit = {NalUnitType::kInter, kEnhancementLayer, static_cast<std::uint8_t>(cfg.temporal_id_plus1),
              std::move(payload)};
  return out;
}

InterDecodeResult decode_inter(const NalUnit& unit, const DecodedPictureBuffer& dpb, const Frame* interp,
                               const StreamHeader& header) {
  const InterUnitInfo info = peek_inter_unit(unit);
  if (info.use_interp && interp == nullptr) throw StreamError("INTER unit needs an interpolated picture");
  const Frame* interp_used = info.use_interp ? interp : nullptr;
  const PictureContext ctx = make_context(dpb, info.poc, interp_used, info.modes, header.width, header.height);
  const auto& refs = ctx.refs.entries();
  const double step = residual_step(info.qp);
  const int blocks_x = header.width / kBlockSize;
  const int blocks_y = header.height / kBlockSize;

  SyntaxModels models;
  RangeDecoder dec(std::span<const std::uint8_t>(unit.payload).subspan(kPayloadHeaderBytes));
  InterDecodeResult out;
  out.frame = Frame(header.width, header.height, info.poc);
  out.modes.resize(static_cast<std::size_t>(blocks_x * blocks_y));

  for (int by = 0; by < blocks_y; ++by) {
    for (int bx = 0; bx < blocks_x; ++bx) {
      const int x0 = bx * kBlockSize;
      const int y0 = by * kBlockSize;
      const MotionVector mvp = mv_predictor(out.modes, bx, by, blocks_x);
      BlockSyntaxTrace t;
      BlockMode m;
      m.kind = models.read_mode(dec, t);
      PixelBlock pred{};
      switch (m.kind) {
        case BlockModeKind::kSkip:
          pred = load_block(refs[0].frame, x0, y0);
          break;
        case BlockModeKind::kInter: {
          m.ref_index = refs.size() > 1 ? models.read_ref(dec, t) : 0;
          const MotionVector d = models.read_mvd(dec, t);
          m.mv = {mvp.dx + d.dx, mvp.dy + d.dy};
          if (!mv_in_frame(out.frame, x0, y0, m.mv)) throw StreamError("motion vector points outside the picture");
          pred = load_block(refs[static_cast<std::size_t>(m.ref_index)].frame, x0 + m.mv.dx, y0 + m.mv.dy);
          break;
        }
        case BlockModeKind::kDirectInterp:
          if (!ctx.direct_available) throw StreamError("DIRECT_INTERP used without an interpolated picture");
          pred = load_block(*interp_used, x0, y0);
          break;
        case BlockModeKind::kIntraDc:
          pred = intra_dc_prediction(out.frame, x0, y0);
          break;
      }
      std::optional<ResidualCoding> residual;
      if (m.kind != BlockModeKind::kSkip) {
        const bool intra = m.kind == BlockModeKind::kIntraDc;
        m.coded_residual = models.read_residual_flag(dec, intra, t);
        if (m.coded_residual) {
          ResidualCoding r;
          r.levels = models.read_residual(dec, intra, t);
          for (int k = 0; k < kBlockArea; ++k) {
            if (r.levels[static_cast<std::size_t>(k)] != 0) r.last = k;
          }
          residual = r;
        }
      }
      store_block(out.frame, x0, y0, reconstruct(pred, residual ? &*residual : nullptr, step));
      out.modes[static_cast<std::size_t>(by * blocks_x + bx)] = m;
      out.trace.push_back(t);
      count_mode(out.counts, m.kind);
    }
  }
  dec.finish();
  return out;
}

}  // namespace lsvc
