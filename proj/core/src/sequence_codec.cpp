#include "lsvc/sequence_codec.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <set>
#include <string>

#include "lsvc/error.hpp"
#include "lsvc/interpolation.hpp"
#include "lsvc/intra_codec.hpp"

namespace lsvc {
namespace {

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

void plan_interior(int lo, int hi, int depth, std::vector<PlanEntry>& out) {
  if (hi - lo < 2) return;
  const int mid = (lo + hi) / 2;
  PlanEntry e;
  e.poc = mid;
  e.kind = PictureKind::kBidirectional;
  e.depth = depth;
  e.past_anchor = lo;
  e.future_anchor = hi;
  e.stored = hi - lo > 2;
  out.push_back(e);
  plan_interior(lo, mid, depth + 1, out);
  plan_interior(mid, hi, depth + 1, out);
}

std::vector<int> references_of(const PlanEntry& e) {
  std::vector<int> r;
  for (int p : {e.past_anchor, e.future_anchor, e.second_past}) {
    if (p >= 0) r.push_back(p);
  }
  return r;
}

// Registers a decoded picture. When the buffer is full, pictures that no
// later plan entry references are dropped first.
void store(DecodedPictureBuffer& dpb, const Frame& frame, const std::vector<PlanEntry>& plan, std::size_t next) {
  if (dpb.size() >= dpb.capacity()) {
    std::set<int> needed;
    for (std::size_t i = next; i < plan.size(); ++i) {
      for (int p : references_of(plan[i])) needed.insert(p);
    }
    std::vector<int> stale;
    for (const auto& e : dpb.entries()) {
      if (!needed.contains(e.poc)) stale.push_back(e.poc);
    }
    for (int p : stale) dpb.remove(p);
  }
  dpb.insert(frame);
}

DecodedPictureBuffer working_buffer(const DecodedPictureBuffer& dpb, const PlanEntry& e) {
  DecodedPictureBuffer view(dpb.capacity());
  for (int p : references_of(e)) {
    const DpbEntry* found = dpb.find(p);
    if (found == nullptr) throw DataError("reference picture " + std::to_string(p) + " missing from the DPB");
    view.push(*found);
  }
  return view;
}

std::optional<Frame> interpolation_for(const DecodedPictureBuffer& dpb, const PlanEntry& e) {
  if (e.kind != PictureKind::kBidirectional) return std::nullopt;
  return interpolate_frame(dpb.find(e.past_anchor)->frame, dpb.find(e.future_anchor)->frame, e.poc);
}

double nal_bits(const NalUnit& u) { return 8.0 * static_cast<double>(u.payload.size() + kNalPrefixBytes); }

}  // namespace

void GopConfig::validate() const {
  if (!is_power_of_two(intra_period)) throw DataError("intra period must be a power of two");
  if (dpb_capacity < 3) throw DataError("DPB capacity must be at least 3");
  for (int o : qp_offsets) {
    if (o < 0 || o > kMaxQp) throw DataError("QP offset out of range");
  }
}

int GopConfig::qp_for_depth(int base_qp, int depth) const {
  const int idx = std::clamp(depth, 0, static_cast<int>(qp_offsets.size()) - 1);
  return std::clamp(base_qp + qp_offsets[static_cast<std::size_t>(idx)], kMinQp, kMaxQp);
}

std::vector<PlanEntry> coding_plan(int frame_count, int intra_period) {
  if (frame_count <= 0) throw DataError("sequence must contain at least one frame");
  if (!is_power_of_two(intra_period)) throw DataError("intra period must be a power of two");
  std::vector<PlanEntry> plan;
  plan.push_back({0, PictureKind::kIntra});
  int anchor = 0;
  while (anchor + intra_period < frame_count) {
    const int next = anchor + intra_period;
    plan.push_back({next, PictureKind::kIntra});
    plan_interior(anchor, next, 1, plan);
    anchor = next;
  }
  for (int t = anchor + 1; t < frame_count; ++t) {
    PlanEntry e;
    e.poc = t;
    e.kind = PictureKind::kTail;
    e.depth = 1;
    e.past_anchor = t - 1;
    e.second_past = t - 2 >= anchor ? t - 2 : -1;
    e.stored = t + 1 < frame_count;
    plan.push_back(e);
  }
  return plan;
}

SequenceEncodeResult encode_sequence(const Sequence& seq, int quality_index, int qp, const GopConfig& cfg,
                                     bool use_interp) {
  if (seq.frames.empty()) throw DataError("sequence must contain at least one frame");
  validate_sequence(seq);
  cfg.validate();
  if (qp < kMinQp || qp > kMaxQp) throw DataError("qp must be in 0..51");
  const int n = static_cast<int>(seq.frames.size());
  const Frame& first = seq.frames.front();
  const StreamHeader header =
      StreamHeader::make(first.width(), first.height(), cfg.intra_period, n, quality_profile(quality_index));
  const auto plan = coding_plan(n, cfg.intra_period);

  SequenceEncodeResult out;
  out.bitstream.header = header;
  out.reconstructions.resize(static_cast<std::size_t>(n));
  out.stats.picture_bits.assign(static_cast<std::size_t>(n), 0.0);
  DecodedPictureBuffer dpb(cfg.dpb_capacity);
  const InterpolationModes none{false, false};

  for (std::size_t i = 0; i < plan.size(); ++i) {
    const PlanEntry& e = plan[i];
    const Frame& src = seq.frames[static_cast<std::size_t>(e.poc)];
    Frame recon;
    if (e.kind == PictureKind::kIntra) {
      IntraEncodeResult r = encode_intra(src, header, 1);
      const double b = nal_bits(r.base_unit);
      const double h = nal_bits(r.enh_unit);
      out.stats.base_bits += b;
      out.stats.enhancement_bits += h;
      out.stats.picture_bits[static_cast<std::size_t>(e.poc)] = b + h;
      ++out.stats.intra_pictures;
      out.bitstream.units.push_back(std::move(r.base_unit));
      out.bitstream.units.push_back(std::move(r.enh_unit));
      recon = std::move(r.reconstruction);
    } else {
      const DecodedPictureBuffer refs = working_buffer(dpb, e);
      const std::optional<Frame> interp = use_interp ? interpolation_for(dpb, e) : std::nullopt;
      InterCodingConfig icfg{use_interp ? cfg.modes : none, e.depth + 1};
      InterEncodeResult r = encode_inter(src, refs, interp ? &*interp : nullptr, cfg.qp_for_depth(qp, e.depth), icfg);
      const double b = nal_bits(r.unit);
      out.stats.enhancement_bits += b;
      out.stats.inter_bits += b;
      out.stats.picture_bits[static_cast<std::size_t>(e.poc)] = b;
      out.stats.modes += r.counts;
      ++out.stats.inter_pictures;
      out.bitstream.units.push_back(std::move(r.unit));
      recon = std::move(r.reconstruction);
    }
    recon.set_poc(e.poc);
    if (e.stored) store(dpb, recon, plan, i + 1);
    out.reconstructions[static_cast<std::size_t>(e.poc)] = std::move(recon);
  }
  out.stats.total_bits = 8.0 * static_cast<double>(mux(out.bitstream).size());
  return out;
}

SequenceDecodeResult decode_sequence(const LayeredBitstream& bs, int max_layer, std::size_t dpb_capacity) {
  const StreamHeader& header = bs.header;
  header.validate();
  validate_order(bs.units);
  const bool full = max_layer >= 1;
  {
    // Check the unit count before anything is sized by frame_count.
    const std::uint64_t n = header.frame_count;
    if (n == 0 || n > static_cast<std::uint64_t>(std::numeric_limits<int>::max())) {
      throw StreamError("stream header: frame count out of range");
    }
    const std::uint64_t intra = (n + header.gop_size - 1) / header.gop_size;
    std::uint64_t units = 0;
    for (const auto& unit : bs.units) units += (full || unit.layer_id == kBaseLayer) ? 1 : 0;
    const std::uint64_t expected = full ? n + intra : intra;
    if (units < expected) throw StreamError("bitstream ends before the last picture");
  }
  const auto plan = coding_plan(static_cast<int>(header.frame_count), header.gop_size);

  SequenceDecodeResult out;
  if (full) out.frames.resize(header.frame_count);
  DecodedPictureBuffer dpb(dpb_capacity);

  std::size_t u = 0;
  auto next_unit = [&](NalUnitType type) -> const NalUnit& {
    while (u < bs.units.size() && !full && bs.units[u].layer_id > kBaseLayer) ++u;
    if (u >= bs.units.size()) throw StreamError("bitstream ends before the last picture");
    const NalUnit& unit = bs.units[u++];
    if (unit.type != type) throw StreamError("unexpected NAL unit type in coding order");
    return unit;
  };

  for (std::size_t i = 0; i < plan.size(); ++i) {
    const PlanEntry& e = plan[i];
    if (!full) {
      if (e.kind != PictureKind::kIntra) continue;
      out.base_latents.push_back({e.poc, decode_intra_base(next_unit(NalUnitType::kIntraBase), header)});
      continue;
    }
    Frame recon;
    if (e.kind == PictureKind::kIntra) {
      const NalUnit& base = next_unit(NalUnitType::kIntraBase);
      const NalUnit& enh = next_unit(NalUnitType::kIntraEnhancement);
      ChannelGroup base_latent = decode_intra_base(base, header);
      recon = synthesis(merge(base_latent, decode_intra_enhancement(enh, header), header.step_table(),
                              header.quality_index));
      out.base_latents.push_back({e.poc, std::move(base_latent)});
    } else {
      const NalUnit& unit = next_unit(NalUnitType::kInter);
      const InterUnitInfo info = peek_inter_unit(unit);
      if (info.poc != e.poc) throw StreamError("INTER unit POC does not follow the coding plan");
      const DecodedPictureBuffer refs = working_buffer(dpb, e);
      const std::optional<Frame> interp = info.use_interp ? interpolation_for(dpb, e) : std::nullopt;
      if (info.use_interp && !interp) throw StreamError("interpolation signalled without two anchors");
      InterDecodeResult r = decode_inter(unit, refs, interp ? &*interp : nullptr, header);
      out.modes += r.counts;
      recon = std::move(r.frame);
    }
    recon.set_poc(e.poc);
    if (e.stored) store(dpb, recon, plan, i + 1);
    out.frames[static_cast<std::size_t>(e.poc)] = std::move(recon);
  }
  if (full && u != bs.units.size()) throw StreamError("trailing units after the last picture");
  return out;
}

}  // namespace lsvc
