#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "lsvc/error.hpp"
#include "lsvc/metrics.hpp"
#include "lsvc/raw_io.hpp"
#include "lsvc/synthetic.hpp"

namespace lsvc::cli {

CodingMode coding_mode_from_string(const std::string& s) {
  if (s == "all_intra") return CodingMode::kAllIntra;
  if (s == "random_access") return CodingMode::kRandomAccess;
  throw DataError("mode must be all_intra or random_access, got '" + s + "'");
}

std::string to_string(CodingMode m) { return m == CodingMode::kAllIntra ? "all_intra" : "random_access"; }

InterpolationModes interpolation_modes_from_string(const std::string& s) {
  if (s == "both") return {true, true};
  if (s == "direct") return {true, false};
  if (s == "replace") return {false, true};
  throw DataError("interpolation modes must be both, direct or replace, got '" + s + "'");
}

std::string to_string(const InterpolationModes& m) {
  if (m.direct && m.replace_reference) return "both";
  if (m.direct) return "direct";
  if (m.replace_reference) return "replace";
  return "none";
}

GopConfig gop_config_for(CodingMode mode, int period, const InterpolationModes& modes) {
  GopConfig cfg;
  cfg.intra_period = mode == CodingMode::kAllIntra ? 1 : period;
  if (mode == CodingMode::kRandomAccess && period < 2) throw DataError("random access needs a period of at least 2");
  cfg.modes = modes;
  cfg.validate();
  return cfg;
}

void cmd_synth(const SynthOptions& o, std::ostream& log) {
  const SceneSpec spec = load_scene_spec(o.spec_path);
  const auto [seq, gt] = generate_synthetic(spec);
  save_raw(seq, o.out_path);
  const std::string gt_path = o.gt_path.empty() ? o.out_path + ".gt.csv" : o.gt_path;
  save_ground_truth_csv(gt, gt_path);
  log << "wrote " << seq.frames.size() << " frames " << spec.width << "x" << spec.height << " to " << o.out_path
      << ", " << gt.size() << " boxes to " << gt_path << "\n";
}

void cmd_encode(const EncodeOptions& o, std::ostream& log) {
  Sequence seq = load_raw(o.in_path, o.width, o.height);
  const GopConfig cfg = gop_config_for(o.mode, o.period, interpolation_modes_from_string(o.interp_modes));
  const SequenceEncodeResult r = encode_sequence(seq, o.quality, o.qp, cfg, o.interp);
  write_bitstream_file(r.bitstream, o.out_path);
  const double pixels = static_cast<double>(seq.frames.size()) * o.width * o.height;
  log << std::fixed << std::setprecision(4) << "frames=" << seq.frames.size() << " bytes=" << r.bitstream.byte_size()
      << " bpp=" << r.stats.total_bits / pixels << " base_bpp=" << r.stats.base_bits / pixels
      << " intra=" << r.stats.intra_pictures << " inter=" << r.stats.inter_pictures;
  if (r.stats.inter_pictures > 0) {
    log << " skip=" << r.stats.modes.fraction(BlockModeKind::kSkip)
        << " inter=" << r.stats.modes.fraction(BlockModeKind::kInter)
        << " direct=" << r.stats.modes.fraction(BlockModeKind::kDirectInterp)
        << " intra_dc=" << r.stats.modes.fraction(BlockModeKind::kIntraDc);
  }
  log << "\n";
}

void cmd_decode(const DecodeOptions& o, std::ostream& log) {
  const LayeredBitstream bs = read_bitstream_file(o.in_path);
  if (o.layers == "base") {
    // Base layer is a latent dump: re-emit it as a standalone stream.
    const LayeredBitstream base = extract_layers(bs, kBaseLayer);
    const SequenceDecodeResult check = decode_sequence(base, 0);
    write_bitstream_file(base, o.out_path);
    log << "base layer: " << check.base_latents.size() << " latent pictures, " << base.byte_size() << " bytes\n";
    return;
  }
  if (o.layers != "all") throw DataError("--layers must be base or all");
  SequenceDecodeResult r = decode_sequence(bs, 1);
  Sequence seq;
  seq.name = o.in_path;
  seq.frames = std::move(r.frames);
  save_raw(seq, o.out_path);
  log << "decoded " << seq.frames.size() << " frames " << bs.header.width << "x" << bs.header.height << "\n";
}

std::vector<Detection> detect_base_layer(const LayeredBitstream& bs, const DetectParams& params,
                                         std::vector<int>* pocs) {
  const SequenceDecodeResult r = decode_sequence(extract_layers(bs, kBaseLayer), 0);
  std::vector<Detection> out;
  for (const auto& pic : r.base_latents) {
    auto dets = detect(lst(pic.base, bs.header, pic.poc), params);
    for (auto& d : dets) d.poc = pic.poc;
    out.insert(out.end(), dets.begin(), dets.end());
    if (pocs) pocs->push_back(pic.poc);
  }
  return out;
}

std::vector<GroundTruthBox> boxes_at(const std::vector<GroundTruthBox>& gt, const std::vector<int>& pocs) {
  std::vector<GroundTruthBox> out;
  for (const auto& b : gt) {
    if (std::find(pocs.begin(), pocs.end(), b.poc) != pocs.end()) out.push_back(b);
  }
  return out;
}

void write_detections_csv(const std::vector<Detection>& dets, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << "poc,class_id,x,y,w,h,score\n" << std::setprecision(6);
  for (const auto& d : dets) {
    out << d.poc << ',' << d.class_id << ',' << d.x << ',' << d.y << ',' << d.w << ',' << d.h << ',' << d.score << '\n';
  }
}

void cmd_detect(const DetectOptions& o, std::ostream& log) {
  const LayeredBitstream bs = read_bitstream_file(o.in_path);
  std::vector<int> pocs;
  const auto dets = detect_base_layer(bs, o.params, &pocs);
  write_detections_csv(dets, o.out_path);
  log << dets.size() << " detections on " << pocs.size() << " base-layer pictures";
  const auto gt = boxes_at(load_ground_truth_csv(o.gt_path), pocs);
  if (gt.empty()) {
    log << "; no ground truth on those pictures, mAP undefined\n";
  } else {
    log << std::fixed << std::setprecision(4) << "; mAP@0.5=" << evaluate_map(dets, gt).mean_ap << "\n";
  }
}

void cmd_metrics(const MetricsOptions& o, std::ostream& log) {
  const Sequence a = load_raw(o.orig_path, o.width, o.height);
  const Sequence b = load_raw(o.recon_path, o.width, o.height);
  if (a.frames.size() != b.frames.size()) throw DataError("sequences differ in frame count");
  std::ofstream out(o.out_path);
  if (!out) throw DataError("cannot write " + o.out_path);
  out << "poc,psnr,ms_ssim\n" << std::setprecision(8);
  double psnr_sum = 0.0;
  double ssim_sum = 0.0;
  std::size_t finite = 0;
  for (std::size_t i = 0; i < a.frames.size(); ++i) {
    const double p = psnr(a.frames[i], b.frames[i]);
    const double s = ms_ssim(a.frames[i], b.frames[i]);
    out << i << ',' << (std::isinf(p) ? std::string("inf") : std::to_string(p)) << ',' << s << '\n';
    if (!std::isinf(p)) {
      psnr_sum += p;
      ++finite;
    }
    ssim_sum += s;
  }
  log << std::fixed << std::setprecision(4) << "frames=" << a.frames.size() << " psnr="
      << (finite ? psnr_sum / static_cast<double>(finite) : kPsnrInfinite)
      << " ms_ssim=" << ssim_sum / static_cast<double>(a.frames.size()) << "\n";
}

}  // namespace lsvc::cli
