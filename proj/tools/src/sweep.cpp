#include "sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "lsvc/error.hpp"
#include "lsvc/metrics.hpp"
#include "lsvc/synthetic.hpp"

namespace lsvc::cli {
namespace {

namespace fs = std::filesystem;

int parse_int(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw DataError(std::string("bad ") + what + ": '" + s + "'");
}

double parse_double(const std::string& s) {
  if (s == "nan") return std::nan("");
  if (s == "inf") return kPsnrInfinite;
  try {
    return std::stod(s);
  } catch (const std::logic_error&) {
    throw DataError("bad number in sweep CSV: '" + s + "'");
  }
}

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return "inf";
  std::ostringstream ss;
  ss << std::setprecision(10) << v;
  return ss.str();
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

double finite_mean(const std::vector<double>& v) {
  double s = 0.0;
  std::size_t n = 0;
  for (double x : v) {
    if (std::isfinite(x)) {
      s += x;
      ++n;
    }
  }
  return n ? s / static_cast<double>(n) : kPsnrInfinite;
}

}  // namespace

SweepConfig SweepConfig::from(const KeyValueConfig& kv) {
  kv.require_known({"label", "mode", "qualities", "combos", "period", "interp", "interp_modes", "frames", "threshold",
                    "min_area"});
  SweepConfig c;
  c.label = kv.get("label", c.label);
  if (c.label.empty() || c.label.find_first_of(",\n") != std::string::npos) throw DataError("label must be non-empty, no commas");
  c.mode = coding_mode_from_string(kv.get("mode", "all_intra"));
  if (kv.has("qualities")) {
    c.qualities.clear();
    for (const auto& s : kv.get_list("qualities")) c.qualities.push_back(parse_int(s, "quality"));
  }
  if (kv.has("combos")) {
    c.combos.clear();
    for (const auto& s : kv.get_list("combos")) {
      const auto parts = split(s, ':');
      if (parts.size() != 2) throw DataError("combo must be quality:qp, got '" + s + "'");
      c.combos.push_back({parse_int(parts[0], "quality"), parse_int(parts[1], "qp")});
    }
  }
  c.period = kv.get_int("period", c.period);
  const std::string interp = kv.get("interp", "on");
  if (interp != "on" && interp != "off") throw DataError("interp must be on or off");
  c.interp = interp == "on";
  c.modes = interpolation_modes_from_string(kv.get("interp_modes", "both"));
  c.frames = kv.get_int("frames", 0);
  if (c.frames < 0) throw DataError("frames must be >= 0");
  c.detect.threshold = kv.get_double("threshold", c.detect.threshold);
  c.detect.min_area = kv.get_int("min_area", c.detect.min_area);
  if (c.points().empty()) throw DataError("sweep has no config points");
  gop_config_for(c.mode, c.period, c.modes);
  return c;
}

std::vector<ConfigPoint> SweepConfig::points() const {
  if (mode == CodingMode::kRandomAccess) return combos;
  std::vector<ConfigPoint> p;
  for (int q : qualities) p.push_back({q, -1});
  return p;
}

std::string point_key(const SweepConfig& cfg, const std::string& sequence, const ConfigPoint& p) {
  std::ostringstream canon;
  canon << cfg.label << '|' << sequence << '|' << to_string(cfg.mode) << '|' << p.quality << '|' << p.qp << '|'
        << cfg.period << '|' << (cfg.interp ? to_string(cfg.modes) : "off") << '|' << cfg.frames << '|'
        << num(cfg.detect.threshold) << '|' << cfg.detect.min_area;
  std::ostringstream hex;
  hex << std::hex << std::setw(16) << std::setfill('0') << fnv1a(canon.str());
  return hex.str();
}

SweepRow evaluate_point(const SweepConfig& cfg, const std::string& scene_path, const ConfigPoint& p) {
  const SceneSpec spec = load_scene_spec(scene_path);
  auto [seq, gt] = generate_synthetic(spec);
  if (cfg.frames > 0 && cfg.frames < static_cast<int>(seq.frames.size())) {
    seq.frames.resize(static_cast<std::size_t>(cfg.frames));
  }
  const GopConfig gop = gop_config_for(cfg.mode, cfg.period, cfg.modes);
  const int qp = cfg.mode == CodingMode::kAllIntra ? 0 : p.qp;
  const SequenceEncodeResult enc = encode_sequence(seq, p.quality, qp, gop, cfg.interp);

  // Evaluate from the decoder side, as a receiver would.
  const LayeredBitstream bs = demux(mux(enc.bitstream));
  const SequenceDecodeResult full = decode_sequence(bs, 1);
  std::vector<int> pocs;
  const auto base_dets = detect_base_layer(bs, cfg.detect, &pocs);
  std::vector<Detection> full_dets;
  for (int poc : pocs) {
    auto d = detect(task_feature_reference(full.frames[static_cast<std::size_t>(poc)]), cfg.detect);
    for (auto& x : d) x.poc = poc;
    full_dets.insert(full_dets.end(), d.begin(), d.end());
  }
  const auto truth = boxes_at(gt, pocs);

  std::vector<double> psnrs;
  double ssim = 0.0;
  for (std::size_t i = 0; i < seq.frames.size(); ++i) {
    psnrs.push_back(psnr(seq.frames[i], full.frames[i]));
    ssim += ms_ssim(seq.frames[i], full.frames[i]);
  }
  const double pixels = static_cast<double>(seq.frames.size()) * spec.width * spec.height;

  SweepRow r;
  r.key = point_key(cfg, spec.name, p);
  r.label = cfg.label;
  r.sequence = spec.name;
  r.mode = to_string(cfg.mode);
  r.quality = p.quality;
  r.qp = cfg.mode == CodingMode::kAllIntra ? -1 : p.qp;
  r.interp = cfg.interp ? to_string(cfg.modes) : "off";
  r.frames = static_cast<int>(seq.frames.size());
  r.rate_bpp = enc.stats.total_bits / pixels;
  r.base_bpp = enc.stats.base_bits / pixels;
  r.psnr = finite_mean(psnrs);
  r.ms_ssim = ssim / static_cast<double>(seq.frames.size());
  r.map = truth.empty() ? std::nan("") : evaluate_map(base_dets, truth).mean_ap;
  r.map_full = truth.empty() ? std::nan("") : evaluate_map(full_dets, truth).mean_ap;
  r.direct_share = enc.stats.modes.fraction(BlockModeKind::kDirectInterp);
  return r;
}

std::string format_row(const SweepRow& r) {
  std::ostringstream s;
  s << r.key << ',' << r.label << ',' << r.sequence << ',' << r.mode << ',' << r.quality << ',' << r.qp << ','
    << r.interp << ',' << r.frames << ',' << num(r.rate_bpp) << ',' << num(r.base_bpp) << ',' << num(r.psnr) << ','
    << num(r.ms_ssim) << ',' << num(r.map) << ',' << num(r.map_full) << ',' << num(r.direct_share);
  return s.str();
}

std::vector<SweepRow> read_sweep_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || trim(line) != kSweepCsvHeader) throw DataError(path + ": unexpected CSV header");
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto f = split(trim(line), ',');
    if (f.size() != 15) throw DataError(path + ": malformed row: " + line);
    SweepRow r;
    r.key = f[0];
    r.label = f[1];
    r.sequence = f[2];
    r.mode = f[3];
    r.quality = parse_int(f[4], "quality");
    r.qp = parse_int(f[5], "qp");
    r.interp = f[6];
    r.frames = parse_int(f[7], "frames");
    r.rate_bpp = parse_double(f[8]);
    r.base_bpp = parse_double(f[9]);
    r.psnr = parse_double(f[10]);
    r.ms_ssim = parse_double(f[11]);
    r.map = parse_double(f[12]);
    r.map_full = parse_double(f[13]);
    r.direct_share = parse_double(f[14]);
    rows.push_back(r);
  }
  return rows;
}

SweepSummary cmd_sweep(const std::string& config_path, const std::string& corpus_dir, const std::string& out_dir,
                       std::ostream& log) {
  const SweepConfig cfg = SweepConfig::from(KeyValueConfig::load(config_path));
  std::vector<std::string> scenes;
  if (!fs::is_directory(corpus_dir)) throw DataError("corpus directory not found: " + corpus_dir);
  for (const auto& e : fs::directory_iterator(corpus_dir)) {
    if (e.is_regular_file() && e.path().extension() == ".scene") scenes.push_back(e.path().string());
  }
  std::sort(scenes.begin(), scenes.end());
  if (scenes.empty()) throw DataError("no .scene files in " + corpus_dir);

  fs::create_directories(out_dir);
  const std::string csv = (fs::path(out_dir) / "results.csv").string();
  std::set<std::string> done;
  if (fs::exists(csv)) {
    for (const auto& r : read_sweep_csv(csv)) done.insert(r.key);
  } else {
    std::ofstream(csv) << kSweepCsvHeader << '\n';
  }

  SweepSummary summary;
  std::ofstream out(csv, std::ios::app);
  for (const auto& scene : scenes) {
    const std::string name = load_scene_spec(scene).name;
    for (const auto& p : cfg.points()) {
      if (done.contains(point_key(cfg, name, p))) {
        ++summary.reused;
        continue;
      }
      const SweepRow row = evaluate_point(cfg, scene, p);
      out << format_row(row) << '\n' << std::flush;
      ++summary.computed;
      log << cfg.label << ' ' << name << " q" << p.quality << (p.qp >= 0 ? " qp" + std::to_string(p.qp) : "")
          << std::fixed << std::setprecision(4) << ": bpp=" << row.rate_bpp << " psnr=" << row.psnr
          << " ms_ssim=" << row.ms_ssim << " map=" << row.map << '\n';
    }
  }
  log << "rows: " << summary.computed + summary.reused << " (computed " << summary.computed << ", reused "
      << summary.reused << ")\n";
  return summary;
}

}  // namespace lsvc::cli
