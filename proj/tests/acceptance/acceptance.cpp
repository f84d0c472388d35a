// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "lsvc/bd_rate.hpp"
#include "lsvc/bitstream.hpp"
#include "lsvc/break_even.hpp"
#include "lsvc/dpi.hpp"
#include "lsvc/entropy.hpp"
#include "lsvc/error.hpp"
#include "lsvc/intra_codec.hpp"
#include "lsvc/machine_task.hpp"
#include "lsvc/metrics.hpp"
#include "lsvc/sequence_codec.hpp"
#include "lsvc/synthetic.hpp"
#include "test_util.hpp"

using namespace lsvc;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void verdict(int n, bool ok, const std::string& what) {
  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << n << ": " << what << std::endl;
  if (!ok) ++g_failures;
}

void info(const std::string& line) { std::cout << "       " << line << std::endl; }

std::string fmt(double v, int prec = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// --- corpus evaluation --------------------------------------------------------

struct Scene {
  std::string name;
  Sequence seq;
  std::vector<GroundTruthBox> gt;
};

struct Point {
  int quality = 1;
  int qp = 0;      // ignored for all-intra
  int period = 8;  // 1 = all-intra
  bool interp = true;
  auto key() const { return std::tie(quality, qp, period, interp); }
  bool operator<(const Point& o) const { return key() < o.key(); }
};

struct Eval {
  double total_bits = 0.0;
  double base_bits = 0.0;
  double bpp = 0.0;
  double psnr = 0.0;
  double ms_ssim = 0.0;
  double map_base = 0.0;
  double map_full = 0.0;
  double direct_share = 0.0;
  bool base_standalone = false;
  bool bit_exact = false;
};

std::vector<GroundTruthBox> boxes_at(const std::vector<GroundTruthBox>& gt, const std::vector<int>& pocs) {
  std::vector<GroundTruthBox> out;
  for (const auto& b : gt) {
    if (std::find(pocs.begin(), pocs.end(), b.poc) != pocs.end()) out.push_back(b);
  }
  return out;
}

Eval evaluate(const Scene& s, const Point& p) {
  GopConfig cfg;
  cfg.intra_period = p.period;
  const SequenceEncodeResult enc = encode_sequence(s.seq, p.quality, p.period == 1 ? 0 : p.qp, cfg, p.interp);
  const std::vector<std::uint8_t> bytes = mux(enc.bitstream);
  const LayeredBitstream bs = demux(bytes);

  Eval e;
  e.total_bits = enc.stats.total_bits;
  e.base_bits = enc.stats.base_bits;
  e.direct_share = enc.stats.modes.fraction(BlockModeKind::kDirectInterp);

  const SequenceDecodeResult full = decode_sequence(bs, 1);
  e.bit_exact = full.frames == enc.reconstructions;

  // Base sub-bitstream: serialized on its own, parsed back, decoded with no
  // enhancement unit present.
  const LayeredBitstream base_only = demux(mux(extract_layers(bs, kBaseLayer)));
  bool no_enh = std::all_of(base_only.units.begin(), base_only.units.end(),
                            [](const NalUnit& u) { return u.layer_id == kBaseLayer; });
  const SequenceDecodeResult base = decode_sequence(base_only, 0);
  bool latents_match = base.base_latents.size() == full.base_latents.size();
  for (std::size_t i = 0; latents_match && i < base.base_latents.size(); ++i) {
    latents_match = base.base_latents[i].poc == full.base_latents[i].poc &&
                    base.base_latents[i].base.values == full.base_latents[i].base.values;
  }
  e.base_standalone = no_enh && latents_match && !base.base_latents.empty();

  std::vector<int> pocs;
  std::vector<Detection> base_dets;
  std::vector<Detection> full_dets;
  for (const auto& pic : base.base_latents) {
    pocs.push_back(pic.poc);
    for (auto d : detect(lst(pic.base, bs.header, pic.poc))) {
      d.poc = pic.poc;
      base_dets.push_back(d);
    }
    for (auto d : detect(task_feature_reference(full.frames[static_cast<std::size_t>(pic.poc)]))) {
      d.poc = pic.poc;
      full_dets.push_back(d);
    }
  }
  const auto truth = boxes_at(s.gt, pocs);
  e.map_base = evaluate_map(base_dets, truth).mean_ap;
  e.map_full = evaluate_map(full_dets, truth).mean_ap;

  double psnr_sum = 0.0;
  double ssim_sum = 0.0;
  for (std::size_t i = 0; i < s.seq.frames.size(); ++i) {
    psnr_sum += psnr(s.seq.frames[i], full.frames[i]);
    ssim_sum += ms_ssim(s.seq.frames[i], full.frames[i]);
  }
  const double n = static_cast<double>(s.seq.frames.size());
  e.psnr = psnr_sum / n;
  e.ms_ssim = ssim_sum / n;
  e.bpp = e.total_bits / (n * s.seq.width() * s.seq.height());
  return e;
}

class Corpus {
 public:
  explicit Corpus(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& f : fs::directory_iterator(dir)) {
      if (f.path().extension() == ".scene") files.push_back(f.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      const SceneSpec spec = load_scene_spec(f.string());
      auto [seq, gt] = generate_synthetic(spec);
      scenes_.push_back({spec.name, std::move(seq), std::move(gt)});
    }
  }

  const std::vector<Scene>& scenes() const { return scenes_; }

  const std::vector<Eval>& at(const Point& p) {
    auto it = cache_.find(p);
    if (it != cache_.end()) return it->second;
    std::vector<Eval> evals;
    for (const auto& s : scenes_) {
      evals.push_back(evaluate(s, p));
      ++encodes_;
    }
    return cache_.emplace(p, std::move(evals)).first->second;
  }

  Eval mean(const Point& p) {
    const auto& v = at(p);
    Eval m;
    m.base_standalone = m.bit_exact = true;
    for (const auto& e : v) {
      m.total_bits += e.total_bits;
      m.base_bits += e.base_bits;
      m.bpp += e.bpp;
      m.psnr += e.psnr;
      m.ms_ssim += e.ms_ssim;
      m.map_base += e.map_base;
      m.map_full += e.map_full;
      m.direct_share += e.direct_share;
      m.base_standalone = m.base_standalone && e.base_standalone;
      m.bit_exact = m.bit_exact && e.bit_exact;
    }
    const double n = static_cast<double>(v.size());
    for (double* f : {&m.total_bits, &m.base_bits, &m.bpp, &m.psnr, &m.ms_ssim, &m.map_base, &m.map_full,
                      &m.direct_share}) {
      *f /= n;
    }
    return m;
  }

  // Every cached encode, for per-encode checks.
  template <typename F>
  bool all_encodes(F&& pred) const {
    for (const auto& [p, v] : cache_) {
      for (const auto& e : v) {
        if (!pred(p, e)) return false;
      }
    }
    return true;
  }

  int encodes() const { return encodes_; }

 private:
  std::vector<Scene> scenes_;
  std::map<Point, std::vector<Eval>> cache_;
  int encodes_ = 0;
};

// --- criteria -----------------------------------------------------------------

void criterion_1() {
  struct Row {
    double machine, human, expected;
  };
  const std::array<Row, 4> rows{{{-0.1345, 0.0905, 0.5978},
                                 {-0.1889, 0.4131, 0.3138},
                                 {-0.1345, -0.1871, 1.0},
                                 {-0.1889, 0.0195, 0.9064}}};
  bool ok = true;
  std::string got;
  for (const auto& r : rows) {
    const double t = break_even({r.machine, r.human});
    ok = ok && std::abs(t - r.expected) <= 1e-3;
    got += " " + fmt(t);
  }
  verdict(1, ok, "break-even points" + got);
}

RDCurve analytic_curve(double rate_factor) {
  // Quality rises 6 dB per doubling of rate.
  RDCurve c{MetricKind::kPsnr, {}};
  for (double r : {0.05, 0.1, 0.2, 0.4, 0.8, 1.6}) {
    c.points.push_back({r * rate_factor, 30.0 + 6.0 * std::log2(r / 0.05)});
  }
  return c;
}

void criterion_2() {
  const RDCurve anchor = analytic_curve(1.0);
  const double same = bd_rate(anchor, analytic_curve(1.0)).percent;
  const double half = bd_rate(anchor, analytic_curve(0.5)).percent;
  const double twice = bd_rate(anchor, analytic_curve(2.0)).percent;
  bool ok = std::abs(same) < 0.1 && std::abs(half + 50.0) < 0.1 && std::abs(twice - 100.0) < 0.1;

  const RDCurve bumpy{MetricKind::kPsnr, {{0.1, 60}, {0.2, 62}, {0.4, 61}, {0.8, 63}}};
  const CurveDiagnosis d = validate_curve(bumpy);
  std::string reason = "accepted";
  bool rejected = false;
  try {
    bd_rate(anchor, bumpy);
  } catch (const DataError& e) {
    rejected = true;
    reason = e.what();
  }
  ok = ok && rejected && !d.monotonic;
  verdict(2, ok, "BD-rate " + fmt(same, 3) + "% / " + fmt(half, 3) + "% / " + fmt(twice, 3) +
                     "%; non-monotonic curve rejected: " + reason);
}

const std::vector<Point> kScalabilityPoints = {{1, 38}, {2, 38}, {3, 38}, {4, 38}, {5, 30}, {6, 22}};

void criterion_3(Corpus& corpus) {
  for (const auto& p : kScalabilityPoints) corpus.at(p);
  bool standalone = true;
  bool smaller = true;
  for (const auto& p : kScalabilityPoints) {
    for (const auto& e : corpus.at(p)) {
      standalone = standalone && e.base_standalone;
      smaller = smaller && e.base_bits < e.total_bits;
    }
  }
  const Eval q1 = corpus.mean(kScalabilityPoints.front());
  const Eval q6 = corpus.mean(kScalabilityPoints.back());
  bool ratio_ok = true;
  for (const auto& p : kScalabilityPoints) {
    const Eval m = corpus.mean(p);
    info("q" + std::to_string(p.quality) + " qp" + std::to_string(p.qp) + ": base_bpp=" +
         fmt(m.base_bits / (m.total_bits / m.bpp)) + " bpp=" + fmt(m.bpp) + " mAP(base)=" + fmt(m.map_base) +
         " mAP(full)=" + fmt(m.map_full));
    if (p.quality >= 4) ratio_ok = ratio_ok && m.map_base >= 0.95 * m.map_full;
  }
  const bool ok = standalone && smaller && q6.map_base > q1.map_base && ratio_ok;
  verdict(3, ok,
          std::string("base standalone=") + (standalone ? "yes" : "no") + ", base<total=" + (smaller ? "yes" : "no") +
              ", mAP q6 " + fmt(q6.map_base) + " vs q1 " + fmt(q1.map_base) +
              ", base/full>=0.95 at q>=4: " + (ratio_ok ? "yes" : "no"));
}

bool non_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] < v[i - 1]) return false;
  }
  return true;
}

std::string join(const std::vector<double>& v, int prec) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : " ") + fmt(x, prec);
  return s;
}

void criterion_4(Corpus& corpus) {
  std::vector<double> rate, quality, ssim, map;
  for (int q = 1; q <= kQualityLevels; ++q) {
    const Eval m = corpus.mean({q, 0, 1, false});
    rate.push_back(m.bpp);
    quality.push_back(m.psnr);
    ssim.push_back(m.ms_ssim);
    map.push_back(m.map_base);
  }
  info("all-intra bpp:   " + join(rate, 4));
  info("all-intra PSNR:  " + join(quality, 3));
  info("all-intra MS-SSIM: " + join(ssim, 5));
  info("all-intra mAP(base), informational: " + join(map, 4) +
       (non_decreasing(map) ? " (non-decreasing)" : " (not monotone)"));
  bool ok = non_decreasing(rate) && non_decreasing(quality) && non_decreasing(ssim);

  std::vector<double> irate, ipsnr, issim;
  for (int qp : {38, 34, 30, 26, 22, 18}) {
    const Eval m = corpus.mean({5, qp});
    irate.push_back(m.bpp);
    ipsnr.push_back(m.psnr);
    issim.push_back(m.ms_ssim);
  }
  info("inter q5 QP 38..18 bpp:   " + join(irate, 4));
  info("inter q5 QP 38..18 PSNR:  " + join(ipsnr, 3));
  info("inter q5 QP 38..18 MS-SSIM: " + join(issim, 5));
  ok = ok && non_decreasing(irate) && non_decreasing(ipsnr) && non_decreasing(issim);

  const Frame& f = corpus.scenes().front().seq.frames.front();
  const double self = ms_ssim(f, f);
  ok = ok && self == 1.0;
  verdict(4, ok, "rate/PSNR/MS-SSIM ladders non-decreasing; MS-SSIM(x,x)=" + fmt(self, 17));
}

void criterion_5(Corpus& corpus) {
  bool ok = true;
  for (int qp : {22, 30, 38}) {
    const Eval on = corpus.mean({5, qp, 8, true});
    const Eval off = corpus.mean({5, qp, 8, false});
    const double saving = 100.0 * (1.0 - on.total_bits / off.total_bits);
    info("qp" + std::to_string(qp) + ": bits on/off " + fmt(on.total_bits, 0) + "/" + fmt(off.total_bits, 0) +
         " (saving " + fmt(saving, 2) + "%), PSNR " + fmt(on.psnr, 3) + "/" + fmt(off.psnr, 3) +
         ", DIRECT-mode share " + fmt(100.0 * on.direct_share, 2) + "%");
    ok = ok && on.total_bits < off.total_bits && on.psnr >= off.psnr;
  }
  verdict(5, ok, "interpolation predictor lowers bits without lowering PSNR at QP 22/30/38");
}

bool entropy_roundtrips(int count) {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> dim(1, 6);
  std::uniform_int_distribution<int> first(0, kBlockArea - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < count; ++i) {
    ChannelGroup g;
    g.first_channel = first(rng);
    g.channel_count = std::min(dim(rng), kBlockArea - g.first_channel);
    g.grid_h = dim(rng);
    g.grid_w = dim(rng);
    g.values.resize(g.plane_size() * static_cast<std::size_t>(g.channel_count));
    const double scale = std::pow(10.0, 4.0 * unit(rng));
    std::cauchy_distribution<double> heavy(0.0, scale / 100.0);
    for (auto& v : g.values) {
      const double u = unit(rng);
      if (u < 0.4) {
        v = 0;
      } else if (u < 0.98) {
        v = std::llround(std::clamp(heavy(rng), -1e6, 1e6));
      } else {
        v = (u < 0.99 ? 1 : -1) * static_cast<std::int64_t>(rng() >> 34);
      }
    }
    const auto bytes = encode_channel_group(g);
    const ChannelGroup back = decode_channel_group(bytes, g.first_channel, g.channel_count, g.grid_h, g.grid_w);
    if (back.values != g.values) return false;
  }
  return true;
}

struct FuzzTally {
  int inputs = 0;
  int decoded = 0;
  int rejected = 0;
  int unexpected = 0;
};

void fuzz_one(const std::vector<std::uint8_t>& bytes, FuzzTally& t) {
  ++t.inputs;
  try {
    const LayeredBitstream bs = demux(bytes);
    decode_sequence(bs, 0);
    decode_sequence(bs, 1);
    ++t.decoded;
  } catch (const DataError&) {
    ++t.rejected;
  } catch (const std::exception& e) {
    if (t.unexpected++ < 3) info(std::string("fuzz: unexpected exception: ") + e.what());
  }
}

FuzzTally fuzz(int count) {
  Sequence seq;
  for (int i = 0; i < 3; ++i) {
    seq.frames.push_back(testing::make_frame(
        32, 32, [i](int x, int y) { return testing::texture(x + 2 * i, y + i); }, i));
  }
  GopConfig cfg;
  cfg.intra_period = 2;
  const std::vector<std::uint8_t> valid = mux(encode_sequence(seq, 3, 30, cfg).bitstream);

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> byte(0, 255);
  FuzzTally t;
  for (int i = 0; i < count; ++i) {
    std::vector<std::uint8_t> b;
    switch (i % 4) {
      case 0: {  // random bytes
        b.resize(std::uniform_int_distribution<std::size_t>(0, 2 * valid.size())(rng));
        for (auto& x : b) x = static_cast<std::uint8_t>(byte(rng));
        break;
      }
      case 1: {  // byte substitutions
        b = valid;
        const int n = 1 + static_cast<int>(rng() % 8);
        for (int k = 0; k < n; ++k) b[rng() % b.size()] = static_cast<std::uint8_t>(byte(rng));
        break;
      }
      case 2: {  // bit flips
        b = valid;
        const int n = 1 + static_cast<int>(rng() % 4);
        for (int k = 0; k < n; ++k) b[rng() % b.size()] ^= static_cast<std::uint8_t>(1u << (rng() % 8));
        break;
      }
      default: {  // truncation, insertion or span duplication
        b = valid;
        const std::size_t at = rng() % b.size();
        const int op = static_cast<int>(rng() % 3);
        if (op == 0) {
          b.resize(at);
        } else if (op == 1) {
          b.insert(b.begin() + static_cast<std::ptrdiff_t>(at), static_cast<std::uint8_t>(byte(rng)));
        } else {
          const std::size_t len = std::min<std::size_t>(rng() % 64, b.size() - at);
          std::vector<std::uint8_t> span(b.begin() + static_cast<std::ptrdiff_t>(at),
                                         b.begin() + static_cast<std::ptrdiff_t>(at + len));
          b.insert(b.begin() + static_cast<std::ptrdiff_t>(at), span.begin(), span.end());
        }
      }
    }
    fuzz_one(b, t);
  }
  return t;
}

// NAL header bits packed one field at a time, most significant first.
std::array<std::uint8_t, 2> nal_header_oracle(unsigned type, unsigned layer, unsigned tid_plus1) {
  std::vector<int> bits;
  auto push = [&](unsigned v, int width) {
    for (int i = width - 1; i >= 0; --i) bits.push_back(static_cast<int>((v >> i) & 1u));
  };
  push(0, 1);
  push(type, 6);
  push(layer, 6);
  push(tid_plus1, 3);
  std::array<std::uint8_t, 2> out{};
  for (std::size_t i = 0; i < bits.size(); ++i) out[i / 8] = static_cast<std::uint8_t>(out[i / 8] * 2 + bits[i]);
  return out;
}

void criterion_6(Corpus& corpus) {
  const bool entropy_ok = entropy_roundtrips(10000);
  const FuzzTally t = fuzz(100000);
  const bool fuzz_ok = t.unexpected == 0 && t.inputs == 100000;

  bool intra_ok = true;
  for (const auto& s : corpus.scenes()) {
    for (int q = 1; q <= kQualityLevels; ++q) {
      const Frame& f = s.seq.frames.front();
      const StreamHeader h = StreamHeader::make(f.width(), f.height(), 1, 1, quality_profile(q));
      const IntraEncodeResult r = encode_intra(f, h);
      intra_ok = intra_ok && decode_intra_full(r.base_unit, r.enh_unit, h) == r.reconstruction;
    }
  }
  int exact_encodes = 0;
  const bool sequences_ok = corpus.all_encodes([&](const Point&, const Eval& e) {
    exact_encodes += e.bit_exact ? 1 : 0;
    return e.bit_exact;
  });

  NalUnit unit;
  unit.type = NalUnitType::kIntraBase;
  unit.layer_id = kBaseLayer;
  unit.temporal_id_plus1 = 1;
  const auto bytes = write_nal(unit);
  const auto oracle = nal_header_oracle(1, 0, 1);
  const bool nal_ok = bytes.size() == kNalPrefixBytes && bytes[4] == 0x02 && bytes[5] == 0x01 &&
                      oracle[0] == 0x02 && oracle[1] == 0x01;

  info("fuzz: " + std::to_string(t.inputs) + " inputs, " + std::to_string(t.rejected) + " rejected, " +
       std::to_string(t.decoded) + " decoded, " + std::to_string(t.unexpected) + " unexpected");
  info("bit-exact sequence decodes: " + std::to_string(exact_encodes) + " of " + std::to_string(corpus.encodes()));
  verdict(6, entropy_ok && fuzz_ok && intra_ok && sequences_ok && nal_ok,
          std::string("entropy roundtrip x10^4=") + (entropy_ok ? "ok" : "mismatch") + ", fuzz x10^5=" +
              (fuzz_ok ? "ok" : "crash") + ", intra exact=" + (intra_ok ? "yes" : "no") +
              ", inter exact=" + (sequences_ok ? "yes" : "no") + ", NAL 0x02 0x01=" + (nal_ok ? "yes" : "no"));
}

void criterion_7() {
  std::mt19937_64 rng(2024);
  int holds = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 1000; ++i) {
    const DpiReport r = dpi_check(random_chain(rng));
    holds += r.holds ? 1 : 0;
    worst = std::min(worst, r.i_y_xhat - r.i_y_t);
  }
  verdict(7, holds == 1000,
          std::to_string(holds) + "/1000 chains satisfy I(Y;Xhat) >= I(Y;T) - 1e-9, min gap " + fmt(worst, 12) +
              " bits");
}

void criterion_8() {
  const Frame a(32, 32, 0, 100);
  const Frame b(32, 32, 0, 101);
  const double p1 = psnr(a, b);
  const Frame c = testing::make_frame(32, 32, [](int x, int y) { return (x + y) % 2 ? 255 : 0; });
  const Frame d = testing::make_frame(32, 32, [](int x, int y) { return (x + y) % 2 ? 0 : 255; });
  const double p0 = psnr(c, d);

  const GroundTruthBox g{0, 0, 10, 10, 20, 20};
  const GroundTruthBox g2{0, 0, 100, 100, 20, 20};
  const Detection hit{0, 0, 10, 10, 20, 20, 0.9};
  const Detection shifted{0, 0, 15, 10, 20, 20, 0.9};  // IoU 0.6 with g
  const Detection thin{0, 0, 10, 10, 20, 6, 0.9};      // IoU 0.3 with g
  const double m1 = evaluate_map({hit}, {g}).mean_ap;
  const double m05 = evaluate_map({shifted}, {g, g2}).mean_ap;
  const double m0 = evaluate_map({thin}, {g}).mean_ap;

  const bool ok = std::abs(p1 - 48.13) < 0.01 && std::abs(p0) < 0.01 && m1 == 1.0 && m05 == 0.5 && m0 == 0.0;
  verdict(8, ok, "PSNR " + fmt(p1, 4) + " dB / " + fmt(p0, 4) + " dB; mAP " + fmt(m1, 1) + " " + fmt(m05, 1) + " " +
                     fmt(m0, 1));
}

template <typename F>
void guarded(int n, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    verdict(n, false, std::string("threw: ") + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  const auto start = std::chrono::steady_clock::now();
  const fs::path corpus_dir = argc > 1 ? fs::path(argv[1]) : fs::path(LSVC_CORPUS_DIR);
  Corpus corpus(corpus_dir);
  info("corpus: " + std::to_string(corpus.scenes().size()) + " sequences from " + corpus_dir.string());

  guarded(1, criterion_1);
  guarded(2, criterion_2);
  guarded(3, [&] { criterion_3(corpus); });
  guarded(4, [&] { criterion_4(corpus); });
  guarded(5, [&] { criterion_5(corpus); });
  guarded(6, [&] { criterion_6(corpus); });
  guarded(7, criterion_7);
  guarded(8, criterion_8);

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  info("runtime " + fmt(secs, 1) + " s, " + std::to_string(corpus.encodes()) + " sequence encodes");
  std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED" : std::to_string(g_failures) + " CRITERIA FAILED")
            << std::endl;
  return g_failures == 0 ? 0 : 1;
}
