#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "commands.hpp"
#include "kv_config.hpp"

namespace lsvc::cli {

struct ConfigPoint {
  int quality = 6;
  int qp = -1;  // -1 for all-intra
};

struct SweepConfig {
  std::string label = "run";
  CodingMode mode = CodingMode::kAllIntra;
  std::vector<int> qualities{1, 2, 3, 4, 5, 6};
  // Model index paired with inter QP for random access.
  std::vector<ConfigPoint> combos{{6, 18}, {6, 22}, {5, 26}, {5, 30}, {4, 34}, {4, 38}};
  int period = 8;
  bool interp = true;
  InterpolationModes modes;
  int frames = 0;  // 0 = whole sequence
  DetectParams detect;

  static SweepConfig from(const KeyValueConfig& kv);
  std::vector<ConfigPoint> points() const;
};

struct SweepRow {
  std::string key;
  std::string label;
  std::string sequence;
  std::string mode;
  int quality = 0;
  int qp = -1;
  std::string interp;
  int frames = 0;
  double rate_bpp = 0.0;
  double base_bpp = 0.0;
  double psnr = 0.0;
  double ms_ssim = 0.0;
  double map = 0.0;
  double map_full = 0.0;
  double direct_share = 0.0;
};

inline constexpr const char* kSweepCsvHeader =
    "key,label,sequence,mode,quality,qp,interp,frames,rate_bpp,base_bpp,psnr,ms_ssim,map,map_full,direct_share";

std::string point_key(const SweepConfig& cfg, const std::string& sequence, const ConfigPoint& p);
SweepRow evaluate_point(const SweepConfig& cfg, const std::string& scene_path, const ConfigPoint& p);

std::vector<SweepRow> read_sweep_csv(const std::string& path);
std::string format_row(const SweepRow& r);

struct SweepSummary {
  int computed = 0;
  int reused = 0;
};

/// Runs every (scene, point) pair not already present in
/// <out_dir>/results.csv and appends one row per pair.
SweepSummary cmd_sweep(const std::string& config_path, const std::string& corpus_dir, const std::string& out_dir,
                       std::ostream& log);

struct ReportOptions {
  std::string sweep_dir;
  std::string anchor;
  std::string test;
  bool break_even = false;
  std::optional<double> machine_bd;
  std::optional<double> human_bd;
};

void cmd_report(const ReportOptions& o, std::ostream& out);

}  // namespace lsvc::cli
