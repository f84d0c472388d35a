#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lsvc/bitstream.hpp"
#include "lsvc/frame.hpp"
#include "lsvc/machine_task.hpp"
#include "lsvc/sequence_codec.hpp"

namespace lsvc::cli {

enum class CodingMode { kAllIntra, kRandomAccess };

CodingMode coding_mode_from_string(const std::string& s);
std::string to_string(CodingMode m);
InterpolationModes interpolation_modes_from_string(const std::string& s);
std::string to_string(const InterpolationModes& m);

struct SynthOptions {
  std::string spec_path;
  std::string out_path;
  std::string gt_path;  // empty: <out>.gt.csv
};

struct EncodeOptions {
  std::string in_path;
  std::string out_path;
  int width = 0;
  int height = 0;
  int quality = 6;
  int qp = 22;
  CodingMode mode = CodingMode::kRandomAccess;
  int period = 8;
  bool interp = true;
  std::string interp_modes = "both";
};

struct DecodeOptions {
  std::string in_path;
  std::string out_path;
  std::string layers = "all";
};

struct DetectOptions {
  std::string in_path;
  std::string gt_path;
  std::string out_path;
  DetectParams params;
};

struct MetricsOptions {
  std::string orig_path;
  std::string recon_path;
  std::string out_path;
  int width = 0;
  int height = 0;
};

void cmd_synth(const SynthOptions& o, std::ostream& log);
void cmd_encode(const EncodeOptions& o, std::ostream& log);
void cmd_decode(const DecodeOptions& o, std::ostream& log);
void cmd_detect(const DetectOptions& o, std::ostream& log);
void cmd_metrics(const MetricsOptions& o, std::ostream& log);

GopConfig gop_config_for(CodingMode mode, int period, const InterpolationModes& modes);

/// Base-layer-only detection: decodes nothing but INTRA_BASE units.
std::vector<Detection> detect_base_layer(const LayeredBitstream& bs, const DetectParams& params,
                                         std::vector<int>* pocs = nullptr);

/// Ground-truth boxes whose POC is in `pocs`.
std::vector<GroundTruthBox> boxes_at(const std::vector<GroundTruthBox>& gt, const std::vector<int>& pocs);

void write_detections_csv(const std::vector<Detection>& dets, const std::string& path);

}  // namespace lsvc::cli
