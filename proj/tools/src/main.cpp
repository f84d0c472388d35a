#include <iostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "commands.hpp"
#include "lsvc/error.hpp"
#include "sweep.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitInvariant = 4;

}  // namespace

int main(int argc, char** argv) {
  using namespace lsvc::cli;
  CLI::App app{"Layered scalable video codec: base layer for machines, enhancement for viewers"};
  app.require_subcommand(1);

  SynthOptions synth;
  auto* s = app.add_subcommand("synth", "Render a synthetic scene to raw video plus ground-truth CSV");
  s->add_option("spec", synth.spec_path, "Scene file (key=value)")->required()->check(CLI::ExistingFile);
  s->add_option("out", synth.out_path, "Raw 8-bit output")->required();
  s->add_option("--gt", synth.gt_path, "Ground-truth CSV (default <out>.gt.csv)");

  EncodeOptions enc;
  std::string mode = "random_access";
  auto* e = app.add_subcommand("encode", "Encode raw video into a layered .lsvc stream");
  e->add_option("in", enc.in_path, "Raw 8-bit input")->required()->check(CLI::ExistingFile);
  e->add_option("out", enc.out_path, "Output .lsvc")->required();
  e->add_option("--width", enc.width)->required();
  e->add_option("--height", enc.height)->required();
  e->add_option("--quality", enc.quality, "Model index 1..6")->check(CLI::Range(1, 6));
  e->add_option("--qp", enc.qp, "Inter QP")->check(CLI::Range(0, 51));
  e->add_option("--mode", mode)->check(CLI::IsMember({"all_intra", "random_access"}));
  e->add_option("--period", enc.period, "Intra period (power of two)");
  e->add_flag("--interp,!--no-interp", enc.interp, "Frame-interpolation predictor");
  e->add_option("--interp-modes", enc.interp_modes)->check(CLI::IsMember({"both", "direct", "replace"}));

  DecodeOptions dec;
  auto* d = app.add_subcommand("decode", "Decode all layers to raw video, or extract the base layer");
  d->add_option("in", dec.in_path)->required()->check(CLI::ExistingFile);
  d->add_option("out", dec.out_path, "Raw video (all) or base-only .lsvc (base)")->required();
  d->add_option("--layers", dec.layers)->check(CLI::IsMember({"base", "all"}));

  DetectOptions det;
  auto* t = app.add_subcommand("detect", "Run the proxy detector on base-layer latents");
  t->add_option("in", det.in_path, "Bitstream (full or base-only)")->required()->check(CLI::ExistingFile);
  t->add_option("gt", det.gt_path, "Ground-truth CSV")->required()->check(CLI::ExistingFile);
  t->add_option("out", det.out_path, "Detections CSV")->required();
  t->add_option("--threshold", det.params.threshold);
  t->add_option("--min-area", det.params.min_area);

  MetricsOptions met;
  auto* m = app.add_subcommand("metrics", "Per-frame PSNR and MS-SSIM");
  m->add_option("orig", met.orig_path)->required()->check(CLI::ExistingFile);
  m->add_option("recon", met.recon_path)->required()->check(CLI::ExistingFile);
  m->add_option("out", met.out_path)->required();
  m->add_option("--width", met.width)->required();
  m->add_option("--height", met.height)->required();

  std::string sweep_config;
  std::string corpus;
  std::string sweep_out;
  auto* w = app.add_subcommand("sweep", "Run a config grid over a scene corpus (resumable)");
  w->add_option("config", sweep_config)->required()->check(CLI::ExistingFile);
  w->add_option("corpus", corpus)->required()->check(CLI::ExistingDirectory);
  w->add_option("out_dir", sweep_out)->required();

  ReportOptions rep;
  auto* r = app.add_subcommand("report", "RD curves, curve validation, BD-rate and break-even");
  r->add_option("sweep_dir", rep.sweep_dir)->check(CLI::ExistingDirectory);
  r->add_option("--anchor", rep.anchor);
  r->add_option("--test", rep.test);
  r->add_flag("--break-even", rep.break_even);
  r->add_option("--machine-bd", rep.machine_bd, "Relative machine-task rate, e.g. -0.1345");
  r->add_option("--human-bd", rep.human_bd, "Relative human-task rate, e.g. 0.0905");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (s->parsed()) cmd_synth(synth, std::cout);
    if (e->parsed()) {
      enc.mode = coding_mode_from_string(mode);
      cmd_encode(enc, std::cout);
    }
    if (d->parsed()) cmd_decode(dec, std::cout);
    if (t->parsed()) cmd_detect(det, std::cout);
    if (m->parsed()) cmd_metrics(met, std::cout);
    if (w->parsed()) cmd_sweep(sweep_config, corpus, sweep_out, std::cout);
    if (r->parsed()) cmd_report(rep, std::cout);
  } catch (const lsvc::DataError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitData;
  } catch (const std::logic_error& err) {
    std::cerr << "internal error: " << err.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitData;
  }
  return 0;
}
