#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "lsvc/bd_rate.hpp"
#include "lsvc/break_even.hpp"
#include "lsvc/error.hpp"
#include "sweep.hpp"

namespace lsvc::cli {
namespace {

constexpr MetricKind kMetrics[] = {MetricKind::kPsnr, MetricKind::kMsSsim, MetricKind::kMap};

double metric_of(const SweepRow& r, MetricKind m) {
  switch (m) {
    case MetricKind::kPsnr:
      return r.psnr;
    case MetricKind::kMsSsim:
      return r.ms_ssim;
    case MetricKind::kMap:
      return r.map;
  }
  return std::nan("");
}

// Corpus-mean curve of one label: one point per (quality, qp). The machine
// task is served by the base layer alone, so mAP is charted against base rate.
RDCurve corpus_curve(const std::vector<SweepRow>& rows, const std::string& label, MetricKind metric) {
  std::map<std::pair<int, int>, std::pair<std::vector<double>, std::vector<double>>> points;
  for (const auto& r : rows) {
    if (r.label != label) continue;
    // The base layer depends on the quality index alone, so mAP points are keyed by it.
    auto& [rates, qualities] = points[{r.quality, metric == MetricKind::kMap ? -1 : r.qp}];
    rates.push_back(metric == MetricKind::kMap ? r.base_bpp : r.rate_bpp);
    qualities.push_back(metric_of(r, metric));
  }
  RDCurve c{metric, {}};
  for (const auto& [k, v] : points) {
    double rate = 0.0;
    double quality = 0.0;
    for (double x : v.first) rate += x;
    for (double x : v.second) quality += x;  // any non-finite entry makes the point non-finite
    c.points.push_back({rate / static_cast<double>(v.first.size()), quality / static_cast<double>(v.second.size())});
  }
  std::sort(c.points.begin(), c.points.end(), [](const RDPoint& a, const RDPoint& b) { return a.rate < b.rate; });
  return c;
}

std::string fmt(double v, int precision = 4) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(precision) << v;
  return s.str();
}

struct BdOutcome {
  std::optional<double> percent;
  std::string status;
};

BdOutcome try_bd(const RDCurve& anchor, const RDCurve& test) {
  try {
    const auto da = validate_curve(anchor);
    const auto dt = validate_curve(test);
    if (!da.monotonic || !dt.monotonic) return {std::nullopt, "non-monotonic curve"};
    if (overlap(anchor, test).empty()) return {std::nullopt, "no quality overlap"};
    return {bd_rate(anchor, test).percent, "ok"};
  } catch (const DataError& e) {
    return {std::nullopt, e.what()};
  }
}

void emit_break_even(std::ostream& out, std::ostream& csv, const std::string& tag, double machine, double human) {
  const double t = break_even({machine, human});
  out << "break_even " << tag << " machine_bd=" << fmt(machine) << " human_bd=" << fmt(human) << " t_h=" << fmt(t)
      << '\n';
  csv << "break_even," << tag << ',' << fmt(machine, 6) << ',' << fmt(human, 6) << ',' << fmt(t) << '\n';
}

}  // namespace

void cmd_report(const ReportOptions& o, std::ostream& out) {
  if (o.machine_bd.has_value() != o.human_bd.has_value()) {
    throw DataError("--machine-bd and --human-bd must be given together");
  }
  std::ostringstream csv;
  csv << "kind,a,b,c,d,e\n";

  if (o.break_even && o.machine_bd) emit_break_even(out, csv, "given", *o.machine_bd, *o.human_bd);

  if (!o.sweep_dir.empty()) {
    const auto rows = read_sweep_csv((std::filesystem::path(o.sweep_dir) / "results.csv").string());
    std::vector<std::string> labels;
    for (const auto& r : rows) {
      if (std::find(labels.begin(), labels.end(), r.label) == labels.end()) labels.push_back(r.label);
    }

    for (const auto& label : labels) {
      for (MetricKind m : kMetrics) {
        const RDCurve c = corpus_curve(rows, label, m);
        out << "curve " << label << ' ' << to_string(m) << ':';
        for (const auto& p : c.points) out << " (" << fmt(p.rate) << ", " << fmt(p.quality) << ')';
        try {
          const auto d = validate_curve(c);
          out << " monotonic=" << (d.monotonic ? "yes" : "no") << " concave=" << (d.concave_in_log_rate ? "yes" : "no");
          csv << "curve," << label << ',' << to_string(m) << ',' << c.points.size() << ',' << d.monotonic << ','
              << d.concave_in_log_rate << '\n';
        } catch (const DataError& e) {
          out << " invalid: " << e.what();
          csv << "curve," << label << ',' << to_string(m) << ',' << c.points.size() << ",invalid,invalid\n";
        }
        out << '\n';
      }
    }

    std::vector<std::pair<std::string, std::string>> pairs;
    if (!o.anchor.empty() || !o.test.empty()) {
      if (o.anchor.empty() || o.test.empty()) throw DataError("--anchor and --test must be given together");
      for (const auto& l : {o.anchor, o.test}) {
        if (std::find(labels.begin(), labels.end(), l) == labels.end()) throw DataError("unknown label " + l);
      }
      pairs.emplace_back(o.anchor, o.test);
    } else {
      for (std::size_t i = 0; i < labels.size(); ++i) {
        for (std::size_t j = i + 1; j < labels.size(); ++j) pairs.emplace_back(labels[i], labels[j]);
      }
    }

    for (const auto& [a, t] : pairs) {
      std::map<MetricKind, BdOutcome> bd;
      for (MetricKind m : kMetrics) {
        bd[m] = try_bd(corpus_curve(rows, a, m), corpus_curve(rows, t, m));
        out << "bd_rate " << to_string(m) << ' ' << t << " vs " << a << ": "
            << (bd[m].percent ? fmt(*bd[m].percent, 2) + "%" : "undefined (" + bd[m].status + ")") << '\n';
        csv << "bd_rate," << a << ',' << t << ',' << to_string(m) << ','
            << (bd[m].percent ? fmt(*bd[m].percent, 4) : "nan") << ',' << bd[m].status << '\n';
      }
      if (o.break_even && !o.machine_bd) {
        const auto& machine = bd[MetricKind::kMap];
        for (MetricKind human : {MetricKind::kPsnr, MetricKind::kMsSsim}) {
          if (machine.percent && bd[human].percent) {
            emit_break_even(out, csv, t + "_vs_" + a + "_" + to_string(human), *machine.percent / 100.0,
                            *bd[human].percent / 100.0);
          } else {
            out << "break_even " << to_string(human) << ": undefined (missing BD value)\n";
          }
        }
      }
    }
    std::ofstream(std::filesystem::path(o.sweep_dir) / "report.csv") << csv.str();
  } else if (!o.machine_bd) {
    throw DataError("report needs a sweep directory or --machine-bd/--human-bd");
  }
}

}  // namespace lsvc::cli
