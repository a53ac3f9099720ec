#ifndef PHOTONMIX_REPORT_HPP
#define PHOTONMIX_REPORT_HPP

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "photonmix/experiment.hpp"

namespace photonmix {

// Ordered key/value pairs written as "# key: value" header lines.
using Metadata = std::vector<std::pair<std::string, std::string>>;

// Fixed six-decimal rendering used for every number in CSV output.
std::string format_fixed(double value);

struct LabeledSweep {
  std::string label;
  SweepResult sweep;
};

// Columns: param,mean_total_reward,stderr,reps
void write_sweep_csv(std::ostream& os, const Metadata& meta, const SweepResult& sweep);

// Columns: series,param,mean_total_reward,stderr,reps
void write_series_csv(std::ostream& os, const Metadata& meta,
                      const std::vector<LabeledSweep>& series);

// Per-step trace of one episode.
void write_episode_csv(std::ostream& os, const Metadata& meta, const EpisodeResult& episode);

struct ChartSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
  bool dashed = false;
};

struct Chart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<ChartSeries> series;
  std::optional<double> baseline;  // horizontal dashed rule
  std::string baseline_label = "entangled-only";
};

ChartSeries to_series(const LabeledSweep& sweep);

// Self-contained SVG 1.1 line chart. Throws std::invalid_argument if no
// series has at least two points.
void write_svg(std::ostream& os, const Chart& chart);

}  // namespace photonmix

#endif  // PHOTONMIX_REPORT_HPP
