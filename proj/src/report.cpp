#include "photonmix/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace photonmix {

namespace {

void write_meta(std::ostream& os, const Metadata& meta) {
  for (const auto& [key, value] : meta) os << "# " << key << ": " << value << '\n';
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// Round step for roughly `target` axis ticks over [lo, hi].
double tick_step(double lo, double hi, int target) {
  const double raw = (hi - lo) / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= m * mag) return m * mag;
  }
  return 10.0 * mag;
}

constexpr const char* kPalette[] = {"#d62728", "#2ca02c", "#9467bd", "#8c564b", "#1f77b4",
                                    "#ff7f0e", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

}  // namespace

std::string format_fixed(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

void write_sweep_csv(std::ostream& os, const Metadata& meta, const SweepResult& sweep) {
  write_meta(os, meta);
  os << "# swept: " << sweep.param_name << '\n';
  os << "param,mean_total_reward,stderr,reps\n";
  for (const auto& row : sweep.rows) {
    os << format_fixed(row.param) << ',' << format_fixed(row.mean) << ','
       << format_fixed(row.std_error) << ',' << row.reps << '\n';
  }
}

void write_series_csv(std::ostream& os, const Metadata& meta,
                      const std::vector<LabeledSweep>& series) {
  write_meta(os, meta);
  os << "series,param,mean_total_reward,stderr,reps\n";
  for (const auto& s : series) {
    for (const auto& row : s.sweep.rows) {
      os << s.label << ',' << format_fixed(row.param) << ',' << format_fixed(row.mean) << ','
         << format_fixed(row.std_error) << ',' << row.reps << '\n';
    }
  }
}

void write_episode_csv(std::ostream& os, const Metadata& meta, const EpisodeResult& episode) {
  write_meta(os, meta);
  os << "# total_reward: " << format_fixed(episode.total_reward) << '\n';
  os << "# happy_offset: " << (episode.happy_offset ? std::to_string(*episode.happy_offset) : "none")
     << '\n';
  os << "t,phase,choice_1,choice_2,hit_a,hit_b,happy,reward_1,reward_2\n";
  for (const auto& s : episode.trace) {
    os << s.t << ',' << to_string(s.phase) << ',' << to_char(s.choices.player1) << ','
       << to_char(s.choices.player2) << ',' << int(s.outcome.hit_a) << ',' << int(s.outcome.hit_b)
       << ',' << int(s.outcome.happy_active) << ',' << format_fixed(s.outcome.reward_1) << ','
       << format_fixed(s.outcome.reward_2) << '\n';
  }
}

ChartSeries to_series(const LabeledSweep& sweep) {
  ChartSeries s;
  s.label = sweep.label;
  for (const auto& row : sweep.sweep.rows) s.points.emplace_back(row.param, row.mean);
  return s;
}

void write_svg(std::ostream& os, const Chart& chart) {
  double x_lo = INFINITY, x_hi = -INFINITY, y_lo = INFINITY, y_hi = -INFINITY;
  bool plottable = false;
  for (const auto& s : chart.series) {
    plottable = plottable || s.points.size() >= 2;
    for (const auto& [x, y] : s.points) {
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  }
  if (!plottable) throw std::invalid_argument("chart needs a series with at least two points");
  if (chart.baseline) {
    y_lo = std::min(y_lo, *chart.baseline);
    y_hi = std::max(y_hi, *chart.baseline);
  }
  if (x_hi == x_lo) x_hi = x_lo + 1.0;
  if (y_hi == y_lo) y_hi = y_lo + 1.0;
  const double y_pad = 0.05 * (y_hi - y_lo);
  y_lo -= y_pad;
  y_hi += y_pad;

  const double width = 800, height = 500;
  const double left = 80, right = 220, top = 50, bottom = 60;
  const double plot_w = width - left - right, plot_h = height - top - bottom;
  auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double y) { return top + (y_hi - y) / (y_hi - y_lo) * plot_h; };

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
     << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
     << "\" fill=\"white\"/>\n"
     << "<text x=\"" << num(left + plot_w / 2) << "\" y=\"28\" text-anchor=\"middle\" "
     << "font-family=\"sans-serif\" font-size=\"16\">" << xml_escape(chart.title) << "</text>\n";

  // Axes and ticks.
  os << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n"
     << "<line x1=\"" << num(left) << "\" y1=\"" << num(top + plot_h) << "\" x2=\""
     << num(left + plot_w) << "\" y2=\"" << num(top + plot_h) << "\"/>\n"
     << "<line x1=\"" << num(left) << "\" y1=\"" << num(top) << "\" x2=\"" << num(left)
     << "\" y2=\"" << num(top + plot_h) << "\"/>\n"
     << "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
  const double xs = tick_step(x_lo, x_hi, 10);
  for (double x = std::ceil(x_lo / xs) * xs; x <= x_hi + 1e-9; x += xs) {
    os << "<line x1=\"" << num(px(x)) << "\" y1=\"" << num(top + plot_h) << "\" x2=\""
       << num(px(x)) << "\" y2=\"" << num(top + plot_h + 5) << "\" stroke=\"black\"/>"
       << "<text x=\"" << num(px(x)) << "\" y=\"" << num(top + plot_h + 18)
       << "\" text-anchor=\"middle\">" << num(x) << "</text>\n";
  }
  const double ys = tick_step(y_lo, y_hi, 8);
  for (double y = std::ceil(y_lo / ys) * ys; y <= y_hi + 1e-9; y += ys) {
    os << "<line x1=\"" << num(left - 5) << "\" y1=\"" << num(py(y)) << "\" x2=\"" << num(left)
       << "\" y2=\"" << num(py(y)) << "\" stroke=\"black\"/>"
       << "<text x=\"" << num(left - 8) << "\" y=\"" << num(py(y) + 4)
       << "\" text-anchor=\"end\">" << num(y) << "</text>\n";
  }
  os << "<text x=\"" << num(left + plot_w / 2) << "\" y=\"" << num(height - 15)
     << "\" text-anchor=\"middle\" font-size=\"13\">" << xml_escape(chart.x_label) << "</text>\n"
     << "<text x=\"20\" y=\"" << num(top + plot_h / 2) << "\" text-anchor=\"middle\" "
     << "font-size=\"13\" transform=\"rotate(-90 20 " << num(top + plot_h / 2) << ")\">"
     << xml_escape(chart.y_label) << "</text>\n</g>\n";

  int legend_row = 0;
  auto legend = [&](const std::string& label, const char* color, bool dashed) {
    const double ly = top + 10 + 18 * legend_row++;
    const double lx = left + plot_w + 15;
    os << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 25)
       << "\" y2=\"" << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\""
       << (dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>"
       << "<text x=\"" << num(lx + 30) << "\" y=\"" << num(ly + 4)
       << "\" font-family=\"sans-serif\" font-size=\"11\">" << xml_escape(label) << "</text>\n";
  };

  if (chart.baseline) {
    os << "<line x1=\"" << num(left) << "\" y1=\"" << num(py(*chart.baseline)) << "\" x2=\""
       << num(left + plot_w) << "\" y2=\"" << num(py(*chart.baseline))
       << "\" stroke=\"#17becf\" stroke-width=\"1.5\" stroke-dasharray=\"8,5\"/>\n";
    legend(chart.baseline_label, "#17becf", true);
  }
  std::size_t color = 0;
  for (const auto& s : chart.series) {
    const char* c = kPalette[color++ % std::size(kPalette)];
    os << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"1.5\""
       << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << " points=\"";
    for (const auto& [x, y] : s.points) os << num(px(x)) << ',' << num(py(y)) << ' ';
    os << "\"/>\n";
    legend(s.label, c, s.dashed);
  }
  os << "</svg>\n";
}

}  // namespace photonmix
