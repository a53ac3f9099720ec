#include "photonmix/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "photonmix/optics.hpp"
#include "photonmix/report.hpp"

namespace photonmix::cli {

namespace {

const std::vector<std::int64_t> kDecadePeriods{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};

const std::vector<MachinesSpec> kFig3Pairs{{0.6, 0.4}, {0.7, 0.3}, {0.8, 0.2}, {0.9, 0.1}};
const std::vector<MachinesSpec> kFig4aPairs{
    {0.9, 0.1}, {0.8, 0.2}, {0.7, 0.3}, {0.6, 0.4}, {0.5, 0.5}};

constexpr const char* kFigureHelp =
    "Presets (other flags such as --reps, --seed, --si-range override the grid):\n"
    "  fig3a  (pa,pb) in {(0.6,0.4),(0.7,0.3),(0.8,0.2),(0.9,0.1)}, T=50, CP=2, SI 1..50,\n"
    "         plus the entangled-only baseline for each pair\n"
    "  fig3b  same pairs, T in {10,20,...,100}, CP=2, SI 1..50\n"
    "  fig3c  fig3b normalized per curve to (R-Rmin)/(Rmax-Rmin), plus the average over T\n"
    "  fig4a  (pa,pb) from (0.9,0.1) to (0.5,0.5): difficulty 1-(pa-pb) vs optimal SI\n"
    "         of the T-averaged normalized curve\n"
    "  fig4b  (pa,pb)=(0.7,0.3), SI=10, CP 1..10, mean over T in {10,20,...,100}\n";

struct RawOptions {
  double pa = 0.6;
  double pb = 0.4;
  std::string t = "50";
  std::int64_t si = 14;
  std::int64_t cp = 2;
  std::int64_t steps = 1500;
  std::int64_t reps = 1000;
  std::uint64_t seed = 0;
  std::string strategy = "mixed";
  std::string out;
  std::string format = "csv";
  std::string si_range;
  std::string cp_range;
  std::string t_values;
  unsigned threads = 0;
  bool trace = false;
  std::uint64_t rep = 0;
  std::string figure;
};

std::int64_t parse_int(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw UsageError("malformed integer for " + what + ": '" + s + "'");
  return v;
}

IntRange parse_range(const std::string& s, const std::string& what) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw UsageError(what + " must look like A:B, got '" + s + "'");
  IntRange r{parse_int(s.substr(0, colon), what), parse_int(s.substr(colon + 1), what)};
  if (r.first > r.last) throw UsageError(what + " must have A <= B, got '" + s + "'");
  return r;
}

std::optional<std::int64_t> parse_period(const std::string& s) {
  if (s == "none") return std::nullopt;
  const auto t = parse_int(s, "--t");
  if (t < 1) throw UsageError("--t must be a positive integer or 'none'");
  return t;
}

std::vector<std::int64_t> parse_list(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto t = parse_int(item, "--t-values");
    if (t < 1) throw UsageError("--t-values entries must be positive");
    out.push_back(t);
  }
  if (out.empty()) throw UsageError("--t-values must not be empty");
  return out;
}

void add_run_options(CLI::App* sub, RawOptions& o) {
  sub->add_option("--pa", o.pa, "hit probability of machine A")->check(CLI::Range(0.0, 1.0));
  sub->add_option("--pb", o.pb, "hit probability of machine B")->check(CLI::Range(0.0, 1.0));
  sub->add_option("--t", o.t, "happy-hour period in steps, or 'none'");
  sub->add_option("--si", o.si, "search interval")->check(CLI::PositiveNumber);
  sub->add_option("--cp", o.cp, "check span")->check(CLI::PositiveNumber);
  sub->add_option("--steps", o.steps, "plays per episode")->check(CLI::PositiveNumber);
  sub->add_option("--reps", o.reps, "episodes per point")->check(CLI::PositiveNumber);
  sub->add_option("--seed", o.seed, "master seed");
  sub->add_option("--strategy", o.strategy, "mixed | entangled-only")
      ->check(CLI::IsMember({"mixed", "entangled-only"}));
  sub->add_option("--out", o.out, "output path (stdout if omitted)");
  sub->add_option("--format", o.format, "csv | svg")->check(CLI::IsMember({"csv", "svg"}));
  sub->add_option("--si-range", o.si_range, "search-interval range A:B");
  sub->add_option("--cp-range", o.cp_range, "check-span range A:B");
  sub->add_option("--t-values", o.t_values, "comma-separated happy-hour periods");
  sub->add_option("--threads", o.threads, "worker threads (0 = all cores)");
}

bool given(const CLI::App* sub, const char* flag) { return sub->count(flag) > 0; }

std::string pair_tag(const MachinesSpec& m) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "pa%.2f_pb%.2f", m.p_a, m.p_b);
  return buf;
}

std::string join(const std::vector<std::int64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string period_string(const std::optional<std::int64_t>& t) {
  return t ? std::to_string(*t) : "none";
}

std::string command_name(const Command& cmd) {
  switch (cmd.kind) {
    case CommandKind::Run: return "run";
    case CommandKind::SweepSi: return "sweep-si";
    case CommandKind::SweepCp: return "sweep-cp";
    case CommandKind::Figure: return "figure " + to_string(cmd.figure);
    case CommandKind::Selftest: return "selftest";
  }
  return "?";
}

// Everything needed to regenerate the file. Thread count is deliberately absent.
Metadata resolved_metadata(const Command& cmd) {
  const RunConfig& c = cmd.config;
  Metadata meta{{"command", command_name(cmd)}};
  if (cmd.pairs.empty()) {
    meta.emplace_back("p_a", format_fixed(c.machines.p_a));
    meta.emplace_back("p_b", format_fixed(c.machines.p_b));
  } else {
    std::string pairs;
    for (const auto& m : cmd.pairs) {
      pairs += (pairs.empty() ? "" : " ") + ("(" + format_fixed(m.p_a) + "," + format_fixed(m.p_b) + ")");
    }
    meta.emplace_back("pairs", pairs);
  }
  meta.emplace_back("strategy", to_string(c.strategy));
  meta.emplace_back("happy_period", cmd.t_values.empty() ? period_string(c.happy_period) : "see t_values");
  if (!cmd.t_values.empty()) meta.emplace_back("t_values", join(cmd.t_values));
  meta.emplace_back("search_interval", std::to_string(c.params.search_interval));
  meta.emplace_back("check_span", std::to_string(c.params.check_span));
  if (cmd.kind == CommandKind::SweepSi || cmd.kind == CommandKind::Figure) {
    meta.emplace_back("si_range", std::to_string(cmd.si_range.first) + ":" + std::to_string(cmd.si_range.last));
  }
  if (cmd.kind == CommandKind::SweepCp || (cmd.kind == CommandKind::Figure && cmd.figure == FigureId::Fig4b)) {
    meta.emplace_back("cp_range", std::to_string(cmd.cp_range.first) + ":" + std::to_string(cmd.cp_range.last));
  }
  meta.emplace_back("steps", std::to_string(c.steps));
  meta.emplace_back("reps", std::to_string(c.reps));
  meta.emplace_back("seed", std::to_string(c.master_seed));
  meta.emplace_back("rng", "mt19937_64; rep seed = splitmix64(seed ^ splitmix64(rep))");
  return meta;
}

double baseline_mean(RunConfig cfg, unsigned threads) {
  cfg.strategy = StrategyKind::EntangledOnly;
  return monte_carlo_mean(cfg, threads).mean;
}

// The baseline ignores the search interval and every sweep point reuses the
// same child seeds, so one evaluation gives the whole (flat) sweep exactly.
SweepResult flat_baseline_sweep(RunConfig cfg, IntRange si_range, unsigned threads) {
  cfg.strategy = StrategyKind::EntangledOnly;
  const auto mc = monte_carlo_mean(cfg, threads);
  SweepResult s;
  s.param_name = "search_interval";
  for (std::int64_t si = si_range.first; si <= si_range.last; ++si) {
    s.rows.push_back({static_cast<double>(si), mc.mean, mc.std_error, mc.reps});
  }
  return s;
}

void emit(const Command& cmd, std::ostream& out, const Metadata& meta,
          const std::vector<LabeledSweep>& series, Chart chart) {
  if (cmd.format == OutputFormat::Csv) {
    write_series_csv(out, meta, series);
    return;
  }
  for (const auto& s : series) chart.series.push_back(to_series(s));
  write_svg(out, chart);
}

void produce_run(const Command& cmd, std::ostream& out) {
  Metadata meta = resolved_metadata(cmd);
  if (cmd.trace) {
    meta.emplace_back("rep", std::to_string(cmd.trace_rep));
    write_episode_csv(out, meta, run_episode(cmd.config, cmd.trace_rep, true));
    return;
  }
  const auto mc = monte_carlo_mean(cmd.config, cmd.threads);
  SweepResult single;
  single.param_name = "search_interval";
  single.rows.push_back({static_cast<double>(cmd.config.params.search_interval), mc.mean,
                         mc.std_error, mc.reps});
  write_sweep_csv(out, meta, single);
}

void produce_sweep_si(const Command& cmd, std::ostream& out) {
  Metadata meta = resolved_metadata(cmd);
  const double baseline = baseline_mean(cmd.config, cmd.threads);
  meta.emplace_back("baseline_entangled_only_mean", format_fixed(baseline));

  Chart chart{"Total reward vs search interval", "search interval", "mean total reward", {}, baseline};
  if (cmd.t_values.empty()) {
    const auto sweep = sweep_search_interval(cmd.config, cmd.si_range, cmd.threads);
    if (cmd.format == OutputFormat::Csv) {
      write_sweep_csv(out, meta, sweep);
    } else {
      chart.series.push_back(to_series({"T=" + period_string(cmd.config.happy_period), sweep}));
      write_svg(out, chart);
    }
    return;
  }
  std::vector<LabeledSweep> series;
  for (auto t : cmd.t_values) {
    RunConfig cfg = cmd.config;
    cfg.happy_period = t;
    series.push_back({"T" + std::to_string(t), sweep_search_interval(cfg, cmd.si_range, cmd.threads)});
  }
  emit(cmd, out, meta, series, chart);
}

void produce_sweep_cp(const Command& cmd, std::ostream& out) {
  Metadata meta = resolved_metadata(cmd);
  const double baseline = baseline_mean(cmd.config, cmd.threads);
  meta.emplace_back("baseline_entangled_only_mean", format_fixed(baseline));
  const auto sweep = sweep_check_span(cmd.config, cmd.cp_range, cmd.t_values, cmd.threads);
  if (cmd.format == OutputFormat::Csv) {
    write_sweep_csv(out, meta, sweep);
    return;
  }
  Chart chart{"Total reward vs check span", "check span", "mean total reward", {}, baseline};
  chart.series.push_back(to_series({"mean over T", sweep}));
  write_svg(out, chart);
}

void produce_fig3a(const Command& cmd, std::ostream& out) {
  std::vector<LabeledSweep> series;
  std::vector<LabeledSweep> baselines;
  for (const auto& m : cmd.pairs) {
    RunConfig cfg = cmd.config;
    cfg.machines = m;
    series.push_back({"mixed_" + pair_tag(m), sweep_search_interval(cfg, cmd.si_range, cmd.threads)});
    baselines.push_back({"entangled-only_" + pair_tag(m), flat_baseline_sweep(cfg, cmd.si_range, cmd.threads)});
  }
  Chart chart{"Mixed strategy, T=" + period_string(cmd.config.happy_period), "search interval",
              "mean total reward", {}, std::nullopt};
  if (cmd.format == OutputFormat::Svg) {
    chart.baseline = baselines.front().sweep.rows.front().mean;
    for (const auto& s : series) chart.series.push_back(to_series(s));
    write_svg(out, chart);
    return;
  }
  series.insert(series.end(), baselines.begin(), baselines.end());
  write_series_csv(out, resolved_metadata(cmd), series);
}

std::vector<DifficultyPoint> difficulty_points(const Command& cmd) {
  return optimal_si_curve(cmd.pairs, cmd.t_values, cmd.si_range, cmd.config, cmd.threads);
}

void produce_fig3b(const Command& cmd, std::ostream& out) {
  std::vector<LabeledSweep> series;
  for (const auto& point : difficulty_points(cmd)) {
    for (std::size_t i = 0; i < point.sweeps.size(); ++i) {
      series.push_back({"mixed_" + pair_tag(point.machines) + "_T" + std::to_string(cmd.t_values[i]),
                        point.sweeps[i]});
    }
  }
  emit(cmd, out, resolved_metadata(cmd), series,
       {"Total reward vs search interval per happy-hour period", "search interval",
        "mean total reward", {}, std::nullopt});
}

void produce_fig3c(const Command& cmd, std::ostream& out) {
  const auto points = difficulty_points(cmd);
  if (cmd.format == OutputFormat::Svg) {
    Chart chart{"Normalized total reward averaged over happy-hour periods", "search interval",
                "normalized total reward", {}, std::nullopt};
    for (const auto& p : points) {
      ChartSeries s;
      s.label = "average " + pair_tag(p.machines);
      for (std::size_t i = 0; i < p.search_intervals.size(); ++i) {
        s.points.emplace_back(p.search_intervals[i], p.mean_normalized[i]);
      }
      chart.series.push_back(std::move(s));
    }
    write_svg(out, chart);
    return;
  }
  for (const auto& [k, v] : resolved_metadata(cmd)) out << "# " << k << ": " << v << '\n';
  out << "series,param,normalized_total_reward\n";
  for (const auto& p : points) {
    for (std::size_t i = 0; i < p.sweeps.size(); ++i) {
      const auto norm = normalize_rewards(p.sweeps[i]);
      const std::string label = "norm_" + pair_tag(p.machines) + "_T" + std::to_string(cmd.t_values[i]);
      for (std::size_t j = 0; j < norm.values.size(); ++j) {
        out << label << ',' << format_fixed(norm.params[j]) << ',' << format_fixed(norm.values[j]) << '\n';
      }
    }
    for (std::size_t j = 0; j < p.mean_normalized.size(); ++j) {
      out << "average_" << pair_tag(p.machines) << ',' << format_fixed(p.search_intervals[j]) << ','
          << format_fixed(p.mean_normalized[j]) << '\n';
    }
  }
}

void produce_fig4a(const Command& cmd, std::ostream& out) {
  const auto points = difficulty_points(cmd);
  if (cmd.format == OutputFormat::Svg) {
    Chart chart{"Optimal search interval vs difficulty", "difficulty 1-(pa-pb)",
                "optimal search interval", {}, std::nullopt};
    ChartSeries s;
    s.label = "optimal SI";
    for (const auto& p : points) s.points.emplace_back(p.difficulty, double(p.optimal_si));
    chart.series.push_back(std::move(s));
    write_svg(out, chart);
    return;
  }
  for (const auto& [k, v] : resolved_metadata(cmd)) out << "# " << k << ": " << v << '\n';
  out << "difficulty,p_a,p_b,optimal_si\n";
  for (const auto& p : points) {
    out << format_fixed(p.difficulty) << ',' << format_fixed(p.machines.p_a) << ','
        << format_fixed(p.machines.p_b) << ',' << p.optimal_si << '\n';
  }
}

void produce_fig4b(const Command& cmd, std::ostream& out) {
  const auto sweep = sweep_check_span(cmd.config, cmd.cp_range, cmd.t_values, cmd.threads);
  if (cmd.format == OutputFormat::Csv) {
    write_sweep_csv(out, resolved_metadata(cmd), sweep);
    return;
  }
  Chart chart{"Total reward vs check span, (pa,pb)=(0.7,0.3)", "check span",
              "mean total reward (averaged over T)", {}, std::nullopt};
  chart.series.push_back(to_series({"SI=" + std::to_string(cmd.config.params.search_interval), sweep}));
  write_svg(out, chart);
}

}  // namespace

std::string to_string(FigureId id) {
  switch (id) {
    case FigureId::Fig3a: return "fig3a";
    case FigureId::Fig3b: return "fig3b";
    case FigureId::Fig3c: return "fig3c";
    case FigureId::Fig4a: return "fig4a";
    case FigureId::Fig4b: return "fig4b";
  }
  return "?";
}

Command parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Entangled/correlated photon mixed-strategy bandit simulator", "photonmix"};
  app.require_subcommand(1, 1);
  RawOptions o;

  auto* run = app.add_subcommand("run", "Monte Carlo mean for one configuration");
  add_run_options(run, o);
  run->add_flag("--trace", o.trace, "write the per-step trace of one episode instead");
  run->add_option("--rep", o.rep, "repetition index traced by --trace");

  auto* sweep_si = app.add_subcommand("sweep-si", "Sweep the search interval");
  add_run_options(sweep_si, o);
  auto* sweep_cp = app.add_subcommand("sweep-cp", "Sweep the check span, averaged over --t-values");
  add_run_options(sweep_cp, o);

  auto* figure = app.add_subcommand("figure", "Reproduce a figure preset");
  add_run_options(figure, o);
  figure->add_option("name", o.figure, "fig3a | fig3b | fig3c | fig4a | fig4b")
      ->required()
      ->check(CLI::IsMember({"fig3a", "fig3b", "fig3c", "fig4a", "fig4b"}));
  figure->footer(kFigureHelp);

  auto* selftest = app.add_subcommand("selftest", "Analytic-vs-sampled optics and baseline checks");
  selftest->add_option("--reps", o.reps, "episodes for the baseline check")->check(CLI::PositiveNumber);
  selftest->add_option("--seed", o.seed, "master seed");
  selftest->add_option("--threads", o.threads, "worker threads (0 = all cores)");

  std::vector<const char*> argv{"photonmix"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    for (const auto* sub : app.get_subcommands()) throw HelpRequested(sub->help());
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  const CLI::App* sub = app.get_subcommands().front();
  Command cmd;
  cmd.threads = o.threads;
  cmd.config.steps = o.steps;
  cmd.config.reps = o.reps;
  cmd.config.master_seed = o.seed;
  if (sub == selftest) {
    cmd.kind = CommandKind::Selftest;
    return cmd;
  }

  try {
    cmd.config.machines = MachinesSpec(o.pa, o.pb);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  cmd.config.happy_period = parse_period(o.t);
  cmd.config.params = StrategyParams(o.si, o.cp);
  cmd.config.strategy = o.strategy == "mixed" ? StrategyKind::Mixed : StrategyKind::EntangledOnly;
  cmd.format = o.format == "svg" ? OutputFormat::Svg : OutputFormat::Csv;
  if (!o.out.empty()) cmd.out = o.out;
  if (given(sub, "--si-range")) cmd.si_range = parse_range(o.si_range, "--si-range");
  if (given(sub, "--cp-range")) cmd.cp_range = parse_range(o.cp_range, "--cp-range");
  if (given(sub, "--t-values")) cmd.t_values = parse_list(o.t_values);

  if (sub == run) {
    cmd.kind = CommandKind::Run;
    cmd.trace = o.trace;
    cmd.trace_rep = o.rep;
    if (cmd.format == OutputFormat::Svg) throw UsageError("run produces a single row; use --format csv");
  } else if (sub == sweep_si) {
    cmd.kind = CommandKind::SweepSi;
  } else if (sub == sweep_cp) {
    cmd.kind = CommandKind::SweepCp;
    if (!given(sub, "--si")) cmd.config.params = StrategyParams(10, o.cp);
    if (cmd.t_values.empty() && !given(sub, "--t")) cmd.t_values = kDecadePeriods;
  } else {
    cmd.kind = CommandKind::Figure;
    cmd.config.strategy = StrategyKind::Mixed;
    if (o.figure == "fig3a") {
      cmd.figure = FigureId::Fig3a;
      cmd.pairs = kFig3Pairs;
      if (!given(sub, "--t")) cmd.config.happy_period = 50;
      cmd.t_values.clear();
    } else if (o.figure == "fig3b" || o.figure == "fig3c") {
      cmd.figure = o.figure == "fig3b" ? FigureId::Fig3b : FigureId::Fig3c;
      cmd.pairs = kFig3Pairs;
    } else if (o.figure == "fig4a") {
      cmd.figure = FigureId::Fig4a;
      cmd.pairs = kFig4aPairs;
    } else {
      cmd.figure = FigureId::Fig4b;
      cmd.config.machines = MachinesSpec(0.7, 0.3);
      if (!given(sub, "--si")) cmd.config.params = StrategyParams(10, o.cp);
    }
    if (cmd.figure != FigureId::Fig3a && cmd.t_values.empty()) cmd.t_values = kDecadePeriods;
    if (!given(sub, "--cp") && cmd.figure != FigureId::Fig4b) {
      cmd.config.params = StrategyParams(cmd.config.params.search_interval, 2);
    }
  }

  if (cmd.si_range.first < 1 || cmd.si_range.last > 200) throw UsageError("--si-range must lie within 1:200");
  if (cmd.cp_range.first < 1 || cmd.cp_range.last > 50) throw UsageError("--cp-range must lie within 1:50");
  const bool si_curve = cmd.kind == CommandKind::SweepSi ||
                        (cmd.kind == CommandKind::Figure && cmd.figure != FigureId::Fig4b);
  const bool cp_curve = !si_curve && cmd.kind != CommandKind::Run;
  const bool plotted = cmd.format == OutputFormat::Svg;
  if (si_curve && cmd.si_range.size() < 2 && (plotted || cmd.kind == CommandKind::Figure)) {
    throw UsageError("--si-range needs at least two values here");
  }
  if (cp_curve && plotted && cmd.cp_range.size() < 2) {
    throw UsageError("--cp-range needs at least two values for a chart");
  }
  return cmd;
}

void produce(const Command& cmd, std::ostream& out) {
  switch (cmd.kind) {
    case CommandKind::Run: produce_run(cmd, out); return;
    case CommandKind::SweepSi: produce_sweep_si(cmd, out); return;
    case CommandKind::SweepCp: produce_sweep_cp(cmd, out); return;
    case CommandKind::Selftest: throw std::logic_error("selftest produces no data");
    case CommandKind::Figure: break;
  }
  switch (cmd.figure) {
    case FigureId::Fig3a: produce_fig3a(cmd, out); return;
    case FigureId::Fig3b: produce_fig3b(cmd, out); return;
    case FigureId::Fig3c: produce_fig3c(cmd, out); return;
    case FigureId::Fig4a: produce_fig4a(cmd, out); return;
    case FigureId::Fig4b: produce_fig4b(cmd, out); return;
  }
}

int run_selftest(const Command& cmd, std::ostream& log) {
  int failures = 0;
  auto report = [&](bool ok, const std::string& name) {
    log << (ok ? "ok    " : "FAIL  ") << name << '\n';
    if (!ok) ++failures;
  };

  const auto explore = joint_distribution(waveplates_for_explore());
  report(explore.p_aa == 0.0 && explore.p_bb == 0.0 && explore.p_ab == 0.5 && explore.p_ba == 0.5,
         "explore setting has zero conflict mass");
  report(joint_distribution(waveplates_for_exploit(MachineChoice::A)).p_aa == 1.0,
         "exploit A setting is degenerate at (A,A)");
  report(joint_distribution(waveplates_for_exploit(MachineChoice::B)).p_bb == 1.0,
         "exploit B setting is degenerate at (B,B)");

  RngStream angles(child_seed(cmd.config.master_seed, 0xA11CE));
  bool normalized = true;
  for (int i = 0; i < 10000; ++i) {
    const WaveplateSetting wp{Angle(8.0 * angles.uniform() - 4.0), Angle(8.0 * angles.uniform() - 4.0)};
    const CorrelatedPair pair{Angle(8.0 * angles.uniform() - 4.0)};
    normalized = normalized && std::abs(entangled_joint_distribution(wp).total() - 1.0) <= 1e-12 &&
                 std::abs(correlated_joint_distribution(pair, wp).total() - 1.0) <= 1e-12;
  }
  report(normalized, "normalization over 10^4 random settings");

  const double pi = std::numbers::pi;
  const std::vector<std::pair<std::string, JointChoiceDistribution>> sampled{
      {"entangled equal plates", explore},
      {"entangled pi/8 difference", entangled_joint_distribution({Angle(pi / 8), Angle(0.0)})},
      {"correlated (pi/8, 3pi/8)", correlated_joint_distribution({Angle(0.0)}, {Angle(pi / 8), Angle(3 * pi / 8)})},
      {"correlated (0.3, 1.1) theta1=0.2", correlated_joint_distribution({Angle(0.2)}, {Angle(0.3), Angle(1.1)})},
  };
  constexpr int kDraws = 100000;
  RngStream draws(child_seed(cmd.config.master_seed, 0xD3A75));
  using enum MachineChoice;
  for (const auto& [name, dist] : sampled) {
    int counts[4] = {0, 0, 0, 0};
    for (int i = 0; i < kDraws; ++i) {
      const auto c = sample_joint_choice(dist, draws);
      ++counts[(c.player1 == B ? 2 : 0) + (c.player2 == B ? 1 : 0)];
    }
    const double p[4] = {dist.p_aa, dist.p_ab, dist.p_ba, dist.p_bb};
    bool ok = true;
    for (int k = 0; k < 4; ++k) {
      const double sigma = std::sqrt(p[k] * (1.0 - p[k]) / kDraws);
      ok = ok && std::abs(counts[k] / double(kDraws) - p[k]) <= 4.0 * sigma;
    }
    report(ok, "sampled frequencies within 4 sigma: " + name);
  }

  RunConfig baseline;
  baseline.machines = MachinesSpec(0.6, 0.4);
  baseline.happy_period = std::nullopt;
  baseline.strategy = StrategyKind::EntangledOnly;
  baseline.reps = cmd.config.reps;
  baseline.master_seed = cmd.config.master_seed;
  const auto mc = monte_carlo_mean(baseline, cmd.threads);
  log << "      entangled-only mean " << format_fixed(mc.mean) << " stderr " << format_fixed(mc.std_error) << '\n';
  report(std::abs(mc.mean - 1500.0) <= 4.0 * mc.std_error, "entangled-only baseline at 1500 within 4 stderr");
  return failures == 0 ? 0 : 3;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Command cmd;
  try {
    cmd = parse_args(std::vector<std::string>(argv + 1, argv + argc));
  } catch (const HelpRequested& h) {
    out << h.what();
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nrun with --help for usage\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (cmd.kind == CommandKind::Selftest) return run_selftest(cmd, out);
    if (!cmd.out) {
      produce(cmd, out);
      out.flush();
      return out ? 0 : 2;
    }
    std::ostringstream buffer;
    produce(cmd, buffer);
    std::ofstream file(*cmd.out, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "io error: cannot open '" << *cmd.out << "' for writing\n";
      return 2;
    }
    file << buffer.str();
    file.close();
    if (!file) {
      err << "io error: failed writing '" << *cmd.out << "'\n";
      return 2;
    }
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace photonmix::cli
