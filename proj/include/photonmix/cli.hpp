#ifndef PHOTONMIX_CLI_HPP
#define PHOTONMIX_CLI_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "photonmix/experiment.hpp"

namespace photonmix::cli {

// Bad flags or values. The message is meant for the user.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// --help was requested; what() holds the help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CommandKind { Run, SweepSi, SweepCp, Figure, Selftest };
enum class FigureId { Fig3a, Fig3b, Fig3c, Fig4a, Fig4b };
enum class OutputFormat { Csv, Svg };

struct Command {
  CommandKind kind = CommandKind::Run;
  FigureId figure = FigureId::Fig3a;
  RunConfig config;
  IntRange si_range{1, 50};
  IntRange cp_range{1, 10};
  std::vector<std::int64_t> t_values;  // empty: use config.happy_period
  std::vector<MachinesSpec> pairs;     // figure presets only
  OutputFormat format = OutputFormat::Csv;
  std::optional<std::string> out;  // stdout when unset
  unsigned threads = 0;            // never affects output bytes
  bool trace = false;
  std::uint64_t trace_rep = 0;
};

std::string to_string(FigureId id);

// `args` excludes the program name. Throws UsageError or HelpRequested.
Command parse_args(const std::vector<std::string>& args);

// Writes the command's data (CSV or SVG) to `out`. Not valid for selftest.
void produce(const Command& cmd, std::ostream& out);

// Returns 0 when every check passes.
int run_selftest(const Command& cmd, std::ostream& log);

// Full front end: parse, execute, report. Exit codes: 0 ok, 1 usage error,
// 2 I/O error, 3 selftest failure.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace photonmix::cli

#endif  // PHOTONMIX_CLI_HPP
