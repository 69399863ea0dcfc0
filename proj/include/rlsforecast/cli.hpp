#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rlsforecast/error.hpp"
#include "rlsforecast/predictor.hpp"
#include "rlsforecast/strategy.hpp"
#include "rlsforecast/timeseries.hpp"

namespace rlsforecast::cli {

enum class Command { Predict, Forecast, Sweep, Backtest, Table, Synth };
enum class OutputFormat { Csv, Json };

// Process exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitData = 4;
inline constexpr int kExitPrecondition = 5;
inline constexpr int kExitNumerical = 6;

int exit_status(ErrorKind kind);

/// Bad command line; the message names the offending flag.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by parse_args for --help; carries the help text.
struct HelpRequested {
  std::string text;
};

struct SweepSettings {
  std::vector<int> n_values;
  std::vector<int> l_values;
  std::optional<DayIndex> eval_from;
  std::optional<DayIndex> eval_to;
  std::optional<std::filesystem::path> profile_n_output;
  std::optional<std::filesystem::path> profile_l_output;
};

struct StrategySettings {
  DayIndex anchor = kReferenceAnchor;
  std::vector<TableRowSpec> rows;
  std::optional<DayIndex> buy_index;
  std::optional<DayIndex> sell_index;
};

struct SynthSettings {
  std::vector<double> ar;
  double noise = 0.1;
  std::size_t length = 2000;
  std::uint64_t seed = 0;
  double offset = 50.0;
};

struct RunConfig {
  Command command = Command::Predict;
  std::optional<std::filesystem::path> input;
  std::string output = "-";  // "-" is standard output
  OutputFormat format = OutputFormat::Csv;
  CsvOptions csv;
  PredictorConfig predictor;
  std::optional<std::filesystem::path> snapshot_output;
  SweepSettings sweep;
  StrategySettings strategy;
  SynthSettings synth;
  int jobs = 1;
};

/// Parses argv without the program name. Throws UsageError or HelpRequested.
RunConfig parse_args(const std::vector<std::string>& args);

/// Parses "lo:hi[:step]" into the inclusive ascending list lo, lo+step, ... <= hi.
std::vector<int> parse_range(const std::string& text);

/// Parses "N:L,N:L,...".
std::vector<TableRowSpec> parse_rows(const std::string& text);

/// Runs a validated config. Results go to config.output (or `out` for "-"),
/// diagnostics to `err`. Returns the process exit status.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full entry point: parse, execute, map failures to exit statuses.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rlsforecast::cli
