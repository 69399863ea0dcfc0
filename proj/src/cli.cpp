#include "rlsforecast/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "rlsforecast/export.hpp"
#include "rlsforecast/sweep.hpp"

namespace rlsforecast::cli {

int exit_status(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return kExitUsage;
    case ErrorKind::Io: return kExitIo;
    case ErrorKind::Data: return kExitData;
    case ErrorKind::Precondition: return kExitPrecondition;
    case ErrorKind::Numerical: return kExitNumerical;
  }
  return kExitInternal;
}

namespace {

constexpr const char* kFooter =
    "Exit status: 0 success (including a no-trade outcome), 1 internal error,\n"
    "2 usage error, 3 I/O error, 4 invalid input data, 5 precondition failure\n"
    "(series too short, index outside the series), 6 numerical failure.";

std::optional<int> parse_int(std::string_view text) {
  int value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) return std::nullopt;
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const auto next = text.find(sep, pos);
    parts.push_back(text.substr(pos, next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return parts;
}

}  // namespace

std::vector<int> parse_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() < 2 || parts.size() > 3) {
    throw UsageError("range '" + text + "' must look like lo:hi or lo:hi:step");
  }
  const auto lo = parse_int(parts[0]);
  const auto hi = parse_int(parts[1]);
  const auto step = parts.size() == 3 ? parse_int(parts[2]) : std::optional<int>(1);
  if (!lo || !hi || !step) throw UsageError("range '" + text + "' has a non-integer field");
  if (*lo < 1 || *hi < *lo || *step < 1) {
    throw UsageError("range '" + text + "' needs 1 <= lo <= hi and step >= 1");
  }
  std::vector<int> values;
  for (int v = *lo; v <= *hi; v += *step) values.push_back(v);
  return values;
}

std::vector<TableRowSpec> parse_rows(const std::string& text) {
  std::vector<TableRowSpec> rows;
  for (auto item : split(text, ',')) {
    const auto pair = split(item, ':');
    const auto n = pair.size() == 2 ? parse_int(pair[0]) : std::nullopt;
    const auto l = pair.size() == 2 ? parse_int(pair[1]) : std::nullopt;
    if (!n || !l || *n < 1 || *l < 1) {
      throw UsageError("row '" + std::string(item) + "' must be N:L with positive integers");
    }
    rows.push_back({*n, *l});
  }
  return rows;
}

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig cfg;
  CLI::App app{"Adaptive RLS FIR price prediction, design sweeps and trade backtests", "rlsforecast"};
  app.footer(kFooter);
  app.require_subcommand(1);

  std::string input;
  std::string format = "csv";
  std::string column;
  std::string date_column;
  bool no_header = false;
  std::string snapshot_output;
  std::string n_range = "5:100:5";
  std::string l_range = "1:30";
  DayIndex eval_from = 0;
  DayIndex eval_to = 0;
  std::string profile_n;
  std::string profile_l;
  std::string rows;
  DayIndex buy_index = 0;
  DayIndex sell_index = 0;

  auto* predict = app.add_subcommand("predict", "Run the adaptive predictor and emit the per-day trace");
  auto* forecast = app.add_subcommand("forecast", "Train on the whole series and forecast the next L days");
  auto* sweep = app.add_subcommand("sweep", "Correlation surface over an (N, L) grid, plus profiles");
  auto* backtest = app.add_subcommand("backtest", "Plan one trade from a forecast (or given days) and price it");
  auto* table = app.add_subcommand("table", "Profit table over a list of (N, L) pairs");
  auto* synth = app.add_subcommand("synth", "Generate a synthetic autoregressive price series");

  std::vector<CLI::App*> with_input{predict, forecast, sweep, backtest, table};
  for (auto* sub : {predict, forecast, sweep, backtest, table, synth}) {
    sub->add_option("--output,-o", cfg.output, "Output file, '-' for standard output")->capture_default_str();
    sub->add_option("--format", format, "csv or json")->capture_default_str();
  }
  for (auto* sub : with_input) {
    sub->add_option("--input,-i", input, "Price CSV file");
    sub->add_option("--column", column, "Price column name or 0-based position (default: price, or 0 with --no-header)");
    sub->add_option("--date-column", date_column, "Optional date column carried as labels");
    sub->add_flag("--no-header", no_header, "Input has no header row");
    sub->add_option("--lambda", cfg.predictor.lambda, "Forgetting factor, 0 < lambda < 1")->capture_default_str();
    sub->add_option("--delta", cfg.predictor.delta, "Initial regularization, > 0")->capture_default_str();
  }
  for (auto* sub : {predict, forecast, backtest}) {
    sub->add_option("--coeffs", cfg.predictor.n_coeffs, "Number of FIR coefficients N")->capture_default_str();
    sub->add_option("--window", cfg.predictor.window, "Prediction window L in trading days")->capture_default_str();
  }
  predict->add_option("--snapshot-stride", cfg.predictor.snapshot_stride,
                      "Record weights every this many updates (0 = off)")->capture_default_str();
  predict->add_option("--snapshot-output", snapshot_output,
                      "Write weight snapshots here (stride defaults to 1)");

  sweep->add_option("--n-range", n_range, "Filter lengths lo:hi[:step]")->capture_default_str();
  sweep->add_option("--l-range", l_range, "Prediction windows lo:hi[:step]")->capture_default_str();
  sweep->add_option("--eval-from", eval_from, "First day of the correlation window (default: last 25 days)");
  sweep->add_option("--eval-to", eval_to, "Last day of the correlation window (default: last day)");
  sweep->add_option("--profile-n", profile_n, "Write the per-N profile here");
  sweep->add_option("--profile-l", profile_l, "Write the per-L profile here");
  for (auto* sub : {sweep, table}) {
    sub->add_option("--jobs,-j", cfg.jobs, "Worker threads")->capture_default_str();
  }
  for (auto* sub : {backtest, table}) {
    sub->add_option("--anchor", cfg.strategy.anchor, "Last trading day used for training")->capture_default_str();
  }
  backtest->add_option("--buy-index", buy_index, "Buy day (skips forecasting; needs --sell-index)");
  backtest->add_option("--sell-index", sell_index, "Sell day");
  table->add_option("--rows", rows, "Comma-separated N:L pairs (default: the nine reference rows)");

  synth->add_option("--ar", cfg.synth.ar, "AR coefficient, repeat for higher orders")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
      ->allow_extra_args(false);
  synth->add_option("--noise", cfg.synth.noise, "White noise standard deviation")->capture_default_str();
  synth->add_option("--length", cfg.synth.length, "Number of samples")->capture_default_str();
  synth->add_option("--seed", cfg.synth.seed, "Random seed")->capture_default_str();
  synth->add_option("--offset", cfg.synth.offset, "Level added to the AR process")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    std::ostringstream os;
    app.exit(e, os, os);
    throw HelpRequested{os.str()};
  } catch (const CLI::CallForAllHelp& e) {
    std::ostringstream os;
    app.exit(e, os, os);
    throw HelpRequested{os.str()};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  const std::map<std::string, Command> commands{
      {"predict", Command::Predict}, {"forecast", Command::Forecast}, {"sweep", Command::Sweep},
      {"backtest", Command::Backtest}, {"table", Command::Table}, {"synth", Command::Synth}};
  cfg.command = commands.at(name);
  const auto given = [&](const char* flag) { return chosen->count(flag) > 0; };

  if (format == "csv") {
    cfg.format = OutputFormat::Csv;
  } else if (format == "json") {
    cfg.format = OutputFormat::Json;
  } else {
    throw UsageError("--format: expected csv or json, got '" + format + "'");
  }

  // Ranges first, so a bad value is reported even when --input is missing.
  const auto& p = cfg.predictor;
  if (!(p.lambda > 0.0 && p.lambda < 1.0)) {
    throw UsageError("--lambda: forgetting factor must satisfy 0 < lambda < 1, got " + std::to_string(p.lambda));
  }
  if (!(p.delta > 0.0)) throw UsageError("--delta: must be > 0");
  if (p.n_coeffs < 1) throw UsageError("--coeffs: must be >= 1");
  if (p.window < 1) throw UsageError("--window: must be >= 1");
  if (p.snapshot_stride < 0) throw UsageError("--snapshot-stride: must be >= 0");
  if (cfg.jobs < 1) throw UsageError("--jobs: must be >= 1");

  if (cfg.command == Command::Sweep) {
    try {
      cfg.sweep.n_values = parse_range(n_range);
    } catch (const UsageError& e) {
      throw UsageError(std::string("--n-range: ") + e.what());
    }
    try {
      cfg.sweep.l_values = parse_range(l_range);
    } catch (const UsageError& e) {
      throw UsageError(std::string("--l-range: ") + e.what());
    }
    if (given("--eval-from")) cfg.sweep.eval_from = eval_from;
    if (given("--eval-to")) cfg.sweep.eval_to = eval_to;
    if (cfg.sweep.eval_from && cfg.sweep.eval_to && *cfg.sweep.eval_from >= *cfg.sweep.eval_to) {
      throw UsageError("--eval-from: must be smaller than --eval-to");
    }
    if (!profile_n.empty()) cfg.sweep.profile_n_output = profile_n;
    if (!profile_l.empty()) cfg.sweep.profile_l_output = profile_l;
  }
  if (cfg.command == Command::Table) {
    try {
      cfg.strategy.rows = rows.empty() ? reference_table_rows() : parse_rows(rows);
    } catch (const UsageError& e) {
      throw UsageError(std::string("--rows: ") + e.what());
    }
  }
  if (cfg.command == Command::Backtest) {
    if (given("--buy-index") != given("--sell-index")) {
      throw UsageError("--buy-index: --buy-index and --sell-index must be given together");
    }
    if (given("--buy-index")) {
      if (buy_index >= sell_index) throw UsageError("--buy-index: must be smaller than --sell-index");
      cfg.strategy.buy_index = buy_index;
      cfg.strategy.sell_index = sell_index;
    }
  }
  if (cfg.command == Command::Synth) {
    if (!(cfg.synth.noise >= 0.0)) throw UsageError("--noise: must be >= 0");
    if (cfg.synth.length < 1) throw UsageError("--length: must be >= 1");
  }
  if (cfg.command == Command::Predict && !snapshot_output.empty()) {
    cfg.snapshot_output = snapshot_output;
    if (cfg.predictor.snapshot_stride == 0) cfg.predictor.snapshot_stride = 1;
  }

  if (cfg.command != Command::Synth) {
    if (input.empty()) throw UsageError("--input: required for '" + name + "'");
    cfg.input = input;
    cfg.csv.has_header = !no_header;
    if (!column.empty()) {
      if (const auto pos = parse_int(column); pos && *pos >= 0) {
        cfg.csv.column = static_cast<std::size_t>(*pos);
      } else {
        cfg.csv.column = column;
      }
    } else {
      cfg.csv.column = no_header ? ColumnRef(std::size_t{0}) : ColumnRef(std::string("price"));
    }
    if (!date_column.empty()) {
      if (const auto pos = parse_int(date_column); pos && *pos >= 0) {
        cfg.csv.date_column = static_cast<std::size_t>(*pos);
      } else {
        cfg.csv.date_column = date_column;
      }
    }
  }
  return cfg;
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "' for writing");
  file << text;
  if (!file) throw Error(ErrorKind::Io, "failed writing '" + path.string() + "'");
}

std::string dump(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

template <typename CsvWriter>
std::string render(OutputFormat format, CsvWriter&& csv, const nlohmann::json& json) {
  if (format == OutputFormat::Json) return dump(json);
  std::ostringstream os;
  csv(os);
  return os.str();
}

TableRow single_row(const RunConfig& config, const PriceSeries& series) {
  TableRow row;
  row.n_coeffs = config.predictor.n_coeffs;
  row.window = config.predictor.window;
  std::optional<TradePlan> plan;
  if (config.strategy.buy_index) {
    plan = TradePlan{*config.strategy.buy_index, *config.strategy.sell_index, {}};
  } else {
    const auto training = slice(series, series.start_index(), config.strategy.anchor);
    PredictorConfig pc = config.predictor;
    pc.snapshot_stride = 0;
    plan = plan_trade(forecast_future(training, pc));
    if (plan) {
      plan->source.n_coeffs = pc.n_coeffs;
      plan->source.window = pc.window;
      plan->source.lambda = pc.lambda;
    }
  }
  if (!plan) {
    row.status = RowStatus::NoTrade;
    return row;
  }
  row.plan = plan;
  row.result = backtest(*plan, series);
  row.status = RowStatus::Traded;
  return row;
}

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::string text;
  int status = kExitOk;

  if (config.command == Command::Synth) {
    const auto series = synth_ar(config.synth.ar, config.synth.noise, config.synth.length,
                                 config.synth.seed, config.synth.offset);
    text = render(config.format, [&](std::ostream& os) { write_csv(os, series); }, series_json(series));
  } else {
    const auto series = load_csv(*config.input, config.csv);
    switch (config.command) {
      case Command::Predict: {
        const auto trace = run_prediction(series, config.predictor);
        text = render(config.format, [&](std::ostream& os) { write_trace_csv(os, trace); }, trace_json(trace));
        if (config.snapshot_output) {
          std::ostringstream os;
          write_snapshots_csv(os, trace);
          write_text(*config.snapshot_output, config.format == OutputFormat::Json
                                                  ? dump(trace_json(trace)["weight_snapshots"])
                                                  : os.str());
        }
        break;
      }
      case Command::Forecast: {
        const auto points = forecast_future(series, config.predictor);
        text = render(config.format, [&](std::ostream& os) { write_forecast_csv(os, points); },
                      forecast_json(points));
        break;
      }
      case Command::Sweep: {
        SweepConfig sc;
        sc.n_values = config.sweep.n_values;
        sc.l_values = config.sweep.l_values;
        sc.lambda = config.predictor.lambda;
        sc.delta = config.predictor.delta;
        sc.eval_to = config.sweep.eval_to.value_or(series.end_index());
        sc.eval_from = config.sweep.eval_from.value_or(std::max(series.start_index(), sc.eval_to - 24));
        const auto surface = sweep_surface(series, sc, config.jobs);
        const auto by_n = profile_by_n(surface);
        const auto by_l = profile_by_l(surface);
        const nlohmann::json doc = {{"surface", surface_json(surface)},
                                    {"profile_n", profile_json(by_n, "n")},
                                    {"profile_l", profile_json(by_l, "l")}};
        text = render(config.format, [&](std::ostream& os) { write_surface_csv(os, surface); }, doc);
        if (config.sweep.profile_n_output) {
          write_text(*config.sweep.profile_n_output,
                     render(config.format, [&](std::ostream& os) { write_profile_csv(os, by_n, "n"); },
                            doc["profile_n"]));
        }
        if (config.sweep.profile_l_output) {
          write_text(*config.sweep.profile_l_output,
                     render(config.format, [&](std::ostream& os) { write_profile_csv(os, by_l, "l"); },
                            doc["profile_l"]));
        }
        break;
      }
      case Command::Backtest: {
        const std::vector<TableRow> rows{single_row(config, series)};
        text = render(config.format, [&](std::ostream& os) { write_table_csv(os, rows); }, table_json(rows));
        break;
      }
      case Command::Table: {
        const auto rows = table_sweep(series, config.strategy.rows, config.predictor.lambda,
                                      config.predictor.delta, config.strategy.anchor, config.jobs);
        text = render(config.format, [&](std::ostream& os) { write_table_csv(os, rows); }, table_json(rows));
        for (const auto& row : rows) {
          if (row.status != RowStatus::Failed) continue;
          err << "error: row N=" << row.n_coeffs << " L=" << row.window << ": " << row.message << '\n';
          if (status == kExitOk) status = exit_status(row.error.value_or(ErrorKind::Numerical));
        }
        break;
      }
      case Command::Synth: break;
    }
  }

  if (config.output == "-") {
    out << text;
  } else {
    write_text(config.output, text);
  }
  return status;
}

}  // namespace

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    return run_command(config, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_status(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_args(args);
  } catch (const HelpRequested& help) {
    out << help.text;
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  return execute(config, out, err);
}

}  // namespace rlsforecast::cli
