#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "rlsforecast/error.hpp"
#include "rlsforecast/predictor.hpp"
#include "rlsforecast/rls.hpp"
#include "rlsforecast/strategy.hpp"
#include "rlsforecast/sweep.hpp"
#include "rlsforecast/timeseries.hpp"

namespace py = pybind11;
using namespace rlsforecast;

namespace {

const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument: return "invalid_argument";
    case ErrorKind::Io: return "io";
    case ErrorKind::Data: return "data";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Numerical: return "numerical";
  }
  return "unknown";
}

const char* status_name(RowStatus s) {
  switch (s) {
    case RowStatus::Traded: return "traded";
    case RowStatus::NoTrade: return "no_trade";
    case RowStatus::Failed: return "failed";
  }
  return "unknown";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "RLS adaptive FIR price prediction";

  // Module-lifetime reference; the interpreter owns the type.
  static PyObject* error_type = PyErr_NewException("rlsforecast.RlsError", PyExc_ValueError, nullptr);
  m.attr("RlsError") = py::handle(error_type);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::handle(error_type)(e.what());
      exc.attr("kind") = kind_name(e.kind());
      PyErr_SetObject(error_type, exc.ptr());
    }
  });

  py::class_<PriceSeries>(m, "PriceSeries")
      .def(py::init<std::vector<double>, DayIndex, std::vector<std::string>>(), py::arg("values"),
           py::arg("start_index") = 0, py::arg("labels") = std::vector<std::string>{})
      .def_property_readonly("values",
                             [](const PriceSeries& s) { return std::vector<double>(s.values().begin(), s.values().end()); })
      .def_property_readonly("labels", &PriceSeries::labels)
      .def_property_readonly("start_index", &PriceSeries::start_index)
      .def_property_readonly("end_index", &PriceSeries::end_index)
      .def("at", &PriceSeries::at)
      .def("__len__", &PriceSeries::size)
      .def("__eq__", [](const PriceSeries& a, const PriceSeries& b) { return a == b; });

  m.def(
      "load_csv",
      [](const std::filesystem::path& path, std::variant<std::string, std::size_t> column, bool has_header,
         std::optional<std::variant<std::string, std::size_t>> date_column) {
        CsvOptions o;
        std::visit([&](auto v) { o.column = v; }, column);
        o.has_header = has_header;
        if (date_column) {
          ColumnRef d;
          std::visit([&](auto v) { d = v; }, *date_column);
          o.date_column = d;
        }
        return load_csv(path, o);
      },
      py::arg("path"), py::arg("column") = std::size_t{0}, py::arg("has_header") = true,
      py::arg("date_column") = py::none());
  m.def("slice", &slice, py::arg("series"), py::arg("start"), py::arg("stop"));
  m.def(
      "synth_ar",
      [](const std::vector<double>& coeffs, double noise_std, std::size_t length, std::uint64_t seed, double offset) {
        return synth_ar(coeffs, noise_std, length, seed, offset);
      },
      py::arg("coeffs"), py::arg("noise_std"), py::arg("length"), py::arg("seed") = 0, py::arg("offset") = 50.0);

  py::class_<FilterState>(m, "FilterState")
      .def_readwrite("weights", &FilterState::weights)
      .def_readwrite("inv_corr", &FilterState::inv_corr)
      .def_readonly("lambda_", &FilterState::lambda)
      .def_readonly("delta", &FilterState::delta)
      .def_readonly("samples_seen", &FilterState::samples_seen);
  m.def("init_filter", &init_filter, py::arg("n_coeffs"), py::arg("lambda_"), py::arg("delta") = kDefaultDelta);
  m.def(
      "rls_update",
      [](const FilterState& state, const Eigen::VectorXd& input, double desired) {
        auto r = rls_update(state, {input, desired});
        return py::make_tuple(r.state, r.output.output, r.output.prior_error);
      },
      py::arg("state"), py::arg("input"), py::arg("desired"),
      "Returns (new_state, output, prior_error).");

  const auto to_samples = [](const Eigen::MatrixXd& inputs, const Eigen::VectorXd& desired) {
    if (inputs.rows() != desired.size()) throw Error(ErrorKind::InvalidArgument, "inputs and desired differ in length");
    std::vector<RegressionSample> out;
    for (Eigen::Index i = 0; i < inputs.rows(); ++i) out.push_back({inputs.row(i).transpose(), desired(i)});
    return out;
  };
  m.def(
      "batch_solve",
      [to_samples](const Eigen::MatrixXd& inputs, const Eigen::VectorXd& desired, double lambda, double delta) {
        return batch_solve(to_samples(inputs, desired), lambda, delta);
      },
      py::arg("inputs"), py::arg("desired"), py::arg("lambda_"), py::arg("delta") = kDefaultDelta);
  m.def(
      "objective",
      [to_samples](const Eigen::MatrixXd& inputs, const Eigen::VectorXd& desired, const Eigen::VectorXd& weights,
                   double lambda) { return objective(to_samples(inputs, desired), weights, lambda); },
      py::arg("inputs"), py::arg("desired"), py::arg("weights"), py::arg("lambda_"));

  py::class_<PredictorConfig>(m, "PredictorConfig")
      .def(py::init([](int n, int l, double lambda, double delta, int stride) {
             PredictorConfig c{n, l, lambda, delta, stride};
             c.validate();
             return c;
           }),
           py::arg("n_coeffs") = 100, py::arg("window") = 16, py::arg("lambda_") = 0.98,
           py::arg("delta") = kDefaultDelta, py::arg("snapshot_stride") = 0)
      .def_readwrite("n_coeffs", &PredictorConfig::n_coeffs)
      .def_readwrite("window", &PredictorConfig::window)
      .def_readwrite("lambda_", &PredictorConfig::lambda)
      .def_readwrite("delta", &PredictorConfig::delta)
      .def_readwrite("snapshot_stride", &PredictorConfig::snapshot_stride)
      .def_property_readonly("min_length", &PredictorConfig::min_length);

  py::class_<PredictionTrace>(m, "PredictionTrace")
      .def_readonly("first_index", &PredictionTrace::first_index)
      .def_readonly("desired", &PredictionTrace::desired)
      .def_readonly("predicted", &PredictionTrace::predicted)
      .def_readonly("error", &PredictionTrace::error)
      .def_readonly("final_weights", &PredictionTrace::final_weights)
      .def_property_readonly("weight_snapshots",
                             [](const PredictionTrace& t) {
                               py::list out;
                               for (const auto& w : t.weight_snapshots) out.append(py::make_tuple(w.index, w.weights));
                               return out;
                             })
      .def("__len__", &PredictionTrace::size);
  m.def("run_prediction", &run_prediction, py::arg("series"), py::arg("config"));
  m.def(
      "forecast_future",
      [](const PriceSeries& s, const PredictorConfig& c) {
        std::vector<std::pair<DayIndex, double>> out;
        for (const auto& p : forecast_future(s, c)) out.emplace_back(p.index, p.price);
        return out;
      },
      py::arg("series"), py::arg("config"));

  m.def(
      "correlation", [](const std::vector<double>& a, const std::vector<double>& b) { return correlation(a, b); },
      py::arg("a"), py::arg("b"));

  py::class_<CorrelationSurface>(m, "CorrelationSurface")
      .def_property_readonly("n_values", &CorrelationSurface::n_values)
      .def_property_readonly("l_values", &CorrelationSurface::l_values)
      .def("cell", &CorrelationSurface::cell, py::arg("n"), py::arg("l"))
      .def("to_list",
           [](const CorrelationSurface& s) {
             std::vector<std::vector<std::optional<double>>> out(s.rows());
             for (std::size_t r = 0; r < s.rows(); ++r) {
               for (std::size_t c = 0; c < s.cols(); ++c) out[r].push_back(s.at(r, c));
             }
             return out;
           });
  m.def(
      "sweep_surface",
      [](const PriceSeries& s, std::vector<int> ns, std::vector<int> ls, DayIndex eval_from, DayIndex eval_to,
         double lambda, double delta, int jobs) {
        SweepConfig c;
        c.n_values = std::move(ns);
        c.l_values = std::move(ls);
        c.eval_from = eval_from;
        c.eval_to = eval_to;
        c.lambda = lambda;
        c.delta = delta;
        py::gil_scoped_release release;
        return sweep_surface(s, c, jobs);
      },
      py::arg("series"), py::arg("n_values"), py::arg("l_values"), py::arg("eval_from"), py::arg("eval_to"),
      py::arg("lambda_") = 0.98, py::arg("delta") = kDefaultDelta, py::arg("jobs") = 1);
  const auto profile = [](std::vector<ProfilePoint> p) {
    std::vector<std::pair<int, std::optional<double>>> out;
    for (const auto& x : p) out.emplace_back(x.key, x.max_correlation);
    return out;
  };
  m.def("profile_by_n", [profile](const CorrelationSurface& s) { return profile(profile_by_n(s)); });
  m.def("profile_by_l", [profile](const CorrelationSurface& s) { return profile(profile_by_l(s)); });

  py::class_<TradePlan>(m, "TradePlan")
      .def(py::init([](DayIndex buy, DayIndex sell) { return TradePlan{buy, sell, {}}; }), py::arg("buy_index"),
           py::arg("sell_index"))
      .def_readonly("buy_index", &TradePlan::buy_index)
      .def_readonly("sell_index", &TradePlan::sell_index)
      .def("__eq__", [](const TradePlan& a, const TradePlan& b) { return a == b; });
  py::class_<BacktestResult>(m, "BacktestResult")
      .def_readonly("plan", &BacktestResult::plan)
      .def_readonly("buy_price", &BacktestResult::buy_price)
      .def_readonly("sell_price", &BacktestResult::sell_price)
      .def_readonly("profit_pct", &BacktestResult::profit_pct);
  py::class_<TableRow>(m, "TableRow")
      .def_readonly("n_coeffs", &TableRow::n_coeffs)
      .def_readonly("window", &TableRow::window)
      .def_property_readonly("status", [](const TableRow& r) { return status_name(r.status); })
      .def_readonly("plan", &TableRow::plan)
      .def_readonly("result", &TableRow::result)
      .def_readonly("message", &TableRow::message);

  m.def(
      "plan_trade",
      [](const std::vector<std::pair<DayIndex, double>>& forecast) {
        std::vector<ForecastPoint> pts;
        for (const auto& [i, p] : forecast) pts.push_back({i, p});
        return plan_trade(pts);
      },
      py::arg("forecast"), "Takes (index, price) pairs; returns None when no trade is possible.");
  m.def("backtest", &backtest, py::arg("plan"), py::arg("actual"));
  m.def("profit_percent", &profit_percent, py::arg("buy_price"), py::arg("sell_price"));
  m.def(
      "table_sweep",
      [](const PriceSeries& s, std::optional<std::vector<std::pair<int, int>>> rows, double lambda, double delta,
         DayIndex anchor, int jobs) {
        std::vector<TableRowSpec> specs;
        if (rows) {
          for (const auto& [n, l] : *rows) specs.push_back({n, l});
        } else {
          specs = reference_table_rows();
        }
        py::gil_scoped_release release;
        return table_sweep(s, specs, lambda, delta, anchor, jobs);
      },
      py::arg("series"), py::arg("rows") = py::none(), py::arg("lambda_") = 0.98, py::arg("delta") = kDefaultDelta,
      py::arg("anchor") = kReferenceAnchor, py::arg("jobs") = 1);
}
