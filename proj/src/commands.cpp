#include "amortis/commands.hpp"

#include <fmt/core.h>
#include <fmt/ostream.h>
#include <fstream>
#include <ostream>

#include "amortis/calibration.hpp"
#include "amortis/report.hpp"
#include "amortis/scenario.hpp"
#include "amortis/svg_plot.hpp"

namespace amortis {

namespace fs = std::filesystem;

std::vector<std::string> command_names() {
  return {"sweep", "table", "verify", "calibrate", "report"};
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw InputError(fmt::format("cannot write {}", path.string()));
    file << content;
    file.close();
    if (!file) throw InputError(fmt::format("cannot write {}", path.string()));
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw InputError(fmt::format("cannot write {}", path.string()));
  }
}

namespace {

struct Emitter {
  const CommandOptions& options;
  std::ostream& out;
  std::ostream& err;
  bool first = true;

  void emit(const std::string& stem, const std::string& content) {
    if (options.out_dir) {
      const fs::path path = *options.out_dir / stem;
      write_file_atomic(path, content);
      fmt::print(err, "wrote {}\n", path.string());
    } else {
      if (!first) out << '\n';
      out << content;
    }
    first = false;
  }
};

Scenario resolve_scenario(const CommandOptions& options) {
  if (options.scenario_path && options.preset) {
    throw InputError("--scenario and --preset are mutually exclusive");
  }
  Scenario s = options.scenario_path ? load_scenario_file(*options.scenario_path)
                                     : preset(options.preset.value_or("paper-annexe1"));
  s.paper_compat = s.paper_compat || options.paper_compat;
  s.validate();
  return s;
}

GoldenTable resolve_fixture(const CommandOptions& options) {
  return options.fixture_path ? load_golden_csv(*options.fixture_path) : annexe1_table();
}

void write_plots(const Scenario& scenario, const CommandOptions& options, std::ostream& err) {
  const fs::path dir = options.out_dir.value_or(fs::path("."));
  const auto market = run_market(scenario);
  const auto metrics = run_metrics(scenario);

  PlotSeries demand_series{"Demand (loans)", {}, {}};
  PlotSeries supply_series{"Supply (loans)", {}, {}};
  for (const MarketPoint& p : market) {
    const double years = p.term_months / kMonthsPerYear;
    demand_series.x.push_back(years);
    demand_series.y.push_back(p.demand);
    supply_series.x.push_back(years);
    supply_series.y.push_back(p.supply_loans);
  }
  PlotSeries risk_series{"Risk index", {}, {}};
  for (const MetricsRow& r : metrics) {
    risk_series.x.push_back(r.duration_years);
    risk_series.y.push_back(r.risk_index);
  }

  struct Figure {
    std::string stem;
    std::string title;
    std::string y_label;
    const PlotSeries& series;
  };
  const Figure figures[] = {
      {"fig4_demand", "Loan demand by amortization period", "loans", demand_series},
      {"fig5_supply", "Loan supply by amortization period", "loans", supply_series},
      {"fig6_risk", "Composite risk index by amortization period", "risk index", risk_series},
  };
  for (const Figure& f : figures) {
    const fs::path dat = dir / (f.stem + ".dat");
    const fs::path svg = dir / (f.stem + ".svg");
    write_file_atomic(dat, plot_data(f.series, "years"));
    write_file_atomic(svg, line_chart_svg(f.title, "amortization (years)", f.y_label,
                                          std::span<const PlotSeries>(&f.series, 1)));
    fmt::print(err, "wrote {}\nwrote {}\n", dat.string(), svg.string());
  }
}

int execute(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  const bool json = options.format == "json";
  if (!json && options.format != "csv") {
    throw InputError(fmt::format("unknown format '{}' (expected csv or json)", options.format));
  }
  const auto names = command_names();
  if (std::find(names.begin(), names.end(), options.command) == names.end()) {
    throw InputError(fmt::format("unknown command '{}'", options.command));
  }
  if (options.out_dir && !fs::is_directory(*options.out_dir)) {
    throw InputError(fmt::format("output directory {} does not exist",
                                 options.out_dir->string()));
  }

  const Scenario scenario = resolve_scenario(options);
  const std::string ext = json ? ".json" : ".csv";
  Emitter emitter{options, out, err};
  int status = kExitSuccess;

  if (options.command == "sweep") {
    const auto market = run_market(scenario);
    emitter.emit("sweep" + ext, json ? dump(to_json(std::span<const MarketPoint>(market)))
                                     : market_csv(market));
  } else if (options.command == "table") {
    const auto metrics = run_metrics(scenario);
    emitter.emit("table" + ext, json ? dump(to_json(std::span<const MetricsRow>(metrics)))
                                     : metrics_csv(metrics));
  } else if (options.command == "verify") {
    const GoldenTable golden = resolve_fixture(options);
    const auto metrics = run_metrics(scenario);
    const ColumnTolerances tolerances;
    const VerificationReport report =
        verify_golden(metrics, golden, tolerances, scenario.paper_compat);
    emitter.emit("verify" + ext, json ? dump(to_json(report, tolerances))
                                      : verification_csv(report, tolerances));
    fmt::print(err, "verification against {}: {}\n", golden.source,
               report.pass ? "PASS" : "FAIL");
    status = report.pass ? kExitSuccess : kExitVerificationFailed;
  } else if (options.command == "calibrate") {
    const GoldenTable golden = resolve_fixture(options);
    const CalibrationReport report =
        calibrate(golden, scenario.principal(), scenario.weights.max_term_months);
    for (const std::string& w : report.warnings) fmt::print(err, "warning: {}\n", w);
    emitter.emit("calibrate" + ext, json ? dump(to_json(report)) : calibration_csv(report));
  } else {
    const Report report = build_report(scenario);
    if (json) {
      emitter.emit("report.json", dump(to_json(report)));
    } else {
      emitter.emit("report_market.csv", market_csv(report.market));
      emitter.emit("report_metrics.csv", metrics_csv(report.metrics));
      emitter.emit("report_summary.csv", summary_csv(report));
    }
  }

  if (options.plot) write_plots(scenario, options, err);
  return status;
}

}  // namespace

int run_command(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  try {
    return execute(options, out, err);
  } catch (const InputError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitInvalidInput;
  } catch (const CalibrationError& e) {
    fmt::print(err, "calibration failed: {}\n", e.what());
    return kExitInvalidInput;
  }
}

}  // namespace amortis
