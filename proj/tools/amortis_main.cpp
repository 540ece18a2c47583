#include <CLI11.hpp>
#include <iostream>

#include "amortis/commands.hpp"
#include "amortis/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Mortgage amortization scenario simulator"};
  app.require_subcommand(1, 1);

  amortis::CommandOptions options;
  std::string scenario_path;
  std::string preset;
  std::string out_dir;
  std::string fixture;

  for (const std::string& name : amortis::command_names()) {
    CLI::App* sub = app.add_subcommand(name);
    auto* scenario_opt = sub->add_option("--scenario", scenario_path, "Scenario JSON file");
    sub->add_option("--preset", preset, "Named preset (paper-baseline, paper-annexe1, "
                                        "paper-text, paper-alt-n60)")
        ->excludes(scenario_opt);
    sub->add_option("--format", options.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", out_dir, "Directory for emitted files (default: stdout)");
    sub->add_flag("--plot", options.plot, "Also write figure data and SVG charts");
    sub->add_flag("--paper-compat", options.paper_compat,
                  "Reproduce the reference supply figures, transcription slips included");
    if (name == "verify" || name == "calibrate") {
      sub->add_option("--fixture", fixture, "Reference metrics CSV (default: built-in table)");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? amortis::kExitSuccess : amortis::kExitInvalidInput;
  }

  options.command = app.get_subcommands().front()->get_name();
  if (!scenario_path.empty()) options.scenario_path = scenario_path;
  if (!preset.empty()) options.preset = preset;
  if (!out_dir.empty()) options.out_dir = out_dir;
  if (!fixture.empty()) options.fixture_path = fixture;
  return amortis::run_command(options, std::cout, std::cerr);
}
