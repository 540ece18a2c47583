#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace amortis {

enum ExitCode : int {
  kExitSuccess = 0,
  kExitVerificationFailed = 1,
  kExitInvalidInput = 2,
};

struct CommandOptions {
  std::string command;  // sweep | table | verify | calibrate | report
  std::optional<std::filesystem::path> scenario_path;
  std::optional<std::string> preset;  // defaults to paper-annexe1
  std::string format = "csv";         // csv | json
  std::optional<std::filesystem::path> out_dir;
  bool plot = false;
  bool paper_compat = false;
  std::optional<std::filesystem::path> fixture_path;  // defaults to the compiled-in table
};

std::vector<std::string> command_names();

/// Executes one command. Results go to `out` unless `out_dir` is set, in
/// which case each emitted file is written atomically and its path is
/// listed on `err`. Diagnostics go to `err`.
int run_command(const CommandOptions& options, std::ostream& out, std::ostream& err);

/// Writes via a sibling temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace amortis
