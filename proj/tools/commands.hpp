#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ruelle::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;  // --strict and some report failed
inline constexpr int kExitConfig = 2;
inline constexpr int kExitCompute = 3;

struct Options {
  std::filesystem::path config;
  std::optional<std::filesystem::path> out;  // overrides output.dir
  std::optional<std::string> format;         // json | csv | both
  bool strict = false;
};

const std::vector<std::string>& command_names();

/// Runs one subcommand. Diagnostics go to err; the exit code follows the
/// kExit* constants.
int run_command(const std::string& name, const Options& options, std::ostream& err);

/// Full argv entry point (CLI11 parsing included).
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ruelle::cli
