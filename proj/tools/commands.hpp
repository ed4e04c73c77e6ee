#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace piso::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;

struct Param {
  std::string key;
  std::string default_value;
  std::string help;
};

struct CommandSpec {
  std::string name;
  std::string help;
  std::vector<Param> params;
  std::string default_format;  // "csv" or "json"
};

const std::vector<CommandSpec>& command_specs();
const CommandSpec* find_command(const std::string& name);

using Settings = std::map<std::string, std::string>;

/// Reads the [name] section of an INI-style config file. Throws ConfigError
/// on unknown sections or keys, or on a malformed file.
Settings load_config(const std::string& path, const std::string& name);

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunResult {
  int exit_code = kExitOk;
  std::string output;       // CSV or JSON document
  std::string diagnostics;  // human-readable notes for stderr
};

/// Runs one subcommand. Missing settings take their defaults; every value is
/// parsed and validated before any computation starts.
RunResult run_command(const std::string& name, const Settings& settings, std::uint64_t seed,
                      const std::string& format);

/// Whole command line, as used by main(). Writes to --out or stdout.
int run_cli(int argc, char** argv);

}  // namespace piso::cli
