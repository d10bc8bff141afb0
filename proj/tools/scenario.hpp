#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bnslab::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_config = 2;
inline constexpr int exit_numerical = 3;

struct Scenario {
  std::string command;
  std::filesystem::path config;
  std::optional<std::uint64_t> seed;  // overrides [run] seed
  std::filesystem::path out;          // overrides [output] dir when nonempty
  std::vector<std::string> overrides;  // "section.key=value"
};

// Commands accepted by run_scenario.
const std::vector<std::string>& commands();

// Human-readable listing of every config section and key with its type.
std::string schema_text();

// Validates the config, runs the pipeline, writes artifacts and a manifest.
// Errors are reported on stderr and in <out>/error.txt; the return value is
// the process exit status.
int run_scenario(const Scenario& sc);

}  // namespace bnslab::cli
