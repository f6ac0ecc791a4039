#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace jetvar {

enum class OutputFormat { Text, Latex, Json };

struct RunOptions {
  OutputFormat format = OutputFormat::Text;
  std::uint64_t seed = 1;
  std::optional<double> tolerance;  // oracle; default 1e-4 for m = 1, 1e-3 for m = 2
  std::optional<std::size_t> grid;  // oracle nodes per axis; default 2000 for m = 1, 200 for m = 2
};

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitCheckFailed = 2;

const std::vector<std::string>& command_names();

// Runs a command over spec files. Results go to `out`, diagnostics to `err`.
// Returns kExitOk, kExitInvalid (parse or validation error) or
// kExitCheckFailed (a mathematical check did not hold).
int run(const std::string& command, const std::vector<std::string>& files, const RunOptions& options,
        std::ostream& out, std::ostream& err);

}  // namespace jetvar
