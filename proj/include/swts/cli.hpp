#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

namespace swts::cli {

enum ExitCode : int { exit_ok = 0, exit_selftest_failed = 1, exit_config_error = 2, exit_io_error = 3 };

struct Streams {
    std::ostream& out;
    std::ostream& err;
};

struct AnalyzeOptions {
    std::filesystem::path trajectory;
    std::vector<std::size_t> taus;
    std::optional<double> delta_prime;
    std::optional<double> cap_scale;
    std::optional<double> cap_exponent;
    std::filesystem::path out_dir;
};

/// Writes regret CSV(s), summary.json and regret.svg. `out_dir` overrides the config's output_dir.
int cmd_simulate(const std::filesystem::path& config, const std::optional<std::filesystem::path>& out_dir,
                 std::size_t jobs, Streams io, const char* seed_override);
/// Writes sweep.csv, summary.json and sweep.svg.
int cmd_sweep(const std::filesystem::path& config, const std::optional<std::filesystem::path>& out_dir,
              std::size_t jobs, Streams io, const char* seed_override);
/// Writes structure_tau_<tau>.json per window.
int cmd_analyze(const AnalyzeOptions& options, Streams io);
int cmd_validate(const std::filesystem::path& config, Streams io, const char* seed_override);
int cmd_selftest(Streams io);

/// Full command-line entry point (argument parsing included).
int run(int argc, const char* const* argv, Streams io);

}  // namespace swts::cli
