#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "swts/policies.hpp"
#include "swts/reward_model.hpp"

namespace swts {

/// Environment section of an experiment config. Kind-specific fields are only
/// read for their kind; unknown keys are rejected at parse time.
struct EnvironmentSpec {
    enum class Kind { piecewise_constant, crossing_sinusoid, lipschitz_smooth, custom_file };
    Kind kind = Kind::piecewise_constant;
    RewardFamily family;
    std::size_t arms = 2;
    // piecewise_constant
    std::vector<std::size_t> boundaries;
    std::vector<std::vector<double>> phase_means;
    // crossing_sinusoid
    SinusoidParams sinusoid;
    // lipschitz_smooth
    SmoothParams smooth;
    // custom_file (resolved against the config file's directory)
    std::filesystem::path path;
};

struct SweepSpec {
    PolicyConfig policy;  ///< tau ignored
    std::vector<std::size_t> taus;
};

struct PlotOptions {
    bool log_x = false;
    bool log_y = false;
};

struct ExperimentConfig {
    EnvironmentSpec environment;
    std::optional<std::size_t> horizon;  ///< required unless the environment is a file
    std::vector<PolicyConfig> policies;
    std::optional<SweepSpec> sweep;
    std::size_t replications = 1;
    std::uint64_t seed = 0;
    std::string timestamp = "1970-01-01T00:00:00Z";
    PlotOptions plot;
    std::optional<std::filesystem::path> output_dir;
};

/// Parses and schema-checks a config document. `base_dir` resolves relative
/// file references. Throws ConfigError with a key path in the message.
ExperimentConfig parse_experiment_config(const std::string& json_text, const std::filesystem::path& base_dir = {});

/// Reads the file; a missing or unreadable config is a ConfigError naming the path.
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Applies the BANDIT_SEED environment override (takes precedence over the
/// config file). Throws ConfigError on a malformed value.
void apply_seed_override(ExperimentConfig& config, const char* env_value);

/// Builds the trajectory described by the config. Throws ConfigError
/// (including for a missing trajectory file, naming the path).
RewardTrajectory build_environment(const ExperimentConfig& config);

/// Cross-field validation: every policy/sweep window runs on the trajectory.
/// Returns non-fatal warnings.
std::vector<std::string> validate_experiment(const ExperimentConfig& config, const RewardTrajectory& traj);

}  // namespace swts
