#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "swts/reward_model.hpp"

namespace swts {

// Trajectory file format: CSV with header `t,mu_1,...,mu_K` and one row per
// round (t = 1..T, ascending, LF line endings). The reward family lives in a
// JSON sidecar next to the CSV (same stem, `.json` extension):
//   {"family":"bernoulli"|"subgaussian","proxy_variance":<real>,"noise":"gaussian"|"bounded"}

std::filesystem::path sidecar_path(const std::filesystem::path& csv);

RewardTrajectory read_trajectory_csv(std::istream& csv, const RewardFamily& family);
RewardFamily parse_family_json(const std::string& text);
std::string family_json(const RewardFamily& family);

/// Reads the CSV and its sidecar. Throws IoError for unreadable files and
/// ParameterError for malformed content; messages name the offending path.
RewardTrajectory load_trajectory(const std::filesystem::path& csv);

void write_trajectory_csv(std::ostream& out, const RewardTrajectory& traj);
void save_trajectory(const std::filesystem::path& csv, const RewardTrajectory& traj);

}  // namespace swts
