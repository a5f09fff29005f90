#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "swts/policies.hpp"
#include "swts/reward_model.hpp"

namespace swts {

/// One simulated episode. Regret is pseudo-regret: gaps of true means, never
/// realized rewards.
struct EpisodeRecord {
    std::uint64_t seed = 0;
    std::vector<std::size_t> arms;          ///< chosen arm per round (0-based), index t-1
    std::vector<double> rewards;            ///< realized reward per round
    std::vector<double> instant_regret;     ///< mu(i*(t), t) - mu(I_t, t)
    std::vector<double> cumulative_regret;
    std::vector<std::size_t> pulls;         ///< T_i(T) per arm

    friend bool operator==(const EpisodeRecord&, const EpisodeRecord&) = default;
};

/// Runs t = 1..T: select, sample the reward, observe. The policy and the
/// reward process draw from separate streams derived from `seed`, so every
/// policy sees the same reward noise for a given seed.
EpisodeRecord run_episode(const PolicyConfig& config, const RewardTrajectory& traj, std::uint64_t seed);

/// Prefix sums of mu(i*(t), t) - mu(arms[t-1], t).
std::vector<double> dynamic_regret(const std::vector<std::size_t>& arms, const RewardTrajectory& traj);
inline std::vector<double> dynamic_regret(const EpisodeRecord& record, const RewardTrajectory& traj) {
    return dynamic_regret(record.arms, traj);
}

struct Aggregate {
    std::size_t replications = 0;
    std::vector<double> mean_regret;   ///< per round, cumulative
    std::vector<double> stderr_regret; ///< per round, sample std / sqrt(n); 0 for n = 1
    std::vector<double> mean_pulls;    ///< per arm, estimate of E[T_i(T)]
    std::vector<double> mean_suboptimal_pulls;  ///< per arm, pulls while not optimal
    /// arm_counts[i][t-1] = number of episodes that pulled arm i at round t.
    std::vector<std::vector<std::uint32_t>> arm_counts;
    std::uint64_t fingerprint = 0;

    [[nodiscard]] double final_regret() const { return mean_regret.back(); }
    [[nodiscard]] double final_stderr() const { return stderr_regret.back(); }
};

/// Seed of replication `index` for a given base seed.
std::uint64_t replication_seed(std::uint64_t base_seed, std::size_t index) noexcept;

/// FNV-1a over the policy description, the trajectory (means and family),
/// the base seed and n. Changes whenever any of them changes.
std::uint64_t config_fingerprint(const PolicyConfig& config, const RewardTrajectory& traj, std::uint64_t base_seed,
                                 std::size_t replications);

/// n episodes with seeds replication_seed(base_seed, 0..n-1). Episodes run on
/// up to `jobs` threads (0 = hardware concurrency); the reduction is done in
/// fixed chunk order, so results do not depend on `jobs`.
Aggregate run_replications(const PolicyConfig& config, const RewardTrajectory& traj, std::size_t replications,
                           std::uint64_t base_seed, std::size_t jobs = 0);

struct SweepRow {
    std::size_t tau = 0;
    double final_regret = 0.0;
    double stderr_regret = 0.0;
    std::vector<double> mean_pulls;
    std::uint64_t fingerprint = 0;
};

/// Base seed used for the row of window `tau`; depends only on (base_seed, tau),
/// so reordering the window list leaves every row unchanged.
std::uint64_t sweep_seed(std::uint64_t base_seed, std::size_t tau) noexcept;

/// One run_replications per window; `family` supplies kind and gamma, its tau is overridden.
std::vector<SweepRow> tau_sweep(const PolicyConfig& family, const RewardTrajectory& traj,
                                const std::vector<std::size_t>& taus, std::size_t replications,
                                std::uint64_t base_seed, std::size_t jobs = 0);

/// Rounds kept in output files: every ceil(T / max_points)-th round plus T.
std::vector<std::size_t> decimated_rounds(std::size_t horizon, std::size_t max_points = 2048);

/// `round,mean_regret,stderr` rows at the decimated rounds, 17 significant digits.
void write_regret_csv(std::ostream& out, const Aggregate& agg);
/// `tau,final_regret,stderr,pulls_arm_1..K`.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, std::size_t arms);

}  // namespace swts
