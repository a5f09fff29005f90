#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "swts/reward_model.hpp"
#include "swts/rng.hpp"
#include "swts/window_stats.hpp"

namespace swts {

/// Common contract: select(t, rng) picks the arm for round t (1-based) and
/// observe(t, arm, reward) feeds back the realized reward. The pull sequence
/// is a pure function of the configuration, the rewards and the RNG stream.
class Policy {
public:
    virtual ~Policy() = default;
    virtual std::size_t select(std::size_t t, RngStream& rng) = 0;
    virtual void observe(std::size_t t, std::size_t arm, double reward) = 0;
    [[nodiscard]] virtual std::string name() const = 0;
};

struct BetaPosterior {
    double alpha;
    double beta;
};

struct GaussianPosterior {
    double mean;
    double variance;
};

/// Sliding-window Thompson sampling with Beta(1 + S, 1 + F) posteriors built
/// from the successes S and failures F inside the window. Empty windows give
/// the uniform Beta(1, 1) prior. Rewards must be exactly 0 or 1.
class BetaSwts final : public Policy {
public:
    BetaSwts(std::size_t arms, std::size_t window);

    std::size_t select(std::size_t t, RngStream& rng) override;
    void observe(std::size_t t, std::size_t arm, double reward) override;
    [[nodiscard]] std::string name() const override;

    [[nodiscard]] BetaPosterior posterior(std::size_t arm) const noexcept;
    [[nodiscard]] const WindowStats& stats() const noexcept { return stats_; }

private:
    WindowStats stats_;
    std::vector<double> draws_;
};

/// Sliding-window Gaussian Thompson sampling. Posterior of arm i is
/// N(window mean, 1 / (gamma * window pulls)).
///
/// Forced schedule: rounds 1..K pull arms 1..K (warm-up); afterwards, the
/// first K rounds of every block [m*tau + 1, (m+1)*tau], m >= 1, pull arms
/// 1..K in order. With tau >= K this keeps every window count >= 1 whenever a
/// posterior is sampled.
class GammaSwgts final : public Policy {
public:
    GammaSwgts(std::size_t arms, std::size_t window, double gamma);

    std::size_t select(std::size_t t, RngStream& rng) override;
    void observe(std::size_t t, std::size_t arm, double reward) override;
    [[nodiscard]] std::string name() const override;

    /// Arm scheduled for round t, if t is a forced round-robin slot.
    [[nodiscard]] std::optional<std::size_t> forced_arm(std::size_t t) const noexcept;
    [[nodiscard]] std::optional<GaussianPosterior> posterior(std::size_t arm) const noexcept;
    [[nodiscard]] const WindowStats& stats() const noexcept { return stats_; }
    [[nodiscard]] double gamma() const noexcept { return gamma_; }
    /// Number of posterior-sampling (non-forced) selections so far.
    [[nodiscard]] std::size_t posterior_rounds() const noexcept { return posterior_rounds_; }

private:
    WindowStats stats_;
    double gamma_;
    std::size_t posterior_rounds_ = 0;
};

/// Pulls the optimal arm of the trajectory at every round.
class OraclePolicy final : public Policy {
public:
    explicit OraclePolicy(const RewardTrajectory* traj);
    std::size_t select(std::size_t t, RngStream& rng) override;
    void observe(std::size_t, std::size_t, double) override {}
    [[nodiscard]] std::string name() const override { return "oracle"; }

private:
    const RewardTrajectory* traj_;
};

class UniformPolicy final : public Policy {
public:
    explicit UniformPolicy(std::size_t arms);
    std::size_t select(std::size_t t, RngStream& rng) override;
    void observe(std::size_t, std::size_t, double) override {}
    [[nodiscard]] std::string name() const override { return "uniform"; }

private:
    std::size_t arms_;
};

class FixedArmPolicy final : public Policy {
public:
    FixedArmPolicy(std::size_t arms, std::size_t arm);
    std::size_t select(std::size_t, RngStream&) override { return arm_; }
    void observe(std::size_t, std::size_t, double) override {}
    [[nodiscard]] std::string name() const override { return "fixed_" + std::to_string(arm_ + 1); }

private:
    std::size_t arm_;
};

enum class PolicyKind { beta_swts, gamma_swgts, stationary_ts, stationary_gts, oracle, uniform, fixed };

std::string_view to_string(PolicyKind kind) noexcept;
std::optional<PolicyKind> parse_policy_kind(std::string_view name) noexcept;

/// Declarative policy description, mirroring the JSON policy schema
/// {"policy": ..., "tau": int, "gamma": real, "arm": int (1-based)}.
struct PolicyConfig {
    PolicyKind kind = PolicyKind::beta_swts;
    std::size_t tau = 0;              ///< windowed variants only
    std::optional<double> gamma;      ///< Gaussian variants; defaults from the reward family
    std::size_t arm = 0;              ///< fixed only, 0-based

    friend bool operator==(const PolicyConfig&, const PolicyConfig&) = default;
};

/// Largest gamma covered by the sub-Gaussian regret guarantee: min(1/(4 s2), 1).
double default_gamma(const RewardFamily& family) noexcept;

/// Gamma actually used for a Gaussian policy on the given family.
double resolve_gamma(const PolicyConfig& config, const RewardFamily& family) noexcept;

/// Human-readable warnings (gamma above the guaranteed range, Gaussian
/// policies on Bernoulli rewards, ...). Never throws.
std::vector<std::string> policy_warnings(const PolicyConfig& config, const RewardFamily& family);

/// Throws ConfigError if the policy cannot run on the trajectory
/// (Beta policy on non-Bernoulli rewards, tau < K for gamma_swgts, ...).
void validate_policy(const PolicyConfig& config, const RewardTrajectory& traj);

/// Canonical one-line description, e.g. "beta_swts(tau=500)".
std::string describe(const PolicyConfig& config);

/// Builds a fresh policy for one episode. `traj` must outlive the policy.
std::unique_ptr<Policy> make_policy(const PolicyConfig& config, const RewardTrajectory& traj);

}  // namespace swts
