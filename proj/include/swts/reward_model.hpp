#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "swts/rng.hpp"

namespace swts {

// Arms are 0-based in the API; rounds are 1-based (t = 1..T) to match the
// usual bandit indexing. External files and CSV headers use 1-based arms.

enum class FamilyKind { bernoulli, subgaussian };
enum class NoiseKind { gaussian, bounded };

/// Reward family. For subgaussian rewards the noise added to the mean is
/// either N(0, proxy_variance) or uniform on [-b, b] with b = sqrt(proxy_variance)
/// (a [-b, b]-bounded variable is b^2-sub-Gaussian by Hoeffding's lemma).
struct RewardFamily {
    FamilyKind kind = FamilyKind::bernoulli;
    double proxy_variance = 0.0;
    NoiseKind noise = NoiseKind::gaussian;

    static RewardFamily bernoulli() { return {}; }
    static RewardFamily subgaussian(double proxy_variance, NoiseKind noise = NoiseKind::gaussian) {
        return {FamilyKind::subgaussian, proxy_variance, noise};
    }

    friend bool operator==(const RewardFamily&, const RewardFamily&) = default;
};

/// Fully materialized K x T matrix of mean rewards. Immutable once built.
class RewardTrajectory {
public:
    /// means[arm][t-1]; every row must have the same length T >= 1, K >= 2.
    RewardTrajectory(std::vector<std::vector<double>> means, RewardFamily family);

    [[nodiscard]] std::size_t arms() const noexcept { return arms_; }
    [[nodiscard]] std::size_t horizon() const noexcept { return horizon_; }
    [[nodiscard]] const RewardFamily& family() const noexcept { return family_; }

    /// Mean of `arm` at round t (1-based). Unchecked.
    [[nodiscard]] double mean(std::size_t arm, std::size_t t) const noexcept {
        return means_[arm * horizon_ + (t - 1)];
    }
    /// Bounds-checked variant; throws std::out_of_range.
    [[nodiscard]] double at(std::size_t arm, std::size_t t) const;

    /// Row of one arm, index t-1.
    [[nodiscard]] std::span<const double> arm_means(std::size_t arm) const noexcept {
        return {means_.data() + arm * horizon_, horizon_};
    }

    /// Lowest-index maximizer of the means at round t.
    [[nodiscard]] std::size_t optimal_arm(std::size_t t) const noexcept;
    [[nodiscard]] double optimal_mean(std::size_t t) const noexcept { return mean(optimal_arm(t), t); }

    /// max over arms and t of |mu(i,t+1) - mu(i,t)|; 0 when T = 1.
    [[nodiscard]] double max_step_drift() const noexcept;

private:
    std::size_t arms_;
    std::size_t horizon_;
    std::vector<double> means_;
    RewardFamily family_;
};

/// Piecewise-constant environment. `phase_starts` are the first rounds of
/// phases 2, 3, ... (strictly ascending, each in [2, T]); `phase_means` holds
/// one K-vector per phase.
RewardTrajectory make_piecewise_constant(std::size_t arms, std::size_t horizon,
                                         const std::vector<std::size_t>& phase_starts,
                                         const std::vector<std::vector<double>>& phase_means,
                                         RewardFamily family = RewardFamily::bernoulli());

/// Two anti-phase sinusoids:
///   mu_1(t) = center + amplitude * sin(2 pi (t - shift) / period)
///   mu_2(t) = center - amplitude * sin(2 pi (t - shift) / period)
/// They cross wherever the sine vanishes, i.e. every period/2 rounds.
struct SinusoidParams {
    double center = 0.5;
    double amplitude = 0.4;
    double period = 2000.0;
    double shift = 0.0;
};
RewardTrajectory make_crossing_sinusoid(std::size_t horizon, const SinusoidParams& params,
                                        RewardFamily family = RewardFamily::bernoulli());

enum class SmoothShape {
    /// Arms start spaced by delta_prime around `center` and drift apart
    /// linearly with slopes of magnitude sigma/2.
    diverging_ramps,
    /// Arms oscillate around levels spaced by delta_prime, amplitude chosen so
    /// the per-step drift is at most sigma; neighbouring arms are in anti-phase
    /// and cross when the spacing is below twice the amplitude.
    oscillating,
    /// Reflected random walk in [lower, upper] with uniform steps in [-sigma, sigma].
    random_walk,
};

struct SmoothParams {
    std::size_t arms = 2;
    std::size_t horizon = 1000;
    double sigma = 0.001;
    double delta_prime = 0.2;
    SmoothShape shape = SmoothShape::oscillating;
    double center = 0.5;
    double period = 2000.0;  // oscillating only
    double lower = 0.0;      // admissible band
    double upper = 1.0;
    std::uint64_t seed = 0;  // random_walk only
};

struct SmoothTrajectory {
    RewardTrajectory trajectory;
    double realized_drift;  ///< audited max per-step change, always <= sigma
};

/// Lipschitz-continuous environment with per-step drift at most sigma.
/// Throws ParameterError if the requested levels do not fit in [lower, upper]
/// (or [0, 1] for Bernoulli).
SmoothTrajectory make_lipschitz_smooth(const SmoothParams& params,
                                       RewardFamily family = RewardFamily::bernoulli());

/// One realized reward X_{arm,t}. Bernoulli: {0,1}. Subgaussian: mean plus
/// zero-mean noise of the declared proxy variance (exactly the mean when it is 0).
double sample_reward(const RewardTrajectory& traj, std::size_t arm, std::size_t t, RngStream& rng);

std::size_t optimal_arm(const RewardTrajectory& traj, std::size_t t);

}  // namespace swts
