#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace swts {

struct Observation {
    std::size_t arm;
    double reward;
};

struct ArmAggregate {
    std::size_t pulls = 0;
    double reward_sum = 0.0;
};

/// Sliding-window sufficient statistics over the last `window` *rounds*.
///
/// One global FIFO ring of (arm, reward) records feeds per-arm pull counts
/// and compensated reward sums. Before the decision at round t the ring holds
/// the observations of rounds [max(1, t - window), t - 1], so a policy only
/// ever conditions on strictly past data. record() is O(1).
class WindowStats {
public:
    WindowStats(std::size_t arms, std::size_t window);

    void record(std::size_t arm, double reward);

    [[nodiscard]] std::size_t arms() const noexcept { return pulls_.size(); }
    [[nodiscard]] std::size_t window() const noexcept { return window_; }
    /// Records currently retained: min(recorded, window).
    [[nodiscard]] std::size_t size() const noexcept { return size_; }
    [[nodiscard]] std::size_t total_recorded() const noexcept { return recorded_; }

    [[nodiscard]] std::size_t pulls(std::size_t arm) const noexcept { return pulls_[arm]; }
    [[nodiscard]] double reward_sum(std::size_t arm) const noexcept { return sums_[arm] + compensation_[arm]; }
    /// Empty when the arm has no pulls inside the window.
    [[nodiscard]] std::optional<double> mean(std::size_t arm) const noexcept;
    [[nodiscard]] std::size_t min_pulls() const noexcept;

    /// Retained observations, oldest first.
    [[nodiscard]] std::vector<Observation> contents() const;

private:
    void add_to_sum(std::size_t arm, double x) noexcept;

    std::size_t window_;
    std::vector<Observation> ring_;
    std::size_t head_ = 0;  // index of the oldest record once the ring is full
    std::size_t size_ = 0;
    std::size_t recorded_ = 0;
    std::vector<std::size_t> pulls_;
    std::vector<double> sums_;
    std::vector<double> compensation_;
};

inline std::optional<double> window_mean(const WindowStats& stats, std::size_t arm) { return stats.mean(arm); }

/// Test oracle: aggregates over rounds [max(1, t - window), t - 1] of a full
/// history where history[r - 1] is the observation of round r. Requires
/// t <= history.size() + 1.
std::vector<ArmAggregate> brute_force_recompute(std::span<const Observation> history, std::size_t arms,
                                                std::size_t t, std::size_t window);

}  // namespace swts
