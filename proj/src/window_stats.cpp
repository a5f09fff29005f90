#include "swts/window_stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "swts/errors.hpp"

namespace swts {

WindowStats::WindowStats(std::size_t arms, std::size_t window)
    : window_(window), pulls_(arms, 0), sums_(arms, 0.0), compensation_(arms, 0.0) {
    if (arms < 1) throw ParameterError("window statistics need at least one arm");
    if (window < 1) throw ParameterError("window length must be at least 1");
    // The ring grows lazily up to the window; huge windows cost nothing until filled.
    ring_.reserve(std::min<std::size_t>(window, 4096));
}

void WindowStats::add_to_sum(std::size_t arm, double x) noexcept {
    // Neumaier summation: the running error lives in compensation_.
    const double s = sums_[arm];
    const double t = s + x;
    if (std::fabs(s) >= std::fabs(x)) {
        compensation_[arm] += (s - t) + x;
    } else {
        compensation_[arm] += (x - t) + s;
    }
    sums_[arm] = t;
}

void WindowStats::record(std::size_t arm, double reward) {
    if (arm >= pulls_.size()) throw ContractError("arm index " + std::to_string(arm) + " out of range");
    ++recorded_;
    if (size_ < window_) {
        ring_.push_back({arm, reward});
        ++size_;
    } else {
        Observation& slot = ring_[head_];
#ifndef SWTS_INJECT_EVICTION_FAULT
        --pulls_[slot.arm];
        add_to_sum(slot.arm, -slot.reward);
        if (pulls_[slot.arm] == 0) {
            sums_[slot.arm] = 0.0;
            compensation_[slot.arm] = 0.0;
        }
#endif
        slot = {arm, reward};
        head_ = (head_ + 1) % window_;
    }
    ++pulls_[arm];
    add_to_sum(arm, reward);
}

std::optional<double> WindowStats::mean(std::size_t arm) const noexcept {
    if (pulls_[arm] == 0) return std::nullopt;
    return reward_sum(arm) / static_cast<double>(pulls_[arm]);
}

std::size_t WindowStats::min_pulls() const noexcept { return *std::min_element(pulls_.begin(), pulls_.end()); }

std::vector<Observation> WindowStats::contents() const {
    std::vector<Observation> out;
    out.reserve(size_);
    for (std::size_t k = 0; k < size_; ++k) out.push_back(ring_[(head_ + k) % ring_.size()]);
    return out;
}

std::vector<ArmAggregate> brute_force_recompute(std::span<const Observation> history, std::size_t arms,
                                                std::size_t t, std::size_t window) {
    if (t < 1 || t > history.size() + 1) throw ParameterError("brute_force_recompute: round out of range");
    std::vector<ArmAggregate> agg(arms);
    const std::size_t first = t > window ? t - window : 1;
    for (std::size_t r = first; r + 1 <= t; ++r) {
        const Observation& o = history[r - 1];
        ++agg[o.arm].pulls;
        agg[o.arm].reward_sum += o.reward;
    }
    return agg;
}

}  // namespace swts
