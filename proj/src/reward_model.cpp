#include "swts/reward_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "swts/distributions.hpp"
#include "swts/errors.hpp"

namespace swts {

namespace {

void check_family(const RewardFamily& family) {
    if (family.kind == FamilyKind::subgaussian &&
        (!(family.proxy_variance >= 0.0) || !std::isfinite(family.proxy_variance))) {
        throw ParameterError("proxy variance must be a non-negative finite number");
    }
}

// Level of arm i when K levels are spaced by `spacing` symmetrically around `center`.
double spaced_level(std::size_t i, std::size_t arms, double center, double spacing) {
    return center + (static_cast<double>(i) - 0.5 * static_cast<double>(arms - 1)) * spacing;
}

double offset_sign(std::size_t i, std::size_t arms) {
    const double off = static_cast<double>(i) - 0.5 * static_cast<double>(arms - 1);
    return off > 0.0 ? 1.0 : (off < 0.0 ? -1.0 : 0.0);
}

}  // namespace

RewardTrajectory::RewardTrajectory(std::vector<std::vector<double>> means, RewardFamily family)
    : arms_(means.size()), horizon_(means.empty() ? 0 : means.front().size()), family_(family) {
    if (arms_ < 2) throw ParameterError("a trajectory needs at least 2 arms");
    if (horizon_ < 1) throw ParameterError("a trajectory needs a horizon of at least 1 round");
    check_family(family_);
    means_.reserve(arms_ * horizon_);
    for (std::size_t i = 0; i < arms_; ++i) {
        if (means[i].size() != horizon_) {
            throw ParameterError("arm " + std::to_string(i + 1) + " has " + std::to_string(means[i].size()) +
                                 " rounds, expected " + std::to_string(horizon_));
        }
        for (std::size_t t = 0; t < horizon_; ++t) {
            const double mu = means[i][t];
            if (!std::isfinite(mu)) {
                throw ParameterError("non-finite mean at arm " + std::to_string(i + 1) + ", round " +
                                     std::to_string(t + 1));
            }
            if (family_.kind == FamilyKind::bernoulli && (mu < 0.0 || mu > 1.0)) {
                throw ParameterError("Bernoulli mean outside [0,1] at arm " + std::to_string(i + 1) + ", round " +
                                     std::to_string(t + 1));
            }
        }
        means_.insert(means_.end(), means[i].begin(), means[i].end());
    }
}

double RewardTrajectory::at(std::size_t arm, std::size_t t) const {
    if (arm >= arms_ || t < 1 || t > horizon_) {
        throw std::out_of_range("trajectory index (arm " + std::to_string(arm) + ", round " + std::to_string(t) +
                                ") out of range");
    }
    return mean(arm, t);
}

std::size_t RewardTrajectory::optimal_arm(std::size_t t) const noexcept {
    std::size_t best = 0;
    double best_mu = mean(0, t);
    for (std::size_t i = 1; i < arms_; ++i) {
        const double mu = mean(i, t);
        if (mu > best_mu) {
            best = i;
            best_mu = mu;
        }
    }
    return best;
}

double RewardTrajectory::max_step_drift() const noexcept {
    double drift = 0.0;
    for (std::size_t i = 0; i < arms_; ++i) {
        for (std::size_t t = 1; t < horizon_; ++t) {
            drift = std::max(drift, std::fabs(mean(i, t + 1) - mean(i, t)));
        }
    }
    return drift;
}

RewardTrajectory make_piecewise_constant(std::size_t arms, std::size_t horizon,
                                         const std::vector<std::size_t>& phase_starts,
                                         const std::vector<std::vector<double>>& phase_means,
                                         RewardFamily family) {
    if (phase_means.size() != phase_starts.size() + 1) {
        throw ParameterError("need one mean vector per phase: " + std::to_string(phase_starts.size() + 1) +
                             " phases, " + std::to_string(phase_means.size()) + " vectors");
    }
    for (std::size_t p = 0; p < phase_starts.size(); ++p) {
        const std::size_t b = phase_starts[p];
        if (b < 2 || b > horizon) {
            throw ParameterError("phase boundary " + std::to_string(b) + " outside [2, " + std::to_string(horizon) +
                                 "]");
        }
        if (p > 0 && b <= phase_starts[p - 1]) throw ParameterError("phase boundaries must be strictly ascending");
    }
    for (const auto& v : phase_means) {
        if (v.size() != arms) {
            throw ParameterError("phase mean vector has " + std::to_string(v.size()) + " entries, expected " +
                                 std::to_string(arms));
        }
    }

    std::vector<std::vector<double>> means(arms, std::vector<double>(horizon));
    std::size_t phase = 0;
    for (std::size_t t = 1; t <= horizon; ++t) {
        while (phase < phase_starts.size() && t >= phase_starts[phase]) ++phase;
        for (std::size_t i = 0; i < arms; ++i) means[i][t - 1] = phase_means[phase][i];
    }
    return RewardTrajectory(std::move(means), family);
}

RewardTrajectory make_crossing_sinusoid(std::size_t horizon, const SinusoidParams& params, RewardFamily family) {
    if (!(params.period > 0.0)) throw ParameterError("sinusoid period must be positive");
    if (!(params.amplitude >= 0.0)) throw ParameterError("sinusoid amplitude must be non-negative");
    if (family.kind == FamilyKind::bernoulli &&
        (params.center - params.amplitude < 0.0 || params.center + params.amplitude > 1.0)) {
        throw ParameterError("sinusoid range [center - amplitude, center + amplitude] leaves [0,1]");
    }
    std::vector<std::vector<double>> means(2, std::vector<double>(horizon));
    for (std::size_t t = 1; t <= horizon; ++t) {
        const double s =
            params.amplitude * std::sin(2.0 * std::numbers::pi * (static_cast<double>(t) - params.shift) / params.period);
        means[0][t - 1] = params.center + s;
        means[1][t - 1] = params.center - s;
    }
    return RewardTrajectory(std::move(means), family);
}

SmoothTrajectory make_lipschitz_smooth(const SmoothParams& p, RewardFamily family) {
    if (!(p.sigma >= 0.0)) throw ParameterError("Lipschitz constant sigma must be non-negative");
    if (!(p.delta_prime >= 0.0)) throw ParameterError("level spacing delta_prime must be non-negative");
    if (p.arms < 2 || p.horizon < 1) throw ParameterError("smooth generator needs K >= 2 and T >= 1");
    double lower = p.lower;
    double upper = p.upper;
    if (family.kind == FamilyKind::bernoulli) {
        lower = std::max(lower, 0.0);
        upper = std::min(upper, 1.0);
    }
    if (!(upper > lower)) throw ParameterError("empty admissible band");

    const std::size_t K = p.arms;
    const std::size_t T = p.horizon;
    const auto span_t = static_cast<double>(T - 1);
    std::vector<std::vector<double>> means(K, std::vector<double>(T));

    auto infeasible = [&](const std::string& what) {
        return ParameterError("infeasible smooth environment: " + what + " does not fit in [" + std::to_string(lower) +
                              ", " + std::to_string(upper) + "]");
    };

    switch (p.shape) {
        case SmoothShape::diverging_ramps: {
            for (std::size_t i = 0; i < K; ++i) {
                const double start = spaced_level(i, K, p.center, p.delta_prime);
                const double slope = offset_sign(i, K) * 0.5 * p.sigma;
                const double end = start + slope * span_t;
                if (std::min(start, end) < lower || std::max(start, end) > upper) {
                    throw infeasible("ramp of arm " + std::to_string(i + 1));
                }
                for (std::size_t t = 1; t <= T; ++t) means[i][t - 1] = start + slope * static_cast<double>(t - 1);
            }
            break;
        }
        case SmoothShape::oscillating: {
            if (!(p.period > 0.0)) throw ParameterError("oscillation period must be positive");
            // |a sin(w(t+1)) - a sin(wt)| <= a w, so a = sigma / w keeps the drift at sigma.
            const double w = 2.0 * std::numbers::pi / p.period;
            const double amplitude = p.sigma / w;
            for (std::size_t i = 0; i < K; ++i) {
                const double level = spaced_level(i, K, p.center, p.delta_prime);
                if (level - amplitude < lower || level + amplitude > upper) {
                    throw infeasible("oscillation of arm " + std::to_string(i + 1));
                }
                const double sign = (i % 2 == 0) ? 1.0 : -1.0;
                for (std::size_t t = 1; t <= T; ++t) {
                    means[i][t - 1] = level + sign * amplitude * std::sin(w * static_cast<double>(t));
                }
            }
            break;
        }
        case SmoothShape::random_walk: {
            if (upper - lower < p.sigma) throw infeasible("a single step of size sigma");
            RngStream rng = RngStream::derived(p.seed, {static_cast<std::uint64_t>(StreamPurpose::generator)});
            for (std::size_t i = 0; i < K; ++i) {
                double x = spaced_level(i, K, p.center, p.delta_prime);
                if (x < lower || x > upper) throw infeasible("starting level of arm " + std::to_string(i + 1));
                for (std::size_t t = 1; t <= T; ++t) {
                    means[i][t - 1] = x;
                    x += p.sigma * (2.0 * rng.uniform() - 1.0);
                    // Reflection is 1-Lipschitz, so the step bound survives it.
                    if (x > upper) x = 2.0 * upper - x;
                    if (x < lower) x = 2.0 * lower - x;
                }
            }
            break;
        }
    }
    RewardTrajectory traj(std::move(means), family);
    const double drift = traj.max_step_drift();
    return {std::move(traj), drift};
}

double sample_reward(const RewardTrajectory& traj, std::size_t arm, std::size_t t, RngStream& rng) {
    const double mu = traj.at(arm, t);
    const RewardFamily& f = traj.family();
    if (f.kind == FamilyKind::bernoulli) return static_cast<double>(sample_bernoulli(mu, rng));
    if (f.proxy_variance == 0.0) return mu;
    if (f.noise == NoiseKind::gaussian) return mu + std::sqrt(f.proxy_variance) * sample_standard_normal(rng);
    const double half_width = std::sqrt(f.proxy_variance);
    return mu + half_width * (2.0 * rng.uniform() - 1.0);
}

std::size_t optimal_arm(const RewardTrajectory& traj, std::size_t t) {
    if (t < 1 || t > traj.horizon()) throw std::out_of_range("round " + std::to_string(t) + " out of range");
    return traj.optimal_arm(t);
}

}  // namespace swts
