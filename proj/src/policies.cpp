#include "swts/policies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "swts/distributions.hpp"
#include "swts/errors.hpp"
#include "swts/format.hpp"

namespace swts {

namespace {

std::size_t lowest_argmax(const std::vector<double>& v) noexcept {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i] > v[best]) best = i;
    }
    return best;
}

bool is_beta_kind(PolicyKind k) { return k == PolicyKind::beta_swts || k == PolicyKind::stationary_ts; }
bool is_gaussian_kind(PolicyKind k) { return k == PolicyKind::gamma_swgts || k == PolicyKind::stationary_gts; }

}  // namespace

// ---- BetaSwts ---------------------------------------------------------------

BetaSwts::BetaSwts(std::size_t arms, std::size_t window) : stats_(arms, window), draws_(arms) {}

BetaPosterior BetaSwts::posterior(std::size_t arm) const noexcept {
    const double successes = stats_.reward_sum(arm);
    const auto pulls = static_cast<double>(stats_.pulls(arm));
    return {1.0 + successes, 1.0 + (pulls - successes)};
}

std::size_t BetaSwts::select(std::size_t /*t*/, RngStream& rng) {
    for (std::size_t i = 0; i < draws_.size(); ++i) {
        const BetaPosterior p = posterior(i);
        draws_[i] = sample_beta(p.alpha, p.beta, rng);
    }
    return lowest_argmax(draws_);
}

void BetaSwts::observe(std::size_t /*t*/, std::size_t arm, double reward) {
    if (reward != 0.0 && reward != 1.0) {
        throw ContractError("Beta-SWTS requires Bernoulli rewards, got " + format_real(reward));
    }
    stats_.record(arm, reward);
}

std::string BetaSwts::name() const { return "beta_swts(tau=" + std::to_string(stats_.window()) + ")"; }

// ---- GammaSwgts -------------------------------------------------------------

GammaSwgts::GammaSwgts(std::size_t arms, std::size_t window, double gamma) : stats_(arms, window), gamma_(gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ConfigError("gamma must be positive and finite");
    if (window < arms) {
        throw ConfigError("gamma_swgts needs tau >= K (tau=" + std::to_string(window) +
                          ", K=" + std::to_string(arms) + ")");
    }
}

std::optional<std::size_t> GammaSwgts::forced_arm(std::size_t t) const noexcept {
    const std::size_t arms = stats_.arms();
    const std::size_t tau = stats_.window();
    if (t >= 1 && t <= arms) return t - 1;
    const std::size_t block = (t - 1) / tau;
    const std::size_t offset = (t - 1) % tau;
    if (block >= 1 && offset < arms) return offset;
    return std::nullopt;
}

std::optional<GaussianPosterior> GammaSwgts::posterior(std::size_t arm) const noexcept {
    const auto mean = stats_.mean(arm);
    if (!mean) return std::nullopt;
    return GaussianPosterior{*mean, 1.0 / (gamma_ * static_cast<double>(stats_.pulls(arm)))};
}

std::size_t GammaSwgts::select(std::size_t t, RngStream& rng) {
    if (auto forced = forced_arm(t)) return *forced;
    ++posterior_rounds_;
    std::size_t best = 0;
    double best_draw = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < stats_.arms(); ++i) {
        const auto p = posterior(i);
        if (!p) {
            throw ContractError("gamma_swgts: arm " + std::to_string(i + 1) + " has no pulls in the window at round " +
                                std::to_string(t) + " (round-robin schedule violated)");
        }
        const double draw = sample_gaussian(p->mean, p->variance, rng);
        if (i == 0 || draw > best_draw) {
            best = i;
            best_draw = draw;
        }
    }
    return best;
}

void GammaSwgts::observe(std::size_t /*t*/, std::size_t arm, double reward) { stats_.record(arm, reward); }

std::string GammaSwgts::name() const {
    return "gamma_swgts(tau=" + std::to_string(stats_.window()) + ",gamma=" + format_real(gamma_) + ")";
}

// ---- baselines --------------------------------------------------------------

OraclePolicy::OraclePolicy(const RewardTrajectory* traj) : traj_(traj) {
    if (traj_ == nullptr) throw ConfigError("oracle policy needs a trajectory");
}

std::size_t OraclePolicy::select(std::size_t t, RngStream& /*rng*/) { return traj_->optimal_arm(t); }

UniformPolicy::UniformPolicy(std::size_t arms) : arms_(arms) {
    if (arms < 1) throw ConfigError("uniform policy needs at least one arm");
}

std::size_t UniformPolicy::select(std::size_t /*t*/, RngStream& rng) { return static_cast<std::size_t>(rng.below(arms_)); }

FixedArmPolicy::FixedArmPolicy(std::size_t arms, std::size_t arm) : arm_(arm) {
    if (arm >= arms) {
        throw ConfigError("fixed arm " + std::to_string(arm + 1) + " out of range for K=" + std::to_string(arms));
    }
}

// ---- configuration ----------------------------------------------------------

std::string_view to_string(PolicyKind kind) noexcept {
    switch (kind) {
        case PolicyKind::beta_swts: return "beta_swts";
        case PolicyKind::gamma_swgts: return "gamma_swgts";
        case PolicyKind::stationary_ts: return "stationary_ts";
        case PolicyKind::stationary_gts: return "stationary_gts";
        case PolicyKind::oracle: return "oracle";
        case PolicyKind::uniform: return "uniform";
        case PolicyKind::fixed: return "fixed";
    }
    return "unknown";
}

std::optional<PolicyKind> parse_policy_kind(std::string_view name) noexcept {
    for (PolicyKind k : {PolicyKind::beta_swts, PolicyKind::gamma_swgts, PolicyKind::stationary_ts,
                         PolicyKind::stationary_gts, PolicyKind::oracle, PolicyKind::uniform, PolicyKind::fixed}) {
        if (to_string(k) == name) return k;
    }
    return std::nullopt;
}

double default_gamma(const RewardFamily& family) noexcept {
    // Bernoulli rewards are 1/4-sub-Gaussian.
    const double s2 = family.kind == FamilyKind::bernoulli ? 0.25 : family.proxy_variance;
    if (s2 <= 0.0) return 1.0;
    return std::min(1.0 / (4.0 * s2), 1.0);
}

double resolve_gamma(const PolicyConfig& config, const RewardFamily& family) noexcept {
    return config.gamma.value_or(default_gamma(family));
}

std::vector<std::string> policy_warnings(const PolicyConfig& config, const RewardFamily& family) {
    std::vector<std::string> out;
    if (is_gaussian_kind(config.kind)) {
        const double g = resolve_gamma(config, family);
        const double bound = default_gamma(family);
        if (g > bound) {
            out.push_back(describe(config) + ": gamma=" + format_real(g) +
                          " exceeds min(1/(4*proxy_variance), 1)=" + format_real(bound) +
                          "; the regret guarantee does not cover this setting");
        }
    }
    return out;
}

void validate_policy(const PolicyConfig& config, const RewardTrajectory& traj) {
    const std::size_t K = traj.arms();
    const std::size_t T = traj.horizon();
    if (is_beta_kind(config.kind) && traj.family().kind != FamilyKind::bernoulli) {
        throw ConfigError(std::string(to_string(config.kind)) + " requires Bernoulli rewards");
    }
    if (config.kind == PolicyKind::beta_swts || config.kind == PolicyKind::gamma_swgts) {
        if (config.tau < 1) throw ConfigError(std::string(to_string(config.kind)) + " needs tau >= 1");
    }
    if (config.kind == PolicyKind::gamma_swgts && config.tau < K) {
        throw ConfigError("gamma_swgts needs tau >= K (tau=" + std::to_string(config.tau) + ", K=" +
                          std::to_string(K) + ")");
    }
    if (config.kind == PolicyKind::stationary_gts && T < K) {
        throw ConfigError("stationary_gts needs T >= K for its warm-up");
    }
    if (is_gaussian_kind(config.kind) && config.gamma && !(*config.gamma > 0.0 && std::isfinite(*config.gamma))) {
        throw ConfigError("gamma must be positive and finite");
    }
    if (config.kind == PolicyKind::fixed && config.arm >= K) {
        throw ConfigError("fixed arm " + std::to_string(config.arm + 1) + " out of range for K=" + std::to_string(K));
    }
}

std::string describe(const PolicyConfig& config) {
    std::string s(to_string(config.kind));
    switch (config.kind) {
        case PolicyKind::beta_swts: return s + "(tau=" + std::to_string(config.tau) + ")";
        case PolicyKind::gamma_swgts:
            return s + "(tau=" + std::to_string(config.tau) +
                   (config.gamma ? ",gamma=" + format_real(*config.gamma) : std::string()) + ")";
        case PolicyKind::stationary_gts:
            return config.gamma ? s + "(gamma=" + format_real(*config.gamma) + ")" : s;
        case PolicyKind::fixed: return s + "(arm=" + std::to_string(config.arm + 1) + ")";
        default: return s;
    }
}

std::unique_ptr<Policy> make_policy(const PolicyConfig& config, const RewardTrajectory& traj) {
    validate_policy(config, traj);
    const std::size_t K = traj.arms();
    const std::size_t T = traj.horizon();
    switch (config.kind) {
        case PolicyKind::beta_swts: return std::make_unique<BetaSwts>(K, config.tau);
        case PolicyKind::stationary_ts: return std::make_unique<BetaSwts>(K, T);
        case PolicyKind::gamma_swgts:
            return std::make_unique<GammaSwgts>(K, config.tau, resolve_gamma(config, traj.family()));
        case PolicyKind::stationary_gts:
            return std::make_unique<GammaSwgts>(K, std::max(T, K), resolve_gamma(config, traj.family()));
        case PolicyKind::oracle: return std::make_unique<OraclePolicy>(&traj);
        case PolicyKind::uniform: return std::make_unique<UniformPolicy>(K);
        case PolicyKind::fixed: return std::make_unique<FixedArmPolicy>(K, config.arm);
    }
    throw ConfigError("unknown policy kind");
}

}  // namespace swts
