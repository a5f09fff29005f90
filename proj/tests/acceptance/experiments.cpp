#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>

#include <json.hpp>

#include "swts/errors.hpp"
#include "swts/harness.hpp"
#include "swts/policies.hpp"

namespace swts::acceptance {

namespace {

constexpr std::size_t phase_length = 2500;
constexpr std::size_t abrupt_horizon = 10000;

RewardTrajectory alternating(double high, double low, const RewardFamily& family) {
    std::vector<std::size_t> starts;
    std::vector<std::vector<double>> means{{high, low}};
    for (std::size_t s = phase_length + 1; s <= abrupt_horizon; s += phase_length) {
        starts.push_back(s);
        means.push_back({means.back()[1], means.back()[0]});
    }
    return make_piecewise_constant(2, abrupt_horizon, starts, means, family);
}

RatioEstimate final_ratio(const Aggregate& num, const Aggregate& den) {
    return {num.final_regret(), num.final_stderr(), den.final_regret(), den.final_stderr()};
}

}  // namespace

double RatioEstimate::ratio() const { return numerator / denominator; }

double RatioEstimate::ratio_se() const {
    const double r = ratio();
    const double a = numerator_se / numerator;
    const double b = denominator_se / denominator;
    return std::fabs(r) * std::sqrt(a * a + b * b);
}

RewardTrajectory stationary_bernoulli() { return make_piecewise_constant(2, 20000, {}, {{0.9, 0.5}}); }

RewardTrajectory alternating_bernoulli() { return alternating(0.9, 0.1, RewardFamily::bernoulli()); }

RewardTrajectory alternating_gaussian() { return alternating(1.0, -1.0, RewardFamily::subgaussian(1.0)); }

StationaryResult stationary_experiment(std::uint64_t base_seed, std::size_t jobs) {
    const auto traj = stationary_bernoulli();
    const std::size_t T = traj.horizon();
    const PolicyConfig windowed{PolicyKind::beta_swts, T, std::nullopt, 0};
    const PolicyConfig stationary{PolicyKind::stationary_ts, 0, std::nullopt, 0};
    StationaryResult out;
    for (std::size_t k = 0; k < replications && out.identical_pulls; ++k) {
        const auto seed = replication_seed(base_seed, k);
        out.identical_pulls = run_episode(windowed, traj, seed).arms == run_episode(stationary, traj, seed).arms;
    }
    const auto agg = run_replications(windowed, traj, replications, base_seed, jobs);
    out.sublinearity = {agg.mean_regret[T - 1], agg.stderr_regret[T - 1], agg.mean_regret[T / 2 - 1],
                        agg.stderr_regret[T / 2 - 1]};
    return out;
}

RatioEstimate abrupt_dominance(std::uint64_t base_seed, std::size_t jobs) {
    const auto traj = alternating_bernoulli();
    const auto sw = run_replications({PolicyKind::beta_swts, 500, std::nullopt, 0}, traj, replications, base_seed, jobs);
    const auto st = run_replications({PolicyKind::stationary_ts, 0, std::nullopt, 0}, traj, replications, base_seed, jobs);
    return final_ratio(sw, st);
}

RatioEstimate gaussian_dominance(std::uint64_t base_seed, std::size_t jobs) {
    const auto traj = alternating_gaussian();
    const double gamma = default_gamma(traj.family());
    const auto sw = run_replications({PolicyKind::gamma_swgts, 500, gamma, 0}, traj, replications, base_seed, jobs);
    const auto st = run_replications({PolicyKind::stationary_gts, 0, gamma, 0}, traj, replications, base_seed, jobs);
    return final_ratio(sw, st);
}

PinnedRatio pin(const RatioEstimate& pilot, double cap) {
    return {pilot.ratio(), pilot.ratio_se(), std::min(cap, pilot.ratio() + 4.0 * pilot.ratio_se())};
}

namespace {

nlohmann::ordered_json pinned_json(const PinnedRatio& p) {
    return {{"pilot_ratio", p.pilot_ratio}, {"pilot_se", p.pilot_se}, {"threshold", p.threshold}};
}

PinnedRatio pinned_from(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) throw IoError(std::string("pilot thresholds lack '") + key + "'");
    const auto& e = j.at(key);
    return {e.at("pilot_ratio").get<double>(), e.at("pilot_se").get<double>(), e.at("threshold").get<double>()};
}

}  // namespace

std::string to_json(const PilotThresholds& t) {
    nlohmann::ordered_json j;
    j["pilot_seed"] = t.pilot_seed;
    j["replications"] = replications;
    j["stationary_sublinearity"] = pinned_json(t.stationary_sublinearity);
    j["abrupt_dominance"] = pinned_json(t.abrupt_dominance);
    j["gaussian_dominance"] = pinned_json(t.gaussian_dominance);
    return j.dump(2) + "\n";
}

PilotThresholds load_pilot_thresholds(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read pilot thresholds " + path.string());
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError("malformed pilot thresholds: " + std::string(e.what()));
    }
    PilotThresholds t;
    t.pilot_seed = j.at("pilot_seed").get<std::uint64_t>();
    t.stationary_sublinearity = pinned_from(j, "stationary_sublinearity");
    t.abrupt_dominance = pinned_from(j, "abrupt_dominance");
    t.gaussian_dominance = pinned_from(j, "gaussian_dominance");
    return t;
}

}  // namespace swts::acceptance
