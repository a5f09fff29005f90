#include "swts/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <ostream>
#include <thread>

#include "swts/errors.hpp"
#include "swts/format.hpp"
#include "swts/trajectory_io.hpp"

namespace swts {

namespace {

constexpr std::size_t chunk_size = 8;

class Fnv1a {
public:
    void bytes(const void* data, std::size_t n) noexcept {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t k = 0; k < n; ++k) {
            h_ ^= p[k];
            h_ *= 0x100000001b3ULL;
        }
    }
    void u64(std::uint64_t v) noexcept { bytes(&v, sizeof v); }
    void real(double v) noexcept {
        std::uint64_t bits = 0;
        std::memcpy(&bits, &v, sizeof bits);
        u64(bits);
    }
    void text(const std::string& s) noexcept {
        u64(s.size());
        bytes(s.data(), s.size());
    }
    [[nodiscard]] std::uint64_t value() const noexcept { return h_; }

private:
    std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

// Running sums for one chunk of episodes, accumulated in episode order.
struct ChunkSums {
    std::vector<double> sum;
    std::vector<double> sum_sq;
    std::vector<double> pulls;
    std::vector<double> suboptimal;
    std::vector<std::vector<std::uint32_t>> counts;
};

ChunkSums run_chunk(const PolicyConfig& config, const RewardTrajectory& traj, std::uint64_t base_seed,
                    std::size_t first, std::size_t last) {
    const std::size_t T = traj.horizon();
    const std::size_t K = traj.arms();
    ChunkSums c{std::vector<double>(T, 0.0), std::vector<double>(T, 0.0), std::vector<double>(K, 0.0),
                std::vector<double>(K, 0.0), std::vector<std::vector<std::uint32_t>>(K, std::vector<std::uint32_t>(T, 0))};
    for (std::size_t r = first; r < last; ++r) {
        const EpisodeRecord e = run_episode(config, traj, replication_seed(base_seed, r));
        for (std::size_t k = 0; k < T; ++k) {
            const double x = e.cumulative_regret[k];
            c.sum[k] += x;
            c.sum_sq[k] += x * x;
            ++c.counts[e.arms[k]][k];
            if (e.arms[k] != traj.optimal_arm(k + 1)) c.suboptimal[e.arms[k]] += 1.0;
        }
        for (std::size_t i = 0; i < K; ++i) c.pulls[i] += static_cast<double>(e.pulls[i]);
    }
    return c;
}

}  // namespace

EpisodeRecord run_episode(const PolicyConfig& config, const RewardTrajectory& traj, std::uint64_t seed) {
    auto policy = make_policy(config, traj);
    const std::size_t T = traj.horizon();
    RngStream policy_rng = RngStream::derived(seed, {static_cast<std::uint64_t>(StreamPurpose::policy)});
    RngStream reward_rng = RngStream::derived(seed, {static_cast<std::uint64_t>(StreamPurpose::reward)});

    EpisodeRecord rec;
    rec.seed = seed;
    rec.arms.reserve(T);
    rec.rewards.reserve(T);
    rec.instant_regret.reserve(T);
    rec.cumulative_regret.reserve(T);
    rec.pulls.assign(traj.arms(), 0);
    double total = 0.0;
    for (std::size_t t = 1; t <= T; ++t) {
        const std::size_t arm = policy->select(t, policy_rng);
        const double reward = sample_reward(traj, arm, t, reward_rng);
        policy->observe(t, arm, reward);
        const double gap = traj.optimal_mean(t) - traj.mean(arm, t);
        total += gap;
        rec.arms.push_back(arm);
        rec.rewards.push_back(reward);
        rec.instant_regret.push_back(gap);
        rec.cumulative_regret.push_back(total);
        ++rec.pulls[arm];
    }
    return rec;
}

std::vector<double> dynamic_regret(const std::vector<std::size_t>& arms, const RewardTrajectory& traj) {
    if (arms.size() > traj.horizon()) throw ParameterError("pull sequence longer than the trajectory");
    std::vector<double> curve;
    curve.reserve(arms.size());
    double total = 0.0;
    for (std::size_t k = 0; k < arms.size(); ++k) {
        total += traj.optimal_mean(k + 1) - traj.at(arms[k], k + 1);
        curve.push_back(total);
    }
    return curve;
}

std::uint64_t replication_seed(std::uint64_t base_seed, std::size_t index) noexcept {
    return derive_seed(base_seed, {static_cast<std::uint64_t>(StreamPurpose::episode), index});
}

std::uint64_t config_fingerprint(const PolicyConfig& config, const RewardTrajectory& traj, std::uint64_t base_seed,
                                 std::size_t replications) {
    Fnv1a h;
    h.text(describe(config));
    h.u64(config.gamma.has_value() ? 1 : 0);
    h.real(config.gamma.value_or(0.0));
    h.text(family_json(traj.family()));
    h.u64(traj.arms());
    h.u64(traj.horizon());
    for (std::size_t i = 0; i < traj.arms(); ++i) {
        for (double mu : traj.arm_means(i)) h.real(mu);
    }
    h.u64(base_seed);
    h.u64(replications);
    return h.value();
}

Aggregate run_replications(const PolicyConfig& config, const RewardTrajectory& traj, std::size_t replications,
                           std::uint64_t base_seed, std::size_t jobs) {
    if (replications < 1) throw ConfigError("need at least one replication");
    validate_policy(config, traj);
    const std::size_t T = traj.horizon();
    const std::size_t K = traj.arms();
    const std::size_t chunks = (replications + chunk_size - 1) / chunk_size;
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min(jobs, chunks);

    std::vector<ChunkSums> results(chunks);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t c = next++; c < chunks; c = next++) {
            const std::size_t first = c * chunk_size;
            results[c] = run_chunk(config, traj, base_seed, first, std::min(first + chunk_size, replications));
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(jobs);
        for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }

    Aggregate agg;
    agg.replications = replications;
    agg.mean_regret.assign(T, 0.0);
    agg.stderr_regret.assign(T, 0.0);
    agg.mean_pulls.assign(K, 0.0);
    agg.mean_suboptimal_pulls.assign(K, 0.0);
    agg.arm_counts.assign(K, std::vector<std::uint32_t>(T, 0));
    std::vector<double> sum_sq(T, 0.0);
    for (const ChunkSums& c : results) {
        for (std::size_t k = 0; k < T; ++k) {
            agg.mean_regret[k] += c.sum[k];
            sum_sq[k] += c.sum_sq[k];
        }
        for (std::size_t i = 0; i < K; ++i) {
            agg.mean_pulls[i] += c.pulls[i];
            agg.mean_suboptimal_pulls[i] += c.suboptimal[i];
            for (std::size_t k = 0; k < T; ++k) agg.arm_counts[i][k] += c.counts[i][k];
        }
    }
    const auto n = static_cast<double>(replications);
    for (std::size_t k = 0; k < T; ++k) {
        const double mean = agg.mean_regret[k] / n;
        agg.mean_regret[k] = mean;
        if (replications > 1) {
            const double var = std::max(0.0, (sum_sq[k] - n * mean * mean) / (n - 1.0));
            agg.stderr_regret[k] = std::sqrt(var / n);
        }
    }
    for (std::size_t i = 0; i < K; ++i) {
        agg.mean_pulls[i] /= n;
        agg.mean_suboptimal_pulls[i] /= n;
    }
    agg.fingerprint = config_fingerprint(config, traj, base_seed, replications);
    return agg;
}

std::uint64_t sweep_seed(std::uint64_t base_seed, std::size_t tau) noexcept {
    return derive_seed(base_seed, {static_cast<std::uint64_t>(StreamPurpose::sweep), tau});
}

std::vector<SweepRow> tau_sweep(const PolicyConfig& family, const RewardTrajectory& traj,
                                const std::vector<std::size_t>& taus, std::size_t replications,
                                std::uint64_t base_seed, std::size_t jobs) {
    if (family.kind != PolicyKind::beta_swts && family.kind != PolicyKind::gamma_swgts) {
        throw ConfigError("tau_sweep needs a windowed policy (beta_swts or gamma_swgts)");
    }
    std::vector<SweepRow> rows;
    for (std::size_t tau : taus) {
        PolicyConfig cfg = family;
        cfg.tau = tau;
        validate_policy(cfg, traj);
    }
    for (std::size_t tau : taus) {
        PolicyConfig cfg = family;
        cfg.tau = tau;
        const Aggregate agg = run_replications(cfg, traj, replications, sweep_seed(base_seed, tau), jobs);
        rows.push_back({tau, agg.final_regret(), agg.final_stderr(), agg.mean_pulls, agg.fingerprint});
    }
    return rows;
}

std::vector<std::size_t> decimated_rounds(std::size_t horizon, std::size_t max_points) {
    const std::size_t step = (horizon + max_points - 1) / max_points;
    std::vector<std::size_t> out;
    for (std::size_t t = step; t <= horizon; t += step) out.push_back(t);
    if (out.empty() || out.back() != horizon) out.push_back(horizon);
    return out;
}

void write_regret_csv(std::ostream& out, const Aggregate& agg) {
    out << "round,mean_regret,stderr\n";
    for (std::size_t t : decimated_rounds(agg.mean_regret.size())) {
        out << t << ',' << format_real(agg.mean_regret[t - 1]) << ',' << format_real(agg.stderr_regret[t - 1])
            << '\n';
    }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows, std::size_t arms) {
    out << "tau,final_regret,stderr";
    for (std::size_t i = 0; i < arms; ++i) out << ",pulls_arm_" << (i + 1);
    out << '\n';
    for (const SweepRow& r : rows) {
        out << r.tau << ',' << format_real(r.final_regret) << ',' << format_real(r.stderr_regret);
        for (double p : r.mean_pulls) out << ',' << format_real(p);
        out << '\n';
    }
}

}  // namespace swts
