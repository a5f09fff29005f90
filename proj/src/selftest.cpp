#include "swts/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "swts/analysis.hpp"
#include "swts/distributions.hpp"
#include "swts/format.hpp"
#include "swts/harness.hpp"
#include "swts/window_stats.hpp"

namespace swts {

namespace {

SelfCheck beta_binomial_grid() {
    double worst = 0.0;
    for (int a = 1; a <= 20; ++a) {
        for (int b = 1; b <= 20; ++b) {
            for (int k = 1; k <= 19; ++k) worst = std::max(worst, beta_binomial_identity_gap(a, b, 0.05 * k));
        }
    }
    return {"beta-binomial identity", worst <= 1e-9, "max gap " + format_real(worst)};
}

SelfCheck window_stats_oracle() {
    constexpr std::size_t arms = 5;
    for (std::size_t tau : {1u, 7u, 64u}) {
        RngStream rng(0x5e1f7e57ULL + tau);
        WindowStats stats(arms, tau);
        std::vector<Observation> history;
        for (std::size_t step = 0; step < 2000; ++step) {
            const auto arm = static_cast<std::size_t>(rng.below(arms));
            const double reward = rng.uniform();
            stats.record(arm, reward);
            history.push_back({arm, reward});
            const auto ref = brute_force_recompute(history, arms, history.size() + 1, tau);
            for (std::size_t i = 0; i < arms; ++i) {
                if (ref[i].pulls != stats.pulls(i) || std::fabs(ref[i].reward_sum - stats.reward_sum(i)) > 1e-12) {
                    return {"window-stats oracle", false,
                            "mismatch at tau=" + std::to_string(tau) + ", step " + std::to_string(step + 1) +
                                ", arm " + std::to_string(i + 1)};
                }
            }
        }
    }
    return {"window-stats oracle", true, "tau in {1,7,64}, 2000 steps"};
}

SelfCheck window_lemma_random() {
    RngStream rng(0x1e33aULL);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t T = 1 + rng.below(500);
        const std::size_t tau = 1 + rng.below(60);
        const std::size_t s = rng.below(20);
        const double density = rng.uniform();
        std::vector<bool> in_set(T);
        for (std::size_t t = 0; t < T; ++t) in_set[t] = rng.uniform() < density;
        const auto r = window_lemma_check(in_set, tau, s);
        if (!r.strict_holds) {
            return {"window counting lemma", false, "strict form violated for T=" + std::to_string(T) + " tau=" +
                                                        std::to_string(tau) + " s=" + std::to_string(s)};
        }
    }
    const auto edge = window_lemma_check(std::vector<bool>(100, true), 10, 10);
    const bool ok = edge.lhs == 100 && edge.rhs == 100;
    return {"window counting lemma", ok, ok ? "strict form on 200 random instances + equality case" : "equality case failed"};
}

SelfCheck scan_equivalence() {
    RngStream rng(0x5ca9ULL);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t K = 2 + rng.below(3);
        const std::size_t T = 50 + rng.below(400);
        std::vector<std::vector<double>> means(K, std::vector<double>(T));
        for (auto& row : means) {
            double x = rng.uniform();
            for (auto& v : row) {
                x = std::clamp(x + 0.1 * (rng.uniform() - 0.5), 0.0, 1.0);
                v = x;
            }
        }
        const RewardTrajectory traj(std::move(means), RewardFamily::bernoulli());
        for (std::size_t tau : {1u, 10u, 100u}) {
            if (compute_f_tau_prime(traj, tau, ScanMethod::brute_force) !=
                    compute_f_tau_prime(traj, tau, ScanMethod::sliding) ||
                compute_delta_tau(traj, tau, ScanMethod::brute_force) !=
                    compute_delta_tau(traj, tau, ScanMethod::sliding)) {
                return {"structural scan equivalence", false, "sliding and brute-force scans differ"};
            }
        }
    }
    return {"structural scan equivalence", true, "10 random trajectories, tau in {1,10,100}"};
}

SelfCheck determinism() {
    RngStream a(2024);
    RngStream b(2024);
    for (int k = 0; k < 1000; ++k) {
        if (sample_beta(2.5, 3.5, a) != sample_beta(2.5, 3.5, b)) return {"determinism", false, "beta draws differ"};
    }
    const auto traj = make_piecewise_constant(2, 400, {201}, {{0.8, 0.3}, {0.3, 0.8}});
    PolicyConfig cfg;
    cfg.kind = PolicyKind::beta_swts;
    cfg.tau = 50;
    const bool same = run_episode(cfg, traj, 99) == run_episode(cfg, traj, 99);
    return {"determinism", same, same ? "rng and episode replay bit-identical" : "episode replay differs"};
}

}  // namespace

std::vector<SelfCheck> run_selftest() {
    return {beta_binomial_grid(), window_stats_oracle(), window_lemma_random(), scan_equivalence(), determinism()};
}

}  // namespace swts
