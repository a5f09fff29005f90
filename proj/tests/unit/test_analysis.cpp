#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "swts/analysis.hpp"
#include "swts/errors.hpp"
#include "swts/reward_model.hpp"
#include "swts/rng.hpp"

using namespace swts;

namespace {

RewardTrajectory swap_env() { return make_piecewise_constant(2, 100, {51}, {{0.9, 0.1}, {0.1, 0.9}}); }

RewardTrajectory three_phase_env() {
    return make_piecewise_constant(3, 3000, {1001, 2001}, {{0.8, 0.5, 0.2}, {0.3, 0.9, 0.4}, {0.2, 0.4, 0.7}});
}

// Oracle for F_tau' and Delta_tau straight from the definitions, with an
// explicit window list instead of the library's scans.
struct DefinitionScan {
    RoundMask mask;
    std::optional<double> delta;
};

DefinitionScan definition_scan(const RewardTrajectory& traj, std::size_t tau) {
    const std::size_t T = traj.horizon();
    DefinitionScan out{RoundMask(T, false), std::nullopt};
    for (std::size_t t = 2; t <= T; ++t) {
        std::vector<std::size_t> window;
        for (std::size_t s = (t > tau ? t - tau : 1); s < t; ++s) window.push_back(s);
        const std::size_t star = optimal_arm(traj, t);
        double opt_min = std::numeric_limits<double>::infinity();
        for (auto s : window) opt_min = std::min(opt_min, traj.at(star, s));
        bool flagged = false;
        double gap = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < traj.arms(); ++i) {
            if (i == star) continue;
            double arm_max = -std::numeric_limits<double>::infinity();
            for (auto s : window) arm_max = std::max(arm_max, traj.at(i, s));
            if (opt_min <= arm_max) flagged = true;
            gap = std::min(gap, opt_min - arm_max);
        }
        out.mask[t - 1] = flagged;
        if (!flagged) out.delta = std::min(out.delta.value_or(gap), gap);
    }
    return out;
}

RewardTrajectory random_piecewise(RngStream& rng, std::size_t arms, std::size_t horizon) {
    std::vector<std::size_t> starts;
    for (std::size_t t = 2; t <= horizon; ++t) {
        if (rng.uniform() < 0.03) starts.push_back(t);
    }
    std::vector<std::vector<double>> means(starts.size() + 1, std::vector<double>(arms));
    for (auto& v : means) {
        for (auto& m : v) m = std::round(rng.uniform() * 10.0) / 10.0;  // coarse grid produces ties
    }
    return make_piecewise_constant(arms, horizon, starts, means);
}

}  // namespace

TEST_CASE("mask helpers") {
    const RoundMask m{false, true, true, false, true};
    CHECK(mask_count(m) == 3);
    const auto iv = mask_intervals(m);
    REQUIRE(iv.size() == 2);
    CHECK(iv[0] == RoundInterval{2, 3});
    CHECK(iv[1] == RoundInterval{5, 5});
    CHECK(mask_subset(RoundMask{false, true, false, false, false}, m));
    CHECK_FALSE(mask_subset(RoundMask{true, false, false, false, false}, m));
}

TEST_CASE("breakpoints") {
    const auto stationary = make_piecewise_constant(2, 100, {}, {{0.9, 0.5}});
    auto bp = compute_breakpoints(stationary);
    CHECK(bp.upsilon == 0);
    CHECK(bp.rounds == std::vector<std::size_t>{100});

    bp = compute_breakpoints(swap_env());
    CHECK(bp.upsilon == 1);
    CHECK(bp.rounds == std::vector<std::size_t>{51, 100});
    CHECK(genuine_breakpoints(bp, 100) == std::vector<std::size_t>{51});

    bp = compute_breakpoints(three_phase_env());
    CHECK(bp.upsilon == 2);
    CHECK(genuine_breakpoints(bp, 3000) == std::vector<std::size_t>{1001, 2001});

    // A change at the very last round is genuine and also the terminal entry.
    const auto late = make_piecewise_constant(2, 10, {10}, {{0.9, 0.1}, {0.1, 0.9}});
    bp = compute_breakpoints(late);
    CHECK(bp.upsilon == 1);
    CHECK(bp.rounds == std::vector<std::size_t>{10});
}

TEST_CASE("breakpoints: a suboptimal arm catching up without a swap") {
    // Arm 2 reaches the optimum's previous level while arm 1 stays optimal.
    const auto traj = make_piecewise_constant(2, 20, {11}, {{0.6, 0.3}, {0.7, 0.6}});
    const auto bp = compute_breakpoints(traj);
    CHECK(bp.upsilon == 1);
    CHECK(genuine_breakpoints(bp, 20) == std::vector<std::size_t>{11});

    // A persistent tie satisfies the ">=" clause at every later round.
    const auto tied = make_piecewise_constant(2, 20, {11}, {{0.6, 0.3}, {0.6, 0.6}});
    CHECK(compute_breakpoints(tied).upsilon == 10);
    const auto equal = make_piecewise_constant(2, 30, {}, {{0.5, 0.5}});
    CHECK(compute_breakpoints(equal).upsilon == 29);
}

TEST_CASE("breakpoint readings agree on random trajectories") {
    RngStream rng(31);
    for (int k = 0; k < 100; ++k) {
        const auto traj = random_piecewise(rng, 3, 200);
        CHECK(compute_breakpoints(traj, BreakpointRule::as_printed).rounds ==
              compute_breakpoints(traj, BreakpointRule::previous_optimum).rounds);
    }
}

TEST_CASE("phases and pseudophases") {
    const auto stationary = make_piecewise_constant(2, 100, {}, {{0.9, 0.5}});
    auto ps = compute_phases(stationary, 10);
    REQUIRE(ps.phases.size() == 1);
    CHECK(ps.phases[0] == RoundInterval{1, 100});
    CHECK(ps.pseudophases[0] == RoundInterval{1, 100});

    const auto traj = make_piecewise_constant(2, 300, {101, 201}, {{0.9, 0.1}, {0.1, 0.9}, {0.9, 0.1}});
    ps = compute_phases(traj, 30);
    REQUIRE(ps.phases.size() == 3);
    CHECK(ps.phases[1] == RoundInterval{101, 200});
    CHECK(ps.pseudophases[0] == ps.phases[0]);
    CHECK(ps.pseudophases[1] == RoundInterval{131, 200});
    CHECK(ps.pseudophases[2] == RoundInterval{231, 300});

    ps = compute_phases(traj, 200);
    CHECK(ps.pseudophases[1].empty());
    CHECK(ps.pseudophases[2].empty());

    // Phases partition [1, T].
    std::vector<int> cover(300, 0);
    for (const auto& p : ps.phases) {
        for (std::size_t t = p.first; t <= p.last; ++t) ++cover[t - 1];
    }
    CHECK(std::all_of(cover.begin(), cover.end(), [](int c) { return c == 1; }));

    const auto strips = post_breakpoint_strips(compute_phases(traj, 30), 300);
    CHECK(mask_intervals(strips) == std::vector<RoundInterval>{{101, 130}, {201, 230}});
}

TEST_CASE("F_tau' examples") {
    const auto stationary = make_piecewise_constant(2, 100, {}, {{0.9, 0.5}});
    CHECK(mask_count(compute_f_tau_prime(stationary, 10)) == 0);

    const auto mask = compute_f_tau_prime(swap_env(), 10);
    CHECK(mask_intervals(mask) == std::vector<RoundInterval>{{51, 60}});

    const auto equal = make_piecewise_constant(2, 50, {}, {{0.5, 0.5}});
    const auto all = compute_f_tau_prime(equal, 5);
    CHECK_FALSE(all[0]);
    CHECK(mask_count(all) == 49);
}

TEST_CASE("Delta_tau examples") {
    const auto stationary = make_piecewise_constant(2, 100, {}, {{0.9, 0.5}});
    CHECK(*compute_delta_tau(stationary, 10) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(*compute_delta_tau(swap_env(), 10) == doctest::Approx(0.8).epsilon(1e-12));
    const auto equal = make_piecewise_constant(2, 50, {}, {{0.5, 0.5}});
    CHECK_FALSE(compute_delta_tau(equal, 5).has_value());

    SmoothParams p;
    p.shape = SmoothShape::diverging_ramps;
    p.sigma = 0.001;
    p.delta_prime = 0.3;
    p.horizon = 300;
    p.center = 0.5;
    const auto smooth = make_lipschitz_smooth(p);
    const auto d = compute_delta_tau(smooth.trajectory, 50);
    REQUIRE(d.has_value());
    CHECK(*d >= 0.3 - 2 * 0.001 * 50);
}

TEST_CASE("Delta_tau over a chosen superset of F_tau'") {
    // Arm 2 climbs towards arm 1 at slope sigma; their gap drops below Delta' = 0.3 after round 102.
    constexpr std::size_t T = 300;
    std::vector<std::vector<double>> mu(2, std::vector<double>(T));
    for (std::size_t t = 1; t <= T; ++t) {
        mu[0][t - 1] = 0.5;
        mu[1][t - 1] = 0.1 + 0.001 * static_cast<double>(t - 1);
    }
    const RewardTrajectory traj(mu, RewardFamily::bernoulli());
    constexpr std::size_t tau = 10;
    const double floor = 0.3 - 2 * 0.001 * tau;
    const auto minimal = compute_delta_tau(traj, tau);
    REQUIRE(minimal.has_value());
    CHECK(*minimal < floor);  // unflagged rounds inside F_Delta' have smaller gaps

    const auto rep = compute_f_delta_prime(traj, 0.3, tau);
    REQUIRE(mask_subset(compute_f_tau_prime(traj, tau), rep.mask));
    const auto smooth = compute_delta_tau(traj, tau, rep.mask);
    REQUIRE(smooth.has_value());
    CHECK(*smooth >= floor);
    CHECK(*smooth == doctest::Approx(0.4 - 0.001 * 100).epsilon(1e-9));  // round 102: window [92, 101]

    CHECK(compute_delta_tau(traj, tau, compute_f_tau_prime(traj, tau)) == minimal);
    const auto equal = make_piecewise_constant(2, 20, {}, {{0.5, 0.5}});
    CHECK_THROWS_AS(compute_delta_tau(equal, 3, RoundMask(20, false)), ParameterError);
    CHECK_THROWS_AS(compute_delta_tau(traj, tau, RoundMask(5, false)), ParameterError);
}

TEST_CASE("scans agree with the definition oracle") {
    RngStream rng(99);
    for (int k = 0; k < 40; ++k) {
        const auto traj = random_piecewise(rng, 2 + k % 3, 150);
        for (std::size_t tau : {1u, 4u, 25u, 200u}) {
            const auto ref = definition_scan(traj, tau);
            const auto brute = compute_f_tau_prime(traj, tau, ScanMethod::brute_force);
            const auto slide = compute_f_tau_prime(traj, tau, ScanMethod::sliding);
            REQUIRE(brute == ref.mask);
            REQUIRE(slide == ref.mask);
            const auto db = compute_delta_tau(traj, tau, ScanMethod::brute_force);
            const auto ds = compute_delta_tau(traj, tau, ScanMethod::sliding);
            REQUIRE(db == ref.delta);
            REQUIRE(ds == ref.delta);
            if (db) CHECK(*db > 0.0);
        }
    }
    // Continuous-valued trajectories too.
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        SmoothParams p;
        p.shape = SmoothShape::random_walk;
        p.arms = 3;
        p.sigma = 0.01;
        p.delta_prime = 0.05;
        p.horizon = 400;
        p.seed = seed;
        const auto traj = make_lipschitz_smooth(p).trajectory;
        for (std::size_t tau : {3u, 30u}) {
            const auto ref = definition_scan(traj, tau);
            CHECK(compute_f_tau_prime(traj, tau, ScanMethod::sliding) == ref.mask);
            CHECK(compute_delta_tau(traj, tau, ScanMethod::sliding) == ref.delta);
        }
    }
}

TEST_CASE("F_tau' grows with tau") {
    RngStream rng(7);
    for (int k = 0; k < 30; ++k) {
        const auto traj = random_piecewise(rng, 3, 200);
        RoundMask prev = compute_f_tau_prime(traj, 1);
        for (std::size_t tau : {2u, 5u, 13u, 40u, 200u}) {
            const auto next = compute_f_tau_prime(traj, tau);
            CHECK(mask_subset(prev, next));
            prev = next;
        }
    }
}

TEST_CASE("F_Delta' examples") {
    const auto stationary = make_piecewise_constant(2, 100, {}, {{0.9, 0.5}});
    auto r = compute_f_delta_prime(stationary, 0.3, 10);
    CHECK(r.count == 0);
    CHECK(r.feasible);
    r = compute_f_delta_prime(stationary, 0.5, 10);
    CHECK(r.count == 100);

    const auto sinus = make_crossing_sinusoid(3000, {0.5, 0.4, 2000.0, 0.0});
    std::size_t prev = 0;
    for (double dp : {0.01, 0.05, 0.1, 0.3, 0.8, 0.81}) {
        const auto rep = compute_f_delta_prime(sinus, dp, 1);
        CHECK(rep.count >= prev);
        prev = rep.count;
        // Flagged rounds sit around the crossings at 1000, 2000, 3000.
        for (const auto& iv : mask_intervals(rep.mask)) {
            const bool near = iv.contains(1001) || iv.contains(2001) || iv.contains(3000) || iv.contains(1);
            CHECK(near);
        }
    }
    CHECK(prev == 3000);

    // Sigma audited from the trajectory; infeasible windows are a verdict.
    const auto bad = compute_f_delta_prime(sinus, 0.1, 500);
    CHECK(bad.audited_sigma == doctest::Approx(sinus.max_step_drift()));
    CHECK_FALSE(bad.feasible);

    const auto capped = compute_f_delta_prime(sinus, 0.1, 1, PolynomialCap{1.0, 1.0});
    REQUIRE(capped.within_cap.has_value());
    CHECK(*capped.within_cap);
    const auto tight = compute_f_delta_prime(sinus, 0.1, 1, PolynomialCap{1.0, 0.0});
    CHECK_FALSE(*tight.within_cap);
}

TEST_CASE("abrupt assumption verdicts") {
    const auto traj = three_phase_env();
    for (const auto& v : verify_abrupt_assumption(traj, compute_phases(traj, 10))) CHECK(v.holds);

    const auto sinus = make_crossing_sinusoid(3000, {0.5, 0.4, 2000.0, 0.5});
    const auto verdicts = verify_abrupt_assumption(sinus, compute_phases(sinus, 10));
    CHECK(verdicts.size() == 3);
    for (const auto& v : verdicts) CHECK(v.holds);

    // Phase 1 is [1, 20]; arm 2 peaks at 0.75 at round 10 while arm 1 is optimal with trough 0.7.
    std::vector<std::vector<double>> means(2, std::vector<double>(40));
    for (std::size_t t = 1; t <= 40; ++t) {
        means[0][t - 1] = t <= 20 ? (t == 15 ? 0.7 : 0.9) : 0.1;
        means[1][t - 1] = t <= 20 ? (t == 10 ? 0.75 : 0.2) : 0.9;
    }
    const RewardTrajectory counter(means, RewardFamily::bernoulli());
    const auto bad = verify_abrupt_assumption(counter, compute_phases(counter, 5));
    REQUIRE(bad.size() == 2);
    CHECK_FALSE(bad[0].holds);
    CHECK(bad[0].witness_round == 10u);
    CHECK(bad[0].witness_arm == 1u);
    CHECK(bad[0].optimal_min == 0.7);
    CHECK(bad[0].suboptimal_max == 0.75);
    CHECK(bad[1].holds);
}

TEST_CASE("bound shapes") {
    BoundShapeParams p;
    p.theorem = BoundTheorem::abrupt_beta;
    p.horizon = 1000;
    p.tau = 10;
    p.delta = 1.0;
    p.upsilon = 0;
    CHECK(eval_bound_shape(p) == doctest::Approx(1000 * std::log(10.0) / 10).epsilon(1e-12));
    CHECK(eval_bound_shape(p) == doctest::Approx(230.2585).epsilon(1e-6));
    p.delta = 0.5;
    p.upsilon = 2;
    CHECK(eval_bound_shape(p) == doctest::Approx(1862.068).epsilon(1e-6));

    p.theorem = BoundTheorem::abrupt_gauss;
    p.gamma = 0.5;
    const double expect = 20 + 1000 * std::log(10 * 0.25 + std::exp(6.0)) / (0.5 * 10 * 0.25) + 100;
    CHECK(eval_bound_shape(p) == doctest::Approx(expect).epsilon(1e-12));

    p.theorem = BoundTheorem::general_beta;
    p.f_tau_size = 37;
    CHECK(eval_bound_shape(p) == doctest::Approx(37 + 1000 * std::log(10.0) / (10 * 0.125)).epsilon(1e-12));

    p.theorem = BoundTheorem::smooth_beta;
    p.delta_prime = 0.3;
    p.sigma = 0.005;
    p.beta_exponent = 0.5;
    p.f_scale = 2.0;
    const double d = 0.3 - 2 * 0.005 * 10;
    CHECK(eval_bound_shape(p) ==
          doctest::Approx(2.0 * std::sqrt(1000.0) + 1000 * std::log(10.0) / (10 * d * d * d)).epsilon(1e-12));
    p.sigma = 0.015;  // 2 sigma tau = 0.3: infeasible
    CHECK_THROWS_AS(eval_bound_shape(p), ParameterError);

    BoundShapeParams bad;
    bad.horizon = 1000;
    bad.tau = 10;
    bad.delta = 0.0;
    CHECK_THROWS_AS(eval_bound_shape(bad), ParameterError);
    bad.delta = 1.0;
    bad.tau = 0.0;
    CHECK_THROWS_AS(eval_bound_shape(bad), ParameterError);
}

TEST_CASE("bound shapes: monotone in Delta, unimodal in tau") {
    for (BoundTheorem th : {BoundTheorem::abrupt_beta, BoundTheorem::abrupt_gauss}) {
        BoundShapeParams p;
        p.theorem = th;
        p.horizon = 1e5;
        p.upsilon = 3;
        p.tau = 500;
        p.gamma = 1.0;
        double prev = std::numeric_limits<double>::infinity();
        for (double delta = 0.05; delta <= 1.0; delta += 0.05) {
            p.delta = delta;
            const double v = eval_bound_shape(p);
            CHECK(v < prev);
            prev = v;
        }
        p.delta = 0.5;
        // ln(tau)/tau rises up to tau = e, so the grid starts at 3.
        std::vector<double> values;
        for (double tau = 3; tau <= 1e5; tau *= 1.25) {
            p.tau = tau;
            values.push_back(eval_bound_shape(p));
        }
        const auto best = std::min_element(values.begin(), values.end()) - values.begin();
        CHECK(best > 0);
        CHECK(best < static_cast<long>(values.size()) - 1);
        for (long i = 1; i <= best; ++i) CHECK(values[i] < values[i - 1]);
        for (long i = best + 1; i < static_cast<long>(values.size()); ++i) CHECK(values[i] > values[i - 1]);
    }
    BoundShapeParams stationary;
    stationary.horizon = 1000;
    stationary.tau = 1000;
    stationary.delta = 0.4;
    stationary.upsilon = 0;
    CHECK(eval_bound_shape(stationary) == doctest::Approx(std::log(1000.0) / 0.064).epsilon(1e-12));
}

TEST_CASE("window counting lemma") {
    auto r = window_lemma_check(std::vector<bool>(100, false), 10, 3);
    CHECK(r.lhs == 0);
    CHECK(r.holds);

    r = window_lemma_check(std::vector<bool>(100, true), 10, 10);
    CHECK(r.lhs == 100);
    CHECK(r.rhs == 100);
    CHECK(r.holds);

    RngStream rng(2024);
    for (int k = 0; k < 200; ++k) {
        const double density = rng.uniform();
        std::vector<bool> a(500);
        for (auto&& b : a) b = rng.uniform() < density;
        const auto tau = static_cast<std::size_t>(1 + rng.below(100));
        const auto s = static_cast<std::size_t>(rng.below(tau + 1));
        const auto res = window_lemma_check(a, tau, s);
        // Direct count oracle.
        std::size_t lhs = 0;
        for (std::size_t n = 1; n <= 500; ++n) {
            if (!a[n - 1]) continue;
            std::size_t cnt = 0;
            for (std::size_t t = (n > tau ? n - tau : 1); t < n; ++t) cnt += a[t - 1] ? 1 : 0;
            if (cnt <= s) ++lhs;
        }
        REQUIRE(res.lhs == lhs);
        REQUIRE(res.rhs == s * ((500 + tau - 1) / tau));
        CHECK(res.strict_holds);
        CHECK(res.strict_lhs <= res.lhs);
        // A block of tau rounds holds at most s + 1 members with a(n) <= s.
        CHECK(res.lhs <= (s + 1) * ((500 + tau - 1) / tau));
    }
}

TEST_CASE("window counting lemma: the non-strict form has counterexamples") {
    const auto r = window_lemma_check({true, true, false, false, false, false, false, false, false, false}, 10, 1);
    CHECK(r.lhs == 2);
    CHECK(r.rhs == 1);
    CHECK_FALSE(r.holds);
    CHECK(r.strict_lhs == 1);
    CHECK(r.strict_holds);
}
