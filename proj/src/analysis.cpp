#include "swts/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>

#include "swts/errors.hpp"

namespace swts {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

std::size_t window_start(std::size_t t, std::size_t tau) noexcept { return t > tau ? t - tau : 1; }

// Per-arm window extrema over [max(1, t - tau), t - 1]; entry t-1 holds round t,
// entry 0 (round 1, empty window) is +inf for minima and -inf for maxima.
struct WindowExtrema {
    std::vector<std::vector<double>> min;
    std::vector<std::vector<double>> max;
};

WindowExtrema brute_extrema(const RewardTrajectory& traj, std::size_t tau) {
    const std::size_t K = traj.arms();
    const std::size_t T = traj.horizon();
    WindowExtrema w{std::vector<std::vector<double>>(K, std::vector<double>(T, inf)),
                    std::vector<std::vector<double>>(K, std::vector<double>(T, -inf))};
    for (std::size_t i = 0; i < K; ++i) {
        for (std::size_t t = 2; t <= T; ++t) {
            double lo = inf;
            double hi = -inf;
            for (std::size_t u = window_start(t, tau); u < t; ++u) {
                lo = std::min(lo, traj.mean(i, u));
                hi = std::max(hi, traj.mean(i, u));
            }
            w.min[i][t - 1] = lo;
            w.max[i][t - 1] = hi;
        }
    }
    return w;
}

WindowExtrema sliding_extrema(const RewardTrajectory& traj, std::size_t tau) {
    const std::size_t K = traj.arms();
    const std::size_t T = traj.horizon();
    WindowExtrema w{std::vector<std::vector<double>>(K, std::vector<double>(T, inf)),
                    std::vector<std::vector<double>>(K, std::vector<double>(T, -inf))};
    for (std::size_t i = 0; i < K; ++i) {
        std::deque<std::size_t> lo;  // rounds with increasing means
        std::deque<std::size_t> hi;  // rounds with decreasing means
        for (std::size_t t = 2; t <= T; ++t) {
            const std::size_t u = t - 1;
            const double x = traj.mean(i, u);
            while (!lo.empty() && traj.mean(i, lo.back()) >= x) lo.pop_back();
            lo.push_back(u);
            while (!hi.empty() && traj.mean(i, hi.back()) <= x) hi.pop_back();
            hi.push_back(u);
            const std::size_t first = window_start(t, tau);
            while (lo.front() < first) lo.pop_front();
            while (hi.front() < first) hi.pop_front();
            w.min[i][t - 1] = traj.mean(i, lo.front());
            w.max[i][t - 1] = traj.mean(i, hi.front());
        }
    }
    return w;
}

WindowExtrema extrema(const RewardTrajectory& traj, std::size_t tau, ScanMethod method) {
    if (tau < 1) throw ParameterError("window length tau must be at least 1");
    return method == ScanMethod::sliding ? sliding_extrema(traj, tau) : brute_extrema(traj, tau);
}

// Smallest (optimal window min - suboptimal window max) at round t >= 2.
double round_gap(const RewardTrajectory& traj, const WindowExtrema& w, std::size_t t) {
    const std::size_t star = traj.optimal_arm(t);
    const double star_min = w.min[star][t - 1];
    double gap = inf;
    for (std::size_t i = 0; i < traj.arms(); ++i) {
        if (i != star) gap = std::min(gap, star_min - w.max[i][t - 1]);
    }
    return gap;
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ParameterError(std::string(what) + " must be positive");
}

}  // namespace

std::size_t mask_count(const RoundMask& mask) noexcept {
    return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true));
}

std::vector<RoundInterval> mask_intervals(const RoundMask& mask) {
    std::vector<RoundInterval> out;
    for (std::size_t k = 0; k < mask.size(); ++k) {
        if (!mask[k]) continue;
        const std::size_t t = k + 1;
        if (!out.empty() && out.back().last + 1 == t) {
            out.back().last = t;
        } else {
            out.push_back({t, t});
        }
    }
    return out;
}

bool mask_subset(const RoundMask& sub, const RoundMask& super) {
    for (std::size_t k = 0; k < sub.size(); ++k) {
        if (sub[k] && (k >= super.size() || !super[k])) return false;
    }
    return true;
}

Breakpoints compute_breakpoints(const RewardTrajectory& traj, BreakpointRule rule) {
    const std::size_t T = traj.horizon();
    Breakpoints bp;
    for (std::size_t t = 2; t <= T; ++t) {
        const std::size_t prev_star = traj.optimal_arm(t - 1);
        const std::size_t star = traj.optimal_arm(t);
        bool is_break = star != prev_star;
        if (!is_break) {
            const double reference =
                rule == BreakpointRule::as_printed ? traj.mean(star, t - 1) : traj.mean(prev_star, t - 1);
            for (std::size_t i = 0; i < traj.arms() && !is_break; ++i) {
                is_break = i != prev_star && traj.mean(i, t) >= reference;
            }
        }
        if (is_break) bp.rounds.push_back(t);
    }
    bp.upsilon = bp.rounds.size();
    if (bp.rounds.empty() || bp.rounds.back() != T) bp.rounds.push_back(T);
    return bp;
}

std::vector<std::size_t> genuine_breakpoints(const Breakpoints& bp, std::size_t horizon) {
    std::vector<std::size_t> out(bp.rounds.begin(), bp.rounds.begin() + static_cast<std::ptrdiff_t>(bp.upsilon));
    (void)horizon;
    return out;
}

PhaseStructure compute_phases(const Breakpoints& bp, std::size_t horizon, std::size_t tau) {
    PhaseStructure ps;
    std::size_t start = 1;
    for (std::size_t k = 0; k < bp.upsilon; ++k) {
        ps.phases.push_back({start, bp.rounds[k] - 1});
        start = bp.rounds[k];
    }
    ps.phases.push_back({start, horizon});
    for (std::size_t p = 0; p < ps.phases.size(); ++p) {
        const RoundInterval ph = ps.phases[p];
        if (p == 0) {
            ps.pseudophases.push_back(ph);
        } else {
            ps.pseudophases.push_back({ph.first + tau, ph.last});
        }
    }
    return ps;
}

PhaseStructure compute_phases(const RewardTrajectory& traj, std::size_t tau, BreakpointRule rule) {
    return compute_phases(compute_breakpoints(traj, rule), traj.horizon(), tau);
}

RoundMask post_breakpoint_strips(const PhaseStructure& ps, std::size_t horizon) {
    RoundMask mask(horizon, false);
    for (std::size_t p = 0; p < ps.phases.size(); ++p) {
        const RoundInterval ph = ps.phases[p];
        const RoundInterval pseudo = ps.pseudophases[p];
        for (std::size_t t = ph.first; t <= ph.last; ++t) {
            if (!pseudo.contains(t)) mask[t - 1] = true;
        }
    }
    return mask;
}

RoundMask compute_f_tau_prime(const RewardTrajectory& traj, std::size_t tau, ScanMethod method) {
    const WindowExtrema w = extrema(traj, tau, method);
    RoundMask mask(traj.horizon(), false);
    for (std::size_t t = 2; t <= traj.horizon(); ++t) mask[t - 1] = round_gap(traj, w, t) <= 0.0;
    return mask;
}

std::optional<double> compute_delta_tau(const RewardTrajectory& traj, std::size_t tau, ScanMethod method) {
    const WindowExtrema w = extrema(traj, tau, method);
    std::optional<double> delta;
    for (std::size_t t = 2; t <= traj.horizon(); ++t) {
        const double gap = round_gap(traj, w, t);
        if (gap > 0.0) delta = delta ? std::min(*delta, gap) : gap;
    }
    return delta;
}

std::optional<double> compute_delta_tau(const RewardTrajectory& traj, std::size_t tau, const RoundMask& f_tau,
                                        ScanMethod method) {
    if (f_tau.size() != traj.horizon()) throw ParameterError("F_tau mask must cover every round");
    const WindowExtrema w = extrema(traj, tau, method);
    std::optional<double> delta;
    for (std::size_t t = 2; t <= traj.horizon(); ++t) {
        const double gap = round_gap(traj, w, t);
        if (f_tau[t - 1]) continue;
        if (gap <= 0.0) {
            throw ParameterError("F_tau mask is not a superset of F_tau' (round " + std::to_string(t) + ")");
        }
        delta = delta ? std::min(*delta, gap) : gap;
    }
    return delta;
}

DeltaPrimeReport compute_f_delta_prime(const RewardTrajectory& traj, double delta_prime, std::size_t tau,
                                       std::optional<PolynomialCap> cap) {
    require_positive(delta_prime, "delta_prime");
    const std::size_t K = traj.arms();
    const std::size_t T = traj.horizon();
    DeltaPrimeReport r;
    r.mask.assign(T, false);
    for (std::size_t t = 1; t <= T; ++t) {
        const std::size_t u = t > 1 ? t - 1 : 1;
        bool close = false;
        for (std::size_t i = 0; i < K && !close; ++i) {
            for (std::size_t j = i + 1; j < K && !close; ++j) {
                close = std::fabs(traj.mean(i, u) - traj.mean(j, u)) < delta_prime;
            }
        }
        r.mask[t - 1] = close;
    }
    r.count = mask_count(r.mask);
    r.audited_sigma = traj.max_step_drift();
    r.feasible = 2.0 * r.audited_sigma * static_cast<double>(tau) < delta_prime;
    if (cap) {
        r.within_cap = static_cast<double>(r.count) <= cap->scale * std::pow(static_cast<double>(T), cap->exponent);
    }
    return r;
}

std::vector<PhaseVerdict> verify_abrupt_assumption(const RewardTrajectory& traj, const PhaseStructure& ps) {
    std::vector<PhaseVerdict> out;
    for (const RoundInterval& ph : ps.phases) {
        PhaseVerdict v;
        v.phase = ph;
        v.optimal_min = inf;
        v.suboptimal_max = -inf;
        std::size_t wt = ph.first;
        std::size_t wi = 0;
        for (std::size_t t = ph.first; t <= ph.last; ++t) {
            const std::size_t star = traj.optimal_arm(t);
            v.optimal_min = std::min(v.optimal_min, traj.mean(star, t));
            for (std::size_t i = 0; i < traj.arms(); ++i) {
                if (i != star && traj.mean(i, t) > v.suboptimal_max) {
                    v.suboptimal_max = traj.mean(i, t);
                    wt = t;
                    wi = i;
                }
            }
        }
        v.holds = v.optimal_min > v.suboptimal_max;
        if (!v.holds) {
            v.witness_round = wt;
            v.witness_arm = wi;
        }
        out.push_back(v);
    }
    return out;
}

double eval_bound_shape(const BoundShapeParams& p) {
    require_positive(p.horizon, "horizon T");
    require_positive(p.tau, "window tau");
    const double T = p.horizon;
    const double tau = p.tau;
    const double e6 = std::exp(6.0);

    double structural = 0.0;
    double gap = 0.0;
    switch (p.theorem) {
        case BoundTheorem::general_beta:
        case BoundTheorem::general_gauss:
            if (p.f_tau_size < 0.0) throw ParameterError("|F_tau| must be non-negative");
            structural = p.f_tau_size;
            gap = p.delta;
            break;
        case BoundTheorem::abrupt_beta:
        case BoundTheorem::abrupt_gauss:
            if (p.upsilon < 0.0) throw ParameterError("breakpoint count must be non-negative");
            structural = p.upsilon * tau;
            gap = p.delta;
            break;
        case BoundTheorem::smooth_beta:
        case BoundTheorem::smooth_gauss:
            if (p.beta_exponent < 0.0 || p.beta_exponent > 1.0) throw ParameterError("beta exponent must be in [0,1]");
            structural = p.f_scale * std::pow(T, p.beta_exponent);
            gap = p.delta_prime - 2.0 * p.sigma * tau;
            if (!(gap > 0.0)) throw ParameterError("smooth bound needs delta_prime - 2 sigma tau > 0");
            break;
    }
    require_positive(gap, "gap");

    const bool gaussian = p.theorem == BoundTheorem::general_gauss || p.theorem == BoundTheorem::abrupt_gauss ||
                          p.theorem == BoundTheorem::smooth_gauss;
    if (!gaussian) {
        return p.c1 * structural + p.c2 * T * std::log(tau) / (tau * gap * gap * gap);
    }
    require_positive(p.gamma, "gamma");
    return p.c1 * structural + p.c2 * T * std::log(tau * gap * gap + e6) / (p.gamma * tau * gap * gap) +
           p.c3 * T / tau;
}

std::string to_string(BoundTheorem theorem) {
    switch (theorem) {
        case BoundTheorem::general_beta: return "general-beta";
        case BoundTheorem::general_gauss: return "general-gauss";
        case BoundTheorem::abrupt_beta: return "abrupt-beta";
        case BoundTheorem::abrupt_gauss: return "abrupt-gauss";
        case BoundTheorem::smooth_beta: return "smooth-beta";
        case BoundTheorem::smooth_gauss: return "smooth-gauss";
    }
    return "unknown";
}

WindowLemmaResult window_lemma_check(const std::vector<bool>& in_set, std::size_t tau, std::size_t s) {
    if (tau < 1) throw ParameterError("window lemma needs tau >= 1");
    const std::size_t T = in_set.size();
    // prefix[k] = #{t <= k : t in A}
    std::vector<std::size_t> prefix(T + 1, 0);
    for (std::size_t t = 1; t <= T; ++t) prefix[t] = prefix[t - 1] + (in_set[t - 1] ? 1 : 0);
    std::size_t lhs = 0;
    std::size_t strict_lhs = 0;
    for (std::size_t n = 1; n <= T; ++n) {
        if (!in_set[n - 1]) continue;
        const std::size_t lo = n > tau ? n - tau : 1;  // rounds < 1 are never in A
        const std::size_t a = prefix[n - 1] - prefix[lo - 1];
        if (a <= s) ++lhs;
        if (a < s) ++strict_lhs;
    }
    const std::size_t rhs = s * ((T + tau - 1) / tau);
    return {lhs, rhs, lhs <= rhs, strict_lhs, strict_lhs <= rhs};
}

}  // namespace swts
