#include "swts/structure_report.hpp"

#include <json.hpp>

#include "swts/errors.hpp"

namespace swts {

namespace {

using nlohmann::ordered_json;

ordered_json interval_json(const RoundInterval& iv) {
    if (iv.empty()) return ordered_json::array();
    return ordered_json::array({iv.first, iv.last});
}

ordered_json intervals_json(const std::vector<RoundInterval>& ivs) {
    ordered_json a = ordered_json::array();
    for (const auto& iv : ivs) a.push_back(interval_json(iv));
    return a;
}

ordered_json optional_real(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

std::optional<double> try_shape(const BoundShapeParams& p) {
    try {
        return eval_bound_shape(p);
    } catch (const ParameterError&) {
        return std::nullopt;
    }
}

}  // namespace

StructureReport build_structure_report(const RewardTrajectory& traj, std::size_t tau, const ReportOptions& options) {
    StructureReport r;
    r.tau = tau;
    r.horizon = traj.horizon();
    r.arms = traj.arms();
    r.breakpoints = compute_breakpoints(traj, BreakpointRule::as_printed);
    Breakpoints alt = compute_breakpoints(traj, BreakpointRule::previous_optimum);
    if (alt.rounds != r.breakpoints.rounds) r.breakpoints_alternative = std::move(alt);
    r.phases = compute_phases(r.breakpoints, traj.horizon(), tau);
    // Brute force up to 10^5 rounds; the deque scan is oracle-equivalent and used beyond.
    const ScanMethod method = traj.horizon() <= 100000 ? ScanMethod::brute_force : ScanMethod::sliding;
    r.f_tau_prime = compute_f_tau_prime(traj, tau, method);
    r.delta_tau = compute_delta_tau(traj, tau, method);
    r.abrupt_verdicts = verify_abrupt_assumption(traj, r.phases);

    const auto T = static_cast<double>(traj.horizon());
    const auto tau_d = static_cast<double>(tau);
    auto shape = [&](BoundTheorem th) {
        BoundShapeParams p;
        p.theorem = th;
        p.horizon = T;
        p.tau = tau_d;
        p.delta = r.delta_tau.value_or(0.0);
        p.upsilon = static_cast<double>(r.breakpoints.upsilon);
        p.f_tau_size = static_cast<double>(mask_count(r.f_tau_prime));
        p.gamma = options.gamma;
        return p;
    };
    for (BoundTheorem th : {BoundTheorem::general_beta, BoundTheorem::general_gauss, BoundTheorem::abrupt_beta,
                            BoundTheorem::abrupt_gauss}) {
        r.bound_shapes[to_string(th)] = r.delta_tau ? try_shape(shape(th)) : std::nullopt;
    }

    if (options.delta_prime) {
        SmoothVerdict s;
        s.delta_prime = *options.delta_prime;
        s.f_delta_prime = compute_f_delta_prime(traj, *options.delta_prime, tau, options.cap);
        s.gap_floor = *options.delta_prime - 2.0 * s.f_delta_prime.audited_sigma * tau_d;
        s.f_tau_prime_inside = mask_subset(r.f_tau_prime, s.f_delta_prime.mask);
        if (s.f_tau_prime_inside) {
            s.delta_tau_smooth = compute_delta_tau(traj, tau, s.f_delta_prime.mask, method);
            if (s.delta_tau_smooth) s.delta_tau_above_floor = *s.delta_tau_smooth >= s.gap_floor;
        }
        for (BoundTheorem th : {BoundTheorem::smooth_beta, BoundTheorem::smooth_gauss}) {
            BoundShapeParams p = shape(th);
            p.delta_prime = *options.delta_prime;
            p.sigma = s.f_delta_prime.audited_sigma;
            if (options.cap) {
                p.f_scale = options.cap->scale;
                p.beta_exponent = options.cap->exponent;
            }
            r.bound_shapes[to_string(th)] = try_shape(p);
        }
        r.smooth = std::move(s);
    }
    return r;
}

std::string to_json(const StructureReport& r) {
    ordered_json j;
    j["tau"] = r.tau;
    j["horizon"] = r.horizon;
    j["arms"] = r.arms;
    j["breakpoints"] = r.breakpoints.rounds;
    j["upsilon_T"] = r.breakpoints.upsilon;
    if (r.breakpoints_alternative) {
        j["breakpoints_alternative_reading"] = r.breakpoints_alternative->rounds;
        j["upsilon_T_alternative_reading"] = r.breakpoints_alternative->upsilon;
    }
    j["phases"] = intervals_json(r.phases.phases);
    j["pseudophases"] = intervals_json(r.phases.pseudophases);
    j["f_tau_prime"] = {{"count", mask_count(r.f_tau_prime)}, {"intervals", intervals_json(mask_intervals(r.f_tau_prime))}};
    j["delta_tau"] = optional_real(r.delta_tau);

    ordered_json verdicts = ordered_json::array();
    bool all_hold = true;
    for (const PhaseVerdict& v : r.abrupt_verdicts) {
        ordered_json pv;
        pv["phase"] = interval_json(v.phase);
        pv["holds"] = v.holds;
        pv["optimal_min"] = v.optimal_min;
        pv["suboptimal_max"] = v.suboptimal_max;
        if (v.witness_round) pv["witness"] = {{"round", *v.witness_round}, {"arm", *v.witness_arm + 1}};
        all_hold = all_hold && v.holds;
        verdicts.push_back(std::move(pv));
    }
    ordered_json assumptions;
    assumptions["abrupt"] = {{"holds", all_hold}, {"phases", std::move(verdicts)}};
    if (r.smooth) {
        const SmoothVerdict& s = *r.smooth;
        ordered_json sm;
        sm["delta_prime"] = s.delta_prime;
        sm["audited_sigma"] = s.f_delta_prime.audited_sigma;
        sm["feasible"] = s.f_delta_prime.feasible;
        sm["f_delta_prime"] = {{"count", s.f_delta_prime.count},
                               {"intervals", intervals_json(mask_intervals(s.f_delta_prime.mask))}};
        if (s.f_delta_prime.within_cap) sm["within_cap"] = *s.f_delta_prime.within_cap;
        sm["gap_floor"] = s.gap_floor;
        sm["delta_tau_outside_f_delta_prime"] = optional_real(s.delta_tau_smooth);
        sm["delta_tau_at_least_floor"] =
            s.delta_tau_above_floor ? ordered_json(*s.delta_tau_above_floor) : ordered_json(nullptr);
        sm["f_tau_prime_within_f_delta_prime"] = s.f_tau_prime_inside;
        assumptions["smooth"] = std::move(sm);
    }
    j["assumptions"] = std::move(assumptions);
    ordered_json shapes;
    for (const auto& [name, value] : r.bound_shapes) shapes[name] = optional_real(value);
    j["bound_shapes"] = std::move(shapes);
    return j.dump(2);
}

}  // namespace swts
