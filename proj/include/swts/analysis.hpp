#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "swts/reward_model.hpp"

namespace swts {

/// Boolean mask over rounds; index t-1 holds round t.
using RoundMask = std::vector<bool>;

/// Closed round interval [first, last]; empty when first > last.
struct RoundInterval {
    std::size_t first;
    std::size_t last;

    [[nodiscard]] bool empty() const noexcept { return first > last; }
    [[nodiscard]] std::size_t length() const noexcept { return empty() ? 0 : last - first + 1; }
    [[nodiscard]] bool contains(std::size_t t) const noexcept { return t >= first && t <= last; }
    friend bool operator==(const RoundInterval&, const RoundInterval&) = default;
};

std::size_t mask_count(const RoundMask& mask) noexcept;
/// Run-length encoding of the set rounds as maximal intervals.
std::vector<RoundInterval> mask_intervals(const RoundMask& mask);
/// true iff every round set in `sub` is set in `super`.
bool mask_subset(const RoundMask& sub, const RoundMask& super);

// ---- breakpoints, phases ----------------------------------------------------

/// How the "suboptimal arm overtakes" clause of the breakpoint definition
/// indexes the reference mean. `as_printed` compares mu(i, t) against
/// mu(i*(t), t-1); `previous_optimum` against mu(i*(t-1), t-1).
enum class BreakpointRule { as_printed, previous_optimum };

struct Breakpoints {
    /// Ascending rounds t in [2, T] that are breakpoints, followed by the
    /// terminal round T (appended by convention unless already present).
    std::vector<std::size_t> rounds;
    /// Breakpoints excluding the terminal convention entry.
    std::size_t upsilon = 0;
};

/// Round t >= 2 is a breakpoint if i*(t) != i*(t-1), or if some arm
/// i != i*(t-1) has mu(i, t) >= reference (see BreakpointRule).
Breakpoints compute_breakpoints(const RewardTrajectory& traj, BreakpointRule rule = BreakpointRule::as_printed);

/// Genuine (non-terminal) breakpoints only.
std::vector<std::size_t> genuine_breakpoints(const Breakpoints& bp, std::size_t horizon);

struct PhaseStructure {
    std::vector<RoundInterval> phases;        ///< partition of [1, T]
    std::vector<RoundInterval> pseudophases;  ///< phase psi minus its first tau rounds (psi > 1)
};

/// Phases start at round 1 and at every genuine breakpoint; the last phase
/// runs through T. Pseudophase 1 equals phase 1; later pseudophases drop the
/// first tau rounds and are empty when tau >= the phase length.
PhaseStructure compute_phases(const RewardTrajectory& traj, std::size_t tau,
                              BreakpointRule rule = BreakpointRule::as_printed);
PhaseStructure compute_phases(const Breakpoints& bp, std::size_t horizon, std::size_t tau);

/// Union of (phase minus pseudophase) strips: the rounds whose window may
/// straddle a breakpoint.
RoundMask post_breakpoint_strips(const PhaseStructure& ps, std::size_t horizon);

// ---- window-level structure -------------------------------------------------

enum class ScanMethod {
    brute_force,  ///< direct double loop over the window, O(T * tau * K)
    sliding,      ///< monotone-deque window minima/maxima, O(T * K)
};

/// Rounds t where some suboptimal arm's largest mean over the window
/// [max(1, t - tau), t - 1] reaches the optimal arm's smallest mean over the
/// same window. Round 1 (empty window) is never flagged.
RoundMask compute_f_tau_prime(const RewardTrajectory& traj, std::size_t tau,
                              ScanMethod method = ScanMethod::brute_force);

/// Minimum over unflagged rounds t >= 2 and suboptimal arms of
/// (window min of the optimal arm - window max of the arm). Empty when no
/// round t >= 2 is unflagged.
std::optional<double> compute_delta_tau(const RewardTrajectory& traj, std::size_t tau,
                                        ScanMethod method = ScanMethod::brute_force);

/// Same minimum over rounds t >= 2 outside `f_tau`, a chosen superset of
/// F_tau' (e.g. F_{Delta',T} in the smooth setting). Throws ParameterError if
/// `f_tau` has the wrong size or misses a round of F_tau'.
std::optional<double> compute_delta_tau(const RewardTrajectory& traj, std::size_t tau, const RoundMask& f_tau,
                                        ScanMethod method = ScanMethod::brute_force);

struct DeltaPrimeReport {
    RoundMask mask;                 ///< some pair of arms closer than delta_prime at max(1, t-1)
    std::size_t count = 0;
    double audited_sigma = 0.0;     ///< max per-step drift of the trajectory
    bool feasible = false;          ///< 2 * sigma * tau < delta_prime
    std::optional<bool> within_cap; ///< count <= F * T^beta, when a cap was supplied
};

struct PolynomialCap {
    double scale;     ///< F
    double exponent;  ///< beta in [0, 1]
};

DeltaPrimeReport compute_f_delta_prime(const RewardTrajectory& traj, double delta_prime, std::size_t tau,
                                       std::optional<PolynomialCap> cap = std::nullopt);

struct PhaseVerdict {
    RoundInterval phase;
    bool holds = true;
    double optimal_min = 0.0;       ///< min over the phase of the optimal mean
    double suboptimal_max = 0.0;    ///< max over the phase of non-optimal means
    std::optional<std::size_t> witness_round;
    std::optional<std::size_t> witness_arm;  ///< 0-based
};

/// Per phase: min_t mu(i*(t), t) > max_{t, i != i*(t)} mu(i, t). A failing
/// phase reports the round and arm attaining the suboptimal maximum.
std::vector<PhaseVerdict> verify_abrupt_assumption(const RewardTrajectory& traj, const PhaseStructure& ps);

// ---- bound shapes -----------------------------------------------------------

enum class BoundTheorem { general_beta, general_gauss, abrupt_beta, abrupt_gauss, smooth_beta, smooth_gauss };

/// Inputs of the O(.) bound shapes. The constants c1..c3 are not given by
/// theory; they default to 1 and may be fitted to simulations.
struct BoundShapeParams {
    BoundTheorem theorem = BoundTheorem::abrupt_beta;
    double horizon = 0.0;       ///< T
    double tau = 0.0;
    double delta = 0.0;         ///< Delta_tau (general/abrupt)
    double upsilon = 0.0;       ///< number of breakpoints (abrupt)
    double f_tau_size = 0.0;    ///< |F_tau| (general)
    double gamma = 1.0;         ///< Gaussian shapes
    double delta_prime = 0.0;   ///< smooth
    double sigma = 0.0;         ///< smooth Lipschitz constant
    double beta_exponent = 1.0; ///< smooth: |F_{Delta',T}| <= F T^beta
    double f_scale = 1.0;       ///< smooth: F
    double c1 = 1.0;
    double c2 = 1.0;
    double c3 = 1.0;
};

/// abrupt-beta:  c1 Y tau + c2 T ln(tau) / (tau D^3)
/// abrupt-gauss: c1 Y tau + c2 T ln(tau D^2 + e^6) / (gamma tau D^2) + c3 T / tau
/// general-*:    |F_tau| replaces Y tau
/// smooth-*:     F T^beta replaces Y tau, D = Delta' - 2 sigma tau
/// Throws ParameterError when a divisor or logarithm argument is out of domain.
double eval_bound_shape(const BoundShapeParams& params);

std::string to_string(BoundTheorem theorem);

// ---- counting lemma ---------------------------------------------------------

struct WindowLemmaResult {
    std::size_t lhs;         ///< #{n in A : a(n) <= s}
    std::size_t rhs;         ///< s * ceil(T / tau)
    bool holds;              ///< lhs <= rhs
    std::size_t strict_lhs;  ///< #{n in A : a(n) < s}
    bool strict_holds;       ///< strict_lhs <= rhs
};

/// With a(n) = #{t in [n - tau, n - 1] : t in A}, evaluates
///   #{n in [1, T] : n in A, a(n) <= s} <= s * ceil(T / tau).
/// This form can fail: A = {1, 2}, tau = 10, s = 1, T = 10 gives 2 > 1, since
/// a block of tau consecutive rounds can hold s + 1 counted members. With
/// a(n) < s at most s members per block are counted and the bound always
/// holds; both counts are returned.
/// `in_set[t-1]` marks membership of round t; its size is T.
WindowLemmaResult window_lemma_check(const std::vector<bool>& in_set, std::size_t tau, std::size_t s);

}  // namespace swts
