#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "swts/analysis.hpp"

namespace swts {

struct SmoothVerdict {
    double delta_prime = 0.0;
    DeltaPrimeReport f_delta_prime;
    double gap_floor = 0.0;                ///< delta_prime - 2 sigma tau (audited sigma)
    bool f_tau_prime_inside = false;       ///< F'_tau subset of F_{Delta',T}
    /// Delta_tau with F_tau = F_{Delta',T}; only defined when f_tau_prime_inside.
    std::optional<double> delta_tau_smooth;
    std::optional<bool> delta_tau_above_floor;  ///< delta_tau_smooth >= gap floor, if defined
};

/// Everything the analysis module derives from one trajectory at one window.
struct StructureReport {
    std::size_t tau = 0;
    std::size_t horizon = 0;
    std::size_t arms = 0;
    Breakpoints breakpoints;
    /// Present only when the alternative breakpoint reading gives a different list.
    std::optional<Breakpoints> breakpoints_alternative;
    PhaseStructure phases;
    RoundMask f_tau_prime;
    std::optional<double> delta_tau;
    std::vector<PhaseVerdict> abrupt_verdicts;
    std::optional<SmoothVerdict> smooth;
    std::map<std::string, std::optional<double>> bound_shapes;  ///< undefined shapes map to nullopt
};

struct ReportOptions {
    std::optional<double> delta_prime;
    std::optional<PolynomialCap> cap;
    double gamma = 1.0;  ///< used by the Gaussian bound shapes
};

StructureReport build_structure_report(const RewardTrajectory& traj, std::size_t tau, const ReportOptions& options = {});

/// JSON rendering; masks are run-length encoded as [first, last] interval lists.
std::string to_json(const StructureReport& report);

}  // namespace swts
