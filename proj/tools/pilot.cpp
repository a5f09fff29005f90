// Pilot runs for the Monte-Carlo acceptance criteria. Uses a seed disjoint from
// the acceptance seeds and writes the pinned thresholds fixture.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "experiments.hpp"

using namespace swts::acceptance;

int main(int argc, char** argv) {
    const std::string out_path = argc > 1 ? argv[1] : "tests/fixtures/pilot_thresholds.json";
    PilotThresholds t;
    t.pilot_seed = 0x9e3779b97f4a7c15ULL;

    const auto stationary = stationary_experiment(t.pilot_seed);
    if (!stationary.identical_pulls) {
        std::cerr << "pilot: beta_swts(tau=T) and stationary_ts disagree\n";
        return 1;
    }
    t.stationary_sublinearity = pin(stationary.sublinearity, 1.8);
    t.abrupt_dominance = pin(abrupt_dominance(t.pilot_seed), 0.5);
    t.gaussian_dominance = pin(gaussian_dominance(t.pilot_seed), 1.0);

    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "pilot: cannot write " << out_path << '\n';
        return 3;
    }
    out << to_json(t);
    std::cout << to_json(t);
    return 0;
}
