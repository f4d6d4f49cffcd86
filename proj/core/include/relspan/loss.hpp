#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "relspan/attacks.hpp"
#include "relspan/common.hpp"
#include "relspan/resilience1d.hpp"
#include "relspan/spanner1d.hpp"

namespace relspan {

// Bounds on the smallest vertex set whose removal covers every damaged pair,
// with a witness cover realizing the upper bound.
struct ExtensionResult {
    std::uint64_t lower = 0;
    std::uint64_t upper = 0;
    bool exact = true;
    VertexList witness;
};

// Minimum vertex cover of the damaged-pair graph. Degree-based kernelization
// runs first; components that stay small are solved exactly by branch and
// bound, anything larger gets a maximal-matching lower bound and a greedy
// cover upper bound.
ExtensionResult min_extension(const std::vector<std::pair<Vertex, Vertex>>& pairs);

// Loss interval: extension size divided by attack size. Throws invalid_input
// when the attack is empty.
std::pair<double, double> loss_rate(std::uint64_t attack_size, const ExtensionResult& ext);

struct LossReport {
    std::uint64_t attack_size = 0;
    std::uint64_t bad_pairs = 0;
    std::uint64_t extension_lower = 0;
    std::uint64_t extension_upper = 0;
    bool exact = true;
    double loss_lower = 0.0;
    double loss_upper = 0.0;
    // "expectation" for constructions built without a failure budget,
    // "probabilistic" otherwise
    std::string variant;
    // surviving vertices missing a usable stairway in some direction; a
    // superset count of any minimum extension
    std::uint64_t stairway_bad = 0;
    VertexList witness;
};

// Full pipeline for one instance: damaged pairs, extension bounds, loss
// interval. stairway_bad is counted with the constructive test only, since
// that is the superset the guarantees reason about.
LossReport assess_loss_1d(const Spanner1D& s, const Attack& attack);

}  // namespace relspan
