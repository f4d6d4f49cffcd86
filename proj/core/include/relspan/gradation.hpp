#pragma once

#include <cstdint>

#include "relspan/common.hpp"

namespace relspan {

/**
 * Random elimination tournament over the padded domain [1..n_padded].
 *
 * A full binary tree is built over n_padded leaves (n padded to the next
 * power of two).  Every internal node copies the value of one of its two
 * children, picked by an unbiased coin.  P_i is the multiset-free set of
 * values surviving at height i, so
 *
 *   P_0 = [1..n_padded],  P_{i+1} subset of P_i,  |P_i| = n_padded / 2^i,
 *
 * and each aligned block of 2^i consecutive leaves contributes exactly one
 * member to P_i.  Coins are a pure function of (seed, level, node index),
 * so reconstruction is order-independent and replayable.
 */
struct Gradation {
    Vertex n = 0;                      // original domain size
    Vertex n_padded = 0;               // next power of two
    int height = 0;                    // log2(n_padded)
    std::uint64_t seed = 0;
    std::vector<std::uint8_t> level_of;  // level_of[v-1], v in [1..n_padded]

    /** Highest level v survives to.  v in [1..n_padded]. */
    int level(Vertex v) const { return level_of[v - 1]; }

    /** True iff v belongs to P_i. */
    bool in_level(Vertex v, int i) const { return level_of[v - 1] >= i; }

    /** P_i restricted to [1..n], sorted ascending. */
    VertexList members(int i) const;

    /** P_i over the full padded domain, sorted ascending. */
    VertexList members_padded(int i) const;
};

/** Tournament coin for internal node (level, index); level >= 1, index >= 0. */
inline int tournament_coin(std::uint64_t seed, int level, std::uint64_t index) {
    return static_cast<int>(mix64(seed, static_cast<std::uint64_t>(level), index) & 1u);
}

/** Runs the tournament.  n >= 1 required. */
Gradation build_gradation(Vertex n, std::uint64_t seed);

}  // namespace relspan
