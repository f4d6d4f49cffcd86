#pragma once

#include <cstdint>
#include <optional>

#include "relspan/common.hpp"
#include "relspan/gradation.hpp"

namespace relspan {

/**
 * Derived construction parameters for the 1-D spanner.
 *
 * sp       survival density threshold, 1 - rho/8
 * eps_step rank-step resolution: rho / (c_const * ln(1/rho)) for the
 *          expectation variant, rho / (c_const * (ln(1/rho) + ln(1/delta)))
 *          when a failure budget delta is given
 * M        top gradation level: smallest M with n_padded/2^M <= 2^{M/2}/eps_step,
 *          clamped to [0, log2(n_padded)]
 *
 * When eps_step * n_padded <= 1 every vertex pair ends up connected at level
 * zero and the construction collapses to a single clique; `degenerate` flags
 * that regime (it is a valid output, not an error).
 */
struct Params1D {
    double rho = 0.0;
    std::optional<double> delta;
    double c_const = 0.0;
    double sp = 0.0;
    double eps_step = 0.0;
    int M = 0;
    bool degenerate = false;
};

Params1D derive_params(Vertex n, double rho, std::optional<double> delta, double c_const);

/**
 * Reliable 1-D spanner over [1..n].
 *
 * Level i (0 <= i <= M) connects u,v in P_i iff their rank distance within
 * the sorted P_i is at most conn(i) = ceil(2^{i/2} / eps_step).  Padding
 * vertices above n take part in the tournament but are trimmed here; since
 * they occupy a suffix of every sorted level, rank distances between kept
 * vertices are unaffected.  Edge sets are implicit in (members, conn).
 */
struct Spanner1D {
    struct Level {
        int i = 0;
        std::uint64_t conn = 0;
        VertexList members;  // trimmed, sorted ascending

        /** Rank of v within members, or nullopt. */
        std::optional<std::uint64_t> rank(Vertex v) const;
        std::uint64_t edge_count() const;  // closed form
    };

    Vertex n = 0;
    std::uint64_t seed = 0;  // build seed, gradation seed is derived from it
    Params1D params;
    Gradation gradation;
    std::vector<Level> levels;  // indices 0..M

    bool has_edge(Vertex u, Vertex v) const;

    /** Forward neighbors (w > u) across all levels, sorted, deduplicated. */
    VertexList forward_neighbors(Vertex u) const;

    /** Per-level counts and their total (sum over levels, no deduplication). */
    std::vector<std::uint64_t> level_edge_counts() const;
    std::uint64_t edge_count() const;

    /** Every level edge, deduplicated across levels, each pair once (u < v). */
    std::vector<std::pair<Vertex, Vertex>> enumerate_edges() const;
};

Spanner1D build_1d(Vertex n, double rho, std::optional<double> delta, double c_const,
                   std::uint64_t seed);

/** conn(i) for a given eps_step. */
std::uint64_t connection_range(int i, double eps_step);

/**
 * Union of independently seeded spanners on one vertex set; amplifies the
 * failure budget by majority-of-copies instead of re-deriving eps_step.
 */
struct SpannerUnion {
    Vertex n = 0;
    std::size_t copies = 0;
    std::vector<std::pair<Vertex, Vertex>> edges;  // sorted, deduplicated

    bool has_edge(Vertex u, Vertex v) const;
    std::uint64_t edge_count() const { return edges.size(); }
};

SpannerUnion boost_union(const std::vector<const Spanner1D*>& parts);

}  // namespace relspan
