#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relspan/common.hpp"
#include "relspan/lso.hpp"
#include "relspan/resilience1d.hpp"
#include "relspan/spanner1d.hpp"

namespace relspan {

struct ParamsHD {
    double eps = 0;
    double rho = 0;
    std::optional<double> delta;
    double c_const = 0;
    double varsigma = 0;  // eps / 32
    int rounds = 0;       // N, at least 1, grows as ceil(log2 log2 n)
    std::uint64_t family_count = 0;
    double rho_prime = 0;  // rho / (3 * family_count * rounds)
    std::optional<double> delta_prime;
};

// One ordering's view of the point set: the rank permutation plus the
// per-round one-dimensional spanners built over rank space.
struct SigmaCopies {
    VertexList order;                 // rank (1-based) -> vertex
    std::vector<std::uint32_t> rank;  // vertex -> rank, index 0 unused
    std::vector<Spanner1D> copies;    // one per round
};

// Spanner over points in d dimensions. Conceptually the edge set is the
// union over all orderings and rounds of one-dimensional spanners on rank
// space; views are materialized per ordering on first use and cached, since
// at small scale every copy collapses to a clique and most orderings are
// never touched.
class SpannerHD {
public:
    std::vector<Point> points;      // as given
    std::vector<Point> normalized;  // mapped into [0,1)^d
    double norm_scale = 1;          // original = normalized * norm_scale + norm_offset
    std::vector<double> norm_offset;
    OrderingFamily family;
    ParamsHD params;
    std::uint64_t seed = 0;
    Params1D copy_template;         // shared derivation for every copy
    bool copies_degenerate = false; // every copy is a single clique level
    Vertex n = 0;

    const SigmaCopies& sigma_copies(std::uint64_t sigma) const;
    bool has_union_edge(Vertex u, Vertex v) const;
    // explicit union edge list, only available when the family is small
    // enough to enumerate
    std::vector<std::pair<Vertex, Vertex>> union_edges() const;
    std::uint64_t union_edge_count() const;
    // per-copy closed-form bound summed over the whole family
    double union_edge_bound() const;
    double distance(Vertex u, Vertex v) const;

private:
    mutable std::unique_ptr<std::mutex> cache_mutex_ = std::make_unique<std::mutex>();
    mutable std::map<std::uint64_t, SigmaCopies> cache_;
};

// family_override substitutes a custom ordering family before parameters are
// derived; tests use it to force non-degenerate copies.
SpannerHD build_hd(const std::vector<Point>& pts, double eps, double rho,
                   std::optional<double> delta, double c_const, std::uint64_t seed,
                   std::optional<OrderingFamily> family_override = std::nullopt);

// Nested bad sets: element 0 is the attack itself, element i adds every
// point some ordering's round-i copy classifies as bad against element i-1.
std::vector<VertexList> bad_sequence(const SpannerHD& s, const VertexList& attack,
                                     BadnessMode mode = BadnessMode::definitional);

struct PathOutcome {
    std::optional<VertexList> path;
    double length = 0;  // metric length in the original coordinates
    std::vector<std::string> defects;
};

// Recursive path extraction: pick an ordering certifying the locality
// property for the active pair, walk the monotone path in that ordering's
// copy for the current round, keep only the edge crossing between the two
// endpoint neighborhoods, and recurse on both sides; the last round splices
// whole monotone paths. Absent result with no defects means an endpoint sits
// in the computed bad sets.
PathOutcome path_hd(const SpannerHD& s, const VertexList& attack, Vertex p, Vertex q);

// Survivor pairs whose residual shortest path exceeds (1+eps) times their
// distance, found by running Dijkstra from every survivor. When defects is
// given, each damaged pair with both endpoints outside the final bad set is
// reported there.
std::vector<std::pair<Vertex, Vertex>> damaged_pairs_hd(
    const SpannerHD& s, const VertexList& attack,
    std::vector<std::string>* defects = nullptr);

}  // namespace relspan
