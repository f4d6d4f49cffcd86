#pragma once

#include <optional>

#include "relspan/attacks.hpp"
#include "relspan/spanner1d.hpp"

namespace relspan {

enum class Direction { left, right };

/**
 * proof_witness: only attempt the interval-greedy construction used by the
 * probabilistic analysis (cheap, may miss exotic stairways).
 * definitional:  fall back to an exhaustive level-by-level search, so absence
 * really means no safe usable stairway exists.
 */
enum class BadnessMode { proof_witness, definitional };

/**
 * A climb p_0, p_1, ..., p_j with p_i in P_i, monotone toward `dir`,
 * consecutive distinct points joined by spanner edges, no point attacked.
 * Usable means the remainder of the line past p_j is a rank-span clique of
 * level j: rightward [p_j..n] cap P_j, leftward [1..p_j] cap P_j.
 */
struct Stairway {
    Direction dir = Direction::right;
    std::vector<Vertex> points;  // p_0..p_j, repeats allowed where p_i == p_{i+1}
    int top_level = 0;

    Vertex origin() const { return points.front(); }
    Vertex top() const { return points.back(); }
};

/**
 * Searches for a safe usable stairway from v (v must survive the attack).
 * proof_witness mode anchors level-i candidates to the aligned interval
 *   I_i = [v .. ceil(v/2^i)*2^i + (Delta_i - 1)*2^i],  Delta_i = floor(2^{(i-1)/2} / (2 eps_step)),
 * taking the extreme surviving P_i member (leftmost when climbing right),
 * and stops at the last interval inside [1..n].  definitional mode adds a
 * dynamic program over all level-monotone edge-supported sequences.
 */
std::optional<Stairway> find_stairway(const Spanner1D& s, const VertexList& attacked,
                                      Vertex v, Direction dir,
                                      BadnessMode mode = BadnessMode::definitional);

/** v in B counts as bad; otherwise bad means a missing stairway on either side. */
bool is_bad(const Spanner1D& s, const VertexList& attacked, Vertex v,
            BadnessMode mode = BadnessMode::definitional);

/** Surviving vertices classified bad, sorted. */
VertexList bad_points_1d(const Spanner1D& s, const VertexList& attacked,
                         BadnessMode mode = BadnessMode::definitional);

/**
 * Strictly increasing edge path from u to v (u < v) through survivors only;
 * its metric length is exactly v - u.  Primary route splices the right
 * stairway of u with the left stairway of v at their first rank crossing;
 * when stairways are missing or a splice edge is absent it falls back to
 * breadth-first search over forward edges.  nullopt means no monotone path
 * exists at all.
 */
std::optional<std::vector<Vertex>> monotone_path(const Spanner1D& s,
                                                 const VertexList& attacked,
                                                 Vertex u, Vertex v);

/**
 * All surviving unordered pairs {u,v} with no monotone path, each reported
 * once with u < v, sorted.  Exact: computed from forward reachability over
 * the residual graph.
 */
std::vector<std::pair<Vertex, Vertex>> damaged_pairs_1d(const Spanner1D& s,
                                                        const VertexList& attacked);

}  // namespace relspan
