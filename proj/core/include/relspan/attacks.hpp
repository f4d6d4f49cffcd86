#pragma once

#include <cstdint>
#include <string>

#include "relspan/common.hpp"
#include "relspan/spanner1d.hpp"

namespace relspan {

enum class AttackKind {
    uniform,       // k vertices drawn without replacement
    block,         // one contiguous run of k vertices at a random offset
    multiblock,    // several disjoint contiguous runs totaling k
    periodic,      // every ceil(n/k)-th vertex
    custom,        // caller-supplied list
    remark_middle  // structure-aware cut through the middle (not oblivious)
};

const char* to_string(AttackKind kind);
AttackKind attack_kind_from_string(const std::string& s);

/**
 * A set of removed vertices.  Oblivious kinds are pure functions of
 * (n, size, seed) and never see the spanner they will be applied to;
 * remark_middle reads the built spanner and is flagged non-oblivious.
 */
struct Attack {
    AttackKind kind = AttackKind::uniform;
    Vertex n = 0;
    std::uint64_t seed = 0;
    bool oblivious = true;
    VertexList vertices;  // sorted ascending

    bool contains(Vertex v) const;
    std::size_t size() const { return vertices.size(); }
};

/**
 * Oblivious generator.  size must lie in [0, n].  multiblock splits size
 * into `blocks` runs (default 4, clamped to size) placed disjointly at
 * random.  periodic ignores the seed.  kind == custom or remark_middle is
 * rejected here.
 */
Attack generate_attack(AttackKind kind, Vertex n, Vertex size, std::uint64_t seed,
                       unsigned blocks = 4);

/** Wraps an explicit vertex list (sorted or not; duplicates rejected). */
Attack custom_attack(Vertex n, VertexList vertices);

/**
 * For each level i of the spanner removes the conn(M) members of P_i whose
 * values lie closest to n/2 (ties toward the smaller value).  Splits the
 * residual graph into left and right halves.
 */
Attack remark_middle_attack(const Spanner1D& s);

/** O(log) membership on the sorted list. */
bool attack_contains(const VertexList& vertices, Vertex v);

}  // namespace relspan
