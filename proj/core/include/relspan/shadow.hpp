#pragma once

#include <cstdint>
#include <limits>

#include "relspan/common.hpp"

namespace relspan {

/**
 * Exact fraction in (0,1] used for density thresholds.  All comparisons are
 * done by cross-multiplication in 128-bit integers, so threshold tests never
 * suffer float rounding.  from_double() converts a floating threshold to its
 * exact dyadic value; halved(k) divides by 2^k without loss.
 */
struct Fraction {
    std::int64_t num = 1;
    std::int64_t den = 1;
    int shift = 0;  // value = num / (den * 2^shift)

    static Fraction of(std::int64_t num, std::int64_t den);
    static Fraction from_double(double x);

    Fraction halved(int k) const {
        Fraction f = *this;
        f.shift += k;
        return f;
    }

    double value() const {
        double v = static_cast<double>(num) / static_cast<double>(den);
        for (int i = 0; i < shift; ++i) v /= 2.0;
        return v;
    }

    /** count/len >= fraction, exactly. */
    bool leq_density(std::uint64_t count, std::uint64_t len) const {
        using i128 = __int128;
        const i128 lhs = static_cast<i128>(count) * den << shift;
        const i128 rhs = static_cast<i128>(num) * len;
        return lhs >= rhs;
    }
};

/**
 * One-sided and combined alpha-shadows of an attacked set B on [1..n].
 *
 * i lies in the left shadow iff some window [i..j], j >= i, contains a
 * >= alpha fraction of attacked positions; the right shadow mirrors with
 * windows [h..i].  Computed in O(n) by reformulating the window test as a
 * suffix-maximum (resp. prefix-minimum) over g(j) = den*prefix(j) - num*j.
 */
struct ShadowProfile {
    Fraction alpha;
    Vertex n = 0;
    std::vector<std::uint8_t> left;      // left[v-1]
    std::vector<std::uint8_t> right;     // right[v-1]

    bool in_left(Vertex v) const { return left[v - 1] != 0; }
    bool in_right(Vertex v) const { return right[v - 1] != 0; }
    bool in_combined(Vertex v) const { return in_left(v) || in_right(v); }

    VertexList combined() const;
    std::size_t combined_size() const;
};

/** attacked must be sorted ascending within [1..n]; alpha in (0,1]. */
ShadowProfile compute_shadow(const VertexList& attacked, Fraction alpha, Vertex n);

inline constexpr int kNoDepth = std::numeric_limits<int>::max();

/**
 * Per-vertex elimination depth: depth(v) = min { k >= 0 : v in the combined
 * (sp/2^k)-shadow of B }.  Depths are capped at ceil(log2(n)) + 1; past that
 * point the threshold drops below 1/n and every vertex is shadowed whenever
 * B is nonempty.  Vertices never shadowed (only possible for empty B) get
 * kNoDepth.
 */
struct RoundClassification {
    Fraction sp;
    Vertex n = 0;
    int max_rounds = 0;
    std::vector<int> depth;  // depth[v-1]

    int depth_of(Vertex v) const { return depth[v - 1]; }
};

RoundClassification classify_rounds(const VertexList& attacked, Fraction sp, Vertex n);

}  // namespace relspan
