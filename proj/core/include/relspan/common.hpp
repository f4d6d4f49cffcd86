#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace relspan {

/** Vertices are 1-based positions on the line [1..n]. */
using Vertex = std::uint32_t;

/** Sorted ascending, no duplicates. */
using VertexList = std::vector<Vertex>;

/** Thrown for malformed parameters, files and queries. */
class invalid_input : public std::invalid_argument {
public:
    explicit invalid_input(const std::string& what) : std::invalid_argument(what) {}
};

inline void require(bool cond, const char* what) {
    if (!cond) throw invalid_input(what);
}

// ---- deterministic 64-bit mixing ----
//
// All randomness in the library is derived by hashing (seed, tags...) with a
// splitmix64-style finalizer.  Results are replayable across platforms and
// independent of evaluation order.

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
    return mix64(mix64(a) ^ (b + 0x9e3779b97f4a7c15ull));
}

inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return mix64(mix64(a, b), c);
}

/** Seed namespaces.  Attack generators and graph builders never share a stream. */
namespace seed_tag {
inline constexpr std::uint64_t build  = 0x42554c4431445f31ull;
inline constexpr std::uint64_t attack = 0x4154544b5f530a31ull;
inline constexpr std::uint64_t copy_hd = 0x48445f434f50590aull;
}  // namespace seed_tag

/** Next power of two >= x (x >= 1). */
inline std::uint64_t ceil_pow2(std::uint64_t x) {
    std::uint64_t p = 1;
    while (p < x) p <<= 1;
    return p;
}

/** floor(log2(x)) for x >= 1. */
inline int floor_log2(std::uint64_t x) {
    int k = 0;
    while (x > 1) { x >>= 1; ++k; }
    return k;
}

}  // namespace relspan
