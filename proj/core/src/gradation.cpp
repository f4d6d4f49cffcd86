#include "relspan/gradation.hpp"

namespace relspan {

Gradation build_gradation(Vertex n, std::uint64_t seed) {
    require(n >= 1, "gradation: n must be >= 1");

    Gradation g;
    g.n = n;
    g.n_padded = static_cast<Vertex>(ceil_pow2(n));
    g.height = floor_log2(g.n_padded);
    g.seed = seed;
    g.level_of.assign(g.n_padded, 0);

    // winners[t] = value held by node t of the current level
    std::vector<Vertex> winners(g.n_padded);
    for (Vertex v = 1; v <= g.n_padded; ++v) winners[v - 1] = v;

    std::uint64_t width = g.n_padded;
    for (int lvl = 1; lvl <= g.height; ++lvl) {
        width >>= 1;
        for (std::uint64_t t = 0; t < width; ++t) {
            const Vertex w = tournament_coin(seed, lvl, t) == 0 ? winners[2 * t]
                                                                : winners[2 * t + 1];
            winners[t] = w;
            g.level_of[w - 1] = static_cast<std::uint8_t>(lvl);
        }
    }
    return g;
}

VertexList Gradation::members(int i) const {
    VertexList out;
    out.reserve(n_padded >> i);
    for (Vertex v = 1; v <= n; ++v)
        if (level_of[v - 1] >= i) out.push_back(v);
    return out;
}

VertexList Gradation::members_padded(int i) const {
    VertexList out;
    out.reserve(n_padded >> i);
    for (Vertex v = 1; v <= n_padded; ++v)
        if (level_of[v - 1] >= i) out.push_back(v);
    return out;
}

}  // namespace relspan
