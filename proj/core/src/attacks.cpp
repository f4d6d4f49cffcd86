#include "relspan/attacks.hpp"

#include <algorithm>

namespace relspan {

const char* to_string(AttackKind kind) {
    switch (kind) {
        case AttackKind::uniform: return "uniform";
        case AttackKind::block: return "block";
        case AttackKind::multiblock: return "multiblock";
        case AttackKind::periodic: return "periodic";
        case AttackKind::custom: return "custom";
        case AttackKind::remark_middle: return "remark-middle";
    }
    return "?";
}

AttackKind attack_kind_from_string(const std::string& s) {
    if (s == "uniform") return AttackKind::uniform;
    if (s == "block") return AttackKind::block;
    if (s == "multiblock") return AttackKind::multiblock;
    if (s == "periodic") return AttackKind::periodic;
    if (s == "custom") return AttackKind::custom;
    if (s == "remark-middle") return AttackKind::remark_middle;
    throw invalid_input("unknown attack kind: " + s);
}

bool attack_contains(const VertexList& vertices, Vertex v) {
    return std::binary_search(vertices.begin(), vertices.end(), v);
}

bool Attack::contains(Vertex v) const { return attack_contains(vertices, v); }

namespace {

// counter-mode draws; identical on every platform, unlike <random> distributions
struct Draw {
    std::uint64_t key;
    std::uint64_t ctr = 0;
    std::uint64_t next() { return mix64(key, ctr++); }
    std::uint64_t below(std::uint64_t bound) { return bound ? next() % bound : 0; }
};

VertexList uniform_subset(Vertex n, Vertex k, Draw& draw) {
    std::vector<Vertex> perm(n);
    for (Vertex v = 1; v <= n; ++v) perm[v - 1] = v;
    for (Vertex i = 0; i < k; ++i) {
        const auto j = i + draw.below(n - i);
        std::swap(perm[i], perm[j]);
    }
    VertexList out(perm.begin(), perm.begin() + k);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

Attack generate_attack(AttackKind kind, Vertex n, Vertex size, std::uint64_t seed,
                       unsigned blocks) {
    require(n >= 1, "attack: n must be >= 1");
    require(size <= n, "attack: size must be <= n");
    require(kind != AttackKind::custom && kind != AttackKind::remark_middle,
            "attack: kind has a dedicated constructor");

    Attack a;
    a.kind = kind;
    a.n = n;
    a.seed = seed;
    Draw draw{mix64(seed, seed_tag::attack)};

    switch (kind) {
        case AttackKind::uniform:
            a.vertices = uniform_subset(n, size, draw);
            break;
        case AttackKind::block: {
            if (size > 0) {
                const Vertex start = 1 + static_cast<Vertex>(draw.below(n - size + 1));
                for (Vertex v = start; v < start + size; ++v) a.vertices.push_back(v);
            }
            break;
        }
        case AttackKind::multiblock: {
            if (size > 0) {
                Vertex b = std::max(1u, std::min<unsigned>(blocks, size));
                b = std::min<Vertex>(b, n - size + 1);  // leave room for separating gaps
                // run lengths as equal as possible
                std::vector<Vertex> len(b, size / b);
                for (Vertex i = 0; i < size % b; ++i) ++len[i];
                // spread the leftover free space over b+1 gaps; inner gaps >= 1
                Vertex slack = n - size - (b - 1);
                std::vector<Vertex> extra(b + 1, 0);
                for (Vertex i = 0; i < slack; ++i) ++extra[draw.below(b + 1)];
                Vertex pos = 1 + extra[0];
                for (Vertex i = 0; i < b; ++i) {
                    for (Vertex v = pos; v < pos + len[i]; ++v) a.vertices.push_back(v);
                    pos += len[i] + 1 + extra[i + 1];
                }
            }
            break;
        }
        case AttackKind::periodic: {
            if (size > 0) {
                const Vertex step = (n + size - 1) / size;
                for (Vertex v = step; v <= n; v += step) a.vertices.push_back(v);
            }
            break;
        }
        default: break;
    }
    return a;
}

Attack custom_attack(Vertex n, VertexList vertices) {
    require(n >= 1, "attack: n must be >= 1");
    std::sort(vertices.begin(), vertices.end());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        require(vertices[i] >= 1 && vertices[i] <= n, "attack: vertex out of range");
        require(i == 0 || vertices[i] != vertices[i - 1], "attack: duplicate vertex");
    }
    Attack a;
    a.kind = AttackKind::custom;
    a.n = n;
    a.vertices = std::move(vertices);
    return a;
}

Attack remark_middle_attack(const Spanner1D& s) {
    Attack a;
    a.kind = AttackKind::remark_middle;
    a.n = s.n;
    a.oblivious = false;

    const std::uint64_t top_conn = s.levels.back().conn;
    VertexList all;
    for (const Spanner1D::Level& lv : s.levels) {
        // the conn(M) members of P_i closest to n/2; distance on 2v - n avoids halves
        std::vector<std::pair<std::uint64_t, Vertex>> by_dist;
        by_dist.reserve(lv.members.size());
        for (Vertex v : lv.members) {
            const std::int64_t d = 2 * static_cast<std::int64_t>(v) - static_cast<std::int64_t>(s.n);
            by_dist.emplace_back(static_cast<std::uint64_t>(d < 0 ? -d : d), v);
        }
        std::sort(by_dist.begin(), by_dist.end());
        const std::size_t take = std::min<std::size_t>(top_conn, by_dist.size());
        for (std::size_t k = 0; k < take; ++k) all.push_back(by_dist[k].second);
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    a.vertices = std::move(all);
    return a;
}

}  // namespace relspan
