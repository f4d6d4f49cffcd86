#include "relspan/resilience1d.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <unordered_map>

namespace relspan {
namespace {

struct Ctx {
    const Spanner1D& s;
    std::vector<std::uint8_t> in_b;

    Ctx(const Spanner1D& sp, const VertexList& attacked) : s(sp), in_b(sp.n, 0) {
        for (Vertex v : attacked) {
            require(v >= 1 && v <= sp.n, "attack vertex out of range");
            in_b[v - 1] = 1;
        }
    }
    bool attacked(Vertex v) const { return in_b[v - 1] != 0; }
};

std::uint64_t up_aligned(std::uint64_t v, std::uint64_t block) {
    return (v + block - 1) / block * block;
}
std::uint64_t down_block_start(std::uint64_t v, std::uint64_t block) {
    return (v - 1) / block * block + 1;
}

bool usable_at(const Ctx& c, Vertex p, int lvl, Direction dir) {
    const auto& L = c.s.levels[lvl];
    const auto r = L.rank(p);
    if (!r) return false;
    const std::uint64_t span = dir == Direction::right ? (L.members.size() - 1) - *r : *r;
    return span <= L.conn;
}

std::optional<Vertex> extreme_surviving(const Ctx& c, int lvl, Vertex lo, Vertex hi,
                                        Direction dir) {
    const auto& mem = c.s.levels[lvl].members;
    auto first = std::lower_bound(mem.begin(), mem.end(), lo);
    auto last = std::upper_bound(first, mem.end(), hi);
    if (dir == Direction::right) {
        for (auto it = first; it != last; ++it)
            if (!c.attacked(*it)) return *it;
    } else {
        while (last != first) {
            --last;
            if (!c.attacked(*last)) return *last;
        }
    }
    return std::nullopt;
}

std::optional<Stairway> witness_stairway(const Ctx& c, Vertex v, Direction dir) {
    const double eps = c.s.params.eps_step;
    const auto n = static_cast<double>(c.s.n);

    Stairway st;
    st.dir = dir;
    st.points = {v};
    st.top_level = 0;

    for (int i = 1; i <= c.s.params.M; ++i) {
        const double delta = std::floor(std::exp2(0.5 * (i - 1)) / (2.0 * eps));
        if (delta < 1.0) return std::nullopt;
        const double block = std::exp2(i);
        Vertex lo, hi;
        if (dir == Direction::right) {
            const double end = static_cast<double>(up_aligned(v, 1ull << i)) + (delta - 1.0) * block;
            if (end > n) break;  // interval no longer fits; the climb stops here
            lo = v;
            hi = static_cast<Vertex>(end);
        } else {
            const double start =
                static_cast<double>(down_block_start(v, 1ull << i)) - (delta - 1.0) * block;
            if (start < 1.0) break;
            lo = static_cast<Vertex>(start);
            hi = v;
        }
        const auto next = extreme_surviving(c, i, lo, hi, dir);
        if (!next) return std::nullopt;
        const Vertex prev = st.points.back();
        const bool forward_ok = dir == Direction::right ? *next >= prev : *next <= prev;
        if (!forward_ok) return std::nullopt;
        if (*next != prev && !c.s.has_edge(prev, *next)) return std::nullopt;
        st.points.push_back(*next);
        st.top_level = i;
    }

    if (!usable_at(c, st.points.back(), st.top_level, dir)) return std::nullopt;
    return st;
}

// exhaustive search: reachable P_i members level by level, parents kept for
// reconstruction; usability is monotone in rank so only the extreme member
// of each layer needs the clique test
std::optional<Stairway> exhaustive_stairway(const Ctx& c, Vertex v, Direction dir) {
    const int M = c.s.params.M;
    const bool right = dir == Direction::right;

    std::vector<VertexList> layer(M + 1);
    std::vector<std::unordered_map<Vertex, Vertex>> parent(M + 1);
    layer[0] = {v};

    std::vector<std::uint8_t> seen(c.s.n + 1, 0);

    for (int i = 0; i <= M; ++i) {
        if (layer[i].empty()) break;
        const Vertex extreme = right ? *std::max_element(layer[i].begin(), layer[i].end())
                                     : *std::min_element(layer[i].begin(), layer[i].end());
        if (usable_at(c, extreme, i, dir)) {
            Stairway st;
            st.dir = dir;
            st.top_level = i;
            st.points.assign(i + 1, 0);
            Vertex cur = extreme;
            for (int k = i; k >= 0; --k) {
                st.points[k] = cur;
                if (k > 0) cur = parent[k][cur];
            }
            return st;
        }
        if (i == M) break;

        auto offer = [&](Vertex y, Vertex from) {
            if (seen[y] || c.attacked(y) || !c.s.gradation.in_level(y, i + 1)) return;
            seen[y] = 1;
            layer[i + 1].push_back(y);
            parent[i + 1][y] = from;
        };
        for (Vertex x : layer[i]) {
            if (c.s.gradation.in_level(x, i + 1)) offer(x, x);
            for (const Spanner1D::Level& lv : c.s.levels) {
                if (!c.s.gradation.in_level(x, lv.i)) break;
                const std::uint64_t r = *lv.rank(x);
                if (right) {
                    const std::uint64_t hi =
                        std::min<std::uint64_t>(r + lv.conn, lv.members.size() - 1);
                    for (std::uint64_t k = r + 1; k <= hi; ++k) offer(lv.members[k], x);
                } else {
                    const std::uint64_t lo = r > lv.conn ? r - lv.conn : 0;
                    for (std::uint64_t k = lo; k < r; ++k) offer(lv.members[k], x);
                }
            }
        }
        for (Vertex y : layer[i + 1]) seen[y] = 0;
    }
    return std::nullopt;
}

std::optional<std::vector<Vertex>> bfs_path(const Ctx& c, Vertex u, Vertex v) {
    std::vector<Vertex> parent(c.s.n + 1, 0);
    std::deque<Vertex> queue{u};
    parent[u] = u;
    while (!queue.empty()) {
        const Vertex x = queue.front();
        queue.pop_front();
        if (x == v) break;
        for (Vertex y : c.s.forward_neighbors(x)) {
            if (y > v || c.attacked(y) || parent[y] != 0) continue;
            parent[y] = x;
            queue.push_back(y);
        }
    }
    if (parent[v] == 0) return std::nullopt;
    std::vector<Vertex> path;
    for (Vertex x = v; x != u; x = parent[x]) path.push_back(x);
    path.push_back(u);
    std::reverse(path.begin(), path.end());
    return path;
}

bool valid_monotone_path(const Ctx& c, const std::vector<Vertex>& path, Vertex u, Vertex v) {
    if (path.empty() || path.front() != u || path.back() != v) return false;
    for (std::size_t k = 0; k < path.size(); ++k) {
        if (c.attacked(path[k])) return false;
        if (k > 0) {
            if (path[k] <= path[k - 1]) return false;
            if (!c.s.has_edge(path[k - 1], path[k])) return false;
        }
    }
    return true;
}

// concatenates the forward stairway of u with the reversed backward stairway
// of v at their first rank crossing, then drops repeated points
std::optional<std::vector<Vertex>> splice_path(const Ctx& c, const Stairway& a,
                                               const Stairway& b, Vertex u, Vertex v) {
    const std::size_t j = std::min(a.points.size(), b.points.size());
    std::size_t cross = j;
    for (std::size_t i = 0; i < j; ++i) {
        if (a.points[i] >= b.points[i]) {
            cross = i;
            break;
        }
    }

    std::vector<Vertex> raw;
    auto append_left_tail = [&](std::size_t from) {
        for (std::size_t k = from + 1; k-- > 0;) raw.push_back(b.points[k]);
    };
    if (cross < j) {
        // a crosses b at index cross >= 1
        if (a.points[cross] < b.points[cross - 1]) {
            raw.assign(a.points.begin(), a.points.begin() + cross + 1);
            append_left_tail(cross - 1);
        } else {
            raw.assign(a.points.begin(), a.points.begin() + cross);
            append_left_tail(cross - 1);
        }
    } else {
        raw.assign(a.points.begin(), a.points.begin() + j);
        append_left_tail(j - 1);
    }

    std::vector<Vertex> path;
    for (Vertex x : raw)
        if (path.empty() || path.back() != x) path.push_back(x);
    if (!valid_monotone_path(c, path, u, v)) return std::nullopt;
    return path;
}

}  // namespace

std::optional<Stairway> find_stairway(const Spanner1D& s, const VertexList& attacked,
                                      Vertex v, Direction dir, BadnessMode mode) {
    require(v >= 1 && v <= s.n, "find_stairway: vertex out of range");
    Ctx c(s, attacked);
    require(!c.attacked(v), "find_stairway: vertex is attacked");
    auto st = witness_stairway(c, v, dir);
    if (st || mode == BadnessMode::proof_witness) return st;
    return exhaustive_stairway(c, v, dir);
}

bool is_bad(const Spanner1D& s, const VertexList& attacked, Vertex v, BadnessMode mode) {
    require(v >= 1 && v <= s.n, "is_bad: vertex out of range");
    Ctx c(s, attacked);
    if (c.attacked(v)) return true;
    for (const Direction dir : {Direction::right, Direction::left}) {
        if (witness_stairway(c, v, dir)) continue;
        if (mode == BadnessMode::proof_witness) return true;
        if (!exhaustive_stairway(c, v, dir)) return true;
    }
    return false;
}

VertexList bad_points_1d(const Spanner1D& s, const VertexList& attacked, BadnessMode mode) {
    Ctx c(s, attacked);
    VertexList bad;
    for (Vertex v = 1; v <= s.n; ++v) {
        if (c.attacked(v)) continue;
        for (const Direction dir : {Direction::right, Direction::left}) {
            if (witness_stairway(c, v, dir)) continue;
            if (mode == BadnessMode::definitional && exhaustive_stairway(c, v, dir)) continue;
            bad.push_back(v);
            break;
        }
    }
    return bad;
}

std::optional<std::vector<Vertex>> monotone_path(const Spanner1D& s,
                                                 const VertexList& attacked,
                                                 Vertex u, Vertex v) {
    require(u >= 1 && u <= s.n && v >= 1 && v <= s.n && u != v,
            "monotone_path: need two distinct vertices in range");
    if (u > v) std::swap(u, v);
    Ctx c(s, attacked);
    require(!c.attacked(u) && !c.attacked(v), "monotone_path: endpoint is attacked");

    auto right = witness_stairway(c, u, Direction::right);
    if (!right) right = exhaustive_stairway(c, u, Direction::right);
    auto left = witness_stairway(c, v, Direction::left);
    if (!left) left = exhaustive_stairway(c, v, Direction::left);

    if (right && left) {
        if (auto path = splice_path(c, *right, *left, u, v)) return path;
    }
    return bfs_path(c, u, v);
}

std::vector<std::pair<Vertex, Vertex>> damaged_pairs_1d(const Spanner1D& s,
                                                        const VertexList& attacked) {
    require(s.n <= (1u << 14), "damaged_pairs_1d: instance too large");
    Ctx c(s, attacked);

    VertexList survivors;
    survivors.reserve(s.n);
    std::vector<std::uint32_t> idx(s.n + 1, 0);
    for (Vertex v = 1; v <= s.n; ++v) {
        if (!c.attacked(v)) {
            idx[v] = static_cast<std::uint32_t>(survivors.size());
            survivors.push_back(v);
        }
    }
    const std::size_t S = survivors.size();
    std::vector<std::pair<Vertex, Vertex>> damaged;
    if (S < 2) return damaged;

    // transitive closure over the forward DAG, one bitset row per survivor
    const std::size_t W = (S + 63) / 64;
    std::vector<std::uint64_t> reach(S * W, 0);
    for (std::size_t si = S; si-- > 0;) {
        const Vertex x = survivors[si];
        std::uint64_t* row = &reach[si * W];
        row[si / 64] |= 1ull << (si % 64);
        for (Vertex y : s.forward_neighbors(x)) {
            if (c.attacked(y)) continue;
            const std::uint64_t* src = &reach[idx[y] * W];
            for (std::size_t w = si / 64; w < W; ++w) row[w] |= src[w];
        }
    }

    for (std::size_t si = 0; si + 1 < S; ++si) {
        const std::uint64_t* row = &reach[si * W];
        for (std::size_t w = si / 64; w < W; ++w) {
            std::uint64_t missing = ~row[w];
            if (w == si / 64) missing &= ~((2ull << (si % 64)) - 1);  // only indices > si
            if (w == W - 1 && S % 64 != 0) missing &= (1ull << (S % 64)) - 1;
            while (missing) {
                const int bit = std::countr_zero(missing);
                missing &= missing - 1;
                damaged.emplace_back(survivors[si], survivors[w * 64 + bit]);
            }
        }
    }
    return damaged;
}

}  // namespace relspan
