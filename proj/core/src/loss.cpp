#include "relspan/loss.hpp"

#include <algorithm>
#include <bit>
#include <cstddef>
#include <queue>

namespace relspan {
namespace {

constexpr int kExactLimit = 40;
constexpr std::uint64_t kNodeBudget = 4'000'000;

struct PairGraph {
    std::vector<Vertex> label;
    std::vector<std::vector<int>> adj;
};

PairGraph build_graph(const std::vector<std::pair<Vertex, Vertex>>& pairs) {
    PairGraph g;
    g.label.reserve(pairs.size() * 2);
    for (const auto& [x, y] : pairs) {
        require(x != y, "min_extension: pair with equal endpoints");
        g.label.push_back(x);
        g.label.push_back(y);
    }
    std::sort(g.label.begin(), g.label.end());
    g.label.erase(std::unique(g.label.begin(), g.label.end()), g.label.end());

    auto id = [&](Vertex v) {
        return static_cast<int>(std::lower_bound(g.label.begin(), g.label.end(), v) -
                                g.label.begin());
    };
    g.adj.resize(g.label.size());
    for (const auto& [x, y] : pairs) {
        const int a = id(x), b = id(y);
        g.adj[a].push_back(b);
        g.adj[b].push_back(a);
    }
    for (auto& list : g.adj) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    return g;
}

// exact solver over one component of at most kExactLimit vertices, adjacency
// kept as bitmasks
struct BitCover {
    std::vector<std::uint64_t> nbr;
    std::uint64_t budget = kNodeBudget;
    bool exhausted = false;
    int best = 0;
    std::uint64_t best_mask = 0;

    static std::uint64_t bit(int v) { return 1ull << v; }

    int matching_bound(std::uint64_t alive) const {
        std::uint64_t avail = alive;
        int m = 0;
        while (avail) {
            const int v = std::countr_zero(avail);
            avail &= avail - 1;
            const std::uint64_t cand = nbr[v] & avail;
            if (cand) {
                avail &= ~(cand & -cand);
                ++m;
            }
        }
        return m;
    }

    void search(std::uint64_t alive, int cnt, std::uint64_t chosen) {
        if (exhausted) return;
        if (budget == 0) {
            exhausted = true;
            return;
        }
        --budget;

        for (;;) {
            int pivot = -1, pivot_deg = 0;
            std::uint64_t scan = alive;
            bool reduced = false;
            while (scan) {
                const int v = std::countr_zero(scan);
                scan &= scan - 1;
                const std::uint64_t nv = nbr[v] & alive;
                const int d = std::popcount(nv);
                if (d == 0) {
                    alive &= ~bit(v);
                    continue;
                }
                if (d == 1) {
                    const int w = std::countr_zero(nv);
                    chosen |= bit(w);
                    ++cnt;
                    alive &= ~(bit(v) | bit(w));
                    if (cnt >= best) return;
                    reduced = true;
                    break;
                }
                if (d > pivot_deg) {
                    pivot_deg = d;
                    pivot = v;
                }
            }
            if (reduced) continue;
            if (pivot < 0) {
                if (cnt < best) {
                    best = cnt;
                    best_mask = chosen;
                }
                return;
            }
            if (cnt + std::max(1, matching_bound(alive)) >= best) return;
            search(alive & ~bit(pivot), cnt + 1, chosen | bit(pivot));
            const std::uint64_t nv = nbr[pivot] & alive;
            search(alive & ~(nv | bit(pivot)), cnt + std::popcount(nv), chosen | nv);
            return;
        }
    }
};

struct ComponentBounds {
    std::uint64_t lower = 0;
    std::uint64_t upper = 0;
    bool exact = true;
    std::vector<int> cover;
};

ComponentBounds solve_exact(const std::vector<int>& verts,
                            const std::vector<std::vector<int>>& adj,
                            const std::vector<std::uint8_t>& alive) {
    const int C = static_cast<int>(verts.size());
    auto lid = [&](int v) {
        return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
    };
    BitCover bc;
    bc.nbr.assign(C, 0);
    for (int i = 0; i < C; ++i) {
        for (int w : adj[verts[i]])
            if (alive[w]) bc.nbr[i] |= BitCover::bit(lid(w));
    }
    const std::uint64_t all = C == 64 ? ~0ull : (1ull << C) - 1;
    bc.best = C;
    bc.best_mask = all;
    bc.search(all, 0, 0);

    ComponentBounds out;
    out.upper = static_cast<std::uint64_t>(bc.best);
    for (int i = 0; i < C; ++i)
        if (bc.best_mask & BitCover::bit(i)) out.cover.push_back(verts[i]);
    if (bc.exhausted) {
        BitCover probe;
        probe.nbr = bc.nbr;
        out.lower = static_cast<std::uint64_t>(probe.matching_bound(all));
        out.exact = false;
    } else {
        out.lower = out.upper;
    }
    return out;
}

ComponentBounds solve_bounds(const std::vector<int>& verts,
                             const std::vector<std::vector<int>>& adj,
                             const std::vector<std::uint8_t>& alive) {
    std::vector<std::uint8_t> in_comp(adj.size(), 0);
    for (int v : verts) in_comp[v] = 1;
    auto local_degree = [&](int v) {
        int d = 0;
        for (int w : adj[v])
            if (alive[w] && in_comp[w]) ++d;
        return d;
    };

    // matching lower bound: greedy maximal matching over several vertex
    // orders, keeping the largest
    std::vector<std::vector<int>> orders;
    orders.push_back(verts);
    orders.push_back({verts.rbegin(), verts.rend()});
    {
        std::vector<int> by_deg = verts;
        std::stable_sort(by_deg.begin(), by_deg.end(),
                         [&](int a, int b) { return local_degree(a) > local_degree(b); });
        orders.push_back(by_deg);
        std::reverse(by_deg.begin(), by_deg.end());
        orders.push_back(by_deg);
    }
    for (std::uint64_t salt = 1; salt <= 4; ++salt) {
        std::vector<int> shuffled = verts;
        for (std::size_t i = shuffled.size(); i > 1; --i)
            std::swap(shuffled[i - 1], shuffled[mix64(salt, i) % i]);
        orders.push_back(std::move(shuffled));
    }

    std::uint64_t best_matching = 0;
    std::vector<int> best_pairs;
    std::vector<std::uint8_t> matched(adj.size(), 0);
    for (const auto& order : orders) {
        std::fill(matched.begin(), matched.end(), 0);
        std::uint64_t m = 0;
        std::vector<int> pairs_flat;
        for (int v : order) {
            if (matched[v]) continue;
            for (int w : adj[v]) {
                if (!alive[w] || !in_comp[w] || matched[w]) continue;
                matched[v] = matched[w] = 1;
                pairs_flat.push_back(v);
                pairs_flat.push_back(w);
                ++m;
                break;
            }
        }
        if (m > best_matching) {
            best_matching = m;
            best_pairs = std::move(pairs_flat);
        }
    }

    // greedy cover upper bound: repeatedly take the highest-degree vertex
    std::vector<int> deg(adj.size(), 0);
    std::priority_queue<std::pair<int, int>> pq;
    for (int v : verts) {
        deg[v] = local_degree(v);
        pq.emplace(deg[v], -v);
    }
    std::vector<std::uint8_t> covered(adj.size(), 0);
    std::vector<int> greedy_cover;
    while (!pq.empty()) {
        const auto [d, neg] = pq.top();
        pq.pop();
        const int v = -neg;
        if (covered[v] || d != deg[v]) continue;
        if (d == 0) break;
        covered[v] = 1;
        greedy_cover.push_back(v);
        for (int w : adj[v]) {
            if (!alive[w] || !in_comp[w] || covered[w]) continue;
            if (--deg[w] > 0) pq.emplace(deg[w], -w);
        }
    }

    ComponentBounds out;
    out.exact = false;
    out.lower = best_matching;
    if (greedy_cover.size() <= best_pairs.size()) {
        out.upper = greedy_cover.size();
        out.cover = std::move(greedy_cover);
    } else {
        out.upper = best_pairs.size();
        out.cover = std::move(best_pairs);
    }
    if (out.lower == out.upper) out.exact = true;
    return out;
}

}  // namespace

ExtensionResult min_extension(const std::vector<std::pair<Vertex, Vertex>>& pairs) {
    ExtensionResult out;
    if (pairs.empty()) return out;

    PairGraph g = build_graph(pairs);
    const int V = static_cast<int>(g.label.size());
    std::vector<std::uint8_t> alive(V, 1);
    std::vector<int> deg(V);
    std::vector<int> forced;

    // degree kernel: isolated vertices vanish, a pendant vertex forces its
    // neighbor into the cover
    std::vector<int> work;
    for (int v = 0; v < V; ++v) {
        deg[v] = static_cast<int>(g.adj[v].size());
        if (deg[v] <= 1) work.push_back(v);
    }
    auto drop = [&](int v) {
        alive[v] = 0;
        for (int w : g.adj[v]) {
            if (alive[w] && --deg[w] <= 1) work.push_back(w);
        }
    };
    while (!work.empty()) {
        const int v = work.back();
        work.pop_back();
        if (!alive[v] || deg[v] > 1) continue;
        if (deg[v] == 0) {
            alive[v] = 0;
            continue;
        }
        int w = -1;
        for (int u : g.adj[v])
            if (alive[u]) {
                w = u;
                break;
            }
        alive[v] = 0;
        forced.push_back(w);
        drop(w);
    }

    // remaining components, each solved independently
    std::vector<std::uint8_t> visited(V, 0);
    std::uint64_t lower = forced.size(), upper = forced.size();
    bool exact = true;
    VertexList witness;
    for (int w : forced) witness.push_back(g.label[w]);

    for (int root = 0; root < V; ++root) {
        if (!alive[root] || visited[root]) continue;
        std::vector<int> comp{root};
        visited[root] = 1;
        for (std::size_t k = 0; k < comp.size(); ++k) {
            for (int w : g.adj[comp[k]]) {
                if (alive[w] && !visited[w]) {
                    visited[w] = 1;
                    comp.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        const ComponentBounds cb = comp.size() <= kExactLimit
                                       ? solve_exact(comp, g.adj, alive)
                                       : solve_bounds(comp, g.adj, alive);
        lower += cb.lower;
        upper += cb.upper;
        exact = exact && cb.exact;
        for (int v : cb.cover) witness.push_back(g.label[v]);
    }

    std::sort(witness.begin(), witness.end());
    out.lower = lower;
    out.upper = upper;
    out.exact = exact;
    out.witness = std::move(witness);
    return out;
}

std::pair<double, double> loss_rate(std::uint64_t attack_size, const ExtensionResult& ext) {
    if (attack_size == 0) throw invalid_input("loss undefined for empty attack");
    const double b = static_cast<double>(attack_size);
    return {static_cast<double>(ext.lower) / b, static_cast<double>(ext.upper) / b};
}

LossReport assess_loss_1d(const Spanner1D& s, const Attack& attack) {
    LossReport r;
    r.attack_size = attack.vertices.size();
    const auto pairs = damaged_pairs_1d(s, attack.vertices);
    r.bad_pairs = pairs.size();
    ExtensionResult ext = min_extension(pairs);
    r.extension_lower = ext.lower;
    r.extension_upper = ext.upper;
    r.exact = ext.exact;
    const auto [lo, hi] = loss_rate(r.attack_size, ext);
    r.loss_lower = lo;
    r.loss_upper = hi;
    r.variant = s.params.delta.has_value() ? "probabilistic" : "expectation";
    r.stairway_bad = bad_points_1d(s, attack.vertices, BadnessMode::proof_witness).size();
    r.witness = std::move(ext.witness);
    return r;
}

}  // namespace relspan
