#include "relspan/spannerhd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>

namespace relspan {
namespace {

constexpr std::uint64_t kEnumerableFamily = 4096;
constexpr double kRelTol = 1e-9;

double point_dist(const Point& a, const Point& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

std::vector<std::uint8_t> attack_bitmap(Vertex n, const VertexList& attack) {
    std::vector<std::uint8_t> mark(n + 1, 0);
    for (Vertex v : attack) {
        require(v >= 1 && v <= n, "attack vertex out of range");
        mark[v] = 1;
    }
    return mark;
}

struct HdPathBuilder {
    const SpannerHD& s;
    const std::vector<VertexList>& bad;
    std::vector<std::vector<std::uint8_t>> bad_mark;
    PathOutcome& out;
    double base_dist = 0;
    bool endpoint_blocked = false;

    std::optional<VertexList> connect(Vertex x, Vertex y, int round) {
        if (x == y) return VertexList{x};
        const int depth = s.params.rounds - round;
        const double spread = std::pow(2.0 * s.family.varsigma, depth) * base_dist;
        if (s.distance(x, y) > spread * (1.0 + kRelTol))
            out.defects.push_back("active pair wider than the geometry bound");
        if (bad_mark[round - 1][x] || bad_mark[round - 1][y]) {
            endpoint_blocked = true;
            return std::nullopt;
        }

        const auto witness =
            verify_lso_property(s.family, s.normalized[x - 1], s.normalized[y - 1],
                                s.normalized);
        if (!witness) {
            out.defects.push_back("no ordering witness for active pair");
            return std::nullopt;
        }
        const SigmaCopies& sc = s.sigma_copies(witness->sigma);
        VertexList rank_attack;
        rank_attack.reserve(bad[round - 1].size());
        for (Vertex v : bad[round - 1]) rank_attack.push_back(sc.rank[v]);
        std::sort(rank_attack.begin(), rank_attack.end());

        const auto mp =
            monotone_path(sc.copies[round - 1], rank_attack, sc.rank[x], sc.rank[y]);
        if (!mp) {
            out.defects.push_back("no monotone path in the selected copy");
            return std::nullopt;
        }
        VertexList chain;
        chain.reserve(mp->size());
        for (Vertex r : *mp) chain.push_back(sc.order[r - 1]);
        if (chain.front() != x) std::reverse(chain.begin(), chain.end());

        if (round == 1) {
            const std::uint64_t cap = 2ull * floor_log2(ceil_pow2(s.n));
            if (chain.size() - 1 > cap)
                out.defects.push_back("final splice exceeds the edge cap");
            return chain;
        }

        const double rad = s.family.varsigma * s.distance(x, y) * (1.0 + kRelTol);
        std::size_t split = 0;
        for (std::size_t k = 0; k < chain.size(); ++k)
            if (s.distance(chain[k], x) <= rad) split = k;
        split = std::min(split, chain.size() - 2);
        bool clean = true;
        for (std::size_t k = 0; k < chain.size(); ++k) {
            const double dx = s.distance(chain[k], x);
            const double dy = s.distance(chain[k], y);
            if (k <= split ? dx > rad : dy > rad) clean = false;
        }
        if (!clean) out.defects.push_back("crossing split not clean");

        const auto left = connect(x, chain[split], round - 1);
        if (!left) return std::nullopt;
        const auto right = connect(chain[split + 1], y, round - 1);
        if (!right) return std::nullopt;
        VertexList joined = *left;
        joined.insert(joined.end(), right->begin(), right->end());
        return joined;
    }
};

}  // namespace

const SigmaCopies& SpannerHD::sigma_copies(std::uint64_t sigma) const {
    std::lock_guard<std::mutex> lock(*cache_mutex_);
    auto it = cache_.find(sigma);
    if (it != cache_.end()) return it->second;

    SigmaCopies sc;
    sc.order.resize(n);
    for (Vertex v = 1; v <= n; ++v) sc.order[v - 1] = v;
    std::sort(sc.order.begin(), sc.order.end(), [&](Vertex a, Vertex b) {
        return less(family, sigma, normalized[a - 1], normalized[b - 1]);
    });
    sc.rank.assign(n + 1, 0);
    for (Vertex pos = 0; pos < n; ++pos) sc.rank[sc.order[pos]] = pos + 1;
    sc.copies.reserve(params.rounds);
    for (int i = 1; i <= params.rounds; ++i) {
        const std::uint64_t copy_seed = mix64(seed ^ seed_tag::copy_hd, sigma,
                                              static_cast<std::uint64_t>(i));
        sc.copies.push_back(build_1d(n, params.rho_prime, params.delta_prime,
                                     params.c_const, copy_seed));
    }
    return cache_.emplace(sigma, std::move(sc)).first->second;
}

bool SpannerHD::has_union_edge(Vertex u, Vertex v) const {
    require(u >= 1 && u <= n && v >= 1 && v <= n, "vertex out of range");
    if (u == v) return false;
    if (copies_degenerate) return true;
    require(family.count() <= kEnumerableFamily,
            "family too large for explicit edge queries");
    for (std::uint64_t sigma = 0; sigma < family.count(); ++sigma) {
        const SigmaCopies& sc = sigma_copies(sigma);
        for (const Spanner1D& copy : sc.copies)
            if (copy.has_edge(sc.rank[u], sc.rank[v])) return true;
    }
    return false;
}

std::vector<std::pair<Vertex, Vertex>> SpannerHD::union_edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    if (copies_degenerate) {
        require(n <= 4096, "complete union too large to enumerate");
        for (Vertex u = 1; u <= n; ++u)
            for (Vertex v = u + 1; v <= n; ++v) out.emplace_back(u, v);
        return out;
    }
    require(family.count() <= kEnumerableFamily,
            "family too large for explicit edge queries");
    std::set<std::pair<Vertex, Vertex>> acc;
    for (std::uint64_t sigma = 0; sigma < family.count(); ++sigma) {
        const SigmaCopies& sc = sigma_copies(sigma);
        for (const Spanner1D& copy : sc.copies) {
            for (const auto& [ra, rb] : copy.enumerate_edges()) {
                Vertex a = sc.order[ra - 1], b = sc.order[rb - 1];
                if (a > b) std::swap(a, b);
                acc.emplace(a, b);
            }
        }
    }
    out.assign(acc.begin(), acc.end());
    return out;
}

std::uint64_t SpannerHD::union_edge_count() const {
    if (copies_degenerate)
        return static_cast<std::uint64_t>(n) * (n - 1) / 2;
    return union_edges().size();
}

double SpannerHD::union_edge_bound() const {
    const double per_copy = 7.0 * static_cast<double>(n) / copy_template.eps_step;
    return per_copy * static_cast<double>(family.count()) * params.rounds;
}

double SpannerHD::distance(Vertex u, Vertex v) const {
    return point_dist(points[u - 1], points[v - 1]);
}

SpannerHD build_hd(const std::vector<Point>& pts, double eps, double rho,
                   std::optional<double> delta, double c_const, std::uint64_t seed,
                   std::optional<OrderingFamily> family_override) {
    require(pts.size() >= 2, "need at least two points");
    require(pts.size() <= 0xffffffffull, "too many points");
    const int d = static_cast<int>(pts[0].size());
    require(d >= 1, "points need at least one coordinate");
    for (const Point& p : pts)
        require(static_cast<int>(p.size()) == d, "points of mixed dimension");
    {
        auto sorted = pts;
        std::sort(sorted.begin(), sorted.end());
        require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
                "duplicate points");
    }
    require(eps > 0.0 && eps < 1.0, "eps must lie in (0,1)");
    require(rho > 0.0 && rho < 1.0, "rho must lie in (0,1)");
    if (delta) require(*delta > 0.0 && *delta < 1.0, "delta must lie in (0,1)");

    SpannerHD s;
    s.points = pts;
    s.n = static_cast<Vertex>(pts.size());
    s.seed = seed;

    std::vector<double> mins(d, std::numeric_limits<double>::infinity());
    double extent = 0;
    for (const Point& p : pts)
        for (int k = 0; k < d; ++k) mins[k] = std::min(mins[k], p[k]);
    for (const Point& p : pts)
        for (int k = 0; k < d; ++k) extent = std::max(extent, p[k] - mins[k]);
    require(extent > 0.0, "degenerate point set");
    s.norm_scale = extent * (1.0 + kRelTol);
    s.norm_offset = mins;
    s.normalized.reserve(pts.size());
    for (const Point& p : pts) {
        Point q(d);
        for (int k = 0; k < d; ++k) q[k] = (p[k] - mins[k]) / s.norm_scale;
        s.normalized.push_back(std::move(q));
    }

    if (family_override) {
        require(family_override->dim == d, "family dimension mismatch");
        s.family = *family_override;
    } else {
        s.family = build_orderings(eps / 32.0, d);
    }

    ParamsHD& hp = s.params;
    hp.eps = eps;
    hp.rho = rho;
    hp.delta = delta;
    hp.c_const = c_const;
    hp.varsigma = s.family.varsigma;
    hp.rounds = std::max(
        1, static_cast<int>(std::ceil(std::log2(std::log2(static_cast<double>(s.n))))));
    hp.family_count = s.family.count();
    hp.rho_prime = rho / (3.0 * static_cast<double>(hp.family_count) * hp.rounds);
    if (delta)
        hp.delta_prime = *delta / (static_cast<double>(hp.family_count) * hp.rounds);

    s.copy_template = derive_params(s.n, hp.rho_prime, hp.delta_prime, c_const);
    s.copies_degenerate = s.copy_template.degenerate;
    return s;
}

std::vector<VertexList> bad_sequence(const SpannerHD& s, const VertexList& attack,
                                     BadnessMode mode) {
    auto mark = attack_bitmap(s.n, attack);
    VertexList base;
    for (Vertex v = 1; v <= s.n; ++v)
        if (mark[v]) base.push_back(v);

    std::vector<VertexList> out{base};
    if (s.copies_degenerate) {
        for (int i = 1; i <= s.params.rounds; ++i) out.push_back(base);
        return out;
    }
    require(s.family.count() <= kEnumerableFamily,
            "family too large for explicit bad-set computation");
    for (int i = 1; i <= s.params.rounds; ++i) {
        auto next = mark;
        for (std::uint64_t sigma = 0; sigma < s.family.count(); ++sigma) {
            const SigmaCopies& sc = s.sigma_copies(sigma);
            VertexList rank_attack;
            rank_attack.reserve(out.back().size());
            for (Vertex v : out.back()) rank_attack.push_back(sc.rank[v]);
            std::sort(rank_attack.begin(), rank_attack.end());
            for (Vertex r : bad_points_1d(sc.copies[i - 1], rank_attack, mode))
                next[sc.order[r - 1]] = 1;
        }
        VertexList level;
        for (Vertex v = 1; v <= s.n; ++v)
            if (next[v]) level.push_back(v);
        out.push_back(std::move(level));
        mark = std::move(next);
    }
    return out;
}

PathOutcome path_hd(const SpannerHD& s, const VertexList& attack, Vertex p, Vertex q) {
    require(p >= 1 && p <= s.n && q >= 1 && q <= s.n && p != q,
            "path_hd: need two distinct vertices in range");
    const auto mark = attack_bitmap(s.n, attack);
    require(!mark[p] && !mark[q], "path_hd: endpoint is attacked");

    PathOutcome out;
    if (s.copies_degenerate || s.family.count() <= kEnumerableFamily) {
        if (s.has_union_edge(p, q)) {
            out.path = VertexList{p, q};
            out.length = s.distance(p, q);
            return out;
        }
    }

    const auto bad = bad_sequence(s, attack);
    HdPathBuilder builder{s, bad, {}, out};
    builder.bad_mark.reserve(bad.size());
    for (const VertexList& level : bad) builder.bad_mark.push_back(attack_bitmap(s.n, level));
    builder.base_dist = s.distance(p, q);

    auto chain = builder.connect(p, q, s.params.rounds);
    if (chain) {
        VertexList path;
        for (Vertex v : *chain)
            if (path.empty() || path.back() != v) path.push_back(v);
        double len = 0;
        for (std::size_t k = 1; k < path.size(); ++k) len += s.distance(path[k - 1], path[k]);
        out.path = std::move(path);
        out.length = len;
        return out;
    }
    const auto& final_bad = bad.back();
    const bool explained = builder.endpoint_blocked ||
                           std::binary_search(final_bad.begin(), final_bad.end(), p) ||
                           std::binary_search(final_bad.begin(), final_bad.end(), q);
    if (!explained && out.defects.empty())
        out.defects.push_back("path absent with endpoints outside the bad sets");
    return out;
}

std::vector<std::pair<Vertex, Vertex>> damaged_pairs_hd(
    const SpannerHD& s, const VertexList& attack, std::vector<std::string>* defects) {
    const auto mark = attack_bitmap(s.n, attack);
    std::vector<std::pair<Vertex, Vertex>> damaged;
    if (s.copies_degenerate) return damaged;

    require(s.family.count() <= kEnumerableFamily,
            "family too large for explicit damage scans");
    std::vector<std::vector<std::pair<Vertex, double>>> adj(s.n + 1);
    for (const auto& [u, v] : s.union_edges()) {
        if (mark[u] || mark[v]) continue;
        const double w = s.distance(u, v);
        adj[u].emplace_back(v, w);
        adj[v].emplace_back(u, w);
    }

    const double stretch_cap = (1.0 + s.params.eps) * (1.0 + kRelTol);
    std::vector<double> dist(s.n + 1);
    using Item = std::pair<double, Vertex>;
    for (Vertex src = 1; src <= s.n; ++src) {
        if (mark[src]) continue;
        std::fill(dist.begin(), dist.end(), std::numeric_limits<double>::infinity());
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        dist[src] = 0;
        heap.emplace(0.0, src);
        while (!heap.empty()) {
            const auto [dcur, u] = heap.top();
            heap.pop();
            if (dcur > dist[u]) continue;
            for (const auto& [v, w] : adj[u]) {
                if (dist[u] + w < dist[v]) {
                    dist[v] = dist[u] + w;
                    heap.emplace(dist[v], v);
                }
            }
        }
        for (Vertex v = src + 1; v <= s.n; ++v) {
            if (mark[v]) continue;
            if (dist[v] > stretch_cap * s.distance(src, v)) damaged.emplace_back(src, v);
        }
    }

    if (defects && !damaged.empty()) {
        const auto final_bad = bad_sequence(s, attack).back();
        for (const auto& [u, v] : damaged) {
            const bool covered = std::binary_search(final_bad.begin(), final_bad.end(), u) ||
                                 std::binary_search(final_bad.begin(), final_bad.end(), v);
            if (!covered)
                defects->push_back("damaged pair with both endpoints outside the bad sets");
        }
    }
    return damaged;
}

}  // namespace relspan
