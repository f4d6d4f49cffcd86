#include "relspan/spanner1d.hpp"

#include <algorithm>
#include <cmath>

namespace relspan {

std::uint64_t connection_range(int i, double eps_step) {
    return static_cast<std::uint64_t>(std::ceil(std::exp2(0.5 * i) / eps_step));
}

Params1D derive_params(Vertex n, double rho, std::optional<double> delta, double c_const) {
    require(n >= 1, "derive_params: n must be >= 1");
    require(rho > 0.0 && rho < 0.5, "derive_params: rho must lie in (0, 1/2)");
    require(c_const >= 1.0, "derive_params: c_const must be >= 1");
    if (delta) require(*delta > 0.0 && *delta < 1.0, "derive_params: delta must lie in (0,1)");

    Params1D p;
    p.rho = rho;
    p.delta = delta;
    p.c_const = c_const;
    p.sp = 1.0 - rho / 8.0;

    const double log_term =
        delta ? std::log(1.0 / rho) + std::log(1.0 / *delta) : std::log(1.0 / rho);
    p.eps_step = rho / (c_const * log_term);

    // smallest M with n_padded / 2^M <= 2^{M/2} / eps_step; always reachable
    // within [0, log2(n_padded)] because eps_step < 1 <= sqrt(n_padded)
    const auto n_padded = static_cast<double>(ceil_pow2(n));
    const int height = floor_log2(ceil_pow2(n));
    int M = 0;
    while (M < height && n_padded / std::exp2(M) > std::exp2(0.5 * M) / p.eps_step) ++M;
    p.M = M;
    p.degenerate = (M == 0);
    return p;
}

Spanner1D build_1d(Vertex n, double rho, std::optional<double> delta, double c_const,
                   std::uint64_t seed) {
    Spanner1D s;
    s.n = n;
    s.seed = seed;
    s.params = derive_params(n, rho, delta, c_const);
    s.gradation = build_gradation(n, mix64(seed, seed_tag::build));
    s.levels.resize(s.params.M + 1);
    for (int i = 0; i <= s.params.M; ++i) {
        s.levels[i].i = i;
        s.levels[i].conn = connection_range(i, s.params.eps_step);
        s.levels[i].members = s.gradation.members(i);
    }
    return s;
}

std::optional<std::uint64_t> Spanner1D::Level::rank(Vertex v) const {
    const auto it = std::lower_bound(members.begin(), members.end(), v);
    if (it == members.end() || *it != v) return std::nullopt;
    return static_cast<std::uint64_t>(it - members.begin());
}

std::uint64_t Spanner1D::Level::edge_count() const {
    const std::uint64_t m = members.size();
    if (m < 2) return 0;
    const std::uint64_t c = conn;
    if (c >= m - 1) return m * (m - 1) / 2;
    return c * m - c * (c + 1) / 2;
}

bool Spanner1D::has_edge(Vertex u, Vertex v) const {
    if (u == v || u < 1 || v < 1 || u > n || v > n) return false;
    for (const Level& lv : levels) {
        if (!gradation.in_level(u, lv.i) || !gradation.in_level(v, lv.i)) break;
        const auto ru = lv.rank(u), rv = lv.rank(v);
        const std::uint64_t lo = std::min(*ru, *rv), hi = std::max(*ru, *rv);
        if (hi - lo <= lv.conn) return true;
    }
    return false;
}

VertexList Spanner1D::forward_neighbors(Vertex u) const {
    VertexList out;
    for (const Level& lv : levels) {
        if (!gradation.in_level(u, lv.i)) break;
        const std::uint64_t r = *lv.rank(u);
        const std::uint64_t hi = std::min<std::uint64_t>(r + lv.conn, lv.members.size() - 1);
        for (std::uint64_t k = r + 1; k <= hi; ++k) out.push_back(lv.members[k]);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::uint64_t> Spanner1D::level_edge_counts() const {
    std::vector<std::uint64_t> out;
    out.reserve(levels.size());
    for (const Level& lv : levels) out.push_back(lv.edge_count());
    return out;
}

std::uint64_t Spanner1D::edge_count() const {
    std::uint64_t total = 0;
    for (const Level& lv : levels) total += lv.edge_count();
    return total;
}

std::vector<std::pair<Vertex, Vertex>> Spanner1D::enumerate_edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (const Level& lv : levels) {
        const std::uint64_t m = lv.members.size();
        for (std::uint64_t r = 0; r + 1 < m; ++r) {
            const std::uint64_t hi = std::min(r + lv.conn, m - 1);
            for (std::uint64_t k = r + 1; k <= hi; ++k)
                out.emplace_back(lv.members[r], lv.members[k]);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool SpannerUnion::has_edge(Vertex u, Vertex v) const {
    if (u == v) return false;
    const auto e = std::minmax(u, v);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(e.first, e.second));
}

SpannerUnion boost_union(const std::vector<const Spanner1D*>& parts) {
    require(!parts.empty(), "boost_union: need at least one spanner");
    SpannerUnion u;
    u.n = parts.front()->n;
    u.copies = parts.size();
    for (const Spanner1D* s : parts) {
        require(s != nullptr && s->n == u.n, "boost_union: mismatched vertex sets");
        auto e = s->enumerate_edges();
        u.edges.insert(u.edges.end(), e.begin(), e.end());
    }
    std::sort(u.edges.begin(), u.edges.end());
    u.edges.erase(std::unique(u.edges.begin(), u.edges.end()), u.edges.end());
    return u;
}

}  // namespace relspan
