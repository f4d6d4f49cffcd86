#include "relspan/shadow.hpp"

#include <cmath>
#include <numeric>

namespace relspan {

using i128 = __int128;

Fraction Fraction::of(std::int64_t num, std::int64_t den) {
    require(num > 0 && den > 0 && num <= den, "fraction: need 0 < num <= den");
    const std::int64_t g = std::gcd(num, den);
    return Fraction{num / g, den / g, 0};
}

Fraction Fraction::from_double(double x) {
    require(x > 0.0 && x <= 1.0 && std::isfinite(x), "fraction: need x in (0,1]");
    int e = 0;
    const double f = std::frexp(x, &e);  // x = f * 2^e, f in [0.5, 1)
    const auto mant = static_cast<std::int64_t>(std::ldexp(f, 53));
    Fraction out{mant, 1, 53 - e};
    while (out.shift > 0 && (out.num & 1) == 0) {
        out.num >>= 1;
        --out.shift;
    }
    return out;
}

static void validate_attack_list(const VertexList& attacked, Vertex n) {
    Vertex prev = 0;
    for (Vertex v : attacked) {
        require(v >= 1 && v <= n, "attack vertex out of range");
        require(v > prev, "attack list must be sorted and duplicate-free");
        prev = v;
    }
}

ShadowProfile compute_shadow(const VertexList& attacked, Fraction alpha, Vertex n) {
    require(n >= 1, "shadow: n must be >= 1");
    validate_attack_list(attacked, n);

    ShadowProfile s;
    s.alpha = alpha;
    s.n = n;
    s.left.assign(n, 0);
    s.right.assign(n, 0);

    // g(x) = den2*prefix(x) - num*x for x in [0..n];
    // [i..j] holds a >= alpha fraction of B  <=>  g(j) >= g(i-1).
    const i128 den2 = static_cast<i128>(alpha.den) << alpha.shift;
    const i128 num = alpha.num;
    std::vector<i128> g(n + 1);
    g[0] = 0;
    {
        std::size_t bi = 0;
        std::uint64_t prefix = 0;
        for (Vertex x = 1; x <= n; ++x) {
            if (bi < attacked.size() && attacked[bi] == x) {
                ++prefix;
                ++bi;
            }
            g[x] = den2 * static_cast<i128>(prefix) - num * static_cast<i128>(x);
        }
    }

    // left shadow: exists j >= i with g(j) >= g(i-1)
    i128 suffix_max = g[n];
    for (Vertex i = n; i >= 1; --i) {
        if (g[i] > suffix_max) suffix_max = g[i];
        if (suffix_max >= g[i - 1]) s.left[i - 1] = 1;
    }

    // right shadow: exists h <= i with g(i) >= g(h-1)
    i128 prefix_min = g[0];
    for (Vertex i = 1; i <= n; ++i) {
        if (g[i] >= prefix_min) s.right[i - 1] = 1;
        if (g[i] < prefix_min) prefix_min = g[i];
    }
    return s;
}

VertexList ShadowProfile::combined() const {
    VertexList out;
    for (Vertex v = 1; v <= n; ++v)
        if (in_combined(v)) out.push_back(v);
    return out;
}

std::size_t ShadowProfile::combined_size() const {
    std::size_t c = 0;
    for (Vertex v = 1; v <= n; ++v)
        if (in_combined(v)) ++c;
    return c;
}

RoundClassification classify_rounds(const VertexList& attacked, Fraction sp, Vertex n) {
    require(n >= 1, "classify_rounds: n must be >= 1");
    validate_attack_list(attacked, n);

    RoundClassification rc;
    rc.sp = sp;
    rc.n = n;
    rc.max_rounds = floor_log2(ceil_pow2(n)) + 1;
    rc.depth.assign(n, kNoDepth);
    if (attacked.empty()) return rc;

    std::size_t assigned = 0;
    for (int k = 0; k <= rc.max_rounds && assigned < n; ++k) {
        const ShadowProfile s = compute_shadow(attacked, sp.halved(k), n);
        for (Vertex v = 1; v <= n; ++v) {
            if (rc.depth[v - 1] == kNoDepth && s.in_combined(v)) {
                rc.depth[v - 1] = k;
                ++assigned;
            }
        }
    }
    return rc;
}

}  // namespace relspan
