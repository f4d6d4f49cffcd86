#include "relspan/lso.hpp"

#include <algorithm>
#include <cmath>

namespace relspan {
namespace {

constexpr int kSegmentSamples = 16;
constexpr int kLocalGridReach = 2;

std::uint64_t to_fixed(double x) {
    require(x >= 0.0 && x < 1.0, "point coordinate outside [0,1)");
    return static_cast<std::uint64_t>(x * 9007199254740992.0);  // 2^53
}

std::uint64_t shift_offset(std::uint32_t j, int shifts) {
    return (static_cast<std::uint64_t>(j) << 53) / static_cast<std::uint64_t>(shifts);
}

// digit positions are counted from the top of the 54 digit shifted value;
// positions past the end read as zero
std::uint64_t slice_digits(std::uint64_t shifted, int lo, int hi) {
    const int total = 54;
    const int cut = std::min(hi, total);
    const int len = cut - lo;
    const std::uint64_t bits = (shifted >> (total - cut)) & ((1ull << len) - 1);
    return bits << (hi - cut);
}

std::uint64_t block_label(const std::vector<std::uint64_t>& coords, int lo, int hi) {
    const int len = hi - lo;
    std::uint64_t label = 0;
    for (std::uint64_t c : coords) label = (label << len) | slice_digits(c, lo, hi);
    return label;
}

// position of label v along the zigzag path that starts at r
std::uint64_t zigzag_rank(std::uint64_t m, std::uint64_t r, std::uint64_t v) {
    const std::uint64_t delta = (v + m - r) % m;
    if (delta == 0) return 0;
    if (delta <= m / 2) return 2 * delta - 1;
    return 2 * (m - delta);
}

std::uint64_t pattern_rank(std::uint64_t m, std::uint64_t h, std::uint64_t v) {
    if (h == 0) return v;
    const std::uint64_t half = m / 2;
    if (h <= half) return zigzag_rank(m, h - 1, v);
    return (m - 1) - zigzag_rank(m, h - 1 - half, v);
}

std::vector<std::uint64_t> shifted_coords(std::span<const double> p, std::uint64_t offset) {
    std::vector<std::uint64_t> out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = to_fixed(p[i]) + offset;
    return out;
}

// first block, under the given phase, whose labels differ; nullopt when the
// quantized points coincide
struct BlockDiff {
    std::uint64_t a, b;
};
std::optional<BlockDiff> first_differing_block(const std::vector<std::uint64_t>& pc,
                                               const std::vector<std::uint64_t>& qc,
                                               int phase, int block_bits) {
    const int total = 54;
    int lo = 0;
    while (lo < total) {
        const int hi = (lo == 0 && phase > 0) ? phase : lo + block_bits;
        const std::uint64_t a = block_label(pc, lo, hi);
        const std::uint64_t b = block_label(qc, lo, hi);
        if (a != b) return BlockDiff{a, b};
        lo = hi;
    }
    return std::nullopt;
}

double dist(std::span<const double> p, std::span<const double> q) {
    double s = 0;
    for (std::size_t i = 0; i < p.size(); ++i) s += (p[i] - q[i]) * (p[i] - q[i]);
    return std::sqrt(s);
}

}  // namespace

OrderingDescriptor OrderingFamily::descriptor(std::uint64_t sigma) const {
    require(sigma < count(), "ordering index out of range");
    OrderingDescriptor od;
    od.pattern = sigma % patterns;
    const std::uint64_t rest = sigma / patterns;
    od.phase = static_cast<std::uint32_t>(rest % block_bits);
    od.shift = static_cast<std::uint32_t>(rest / block_bits);
    return od;
}

std::uint64_t OrderingFamily::index_of(const OrderingDescriptor& od) const {
    return (static_cast<std::uint64_t>(od.shift) * block_bits + od.phase) * patterns +
           od.pattern;
}

double OrderingFamily::measured_c_lso() const {
    const double unit =
        std::pow(varsigma, -dim) * std::ceil(std::log2(1.0 / varsigma));
    return static_cast<double>(count()) / unit;
}

OrderingFamily build_orderings(double varsigma, int dim) {
    require(varsigma > 0.0 && varsigma < 1.0, "varsigma must lie in (0,1)");
    require(dim >= 1, "dimension must be positive");
    OrderingFamily fam;
    fam.varsigma = varsigma;
    fam.dim = dim;
    fam.shifts = dim % 2 == 0 ? dim + 1 : dim + 2;
    const double need = 4.0 * (dim + 1) * std::sqrt(static_cast<double>(dim)) / varsigma;
    fam.block_bits = static_cast<int>(std::ceil(std::log2(need)));
    require(dim * fam.block_bits <= 40, "ordering family too large for this varsigma");
    fam.subcells = 1ull << (dim * fam.block_bits);
    fam.patterns = fam.subcells + 1;
    return fam;
}

int compare(const OrderingFamily& fam, std::uint64_t sigma, std::span<const double> p,
            std::span<const double> q) {
    require(p.size() == static_cast<std::size_t>(fam.dim) && q.size() == p.size(),
            "compare: wrong dimension");
    const OrderingDescriptor od = fam.descriptor(sigma);
    const std::uint64_t offset = shift_offset(od.shift, fam.shifts);
    const auto pc = shifted_coords(p, offset);
    const auto qc = shifted_coords(q, offset);
    if (const auto diff = first_differing_block(pc, qc, od.phase, fam.block_bits)) {
        const std::uint64_t ra = pattern_rank(fam.subcells, od.pattern, diff->a);
        const std::uint64_t rb = pattern_rank(fam.subcells, od.pattern, diff->b);
        return ra < rb ? -1 : 1;
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] != q[i]) return p[i] < q[i] ? -1 : 1;
    }
    throw invalid_input("compare: identical points");
}

std::vector<std::uint64_t> candidate_orderings(const OrderingFamily& fam,
                                               std::span<const double> p,
                                               std::span<const double> q) {
    require(p.size() == static_cast<std::size_t>(fam.dim) && q.size() == p.size(),
            "candidate_orderings: wrong dimension");
    const std::uint64_t m = fam.subcells;
    std::vector<std::uint64_t> out;
    for (std::uint32_t j = 0; j < static_cast<std::uint32_t>(fam.shifts); ++j) {
        const std::uint64_t offset = shift_offset(j, fam.shifts);
        const auto pc = shifted_coords(p, offset);
        const auto qc = shifted_coords(q, offset);
        for (std::uint32_t b = 0; b < static_cast<std::uint32_t>(fam.block_bits); ++b) {
            const auto diff = first_differing_block(pc, qc, b, fam.block_bits);
            if (!diff) continue;
            const std::uint64_t r = ((diff->a + diff->b) % m) / 2;
            const std::uint64_t ra = zigzag_rank(m, r, diff->a);
            const std::uint64_t rb = zigzag_rank(m, r, diff->b);
            if (ra + 1 != rb && rb + 1 != ra) continue;
            const std::uint64_t h = ra < rb ? 1 + r : 1 + m / 2 + r;
            out.push_back(fam.index_of({j, b, h}));
            if (diff->b == diff->a + 1) out.push_back(fam.index_of({j, b, 0}));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<LsoWitness> verify_lso_property(const OrderingFamily& fam, const Point& p,
                                              const Point& q,
                                              const std::vector<Point>& extra_probes) {
    require(p.size() == static_cast<std::size_t>(fam.dim) && q.size() == p.size(),
            "verify_lso_property: wrong dimension");
    require(p != q, "verify_lso_property: identical points");
    const int d = fam.dim;
    const double ell = dist(p, q);
    const double radius = fam.varsigma * ell * (1.0 + 1e-9);

    std::vector<Point> probes = extra_probes;
    for (int k = 0; k <= kSegmentSamples; ++k) {
        const double t = static_cast<double>(k) / kSegmentSamples;
        Point x(d);
        for (int i = 0; i < d; ++i) x[i] = p[i] + t * (q[i] - p[i]);
        probes.push_back(std::move(x));
    }
    const double spacing = fam.varsigma * ell / 2.0;
    for (const Point& center : {p, q}) {
        std::vector<int> off(d, -kLocalGridReach);
        for (;;) {
            Point x(d);
            bool ok = true;
            for (int i = 0; i < d; ++i) {
                x[i] = center[i] + off[i] * spacing;
                if (x[i] < 0.0 || x[i] >= 1.0) ok = false;
            }
            if (ok) probes.push_back(std::move(x));
            int axis = 0;
            while (axis < d && ++off[axis] > kLocalGridReach) off[axis++] = -kLocalGridReach;
            if (axis == d) break;
        }
    }
    std::sort(probes.begin(), probes.end());
    probes.erase(std::unique(probes.begin(), probes.end()), probes.end());

    for (std::uint64_t sigma : candidate_orderings(fam, p, q)) {
        if (compare(fam, sigma, p, q) >= 0) continue;
        std::vector<const Point*> between;
        for (const Point& x : probes) {
            if (x == p || x == q) continue;
            if (compare(fam, sigma, p, x) < 0 && compare(fam, sigma, x, q) < 0)
                between.push_back(&x);
        }
        std::sort(between.begin(), between.end(), [&](const Point* a, const Point* b) {
            return compare(fam, sigma, *a, *b) < 0;
        });
        const std::size_t k = between.size();
        std::size_t prefix = 0;
        while (prefix < k && dist(p, *between[prefix]) <= radius) ++prefix;
        std::size_t suffix = 0;
        while (suffix < k && dist(q, *between[k - 1 - suffix]) <= radius) ++suffix;
        if (prefix + suffix >= k) {
            LsoWitness w;
            w.sigma = sigma;
            w.z = prefix == k ? q : *between[prefix];
            return w;
        }
    }
    return std::nullopt;
}

}  // namespace relspan
