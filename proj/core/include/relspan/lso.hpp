#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "relspan/common.hpp"

namespace relspan {

// A point of [0,1)^d. Comparators quantize coordinates to fixed point, ties
// between quantized values fall back to the raw doubles.
using Point = std::vector<double>;

struct OrderingDescriptor {
    std::uint32_t shift;    // diagonal shift index j, offset j/shifts per axis
    std::uint32_t phase;    // length of the short top digit block
    std::uint64_t pattern;  // 0 identity, then zigzag paths and their reversals
};

// Family of locality-sensitive total orders on [0,1)^d. Members are never
// stored; every ordering is the triple (shift, phase, pattern) decoded
// arithmetically from its index.
//
// An ordering reads the shifted fixed-point digits of a point top down in
// blocks of block_bits digits per axis (the first block is shortened to
// `phase` digits). Each block of two points yields a pair of subcell labels,
// and the first differing pair is ranked by the pattern: label order for the
// identity, position along a Hamiltonian zigzag path otherwise. Every label
// pair is adjacent in exactly one zigzag and one reversed zigzag, which is
// what the locality property rests on.
struct OrderingFamily {
    double varsigma = 0;
    int dim = 0;
    int shifts = 0;          // D, smallest odd integer above dim
    int block_bits = 0;      // E digits per axis and block
    int frac_bits = 53;      // fixed-point fractional digits per axis
    std::uint64_t subcells = 0;  // 2^(dim*block_bits) labels per block
    std::uint64_t patterns = 0;  // subcells + 1

    std::uint64_t count() const {
        return static_cast<std::uint64_t>(shifts) * block_bits * patterns;
    }
    OrderingDescriptor descriptor(std::uint64_t sigma) const;
    std::uint64_t index_of(const OrderingDescriptor& od) const;
    // count divided by varsigma^-dim * ceil(log2 varsigma^-1)
    double measured_c_lso() const;
};

OrderingFamily build_orderings(double varsigma, int dim);

// Strict comparison of distinct points under ordering sigma; returns a
// negative value, zero never, or a positive value. Throws invalid_input on
// identical points.
int compare(const OrderingFamily& fam, std::uint64_t sigma, std::span<const double> p,
            std::span<const double> q);

inline bool less(const OrderingFamily& fam, std::uint64_t sigma, std::span<const double> p,
                 std::span<const double> q) {
    return compare(fam, sigma, p, q) < 0;
}

// Orderings that can certify the locality property for the ordered pair
// (p, q): per (shift, phase) the zigzag whose path joins the first differing
// subcell labels with p preceding q, plus the identity when the labels are
// numerically adjacent in that direction. Sorted ascending.
std::vector<std::uint64_t> candidate_orderings(const OrderingFamily& fam,
                                               std::span<const double> p,
                                               std::span<const double> q);

struct LsoWitness {
    std::uint64_t sigma = 0;
    Point z;
};

// Searches the family for an ordering placing p before q such that every
// probe point strictly between them lies within varsigma * |pq| of p or of
// q, split by the pivot z. Probes are segment samples, local grids around
// both endpoints, and the caller's extra points.
std::optional<LsoWitness> verify_lso_property(const OrderingFamily& fam, const Point& p,
                                              const Point& q,
                                              const std::vector<Point>& extra_probes = {});

}  // namespace relspan
