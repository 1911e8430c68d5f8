#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <variant>

#include "pmqhur/arrays.hpp"
#include "pmqhur/pmq.hpp"

namespace pmqhur {

using Rat = boost::multiprecision::cpp_rational;

// A labeled point of a configuration in the closed unit square. Fine points
// carry completion classes (the refined monodromy), coarse points carry
// group elements and sit on sites.
struct FineLabel {
    ClassId cls;
    bool operator==(const FineLabel&) const = default;
    auto operator<=>(const FineLabel&) const = default;
};
struct CoarseLabel {
    ElemId g;
    bool operator==(const CoarseLabel&) const = default;
    auto operator<=>(const CoarseLabel&) const = default;
};

struct LabeledPoint {
    Rat x;
    Rat y;
    std::variant<FineLabel, CoarseLabel> label;

    bool fine() const { return std::holds_alternative<FineLabel>(label); }
    bool operator==(const LabeledPoint&) const = default;
};

struct Configuration {
    std::vector<LabeledPoint> points;
    std::vector<std::pair<Rat, Rat>> sites;

    bool operator==(const Configuration&) const = default;
    // Points ordered by (x, y); the product order for monodromies.
    std::vector<size_t> reading_order() const;
};

// Total monodromy in G: ordered product over points sorted by (x, y);
// fine labels pass through e letterwise.
ElemId omega(const Configuration& c, const PairSpec& pair, const TruncatedCompletion& tc);

// Refined total monodromy in the completion; all points must be fine.
ClassId omega_hat(const Configuration& c, const TruncatedCompletion& tc);

// The cell of the array stratification containing a fine configuration:
// the array of grid monodromies plus the interior grid coordinates.
struct CellLocation {
    ArrayPQ ua;
    std::vector<Rat> us; // length p, interior x coordinates
    std::vector<Rat> ut; // length q, interior y coordinates

    CellLocation() : ua(0, 0, 0) {}
    CellLocation(ArrayPQ a, std::vector<Rat> s, std::vector<Rat> t)
        : ua(std::move(a)), us(std::move(s)), ut(std::move(t)) {}
    bool operator==(const CellLocation&) const = default;
};

CellLocation cell_of(const Configuration& c, const TruncatedCompletion& tc);

// Realizes a cell location as a configuration: repeated or boundary
// coordinates are collapsed through the face maps first, then the surviving
// support is placed on the grid.
Configuration upsilon(const CellLocation& loc, const TruncatedCompletion& tc);

// PL collision move: reassign the distinct interior coordinates of c to
// weakly monotone targets and collapse whatever meets. Functorial in the
// targets.
Configuration collide(const Configuration& c, const std::vector<Rat>& us_targets,
                      const std::vector<Rat>& ut_targets, const TruncatedCompletion& tc);

// Global conjugation: fine labels letterwise through r(g), coarse labels by
// g^-1 h g. omega is equivariant.
Configuration conj_global(const Configuration& c, ElemId g, const PairSpec& pair,
                          const TruncatedCompletion& tc);

// Left/right multiplication on the label of the unique leftmost (rightmost)
// coarse point.
Configuration act_left(const Configuration& c, ElemId g, const PairSpec& pair);
Configuration act_right(const Configuration& c, ElemId g, const PairSpec& pair);

// Forgetting inert points: fine points whose label is the unit class.
Configuration reduce(const Configuration& c, const TruncatedCompletion& tc);
bool is_reduced(const Configuration& c, const TruncatedCompletion& tc);

// An adapted rectilinear covering: open axis-aligned rectangles, one base
// point each, with pairwise disjoint closed x-intervals.
struct RectCovering {
    struct Rect {
        Rat x0, x1, y0, y1;
        bool contains(const Rat& x, const Rat& y) const {
            return x0 < x && x < x1 && y0 < y && y < y1;
        }
    };
    std::vector<Rect> rects;
};

// Normal neighbourhood membership at desk scale: cand lies in the
// neighbourhood of base determined by cov iff the block products over the
// rectangles reproduce the base monodromies.
bool neighborhood_contains(const Configuration& base, const RectCovering& cov,
                           const Configuration& cand, const PairSpec& pair,
                           const TruncatedCompletion& tc);

} // namespace pmqhur
