#pragma once

#include <compare>
#include <map>
#include <vector>

#include "pmqhur/completion.hpp"

namespace pmqhur {

// One bisimplex of the array complex: a (p+2) x (q+2) matrix over the
// truncated completion. Index i = 0..p+1 runs horizontally (x direction),
// j = 0..q+1 vertically; (i,j) in boundary position means i in {0, p+1} or
// j in {0, q+1}.
class ArrayPQ {
public:
    ArrayPQ(int p, int q, ClassId fill)
        : p_(p), q_(q), entries_(static_cast<size_t>(p + 2) * (q + 2), fill) {}

    int p() const { return p_; }
    int q() const { return q_; }
    ClassId at(int i, int j) const { return entries_[idx(i, j)]; }
    void set(int i, int j, ClassId v) { entries_[idx(i, j)] = v; }

    bool operator==(const ArrayPQ& other) const = default;
    auto operator<=>(const ArrayPQ& other) const = default;

private:
    size_t idx(int i, int j) const { return static_cast<size_t>(i) * (q_ + 2) + j; }

    int p_;
    int q_;
    std::vector<ClassId> entries_;
};

// Every interior vertical line (i = 1..p) and horizontal line (j = 1..q)
// must carry a nonunit entry.
bool is_nondegenerate(const ArrayPQ& ua, const TruncatedCompletion& tc);

// All entries realize elements of Q and nonunit entries avoid boundary
// positions.
bool is_admissible(const ArrayPQ& ua, const TruncatedCompletion& tc);

// Horizontal face: merge columns i and i+1; the left entry is conjugated by
// the part of the right column below it:
//   a'_{i,j} = (a_{i,j})^{a_{i+1,0} ... a_{i+1,j-1}} * a_{i+1,j}.
ArrayPQ face_h(const ArrayPQ& ua, int i, const TruncatedCompletion& tc);

// Vertical face: merge rows j and j+1 entrywise, a'_{i,j} = a_{i,j} * a_{i,j+1}.
ArrayPQ face_v(const ArrayPQ& ua, int j, const TruncatedCompletion& tc);

// Insert an all-unit column after column i (row after row j). Sections of the
// adjacent faces: face_h(degeneracy_h(ua, i), i) = face_h(degeneracy_h(ua, i), i+1) = ua.
ArrayPQ degeneracy_h(const ArrayPQ& ua, int i, const TruncatedCompletion& tc);
ArrayPQ degeneracy_v(const ArrayPQ& ua, int j, const TruncatedCompletion& tc);

// Ordered product of all entries: columns left to right, within a column
// bottom to top.
ClassId total_product(const ArrayPQ& ua, const TruncatedCompletion& tc);

// The component of the array complex at a class a: all non-degenerate arrays
// with total product a, graded by bidegree and flagged for admissibility.
struct CellSet {
    ClassId component = -1;
    std::map<std::pair<int, int>, std::vector<ArrayPQ>> cells;
    std::map<std::pair<int, int>, std::vector<char>> nadm; // parallel flags, 1 = non-admissible

    size_t total_cells() const;
    int max_total_degree() const;
    // Locates a cell; returns its index within its bidegree or -1.
    int find(const ArrayPQ& ua) const;
};

CellSet enumerate_cells(const PmqSpec& spec, const TruncatedCompletion& tc, ClassId a);

} // namespace pmqhur
