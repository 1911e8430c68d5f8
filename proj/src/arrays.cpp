#include "pmqhur/arrays.hpp"

#include <algorithm>

namespace pmqhur {

bool is_nondegenerate(const ArrayPQ& ua, const TruncatedCompletion& tc) {
    const ClassId one = tc.unit_class();
    for (int i = 1; i <= ua.p(); ++i) {
        bool hit = false;
        for (int j = 0; j <= ua.q() + 1 && !hit; ++j) hit = ua.at(i, j) != one;
        if (!hit) return false;
    }
    for (int j = 1; j <= ua.q(); ++j) {
        bool hit = false;
        for (int i = 0; i <= ua.p() + 1 && !hit; ++i) hit = ua.at(i, j) != one;
        if (!hit) return false;
    }
    return true;
}

bool is_admissible(const ArrayPQ& ua, const TruncatedCompletion& tc) {
    const ClassId one = tc.unit_class();
    for (int i = 0; i <= ua.p() + 1; ++i) {
        for (int j = 0; j <= ua.q() + 1; ++j) {
            ClassId v = ua.at(i, j);
            if (!tc.cls(v).in_q) return false;
            if (v != one && (i == 0 || i == ua.p() + 1 || j == 0 || j == ua.q() + 1))
                return false;
        }
    }
    return true;
}

ArrayPQ face_h(const ArrayPQ& ua, int i, const TruncatedCompletion& tc) {
    ArrayPQ out(ua.p() - 1, ua.q(), tc.unit_class());
    for (int j = 0; j <= ua.q() + 1; ++j) {
        for (int ii = 0; ii < i; ++ii) out.set(ii, j, ua.at(ii, j));
        ClassId below = tc.unit_class();
        for (int jj = 0; jj < j; ++jj) below = tc.product(below, ua.at(i + 1, jj));
        out.set(i, j, tc.product(tc.conj(ua.at(i, j), below), ua.at(i + 1, j)));
        for (int ii = i + 1; ii <= ua.p(); ++ii) out.set(ii, j, ua.at(ii + 1, j));
    }
    return out;
}

ArrayPQ face_v(const ArrayPQ& ua, int j, const TruncatedCompletion& tc) {
    ArrayPQ out(ua.p(), ua.q() - 1, tc.unit_class());
    for (int i = 0; i <= ua.p() + 1; ++i) {
        for (int jj = 0; jj < j; ++jj) out.set(i, jj, ua.at(i, jj));
        out.set(i, j, tc.product(ua.at(i, j), ua.at(i, j + 1)));
        for (int jj = j + 1; jj <= ua.q(); ++jj) out.set(i, jj, ua.at(i, jj + 1));
    }
    return out;
}

ArrayPQ degeneracy_h(const ArrayPQ& ua, int i, const TruncatedCompletion& tc) {
    ArrayPQ out(ua.p() + 1, ua.q(), tc.unit_class());
    for (int j = 0; j <= ua.q() + 1; ++j) {
        for (int ii = 0; ii <= i; ++ii) out.set(ii, j, ua.at(ii, j));
        for (int ii = i + 1; ii <= ua.p() + 1; ++ii) out.set(ii + 1, j, ua.at(ii, j));
    }
    return out;
}

ArrayPQ degeneracy_v(const ArrayPQ& ua, int j, const TruncatedCompletion& tc) {
    ArrayPQ out(ua.p(), ua.q() + 1, tc.unit_class());
    for (int i = 0; i <= ua.p() + 1; ++i) {
        for (int jj = 0; jj <= j; ++jj) out.set(i, jj, ua.at(i, jj));
        for (int jj = j + 1; jj <= ua.q() + 1; ++jj) out.set(i, jj + 1, ua.at(i, jj));
    }
    return out;
}

ClassId total_product(const ArrayPQ& ua, const TruncatedCompletion& tc) {
    ClassId acc = tc.unit_class();
    for (int i = 0; i <= ua.p() + 1; ++i)
        for (int j = 0; j <= ua.q() + 1; ++j)
            acc = tc.product(acc, ua.at(i, j));
    return acc;
}

size_t CellSet::total_cells() const {
    size_t n = 0;
    for (const auto& [pq, list] : cells) n += list.size();
    return n;
}

int CellSet::max_total_degree() const {
    int n = -1;
    for (const auto& [pq, list] : cells)
        if (!list.empty()) n = std::max(n, pq.first + pq.second);
    return n;
}

int CellSet::find(const ArrayPQ& ua) const {
    auto it = cells.find({ua.p(), ua.q()});
    if (it == cells.end()) return -1;
    auto pos = std::lower_bound(it->second.begin(), it->second.end(), ua);
    if (pos == it->second.end() || !(*pos == ua)) return -1;
    return static_cast<int>(pos - it->second.begin());
}

namespace {

// Fill grid positions from `pos` onwards with classes of norm within budget;
// norm 0 entries are the unit and are skipped (already filled).
void fill_positions(const TruncatedCompletion& tc, ArrayPQ& grid, size_t pos,
                    const std::vector<std::pair<int, int>>& positions, int budget,
                    const std::vector<ClassId>& nonunit_classes, ClassId target,
                    std::vector<ArrayPQ>& out) {
    if (pos == positions.size()) {
        if (is_nondegenerate(grid, tc) && total_product(grid, tc) == target)
            out.push_back(grid);
        return;
    }
    auto [i, j] = positions[pos];
    fill_positions(tc, grid, pos + 1, positions, budget, nonunit_classes, target, out);
    for (ClassId c : nonunit_classes) {
        if (tc.cls(c).norm > budget) continue;
        grid.set(i, j, c);
        fill_positions(tc, grid, pos + 1, positions, budget - tc.cls(c).norm,
                       nonunit_classes, target, out);
        grid.set(i, j, tc.unit_class());
    }
}

} // namespace

CellSet enumerate_cells(const PmqSpec& spec, const TruncatedCompletion& tc, ClassId a) {
    ClassificationReport cls = classify(spec);
    if (!cls.locally_finite)
        throw NormUnavailable("cell enumeration requires a locally finite PMQ");
    if (!cls.augmented)
        throw NormUnavailable("cell enumeration requires an augmented PMQ");
    if (tc.cls(a).norm > tc.bound())
        throw TruncationOverflow("completion bound is below the component norm");

    const int h = tc.cls(a).norm;
    std::vector<ClassId> nonunit_classes;
    for (ClassId c = 0; c < tc.size(); ++c)
        if (c != tc.unit_class() && tc.cls(c).norm <= h) nonunit_classes.push_back(c);

    CellSet set;
    set.component = a;
    for (int p = 0; p <= h; ++p) {
        for (int q = 0; q <= h; ++q) {
            std::vector<std::pair<int, int>> positions;
            for (int i = 0; i <= p + 1; ++i)
                for (int j = 0; j <= q + 1; ++j) positions.emplace_back(i, j);
            ArrayPQ grid(p, q, tc.unit_class());
            std::vector<ArrayPQ> found;
            fill_positions(tc, grid, 0, positions, h, nonunit_classes, a, found);
            if (!found.empty()) {
                std::sort(found.begin(), found.end());
                std::vector<char> flags(found.size());
                for (size_t k = 0; k < found.size(); ++k)
                    flags[k] = is_admissible(found[k], tc) ? 0 : 1;
                set.cells[{p, q}] = std::move(found);
                set.nadm[{p, q}] = std::move(flags);
            }
        }
    }
    return set;
}

} // namespace pmqhur
