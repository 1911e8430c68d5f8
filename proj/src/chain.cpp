#include "pmqhur/chain.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <map>

namespace pmqhur {

std::string Ring::name() const {
    switch (kind) {
        case Kind::Integers: return "Z";
        case Kind::Rationals: return "Q";
        case Kind::PrimeField: return "F" + std::to_string(p);
    }
    return "?";
}

Ring ring_from_string(const std::string& text) {
    if (text == "Z") return Ring::Z();
    if (text == "Q") return Ring::Q();
    if (text.size() >= 2 && text[0] == 'F') {
        long p = 0;
        try {
            p = std::stol(text.substr(1));
        } catch (const std::exception&) {
            throw InputError("cannot parse ring '" + text + "'");
        }
        if (p < 2) throw InputError("field modulus must be at least 2");
        for (long d = 2; d * d <= p; ++d)
            if (p % d == 0) throw InputError("field modulus " + std::to_string(p) + " is not prime");
        return Ring::Fp(p);
    }
    throw InputError("unknown ring '" + text + "' (expected Z, Q or F<p>)");
}

SmithResult smith_normal_form(IntMatrix m) {
    using boost::multiprecision::abs;
    using boost::multiprecision::gcd;
    SmithResult result;
    size_t t = 0;
    const size_t n = std::min(m.rows, m.cols);
    while (t < n) {
        // pivot: nonzero entry of minimal absolute value in the trailing block
        size_t pr = m.rows, pc = m.cols;
        for (size_t r = t; r < m.rows; ++r)
            for (size_t c = t; c < m.cols; ++c)
                if (m.at(r, c) != 0 &&
                    (pr == m.rows || abs(m.at(r, c)) < abs(m.at(pr, pc)))) {
                    pr = r;
                    pc = c;
                }
        if (pr == m.rows) break;
        for (size_t c = 0; c < m.cols; ++c) std::swap(m.at(t, c), m.at(pr, c));
        for (size_t r = 0; r < m.rows; ++r) std::swap(m.at(r, t), m.at(r, pc));

        bool clean = true;
        for (size_t r = t + 1; r < m.rows; ++r) {
            if (m.at(r, t) == 0) continue;
            Int q = m.at(r, t) / m.at(t, t);
            for (size_t c = t; c < m.cols; ++c) m.at(r, c) -= q * m.at(t, c);
            if (m.at(r, t) != 0) clean = false;
        }
        for (size_t c = t + 1; c < m.cols; ++c) {
            if (m.at(t, c) == 0) continue;
            Int q = m.at(t, c) / m.at(t, t);
            for (size_t r = t; r < m.rows; ++r) m.at(r, c) -= q * m.at(r, t);
            if (m.at(t, c) != 0) clean = false;
        }
        if (!clean) continue; // smaller remainders appeared; re-pick the pivot

        // pivot must divide the trailing block for the divisibility chain
        bool divides = true;
        for (size_t r = t + 1; r < m.rows && divides; ++r)
            for (size_t c = t + 1; c < m.cols && divides; ++c)
                if (m.at(r, c) % m.at(t, t) != 0) {
                    for (size_t cc = t; cc < m.cols; ++cc) m.at(t, cc) += m.at(r, cc);
                    divides = false;
                }
        if (!divides) continue;
        ++t;
    }
    result.rank = t;
    result.factors.reserve(t);
    for (size_t i = 0; i < t; ++i) {
        Int d = m.at(i, i);
        result.factors.push_back(d < 0 ? Int(-d) : d);
    }
    std::sort(result.factors.begin(), result.factors.end());
    return result;
}

namespace {

long mod_pow(long base, long exp, long p) {
    long acc = 1;
    base %= p;
    if (base < 0) base += p;
    while (exp > 0) {
        if (exp & 1) acc = acc * base % p;
        base = base * base % p;
        exp >>= 1;
    }
    return acc;
}

size_t rank_mod_p(const IntMatrix& m, long p) {
    std::vector<std::vector<long>> a(m.rows, std::vector<long>(m.cols));
    for (size_t r = 0; r < m.rows; ++r)
        for (size_t c = 0; c < m.cols; ++c) {
            Int v = m.at(r, c) % p;
            long w = v.convert_to<long>() % p;
            if (w < 0) w += p;
            a[r][c] = w;
        }
    size_t rank = 0;
    for (size_t c = 0; c < m.cols && rank < m.rows; ++c) {
        size_t pivot = rank;
        while (pivot < m.rows && a[pivot][c] == 0) ++pivot;
        if (pivot == m.rows) continue;
        std::swap(a[rank], a[pivot]);
        long inv = mod_pow(a[rank][c], p - 2, p);
        for (size_t cc = c; cc < m.cols; ++cc) a[rank][cc] = a[rank][cc] * inv % p;
        for (size_t r = 0; r < m.rows; ++r) {
            if (r == rank || a[r][c] == 0) continue;
            long f = a[r][c];
            for (size_t cc = c; cc < m.cols; ++cc) {
                a[r][cc] = (a[r][cc] - f * a[rank][cc]) % p;
                if (a[r][cc] < 0) a[r][cc] += p;
            }
        }
        ++rank;
    }
    return rank;
}

// Fraction-free (Bareiss) elimination for the rational rank.
size_t rank_over_q(IntMatrix m) {
    size_t rank = 0;
    Int prev = 1;
    for (size_t c = 0; c < m.cols && rank < m.rows; ++c) {
        size_t pivot = rank;
        while (pivot < m.rows && m.at(pivot, c) == 0) ++pivot;
        if (pivot == m.rows) continue;
        if (pivot != rank)
            for (size_t cc = 0; cc < m.cols; ++cc) std::swap(m.at(rank, cc), m.at(pivot, cc));
        for (size_t r = rank + 1; r < m.rows; ++r) {
            for (size_t cc = c + 1; cc < m.cols; ++cc)
                m.at(r, cc) = (m.at(rank, c) * m.at(r, cc) - m.at(r, c) * m.at(rank, cc)) / prev;
            m.at(r, c) = 0;
        }
        prev = m.at(rank, c);
        ++rank;
    }
    return rank;
}

} // namespace

size_t matrix_rank(const IntMatrix& m, long p) {
    if (m.rows == 0 || m.cols == 0) return 0;
    return p > 0 ? rank_mod_p(m, p) : rank_over_q(m);
}

namespace {

struct BasisIndex {
    std::vector<std::map<ArrayPQ, size_t>> by_degree;

    explicit BasisIndex(const std::vector<std::vector<ArrayPQ>>& basis) {
        by_degree.resize(basis.size());
        for (size_t n = 0; n < basis.size(); ++n)
            for (size_t k = 0; k < basis[n].size(); ++k) by_degree[n].emplace(basis[n][k], k);
    }
    int find(size_t n, const ArrayPQ& ua) const {
        auto it = by_degree[n].find(ua);
        return it == by_degree[n].end() ? -1 : static_cast<int>(it->second);
    }
};

bool cellset_contains(const CellSet& cells, const ArrayPQ& ua) { return cells.find(ua) >= 0; }

bool cellset_is_nadm(const CellSet& cells, const ArrayPQ& ua) {
    int k = cells.find(ua);
    if (k < 0) return false;
    return cells.nadm.at({ua.p(), ua.q()})[k] != 0;
}

} // namespace

ChainComplexData build_total_complex(const CellSet& cells, bool relative, Ring ring,
                                     const TruncatedCompletion& tc) {
    ChainComplexData cx;
    cx.ring = ring;
    int maxdeg = cells.max_total_degree();
    cx.basis.resize(maxdeg + 1);
    for (const auto& [pq, list] : cells.cells) {
        const auto& flags = cells.nadm.at(pq);
        for (size_t k = 0; k < list.size(); ++k) {
            if (relative && flags[k]) continue;
            cx.basis[pq.first + pq.second].push_back(list[k]);
        }
    }
    for (auto& level : cx.basis) std::sort(level.begin(), level.end());

    BasisIndex index(cx.basis);
    cx.boundary.resize(maxdeg + 1);
    for (int n = 0; n <= maxdeg; ++n) {
        size_t rows = n > 0 ? cx.basis[n - 1].size() : 0;
        cx.boundary[n] = IntMatrix(rows, cx.basis[n].size());
        if (n == 0) continue;
        for (size_t col = 0; col < cx.basis[n].size(); ++col) {
            const ArrayPQ& x = cx.basis[n][col];
            auto add_face = [&](const ArrayPQ& f, int sign) {
                if (!is_nondegenerate(f, tc)) return;
                if (!cellset_contains(cells, f))
                    throw ClosureViolation("face of a basis cell is missing from the cell set");
                if (relative && cellset_is_nadm(cells, f)) return;
                int row = index.find(n - 1, f);
                if (row < 0)
                    throw ClosureViolation("face of a basis cell is missing from the basis");
                cx.boundary[n].at(row, col) += sign;
            };
            for (int i = 0; i <= x.p() && x.p() >= 1; ++i)
                add_face(face_h(x, i, tc), i % 2 == 0 ? 1 : -1);
            int vsign = x.p() % 2 == 0 ? 1 : -1;
            for (int j = 0; j <= x.q() && x.q() >= 1; ++j)
                add_face(face_v(x, j, tc), j % 2 == 0 ? vsign : -vsign);
        }
    }
    return cx;
}

bool HomologyResult::is_zero(size_t n) const {
    if (n >= groups.size()) return true;
    return groups[n].free_rank == 0 && groups[n].torsion.empty();
}

std::optional<int> HomologyResult::concentrated_degree() const {
    std::optional<int> degree;
    for (size_t n = 0; n < groups.size(); ++n) {
        if (is_zero(n)) continue;
        if (degree) return std::nullopt; // supported in more than one degree
        degree = static_cast<int>(n);
    }
    return degree;
}

bool HomologyResult::concentrated_rank_one(int degree) const {
    auto d = concentrated_degree();
    if (!d || *d != degree) return false;
    return groups[degree].free_rank == 1 && groups[degree].torsion.empty();
}

HomologyResult homology(const ChainComplexData& cx) {
    HomologyResult result;
    result.ring = cx.ring;
    const size_t levels = cx.basis.size();
    result.groups.resize(levels);
    for (size_t n = 0; n < levels; ++n) {
        const size_t dim = cx.basis[n].size();
        const IntMatrix& d_n = cx.boundary[n];
        IntMatrix empty(0, 0);
        const IntMatrix& d_up = n + 1 < levels ? cx.boundary[n + 1] : empty;
        if (cx.ring.kind == Ring::Kind::Integers) {
            size_t r0 = smith_normal_form(d_n).rank;
            SmithResult up = smith_normal_form(d_up);
            result.groups[n].free_rank = static_cast<int>(dim - r0 - up.rank);
            for (const Int& d : up.factors)
                if (d > 1) result.groups[n].torsion.push_back(d);
        } else {
            long p = cx.ring.kind == Ring::Kind::PrimeField ? cx.ring.p : 0;
            size_t r0 = matrix_rank(d_n, p);
            size_t r1 = matrix_rank(d_up, p);
            result.groups[n].free_rank = static_cast<int>(dim - r0 - r1);
        }
    }
    return result;
}

namespace {

bool diag_degenerate(const ArrayPQ& x, const TruncatedCompletion& tc) {
    const ClassId one = tc.unit_class();
    for (int k = 0; k + 1 <= x.p(); ++k) {
        bool col_unit = true;
        for (int j = 0; j <= x.q() + 1 && col_unit; ++j) col_unit = x.at(k + 1, j) == one;
        if (!col_unit) continue;
        bool row_unit = true;
        for (int i = 0; i <= x.p() + 1 && row_unit; ++i) row_unit = x.at(i, k + 1) == one;
        if (row_unit) return true;
    }
    return false;
}

void choose(int n, int k, std::vector<int>& acc, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(acc.size()) == k) {
        out.push_back(acc);
        return;
    }
    int start = acc.empty() ? 1 : acc.back() + 1;
    for (int v = start; v <= n - (k - static_cast<int>(acc.size())) + 1; ++v) {
        acc.push_back(v);
        choose(n, k, acc, out);
        acc.pop_back();
    }
}

// All interior-slot subsets of size k within 1..n.
std::vector<std::vector<int>> subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> acc;
    choose(n, k, acc, out);
    return out;
}

} // namespace

HomologyResult diagonal_oracle(const CellSet& cells, bool relative, Ring ring,
                               const TruncatedCompletion& tc, size_t guard) {
    const int nmax = cells.max_total_degree();
    const ClassId one = tc.unit_class();

    // diag_n = all (n,n)-arrays obtained from the cells by inserting unit
    // columns/rows; by uniqueness of the non-degenerate core these are
    // pairwise distinct across cells.
    std::vector<std::vector<ArrayPQ>> diag(nmax + 1);
    size_t count = 0;
    for (const auto& [pq, list] : cells.cells) {
        auto [p, q] = pq;
        for (int n = std::max(p, q); n <= nmax; ++n) {
            auto col_choices = subsets(n, p);
            auto row_choices = subsets(n, q);
            for (const ArrayPQ& cell : list) {
                for (const auto& cols : col_choices) {
                    for (const auto& rows : row_choices) {
                        ArrayPQ x(n, n, one);
                        // slot -> original interior index, 0 for boundary
                        std::vector<int> colmap(n + 2, -1), rowmap(n + 2, -1);
                        colmap[0] = 0;
                        colmap[n + 1] = p + 1;
                        for (int k = 0; k < p; ++k) colmap[cols[k]] = k + 1;
                        rowmap[0] = 0;
                        rowmap[n + 1] = q + 1;
                        for (int k = 0; k < q; ++k) rowmap[rows[k]] = k + 1;
                        for (int i = 0; i <= n + 1; ++i)
                            for (int j = 0; j <= n + 1; ++j)
                                if (colmap[i] >= 0 && rowmap[j] >= 0)
                                    x.set(i, j, cell.at(colmap[i], rowmap[j]));
                        diag[n].push_back(std::move(x));
                        if (++count > guard)
                            throw SizeGuardExceeded("diagonal oracle guard of " +
                                                    std::to_string(guard) + " simplices exceeded");
                    }
                }
            }
        }
    }

    ChainComplexData cx;
    cx.ring = ring;
    cx.basis.resize(nmax + 1);
    std::vector<std::map<ArrayPQ, char>> nadm_flags(nmax + 1);
    for (int n = 0; n <= nmax; ++n) {
        std::sort(diag[n].begin(), diag[n].end());
        for (const ArrayPQ& x : diag[n]) {
            if (diag_degenerate(x, tc)) continue;
            bool nadm = !is_admissible(x, tc);
            nadm_flags[n][x] = nadm ? 1 : 0;
            if (relative && nadm) continue;
            cx.basis[n].push_back(x);
        }
    }

    BasisIndex index(cx.basis);
    cx.boundary.resize(nmax + 1);
    for (int n = 0; n <= nmax; ++n) {
        size_t rows = n > 0 ? cx.basis[n - 1].size() : 0;
        cx.boundary[n] = IntMatrix(rows, cx.basis[n].size());
        if (n == 0) continue;
        for (size_t col = 0; col < cx.basis[n].size(); ++col) {
            const ArrayPQ& x = cx.basis[n][col];
            for (int k = 0; k <= n; ++k) {
                ArrayPQ f = face_v(face_h(x, k, tc), k, tc);
                if (diag_degenerate(f, tc)) continue;
                auto flag = nadm_flags[n - 1].find(f);
                if (flag == nadm_flags[n - 1].end())
                    throw ClosureViolation("diagonal face is missing from the simplex set");
                if (relative && flag->second) continue;
                int row = index.find(n - 1, f);
                cx.boundary[n].at(row, col) += k % 2 == 0 ? 1 : -1;
            }
        }
    }
    return homology(cx);
}

} // namespace pmqhur
