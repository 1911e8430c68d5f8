#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "pmqhur/arrays.hpp"

namespace pmqhur {

using Int = boost::multiprecision::cpp_int;

struct Ring {
    enum class Kind { Integers, Rationals, PrimeField };
    Kind kind = Kind::Integers;
    long p = 0; // modulus, PrimeField only

    static Ring Z() { return {Kind::Integers, 0}; }
    static Ring Q() { return {Kind::Rationals, 0}; }
    static Ring Fp(long p) { return {Kind::PrimeField, p}; }
    std::string name() const;
};

// Parses "Z", "Q" or "F<p>" (e.g. "F2"). Throws InputError.
Ring ring_from_string(const std::string& text);

// Dense integer matrix, rows x cols. Boundary coefficients are small, but
// Smith reduction needs unbounded entries.
struct IntMatrix {
    size_t rows = 0;
    size_t cols = 0;
    std::vector<Int> data;

    IntMatrix() = default;
    IntMatrix(size_t r, size_t c) : rows(r), cols(c), data(r * c) {}
    Int& at(size_t r, size_t c) { return data[r * cols + c]; }
    const Int& at(size_t r, size_t c) const { return data[r * cols + c]; }
};

struct SmithResult {
    std::vector<Int> factors; // d1 | d2 | ..., all positive
    size_t rank = 0;          // number of nonzero factors
};

SmithResult smith_normal_form(IntMatrix m);

// Rank over Q, or over F_p when p > 0.
size_t matrix_rank(const IntMatrix& m, long p = 0);

// Total chain complex of a cell set: basis in degree n are the cells with
// p + q = n; the differential carries the Koszul sign (-1)^p on vertical
// faces. In the relative complex the NAdm cells are removed and faces landing
// in NAdm are dropped.
struct ChainComplexData {
    Ring ring;
    std::vector<std::vector<ArrayPQ>> basis; // by total degree
    std::vector<IntMatrix> boundary;         // boundary[n]: C_n -> C_{n-1}
};

ChainComplexData build_total_complex(const CellSet& cells, bool relative, Ring ring,
                                     const TruncatedCompletion& tc);

struct HomologyGroup {
    int free_rank = 0;
    std::vector<Int> torsion; // invariant factors > 1; empty over fields
};

struct HomologyResult {
    Ring ring;
    std::vector<HomologyGroup> groups; // by degree

    bool is_zero(size_t n) const;
    // The unique degree carrying homology, when the result is R in exactly
    // one degree and zero elsewhere.
    std::optional<int> concentrated_degree() const;
    bool concentrated_rank_one(int degree) const;
};

HomologyResult homology(const ChainComplexData& cx);

// Independent route: homology of the normalized chain complex of the
// diagonal simplicial set, with n-simplices the (n,n)-arrays obtained by
// degenerating the cells and faces d_k = face_h(. , k) o face_v(. , k).
// Guarded to at most `guard` diagonal simplices.
HomologyResult diagonal_oracle(const CellSet& cells, bool relative, Ring ring,
                               const TruncatedCompletion& tc, size_t guard = 10000);

} // namespace pmqhur
